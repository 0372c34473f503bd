"""Finite-dimensional *-algebras, coalgebras and Hopf *-algebras as dense
structure tensors, with executable axiom verification.

Every object is described relative to a fixed basis (b_0, ..., b_{n-1}):

* multiplication   mult[i,j,k]:  b_i b_j = sum_k mult[i,j,k] b_k
* unit             unit[k]:      1 = sum_k unit[k] b_k
* star             x* = J @ conj(x) on coordinate columns
* comultiplication delta[(i,j),k]:  Delta(b_k) = sum delta3[k,i,j] b_i (x) b_j
  with the pair index (i,j) flattened leftmost-major, i*n + j
* counit           epsilon[k] = eps(b_k)
* antipode         S[i,j]: S(b_j) = sum_i S[i,j] b_i

Axiom checks are phrased as einsum contraction identities rather than
Kronecker-product matrix identities, so verifying a dimension-24 host
costs megabytes, not gigabytes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MissingAntipode, NoSolution, NotCommutative, SingularAntipode, SpecError
from .tenscore import (DEFAULT_TOL, Tolerance, linf, nullspace, orthonormal_basis,
                       rank_of_span, solve_linear)

__all__ = [
    "AntilinearMap", "StructureAlgebra", "StructureCoalgebra", "HopfData",
    "CheckResult", "VerificationReport", "ReconstructedGroup", "make_hopf",
    "verify_algebra", "verify_coalgebra", "verify_hopf", "verify_all",
    "convolve_maps", "find_antipode", "opposite", "coopposite", "opcoopposite",
    "dual_hopf", "check_cancellation", "grouplikes", "gelfand_reconstruct",
    "check_morphism",
]


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True, eq=False)
class AntilinearMap:
    """Antilinear operator v -> j @ conj(v) (conjugation first, then j)."""

    j: np.ndarray
    conjugate: bool = True

    def __post_init__(self):
        object.__setattr__(self, "j", np.asarray(self.j, dtype=np.complex128))

    def __call__(self, v):
        v = np.asarray(v, dtype=np.complex128)
        return self.j @ (np.conj(v) if self.conjugate else v)


def _default_labels(n: int) -> tuple:
    return tuple(f"b{i}" for i in range(n))


@dataclass(frozen=True, eq=False)
class StructureAlgebra:
    """Unital associative *-algebra given by structure constants."""

    dim: int
    mult: np.ndarray          # mult[i,j,k]
    unit: np.ndarray          # coordinates of the unit element
    star: AntilinearMap
    basis_labels: tuple = ()
    gram: np.ndarray | None = None

    def __post_init__(self):
        n = int(self.dim)
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "mult", np.asarray(self.mult, dtype=np.complex128).reshape(n, n, n))
        object.__setattr__(self, "unit", np.asarray(self.unit, dtype=np.complex128).reshape(n))
        if not isinstance(self.star, AntilinearMap):
            object.__setattr__(self, "star", AntilinearMap(self.star))
        if self.star.j.shape != (n, n):
            raise ValueError("star matrix has wrong shape")
        if not self.basis_labels:
            object.__setattr__(self, "basis_labels", _default_labels(n))
        if self.gram is not None:
            object.__setattr__(self, "gram", np.asarray(self.gram, dtype=np.complex128).reshape(n, n))

    def product(self, x, y) -> np.ndarray:
        return np.einsum("ijk,i,j->k", self.mult, np.asarray(x), np.asarray(y))

    def star_vec(self, v) -> np.ndarray:
        return self.star(v)


@dataclass(frozen=True, eq=False)
class StructureCoalgebra:
    """Counital coassociative coalgebra: delta maps C^n into C^n (x) C^n."""

    dim: int
    delta: np.ndarray         # shape (n*n, n); column k is Delta(b_k) in pair coordinates
    epsilon: np.ndarray       # covector of counit values

    def __post_init__(self):
        n = int(self.dim)
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "delta", np.asarray(self.delta, dtype=np.complex128).reshape(n * n, n))
        object.__setattr__(self, "epsilon", np.asarray(self.epsilon, dtype=np.complex128).reshape(n))

    @classmethod
    def from_delta3(cls, delta3, epsilon) -> "StructureCoalgebra":
        d = np.asarray(delta3, dtype=np.complex128)
        n = d.shape[0]
        return cls(dim=n, delta=d.reshape(n, n * n).T, epsilon=epsilon)

    @property
    def delta3(self) -> np.ndarray:
        """Comultiplication as a 3-index tensor delta3[k,i,j]."""
        n = self.dim
        return self.delta.T.reshape(n, n, n)


@dataclass(frozen=True, eq=False)
class HopfData:
    """A (bi/Hopf) *-algebra: compatible algebra and coalgebra on one space."""

    alg: StructureAlgebra
    coalg: StructureCoalgebra
    antipode: np.ndarray | None = None

    def __post_init__(self):
        if self.alg.dim != self.coalg.dim:
            raise ValueError("algebra and coalgebra dimensions differ")
        if self.antipode is not None:
            n = self.alg.dim
            object.__setattr__(self, "antipode", np.asarray(self.antipode, dtype=np.complex128).reshape(n, n))

    # convenience passthroughs, used everywhere downstream
    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def mult(self) -> np.ndarray:
        return self.alg.mult

    @property
    def unit(self) -> np.ndarray:
        return self.alg.unit

    @property
    def star(self) -> AntilinearMap:
        return self.alg.star

    @property
    def delta(self) -> np.ndarray:
        return self.coalg.delta

    @property
    def delta3(self) -> np.ndarray:
        return self.coalg.delta3

    @property
    def epsilon(self) -> np.ndarray:
        return self.coalg.epsilon

    @property
    def basis_labels(self) -> tuple:
        return self.alg.basis_labels

    def with_antipode(self, s) -> "HopfData":
        return HopfData(alg=self.alg, coalg=self.coalg, antipode=s)


def make_hopf(mult, unit, delta3, epsilon, antipode=None, star_j=None, labels=(), gram=None) -> HopfData:
    """Assemble HopfData from raw tensors; star defaults to plain conjugation."""
    mult = np.asarray(mult, dtype=np.complex128)
    n = mult.shape[0]
    j = np.eye(n) if star_j is None else star_j
    alg = StructureAlgebra(dim=n, mult=mult, unit=unit, star=AntilinearMap(j),
                           basis_labels=tuple(labels), gram=gram)
    coalg = StructureCoalgebra.from_delta3(delta3, epsilon)
    return HopfData(alg=alg, coalg=coalg, antipode=antipode)


# ---------------------------------------------------------------------------
# verification reports


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def failures(self) -> list:
        return [c.name for c in self.checks if not c.passed]

    def __str__(self):
        lines = [f"{'ok ' if c.passed else 'FAIL'} {c.name}: {c.residual:.3e}" for c in self.checks]
        return "\n".join(lines)


class _Reporter:
    def __init__(self, tol: Tolerance):
        self.tol = tol
        self.checks = []

    def compare(self, name, lhs, rhs):
        lhs = np.asarray(lhs)
        rhs = np.asarray(rhs)
        scale = max(1.0, linf(lhs), linf(rhs))
        r = linf(lhs - rhs)
        self.checks.append(CheckResult(name, r, bool(r <= self.tol.bound(scale))))

    def scalar(self, name, value, target):
        r = abs(complex(value) - complex(target))
        scale = max(1.0, abs(complex(target)))
        self.checks.append(CheckResult(name, float(r), bool(r <= self.tol.bound(scale))))

    def report(self) -> VerificationReport:
        return VerificationReport(tuple(self.checks))


# ---------------------------------------------------------------------------
# axiom verification


def verify_algebra(a: StructureAlgebra, tol: Tolerance = DEFAULT_TOL) -> VerificationReport:
    """Associativity, both unit laws and the involution laws."""
    m, unit, j = a.mult, a.unit, a.star.j
    n = a.dim
    rep = _Reporter(tol)

    rep.compare("associativity",
                np.einsum("ijp,plk->ijlk", m, m),
                np.einsum("jlp,ipk->ijlk", m, m))
    eye = np.eye(n)
    rep.compare("unit-left", np.einsum("i,ijk->jk", unit, m), eye)
    rep.compare("unit-right", np.einsum("j,ijk->ik", unit, m), eye)
    rep.compare("star-involutive", j @ np.conj(j), eye)
    # (xy)* = y* x*, expressed on conjugated coordinates of x and y
    rep.compare("star-antimultiplicative",
                np.einsum("ijc,kc->ijk", np.conj(m), j),
                np.einsum("pj,qi,pqk->ijk", j, j, m))
    rep.compare("star-fixes-unit", a.star(unit), unit)
    return rep.report()


def verify_coalgebra(c: StructureCoalgebra, tol: Tolerance = DEFAULT_TOL) -> VerificationReport:
    """Coassociativity, both counit laws, and the counit law rechecked
    elementwise in Sweedler form sum c_(1) eps(c_(2)) = c."""
    d, eps = c.delta3, c.epsilon
    n = c.dim
    rep = _Reporter(tol)

    rep.compare("coassociativity",
                np.einsum("kij,iab->kabj", d, d),
                np.einsum("kij,jab->kiab", d, d))
    eye = np.eye(n)
    rep.compare("counit-left", np.einsum("kij,i->kj", d, eps), eye)
    rep.compare("counit-right", np.einsum("kij,j->ki", d, eps), eye)
    sweedler = np.stack([np.einsum("ij,j->i", d[k], eps) for k in range(n)])
    rep.compare("sweedler-counit", sweedler, eye)
    return rep.report()


def verify_hopf(h: HopfData, tol: Tolerance = DEFAULT_TOL) -> VerificationReport:
    """Bialgebra compatibility, the antipode identity, anti(co)multiplicativity
    of S, and the *-compatibility laws."""
    if h.antipode is None:
        raise MissingAntipode("verify_hopf needs an antipode")
    n = h.dim
    m, unit, j = h.mult, h.unit, h.star.j
    d, eps = h.delta3, h.epsilon
    s = h.antipode
    rep = _Reporter(tol)

    # Delta(b_i b_j) = Delta(b_i) Delta(b_j), one row of i at a time
    worst = 0.0
    scale = 1.0
    for i in range(n):
        lhs = np.einsum("jk,kpq->jpq", m[i], d)
        t1 = np.einsum("ab,acp->bcp", d[i], m)
        t2 = np.einsum("bcp,beq->cepq", t1, m)
        rhs = np.einsum("jce,cepq->jpq", d, t2)
        worst = max(worst, linf(lhs - rhs))
        scale = max(scale, linf(lhs), linf(rhs))
    rep.checks.append(CheckResult("bialgebra-compat", worst, bool(worst <= tol.bound(scale))))

    rep.compare("counit-multiplicative", np.einsum("ijk,k->ij", m, eps), np.outer(eps, eps))
    rep.scalar("counit-unital", np.dot(eps, unit), 1.0)
    rep.compare("comult-unital", np.einsum("k,kij->ij", unit, d), np.outer(unit, unit))

    target = np.outer(eps, unit)
    rep.compare("antipode-left", np.einsum("aij,pi,pjq->aq", d, s, m), target)
    rep.compare("antipode-right", np.einsum("aij,pj,ipq->aq", d, s, m), target)

    rep.compare("antipode-antimultiplicative",
                np.einsum("ijc,kc->ijk", m, s),
                np.einsum("pj,qi,pqk->ijk", s, s, m))
    rep.compare("antipode-anticomultiplicative",
                np.einsum("ck,cij->ijk", s, d),
                np.einsum("kab,ib,ja->ijk", d, s, s))

    rep.compare("star-antipode-involution", j @ np.conj(s) @ np.conj(j) @ s, np.eye(n))
    rep.compare("comult-star-morphism", h.delta @ j, np.kron(j, j) @ np.conj(h.delta))
    return rep.report()


def verify_all(h: HopfData, tol: Tolerance = DEFAULT_TOL) -> VerificationReport:
    """Concatenation of the algebra, coalgebra and Hopf-level reports."""
    checks = verify_algebra(h.alg, tol).checks + verify_coalgebra(h.coalg, tol).checks
    if h.antipode is not None:
        checks = checks + verify_hopf(h, tol).checks
    return VerificationReport(checks)


# ---------------------------------------------------------------------------
# convolution and the antipode


def convolve_maps(f1, f2, c: StructureCoalgebra, a: StructureAlgebra) -> np.ndarray:
    """Convolution product m o (f1 (x) f2) o Delta of two linear maps C -> A."""
    f1 = np.asarray(f1, dtype=np.complex128)
    f2 = np.asarray(f2, dtype=np.complex128)
    na, nc = a.dim, c.dim
    if f1.shape != (na, nc) or f2.shape != (na, nc):
        raise ValueError(f"convolve_maps expects maps of shape {(na, nc)}")
    return np.einsum("kij,pi,rj,prq->qk", c.delta3, f1, f2, a.mult)


def find_antipode(b: HopfData, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Solve S * id = unit o eps = id * S for the antipode matrix.

    Raises NoSolution when the bialgebra is not Hopf, or (defensively) when
    the solution is not unique.
    """
    n = b.dim
    d, m = b.delta3, b.mult
    t_left = np.einsum("aij,pjq->aqpi", d, m).reshape(n * n, n * n)
    t_right = np.einsum("aij,ipq->aqpj", d, m).reshape(n * n, n * n)
    rhs_half = np.outer(b.epsilon, b.unit).ravel()
    system = np.vstack([t_left, t_right])
    rhs = np.concatenate([rhs_half, rhs_half])
    try:
        sol = solve_linear(system, rhs, tol)
    except NoSolution as exc:
        raise NoSolution(f"bialgebra admits no antipode ({exc})", residual=exc.residual) from None
    if not sol.unique:
        raise NoSolution("antipode system is degenerate: solution not unique")
    return sol.x.reshape(n, n)


def _inverse_antipode(h: HopfData, tol: Tolerance) -> np.ndarray:
    if h.antipode is None:
        raise MissingAntipode("opposite constructions need an antipode")
    s = h.antipode
    try:
        s_inv = np.linalg.inv(s)
    except np.linalg.LinAlgError:
        raise SingularAntipode("antipode matrix is singular") from None
    if linf(s @ s_inv - np.eye(h.dim)) > tol.bound(max(1.0, linf(s) * linf(s_inv))):
        raise SingularAntipode("antipode matrix is numerically singular")
    return s_inv


def opposite(h: HopfData, tol: Tolerance = DEFAULT_TOL) -> HopfData:
    """H^op: reversed multiplication, antipode S^{-1}."""
    s_inv = _inverse_antipode(h, tol)
    alg = StructureAlgebra(dim=h.dim, mult=h.mult.transpose(1, 0, 2), unit=h.unit,
                           star=h.star, basis_labels=h.basis_labels, gram=h.alg.gram)
    return HopfData(alg=alg, coalg=h.coalg, antipode=s_inv)


def coopposite(h: HopfData, tol: Tolerance = DEFAULT_TOL) -> HopfData:
    """H^cop: reversed comultiplication, antipode S^{-1}."""
    s_inv = _inverse_antipode(h, tol)
    coalg = StructureCoalgebra.from_delta3(h.delta3.transpose(0, 2, 1), h.epsilon)
    return HopfData(alg=h.alg, coalg=coalg, antipode=s_inv)


def opcoopposite(h: HopfData, tol: Tolerance = DEFAULT_TOL) -> HopfData:
    """H^opcop: both reversals, antipode unchanged."""
    if h.antipode is None:
        raise MissingAntipode("opposite constructions need an antipode")
    _inverse_antipode(h, tol)  # defensiveness only: S must be invertible
    alg = StructureAlgebra(dim=h.dim, mult=h.mult.transpose(1, 0, 2), unit=h.unit,
                           star=h.star, basis_labels=h.basis_labels, gram=h.alg.gram)
    coalg = StructureCoalgebra.from_delta3(h.delta3.transpose(0, 2, 1), h.epsilon)
    return HopfData(alg=alg, coalg=coalg, antipode=h.antipode)


# ---------------------------------------------------------------------------
# linear duality


def dual_hopf(h: HopfData) -> HopfData:
    """The dual Hopf *-algebra on the dual basis.

    Multiplication is the transpose of Delta, comultiplication the transpose
    of mult, unit is eps, counit is the unit, S' = S^T, and the involution is
    (f*)(a) = conj(f(S(a)*)).
    """
    if h.antipode is None:
        raise MissingAntipode("dual_hopf needs an antipode for the dual involution")
    d, m = h.delta3, h.mult
    j_dual = (np.conj(h.star.j) @ h.antipode).T
    labels = tuple(lbl + "'" for lbl in h.basis_labels)
    return make_hopf(
        mult=d.transpose(1, 2, 0),
        unit=h.epsilon,
        delta3=m.transpose(2, 0, 1),
        epsilon=h.unit,
        antipode=h.antipode.T,
        star_j=j_dual,
        labels=labels,
    )


def check_cancellation(h: HopfData, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Quantum cancellation: (1 (x) H)Delta(H) and (H (x) 1)Delta(H) both
    span H (x) H."""
    n = h.dim
    d, m = h.delta3, h.mult
    v1 = np.einsum("aij,qjk->aqik", d, m).reshape(n * n, n * n)
    v2 = np.einsum("aij,qik->aqkj", d, m).reshape(n * n, n * n)
    r1 = rank_of_span(list(v1), tol)
    r2 = rank_of_span(list(v2), tol)
    return bool(r1 == n * n and r2 == n * n)


# ---------------------------------------------------------------------------
# characters, group-likes, reconstruction


def _characters(mult, unit, tol: Tolerance, seeds=(7, 11, 13)) -> list:
    """All unital multiplicative functionals of a (commutative) algebra.

    chi is a common eigenvector of the slice matrices mult[i] acting on value
    vectors; a random real combination separates them generically, so we take
    eigenvectors of such a combination, normalize by chi(1) = 1, and keep the
    ones that verify multiplicativity.  Several seeds guard against accidental
    eigenvalue collisions.
    """
    n = mult.shape[0]
    found = []
    thr = max(np.sqrt(tol.abs_tol), 10.0 * tol.bound(1.0))
    for seed in seeds:
        rng = np.random.default_rng(seed)
        t = np.einsum("i,ijk->jk", rng.standard_normal(n), mult)
        _, vecs = np.linalg.eig(t)
        for col in range(n):
            w = vecs[:, col]
            z = np.dot(unit, w)
            if abs(z) <= tol.abs_tol * max(1.0, linf(w)):
                continue
            chi = w / z
            resid = linf(np.einsum("ijk,k->ij", mult, chi) - np.outer(chi, chi))
            if resid > tol.bound(max(1.0, linf(chi)) ** 2):
                continue
            if not any(linf(chi - c) <= thr for c in found):
                found.append(chi)
    return _canonical_sort(found)


def _canonical_sort(vectors) -> list:
    def key(v):
        return tuple((round(float(x.real), 8), round(float(x.imag), 8)) for x in v)
    return sorted(vectors, key=key)


def _match_vector(v, vectors, thr) -> int:
    for idx, w in enumerate(vectors):
        if linf(v - w) <= thr:
            return idx
    return -1


def _abelian_quotient(mult, unit, tol: Tolerance):
    """Structure constants of A/[A,A] plus the quotient projection basis C.

    C has orthonormal columns spanning the complement of the ideal generated
    by all commutators; the quotient product is C^dagger m(C., C.).
    """
    n = mult.shape[0]
    comm = (mult - mult.transpose(1, 0, 2)).reshape(n * n, n)
    span = orthonormal_basis(list(comm), tol)
    for _ in range(2 * n + 2):
        if span.shape[0] == 0:
            break
        left = np.einsum("vi,pik->vpk", span, mult).reshape(-1, n)
        right = np.einsum("vi,ipk->vpk", span, mult).reshape(-1, n)
        grown = orthonormal_basis(list(span) + list(left) + list(right), tol)
        if grown.shape[0] == span.shape[0]:
            span = grown
            break
        span = grown
    c = nullspace(span, tol)  # columns: orthonormal basis of the complement
    mult_q = np.einsum("ia,jb,ijk,kl->abl", c, c, mult, np.conj(c))
    unit_q = np.conj(c).T @ unit
    return mult_q, unit_q, c


def grouplikes(h: HopfData, tol: Tolerance = DEFAULT_TOL) -> list:
    """All a with Delta(a) = a (x) a and eps(a) = 1.

    These are exactly the characters of the dual algebra; for a
    noncommutative dual the search happens on its abelianization (characters
    kill commutators), and every candidate is verified directly.
    """
    n = h.dim
    d = h.delta3
    mult_dual = d.transpose(1, 2, 0)
    unit_dual = h.epsilon
    mult_q, unit_q, c = _abelian_quotient(mult_dual, unit_dual, tol)
    candidates = [np.conj(c) @ chi for chi in _characters(mult_q, unit_q, tol)]

    out = []
    for a in candidates:
        resid = linf(np.einsum("kij,k->ij", d, a) - np.outer(a, a))
        if resid > tol.bound(max(1.0, linf(a)) ** 2):
            continue
        if abs(np.dot(h.epsilon, a) - 1.0) > tol.bound(1.0):
            continue
        out.append(a)
    out = _canonical_sort(out)

    thr = max(np.sqrt(tol.abs_tol), 10.0 * tol.bound(1.0))
    for a in out:
        for b in out:
            if _match_vector(h.alg.product(a, b), out, thr) < 0:
                raise SpecError("group-like set is not closed under multiplication")
        if h.antipode is not None and _match_vector(h.antipode @ a, out, thr) < 0:
            raise SpecError("group-like set is not closed under the antipode")
    return out


@dataclass(frozen=True, eq=False)
class ReconstructedGroup:
    """Finite group recovered from a commutative Hopf *-algebra."""

    cayley: np.ndarray        # cayley[i,j] = index of chi_i . chi_j
    characters: list          # value vectors, one per group element
    identity: int
    inverse: np.ndarray       # inverse[i] = index of chi_i^{-1}

    @property
    def order(self) -> int:
        return len(self.characters)


def gelfand_reconstruct(h: HopfData, tol: Tolerance = DEFAULT_TOL) -> ReconstructedGroup:
    """Recover the finite group underlying a commutative Hopf *-algebra.

    Characters of the algebra are the points; convolution through Delta is
    the group law.  Verifies the table is a group with identity eps and
    inverses given by S.
    """
    m = h.mult
    if linf(m - m.transpose(1, 0, 2)) > tol.bound(max(1.0, linf(m))):
        raise NotCommutative("gelfand_reconstruct needs a commutative algebra")
    chars = _characters(m, h.unit, tol)
    if not chars:
        raise SpecError("no characters found")
    k = len(chars)
    thr = max(np.sqrt(tol.abs_tol), 10.0 * tol.bound(1.0))
    d = h.delta3

    cayley = np.zeros((k, k), dtype=np.int64)
    for i, c1 in enumerate(chars):
        for j, c2 in enumerate(chars):
            prod = np.einsum("kij,i,j->k", d, c1, c2)
            idx = _match_vector(prod, chars, thr)
            if idx < 0:
                raise SpecError("character set is not closed under convolution")
            cayley[i, j] = idx

    identity = _match_vector(h.epsilon, chars, thr)
    if identity < 0:
        raise SpecError("counit is not among the characters")
    inverse = np.full(k, -1, dtype=np.int64)
    if h.antipode is not None:
        for i, c1 in enumerate(chars):
            inverse[i] = _match_vector(h.antipode.T @ c1, chars, thr)
    else:
        for i in range(k):
            hits = np.nonzero(cayley[i] == identity)[0]
            inverse[i] = hits[0] if hits.size else -1

    # group axioms on the finite table
    if np.any(inverse < 0):
        raise SpecError("reconstructed table has an element without inverse")
    if np.any(cayley[identity] != np.arange(k)) or np.any(cayley[:, identity] != np.arange(k)):
        raise SpecError("reconstructed identity fails the unit law")
    for i in range(k):
        if cayley[i, inverse[i]] != identity or cayley[inverse[i], i] != identity:
            raise SpecError("reconstructed inverses fail")
    for i in range(k):
        for j in range(k):
            for l in range(k):
                if cayley[cayley[i, j], l] != cayley[i, cayley[j, l]]:
                    raise SpecError("reconstructed table is not associative")
    return ReconstructedGroup(cayley=cayley, characters=chars, identity=identity, inverse=inverse)


# ---------------------------------------------------------------------------
# morphisms


def check_morphism(pi, h1: HopfData, h2: HopfData, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff pi: h2 -> h1 is unital, multiplicative, *-preserving and
    intertwines the comultiplications."""
    pi = np.asarray(pi, dtype=np.complex128)
    n1, n2 = h1.dim, h2.dim
    if pi.shape != (n1, n2):
        raise ValueError(f"morphism matrix must have shape {(n1, n2)}, got {pi.shape}")

    checks = []
    checks.append(linf(pi @ h2.unit - h1.unit))
    lhs = np.einsum("ijk,pk->ijp", h2.mult, pi)
    rhs = np.einsum("pi,qj,pqr->ijr", pi, pi, h1.mult)
    checks.append(linf(lhs - rhs))
    checks.append(linf(pi @ h2.star.j - h1.star.j @ np.conj(pi)))
    lhs = np.einsum("pk,pab->kab", pi, h1.delta3)
    rhs = np.einsum("kij,ai,bj->kab", h2.delta3, pi, pi)
    checks.append(linf(lhs - rhs))

    scale = max(1.0, linf(pi)) ** 2 * max(1.0, linf(h1.mult), linf(h2.mult), linf(h1.delta3), linf(h2.delta3))
    return all(r <= tol.bound(scale) for r in checks)
