"""Corepresentation calculus for finite quantum groups.

A corepresentation of size n over a host H is a matrix U = [u_ij] of
algebra elements with Delta(u_ij) = sum_k u_ik (x) u_kj; stored as a tensor
coeffs[i,j,:] of coordinate vectors.  The module covers validity checks,
sums/products/adjoints, intertwiner spaces, unitarization, decomposition
into irreducibles, the Q-matrices with the orthogonality relations, and the
Kac predicate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (HostMismatch, InconsistentConditions, MissingAntipode, NoSolution,
                     NotInvertible, NotUnitary, SingularGram, SpecError)
from .hopfcore import HopfData
from .measures import Functional, haar_solve
from .tenscore import (DEFAULT_TOL, Tolerance, dagger, linf, nullspace,
                       orthonormal_basis, rank_of_span)

__all__ = [
    "Corep", "Summand", "IrrDecomposition", "QMatrix", "KacReport",
    "trivial_corep", "regular_corep", "is_corep", "corep_identity_residual",
    "unitarity_residual", "direct_sum", "tensor_prod", "adjoint",
    "intertwiners", "is_irreducible", "unitarize", "decompose", "irr_table",
    "normalize_q", "q_matrix_gram", "q_matrix_antipode",
    "orthogonality_residuals", "is_kac",
]


@dataclass(frozen=True, eq=False)
class Corep:
    """Matrix corepresentation: coeffs[i,j,:] is the element u_ij."""

    host: HopfData
    size: int
    coeffs: np.ndarray
    unitary: bool = False

    def __post_init__(self):
        n = int(self.size)
        object.__setattr__(self, "size", n)
        c = np.asarray(self.coeffs, dtype=np.complex128).reshape(n, n, self.host.dim)
        object.__setattr__(self, "coeffs", c)

    def slice(self, c: int) -> np.ndarray:
        """The size x size matrix of coefficient c across all entries."""
        return self.coeffs[:, :, c]


def trivial_corep(host: HopfData) -> Corep:
    return Corep(host=host, size=1, coeffs=host.unit.reshape(1, 1, -1), unitary=True)


def regular_corep(host: HopfData) -> Corep:
    """The regular corepresentation w_ij with coordinates delta3[j,i,:].

    Coassociativity of delta makes this a corep on any bialgebra; it is
    unitary for the standard group and function algebra bases but not in
    general, so callers unitarize when needed.
    """
    d = host.delta3
    coeffs = np.transpose(d, (1, 0, 2))  # coeffs[i,j,:] = d[j,i,:]
    n = host.dim
    res = unitarity_residual(Corep(host=host, size=n, coeffs=coeffs))
    return Corep(host=host, size=n, coeffs=coeffs, unitary=bool(res <= DEFAULT_TOL.bound(1.0)))


def star_coeffs(u: Corep) -> np.ndarray:
    """Entrywise star: result[i,j,:] are the coordinates of (u_ij)*."""
    j = u.host.star.j
    return np.einsum("pc,ijc->ijp", j, np.conj(u.coeffs))


def corep_identity_residual(u: Corep) -> float:
    d = u.host.delta3
    lhs = np.einsum("ijc,cpq->ijpq", u.coeffs, d)
    rhs = np.einsum("ikp,kjq->ijpq", u.coeffs, u.coeffs)
    return linf(lhs - rhs)


def unitarity_residual(u: Corep) -> float:
    """Max residual of U*U = 1 and UU* = 1 in M_n(host)."""
    m, unit = u.host.mult, u.host.unit
    su = star_coeffs(u)
    eye = np.eye(u.size)
    left = np.einsum("isa,ijb,abk->sjk", su, u.coeffs, m)
    right = np.einsum("ija,ljb,abk->ilk", u.coeffs, su, m)
    target = np.einsum("sj,k->sjk", eye, unit)
    return max(linf(left - target), linf(right - target))


def _regular_embedding(u: Corep) -> np.ndarray:
    """U as a concrete operator on C^size (x) host, via left multiplication."""
    return np.einsum("ijc,cqk->ikjq", u.coeffs, u.host.mult).reshape(
        u.size * u.host.dim, u.size * u.host.dim)


def is_corep(u: Corep, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Corep identity plus invertibility of U in M_n(host)."""
    scale = max(1.0, linf(u.coeffs)) ** 2
    if corep_identity_residual(u) > tol.bound(scale):
        return False
    s = np.linalg.svd(_regular_embedding(u), compute_uv=False)
    return bool(s[-1] > tol.rel_tol * s[0] and s[0] > tol.abs_tol)


# ---------------------------------------------------------------------------
# sums, products, adjoints


def _same_host(u: Corep, v: Corep):
    if u.host is not v.host:
        raise HostMismatch("coreps live on different hosts")


def direct_sum(u: Corep, v: Corep) -> Corep:
    _same_host(u, v)
    n = u.size + v.size
    coeffs = np.zeros((n, n, u.host.dim), dtype=np.complex128)
    coeffs[:u.size, :u.size] = u.coeffs
    coeffs[u.size:, u.size:] = v.coeffs
    return Corep(host=u.host, size=n, coeffs=coeffs, unitary=u.unitary and v.unitary)


def tensor_prod(u: Corep, v: Corep) -> Corep:
    """[U (x) V]_{(i,k),(j,l)} = u_ij v_kl, pair indices leftmost-major."""
    _same_host(u, v)
    coeffs = np.einsum("ija,klb,abc->ikjlc", u.coeffs, v.coeffs, u.host.mult)
    n = u.size * v.size
    return Corep(host=u.host, size=n, coeffs=coeffs.reshape(n, n, u.host.dim),
                 unitary=u.unitary and v.unitary)


def adjoint(u: Corep) -> Corep:
    """Entrywise star (the conjugate corep; no transpose)."""
    return Corep(host=u.host, size=u.size, coeffs=star_coeffs(u))


# ---------------------------------------------------------------------------
# intertwiners and irreducibility


def intertwiners(u: Corep, v: Corep, tol: Tolerance = DEFAULT_TOL) -> list:
    """Basis of {T: (T (x) 1)U = V(T (x) 1)}, T of shape (v.size, u.size).

    Entrywise the condition says T U[:,:,c] = V[:,:,c] T for every
    coefficient slice c, so the space is cut out slice by slice: keep a
    basis of the running solution space and restrict it on each slice.
    """
    _same_host(u, v)
    nu, nv, dim = u.size, v.size, u.host.dim
    span = np.eye(nv * nu, dtype=np.complex128)  # rows: current candidate basis
    for c in range(dim):
        if span.shape[0] == 0:
            return []
        a_c = u.coeffs[:, :, c]
        b_c = v.coeffs[:, :, c]
        mats = span.reshape(-1, nv, nu)
        img = np.einsum("rij,jk->rik", mats, a_c) - np.einsum("ij,rjk->rik", b_c, mats)
        combos = nullspace(img.reshape(span.shape[0], -1).T, tol)  # columns
        span = combos.T @ span
        span = orthonormal_basis(list(span), tol)

    # confirm every survivor against all slices at once
    out = []
    scale = max(1.0, linf(u.coeffs), linf(v.coeffs))
    for row in span:
        t = row.reshape(nv, nu)
        r = linf(np.einsum("ij,jkc->ikc", t, u.coeffs) - np.einsum("ijc,jk->ikc", v.coeffs, t))
        if r <= tol.bound(scale) * 10:
            out.append(t)
    return out


def is_irreducible(u: Corep, tol: Tolerance = DEFAULT_TOL) -> bool:
    return len(intertwiners(u, u, tol)) == 1


# ---------------------------------------------------------------------------
# unitarization


def _haar_state(host: HopfData, tol: Tolerance) -> Functional:
    return haar_solve(host, tol).state


def _k_matrix(host: HopfData, haar: Functional) -> np.ndarray:
    """K[a,b] = h(b_a b_b), the bilinear pairing every coefficient formula uses."""
    return np.einsum("abc,c->ab", host.mult, haar.coeffs)


def unitarize(u: Corep, tol: Tolerance = DEFAULT_TOL) -> tuple:
    """Unitary V and positive invertible y with (y (x) 1)U = V(y (x) 1).

    y is the positive square root of C = (id (x) h)(U*U); C must be
    positive definite, otherwise U was degenerate.
    """
    host = u.host
    haar = _haar_state(host, tol)
    k = _k_matrix(host, haar)
    su = star_coeffs(u)
    c = np.einsum("isa,ijb,ab->sj", su, u.coeffs, k)
    c = (c + dagger(c)) / 2.0
    w, vecs = np.linalg.eigh(c)
    if w.min() <= tol.bound(max(1.0, linf(c))):
        raise NotInvertible("corep is degenerate: (id x h)(U*U) is singular")
    y = vecs @ np.diag(np.sqrt(w)) @ dagger(vecs)
    y_inv = vecs @ np.diag(1.0 / np.sqrt(w)) @ dagger(vecs)
    coeffs = np.einsum("ri,ijc,js->rsc", y, u.coeffs, y_inv)
    v = Corep(host=host, size=u.size, coeffs=coeffs, unitary=True)
    res = unitarity_residual(v)
    if res > tol.bound(max(1.0, linf(coeffs)) ** 2) * 100:
        raise NotUnitary(f"unitarization failed, residual {res:.3e}")
    return v, y


# ---------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True, eq=False)
class Summand:
    irrep_id: int
    multiplicity: int
    intertwiner: np.ndarray   # isometry (n, multiplicity * n_alpha), columns grouped per copy


@dataclass(frozen=True, eq=False)
class IrrDecomposition:
    irreps: tuple             # one unitary irreducible Corep per class, indexed by irrep_id
    summands: tuple           # Summand entries
    completeness: float       # reassembly residual


def _split_irreducible(u: Corep, tol: Tolerance, rng) -> list:
    """Recursively split a unitary corep; returns (isometry, irreducible) pairs."""
    n = u.size
    comm = intertwiners(u, u, tol)
    if len(comm) == 1:
        return [(np.eye(n, dtype=np.complex128), u)]

    for _ in range(4):
        coefs = rng.standard_normal(len(comm)) + 1j * rng.standard_normal(len(comm))
        r = sum(c * t for c, t in zip(coefs, comm))
        herm = (r + dagger(r)) / 2.0
        w, vecs = np.linalg.eigh(herm)
        gap = 100.0 * tol.bound(max(1.0, linf(herm)))
        clusters = []
        start = 0
        for i in range(1, n):
            if w[i] - w[i - 1] > gap:
                clusters.append(slice(start, i))
                start = i
        clusters.append(slice(start, n))
        if len(clusters) > 1:
            break
    else:
        raise SpecError("commutant element failed to separate eigenvalues")

    out = []
    for cl in clusters:
        t_c = vecs[:, cl]
        sub_coeffs = np.einsum("ia,ijc,jb->abc", np.conj(t_c), u.coeffs, t_c)
        sub = Corep(host=u.host, size=t_c.shape[1], coeffs=sub_coeffs, unitary=True)
        for t_inner, irr in _split_irreducible(sub, tol, rng):
            out.append((t_c @ t_inner, irr))
    return out


def decompose(u: Corep, tol: Tolerance = DEFAULT_TOL, seed: int = 2) -> IrrDecomposition:
    """Split a unitary corep into irreducibles grouped by equivalence.

    Minimal invariant subspaces come from spectral clustering of a seeded
    random Hermitian element of the commutant; equivalent summands are
    detected through their intertwiner space and rotated onto a single
    class representative.
    """
    if unitarity_residual(u) > tol.bound(max(1.0, linf(u.coeffs)) ** 2) * 10:
        raise NotUnitary("decompose expects a unitary corep")
    rng = np.random.default_rng(seed)
    pieces = _split_irreducible(u, tol, rng)

    reps = []          # class representatives
    occurrences = []   # per class: list of isometries (n, n_alpha)
    for t_iso, irr in pieces:
        placed = False
        for idx, rep in enumerate(reps):
            if irr.size != rep.size:
                continue
            ts = intertwiners(rep, irr, tol)
            if not ts:
                continue
            w = ts[0]
            s = np.sqrt(np.trace(dagger(w) @ w).real / rep.size)
            w_u = w / s   # unitary for irreducible unitary coreps
            occurrences[idx].append(t_iso @ w_u)
            placed = True
            break
        if not placed:
            reps.append(irr)
            occurrences.append([t_iso])

    n = u.size
    rebuilt = np.zeros_like(u.coeffs)
    summands = []
    for idx, rep in enumerate(reps):
        block = np.hstack(occurrences[idx])
        summands.append(Summand(irrep_id=idx, multiplicity=len(occurrences[idx]), intertwiner=block))
        for t_occ in occurrences[idx]:
            rebuilt += np.einsum("ra,abc,sb->rsc", t_occ, rep.coeffs, np.conj(t_occ))
    completeness = linf(rebuilt - u.coeffs)
    return IrrDecomposition(irreps=tuple(reps), summands=tuple(summands),
                            completeness=float(completeness))


def _rotate_q_diagonal(rep: Corep, haar: Functional, tol: Tolerance) -> Corep:
    """Change basis so the Q-matrix comes out diagonal, entries nonincreasing."""
    q = q_matrix_gram(rep, haar, tol)
    w, vecs = np.linalg.eigh(q.q)
    order = np.argsort(w)[::-1]
    v = vecs[:, order]
    coeffs = np.einsum("ia,ijc,jb->abc", np.conj(v), rep.coeffs, v)
    return Corep(host=rep.host, size=rep.size, coeffs=coeffs, unitary=True)


def irr_table(h: HopfData, tol: Tolerance = DEFAULT_TOL) -> list:
    """One unitary irreducible corep per equivalence class, from the regular
    corep.  Verifies sum n_alpha^2 = dim and that coefficients span the host."""
    w = regular_corep(h)
    if not w.unitary:
        w, _ = unitarize(w, tol)
    haar = _haar_state(h, tol)
    dec = decompose(w, tol)
    reps = [_rotate_q_diagonal(rep, haar, tol) for rep in dec.irreps]

    def sort_key(rep_with_pos):
        pos, rep = rep_with_pos
        is_trivial = rep.size == 1 and linf(rep.coeffs[0, 0] - h.unit) <= tol.bound(1.0) * 100
        return (0 if is_trivial else 1, rep.size, pos)

    reps = [rep for _, rep in sorted(enumerate(reps), key=lambda p: sort_key(p))]

    total = sum(rep.size ** 2 for rep in reps)
    if total != h.dim:
        raise SpecError(f"irrep dimension count {total} != dim {h.dim}")
    vectors = [rep.coeffs[i, j] for rep in reps for i in range(rep.size) for j in range(rep.size)]
    if rank_of_span(vectors, tol) != h.dim:
        raise SpecError("irrep coefficients do not span the algebra")
    return reps


# ---------------------------------------------------------------------------
# Q-matrices and orthogonality


@dataclass(frozen=True, eq=False)
class QMatrix:
    q: np.ndarray
    d: float                  # quantum dimension Tr Q
    irrep_id: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "q", np.asarray(self.q, dtype=np.complex128))
        object.__setattr__(self, "d", float(self.d))

    @property
    def size(self) -> int:
        return self.q.shape[0]


def normalize_q(m, tol: Tolerance = DEFAULT_TOL) -> QMatrix:
    """Scale a positive matrix so that Tr Q = Tr Q^{-1}; c = sqrt(TrM^-1/TrM)."""
    m = np.asarray(m, dtype=np.complex128)
    m = (m + dagger(m)) / 2.0
    w = np.linalg.eigvalsh(m)
    if w.min() <= tol.bound(max(1.0, linf(m))):
        raise SingularGram("matrix is not positive definite")
    c = np.sqrt(np.sum(1.0 / w) / np.sum(w))
    q = c * m
    return QMatrix(q=q, d=float(np.trace(q).real))


def q_matrix_gram(alpha: Corep, haar: Functional, tol: Tolerance = DEFAULT_TOL) -> QMatrix:
    """Q from the Haar Gram matrix M_lj = sum_i h(u_ij u_il*)."""
    if haar.host is not alpha.host:
        raise HostMismatch("haar state lives on a different host")
    k = _k_matrix(alpha.host, haar)
    su = star_coeffs(alpha)
    m = np.einsum("ija,ab,ilb->lj", alpha.coeffs, k, su)
    try:
        qm = normalize_q(m, tol)
    except SingularGram:
        raise SingularGram("Haar Gram matrix singular: corep not irreducible "
                           "or haar input wrong") from None
    _check_q_invariants(qm, tol)
    return qm


def q_matrix_antipode(alpha: Corep, tol: Tolerance = DEFAULT_TOL) -> QMatrix:
    """Q from the intertwiner equation (Q (x) 1)U = ((id (x) S^2)U)(Q (x) 1)."""
    host = alpha.host
    if host.antipode is None:
        raise MissingAntipode("q_matrix_antipode needs the antipode")
    n, dim = alpha.size, host.dim
    s2 = host.antipode @ host.antipode
    s2u = np.einsum("rsa,ca->rsc", alpha.coeffs, s2)

    # unknowns Q[p,q]; equation rows indexed (r,j,c)
    e = np.zeros((n, n, dim, n, n), dtype=np.complex128)
    for r in range(n):
        e[r, :, :, r, :] += np.transpose(alpha.coeffs, (1, 2, 0))  # [j,c,q] = U[q,j,c]
    for j in range(n):
        e[:, j, :, :, j] -= np.transpose(s2u, (0, 2, 1))           # [r,c,p] = s2u[r,p,c]

    ker = nullspace(e.reshape(n * n * dim, n * n), tol)
    if ker.shape[1] == 0:
        raise NoSolution("no intertwiner between U and (id x S^2)U")
    if ker.shape[1] > 1:
        raise NoSolution("Q-intertwiner space is degenerate: corep not irreducible")
    q0 = ker[:, 0].reshape(n, n)

    # fix the free complex scale: rotate the leading eigenvalue to the
    # positive real axis, hermitize, then balance the trace
    evals = np.linalg.eigvals(q0)
    lead = evals[np.argmax(np.abs(evals))]
    q0 = q0 * np.exp(-1j * np.angle(lead))
    q0 = (q0 + dagger(q0)) / 2.0
    try:
        qm = normalize_q(q0, tol)
    except SingularGram:
        raise NoSolution("antipode Q-candidate is not positive definite") from None
    _check_q_invariants(qm, tol)
    return qm


def _check_q_invariants(qm: QMatrix, tol: Tolerance):
    w = np.linalg.eigvalsh(qm.q)
    if w.min() <= 0:
        raise SingularGram("Q is not positive definite")
    tr, tr_inv = float(np.sum(w)), float(np.sum(1.0 / w))
    if abs(tr - tr_inv) > tol.bound(max(1.0, tr)) * 100:
        raise SpecError("Tr Q != Tr Q^-1 after normalization")
    if tr < qm.size - tol.bound(float(qm.size)):
        raise SpecError("Tr Q < n violates the dimension inequality")


def orthogonality_residuals(irreps, haar: Functional, tol: Tolerance = DEFAULT_TOL):
    """Max residuals of the two orthogonality families over all irrep pairs.

    family 1: h(u^a_ij (u^b_kl)*) = delta_ab delta_ik [Q_a]_lj / d_a
    family 2: h((u^a_ij)* u^b_kl) = delta_ab delta_jl [Q_a^{-1}]_ki / d_a
    """
    host = irreps[0].host
    k = _k_matrix(host, haar)
    qmats = [q_matrix_gram(rep, haar, tol) for rep in irreps]
    res1 = res2 = 0.0
    for a, u in enumerate(irreps):
        ua = u.coeffs.reshape(u.size * u.size, host.dim)
        sa = star_coeffs(u).reshape(u.size * u.size, host.dim)
        for b, v in enumerate(irreps):
            vb = v.coeffs.reshape(v.size * v.size, host.dim)
            sb = star_coeffs(v).reshape(v.size * v.size, host.dim)
            p1 = (ua @ k @ sb.T).reshape(u.size, u.size, v.size, v.size)
            p2 = (sa @ k @ vb.T).reshape(u.size, u.size, v.size, v.size)
            if a == b:
                q = qmats[a]
                eye = np.eye(u.size)
                t1 = np.einsum("ik,lj->ijkl", eye, q.q) / q.d
                t2 = np.einsum("jl,ki->ijkl", eye, np.linalg.inv(q.q)) / q.d
            else:
                t1 = np.zeros_like(p1)
                t2 = np.zeros_like(p2)
            res1 = max(res1, linf(p1 - t1))
            res2 = max(res2, linf(p2 - t2))
    return res1, res2


# ---------------------------------------------------------------------------
# the Kac predicate


@dataclass(frozen=True, eq=False)
class KacReport:
    q_trivial: bool
    antipode_involutive: bool
    haar_tracial: bool
    dims_match: bool
    residuals: dict
    is_kac: bool


def is_kac(h: HopfData, tol: Tolerance = DEFAULT_TOL) -> KacReport:
    """Evaluate the four equivalent Kac conditions and check they agree."""
    haar = _haar_state(h, tol)
    reps = irr_table(h, tol)
    qmats = [q_matrix_gram(rep, haar, tol) for rep in reps]

    res_q = max(linf(qm.q - np.eye(qm.size)) for qm in qmats)
    s = h.antipode
    if s is None:
        raise MissingAntipode("is_kac needs the antipode")
    res_s2 = linf(s @ s - np.eye(h.dim))
    k = _k_matrix(h, haar)
    res_tr = linf(k - k.T)
    res_d = max(abs(qm.d - qm.size) for qm in qmats)

    big = 100.0
    conds = {
        "q_trivial": res_q <= big * tol.bound(1.0),
        "antipode_involutive": res_s2 <= big * tol.bound(max(1.0, linf(s) ** 2)),
        "haar_tracial": res_tr <= big * tol.bound(max(1.0, linf(k))),
        "dims_match": res_d <= big * tol.bound(float(max(qm.size for qm in qmats))),
    }
    values = list(conds.values())
    if any(values) != all(values):
        raise InconsistentConditions(f"Kac conditions disagree: {conds}")
    return KacReport(
        q_trivial=conds["q_trivial"],
        antipode_involutive=conds["antipode_involutive"],
        haar_tracial=conds["haar_tracial"],
        dims_match=conds["dims_match"],
        residuals={"q_trivial": float(res_q), "antipode_involutive": float(res_s2),
                   "haar_tracial": float(res_tr), "dims_match": float(res_d)},
        is_kac=all(values),
    )
