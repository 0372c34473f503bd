"""The dual discrete quantum group of a finite quantum group.

The dual algebra is the block direct sum over irreducibles; its elements are
blockwise matrices.  W is the multiplicative unitary assembled from one
unitary representative per irreducible class, the Fourier transform moves
between the host and the blocks, and every universal-property statement
about the dual (comultiplication, counit, invariant weights, modular
element, unimodularity) is realized as a finite contraction checked at
runtime.

Coordinates: the flat index of a dual basis matrix unit e^beta_ij is
offset(beta) + i*n_beta + j, blocks in irrep order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corep import (Corep, QMatrix, corep_identity_residual, irr_table, normalize_q,
                    q_matrix_gram, star_coeffs, unitarity_residual)
from .errors import MissingAntipode, NotACorep, NotUnitary, SpecError
from .hopfcore import (CheckResult, HopfData, VerificationReport, check_morphism,
                       dual_hopf, find_antipode, make_hopf, verify_all)
from .measures import Functional, haar_solve
from .tenscore import DEFAULT_TOL, Tolerance, dagger, linf, rank_of_span

__all__ = [
    "IrrData", "DualAlgebra", "DualElement", "BigW", "PhiMap",
    "ModularReport", "UnimodularityReport", "DualComultData",
    "irr_data_from_host", "truncated_irr_data", "build_dual", "big_w",
    "fourier", "fourier_inv", "hhat_L", "hhat_R", "phi_from_corep",
    "dual_comult_map", "dual_comult", "dual_counit", "dual_as_hopf",
    "verify_dual_invariance", "modular_report", "unimodularity_report",
    "biduality_check",
]


# ---------------------------------------------------------------------------
# sources and the block algebra


@dataclass(frozen=True, eq=False)
class IrrData:
    """Irreducible data: Q-matrices, plus host/coreps/Haar for finite sources."""

    qmats: tuple
    host: HopfData | None = None
    irreps: tuple = ()
    haar: Functional | None = None

    @property
    def finite(self) -> bool:
        return self.host is not None

    @property
    def sizes(self) -> tuple:
        return tuple(q.size for q in self.qmats)


def irr_data_from_host(h: HopfData, tol: Tolerance = DEFAULT_TOL) -> IrrData:
    reps = irr_table(h, tol)
    haar = haar_solve(h, tol).state
    qmats = tuple(q_matrix_gram(rep, haar, tol) for rep in reps)
    return IrrData(qmats=qmats, host=h, irreps=tuple(reps), haar=haar)


def truncated_irr_data(q_blocks, tol: Tolerance = DEFAULT_TOL) -> IrrData:
    """Source from user-supplied Q matrices only (no host algebra)."""
    qmats = []
    for q in q_blocks:
        if isinstance(q, QMatrix):
            qmats.append(q)
        else:
            q = np.asarray(q, dtype=np.complex128)
            qmats.append(QMatrix(q=q, d=float(np.trace(q).real)))
    return IrrData(qmats=tuple(qmats))


@dataclass(frozen=True, eq=False)
class DualAlgebra:
    """Descriptor of the block *-algebra: sizes, flat offsets, trivial block."""

    src: IrrData
    sizes: tuple
    offsets: tuple            # flat coordinate offset of each block
    dim: int                  # sum of n_beta^2
    trivial_block: int | None = None

    def flat(self, beta: int, i: int, j: int) -> int:
        return self.offsets[beta] + i * self.sizes[beta] + j

    def zero(self) -> "DualElement":
        return DualElement(alg=self, blocks={})

    def identity(self) -> "DualElement":
        return DualElement(alg=self, blocks={b: np.eye(n, dtype=np.complex128)
                                             for b, n in enumerate(self.sizes)})

    def basis_element(self, beta: int, i: int, j: int) -> "DualElement":
        m = np.zeros((self.sizes[beta], self.sizes[beta]), dtype=np.complex128)
        m[i, j] = 1.0
        return DualElement(alg=self, blocks={beta: m})

    def random_element(self, rng) -> "DualElement":
        blocks = {b: rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
                  for b, n in enumerate(self.sizes)}
        return DualElement(alg=self, blocks=blocks)

    def flatten(self, x: "DualElement") -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.complex128)
        for b, mat in x.blocks.items():
            n = self.sizes[b]
            v[self.offsets[b]:self.offsets[b] + n * n] = mat.ravel()
        return v

    def unflatten(self, v) -> "DualElement":
        v = np.asarray(v, dtype=np.complex128).reshape(self.dim)
        blocks = {}
        for b, n in enumerate(self.sizes):
            mat = v[self.offsets[b]:self.offsets[b] + n * n].reshape(n, n)
            if linf(mat) > 0:
                blocks[b] = mat
        return DualElement(alg=self, blocks=blocks)


@dataclass(frozen=True, eq=False)
class DualElement:
    """Finitely supported blockwise matrix; missing blocks are zero."""

    alg: DualAlgebra
    blocks: dict

    def block(self, b: int) -> np.ndarray:
        n = self.alg.sizes[b]
        return self.blocks.get(b, np.zeros((n, n), dtype=np.complex128))

    @property
    def support(self) -> frozenset:
        return frozenset(b for b, m in self.blocks.items() if linf(m) > 0)

    def __add__(self, other: "DualElement") -> "DualElement":
        blocks = dict(self.blocks)
        for b, m in other.blocks.items():
            blocks[b] = blocks.get(b, 0) + m
        return DualElement(alg=self.alg, blocks=blocks)

    def __sub__(self, other: "DualElement") -> "DualElement":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "DualElement":
        return DualElement(alg=self.alg, blocks={b: scalar * m for b, m in self.blocks.items()})

    def __mul__(self, other: "DualElement") -> "DualElement":
        """Blockwise algebra product."""
        blocks = {}
        for b in set(self.blocks) & set(other.blocks):
            blocks[b] = self.blocks[b] @ other.blocks[b]
        return DualElement(alg=self.alg, blocks=blocks)

    def star(self) -> "DualElement":
        return DualElement(alg=self.alg, blocks={b: dagger(m) for b, m in self.blocks.items()})


def build_dual(src: IrrData, tol: Tolerance = DEFAULT_TOL) -> DualAlgebra:
    """Validate the Q data and lay out the block algebra."""
    sizes = []
    for idx, qm in enumerate(src.qmats):
        q = qm.q
        n = qm.size
        w = np.linalg.eigvalsh((q + dagger(q)) / 2.0)
        if linf(q - dagger(q)) > tol.bound(max(1.0, linf(q))) or w.min() <= 0:
            raise SpecError(f"inconsistent Q data: block {idx} not positive")
        tr, tr_inv = float(np.sum(w)), float(np.sum(1.0 / w))
        if abs(tr - tr_inv) > 100 * tol.bound(max(1.0, tr)):
            raise SpecError(f"inconsistent Q data: block {idx} has Tr Q != Tr Q^-1")
        if tr < n - tol.bound(float(n)):
            raise SpecError(f"inconsistent Q data: block {idx} has Tr Q < n")
        sizes.append(n)
    offsets = []
    off = 0
    for n in sizes:
        offsets.append(off)
        off += n * n
    trivial = None
    if src.finite:
        if off != src.host.dim:
            raise SpecError(f"block dimensions sum to {off}, host has {src.host.dim}")
        for idx, rep in enumerate(src.irreps):
            if rep.size == 1 and linf(rep.coeffs[0, 0] - src.host.unit) <= 100 * tol.bound(1.0):
                trivial = idx
                break
        if trivial is None:
            raise SpecError("no trivial block among the irreducibles")
    return DualAlgebra(src=src, sizes=tuple(sizes), offsets=tuple(offsets),
                       dim=off, trivial_block=trivial)


# ---------------------------------------------------------------------------
# the multiplicative unitary


@dataclass(frozen=True, eq=False)
class BigW:
    """W = sum over blocks of e_ij (x) u^beta_ij, with a concrete block-diagonal corep."""

    alg: DualAlgebra
    blocks: tuple             # the unitary irreducible coreps
    concrete: Corep           # block-diagonal corep of size D = sum n_beta

    @property
    def total_size(self) -> int:
        return self.concrete.size


def big_w(src: IrrData, tol: Tolerance = DEFAULT_TOL) -> BigW:
    if not src.finite:
        raise SpecError("W needs a finite source")
    alg = build_dual(src, tol)
    host = src.host
    for rep in src.irreps:
        scale = max(1.0, linf(rep.coeffs)) ** 2
        if corep_identity_residual(rep) > 10 * tol.bound(scale):
            raise NotACorep("a W block fails the corep identity")
        if unitarity_residual(rep) > 10 * tol.bound(scale):
            raise NotUnitary("a W block is not unitary")
    d_total = sum(rep.size for rep in src.irreps)
    coeffs = np.zeros((d_total, d_total, host.dim), dtype=np.complex128)
    pos = 0
    for rep in src.irreps:
        coeffs[pos:pos + rep.size, pos:pos + rep.size] = rep.coeffs
        pos += rep.size
    concrete = Corep(host=host, size=d_total, coeffs=coeffs, unitary=True)
    return BigW(alg=alg, blocks=tuple(src.irreps), concrete=concrete)


def coefficient_matrix(w: BigW) -> np.ndarray:
    """theta[flat(beta,i,j), p] = coordinates of u^beta_ij; phi -> (id (x) phi)W."""
    alg = w.alg
    host = alg.src.host
    theta = np.zeros((alg.dim, host.dim), dtype=np.complex128)
    for b, rep in enumerate(w.blocks):
        n = rep.size
        theta[alg.offsets[b]:alg.offsets[b] + n * n] = rep.coeffs.reshape(n * n, host.dim)
    return theta


# ---------------------------------------------------------------------------
# Fourier transform


def _pairing_matrix(host: HopfData, haar: Functional) -> np.ndarray:
    return np.einsum("abc,c->ab", host.mult, haar.coeffs)


def fourier(a, w: BigW, haar: Functional) -> DualElement:
    """F(a) = (id (x) h)((1 (x) a)W*): block beta entry [i,j] is h(a (u_ji)*)."""
    host = w.alg.src.host
    a = np.asarray(a, dtype=np.complex128).reshape(host.dim)
    k = _pairing_matrix(host, haar)
    blocks = {}
    for b, rep in enumerate(w.blocks):
        su = star_coeffs(rep)
        blocks[b] = np.einsum("x,xy,jiy->ij", a, k, su)
    return DualElement(alg=w.alg, blocks=blocks)


def fourier_inv(x: DualElement, w: BigW) -> np.ndarray:
    """F^{-1}(x) = (hhat_L (x) id)((x (x) 1)W) as a host coordinate vector."""
    host = w.alg.src.host
    out = np.zeros(host.dim, dtype=np.complex128)
    for b in x.blocks:
        qm = w.alg.src.qmats[b]
        q_inv = np.linalg.inv(qm.q)
        coef = q_inv @ x.blocks[b]
        out += float(np.trace(qm.q).real) * np.einsum("js,sjc->c", coef, w.blocks[b].coeffs)
    return out


def hhat_L(x: DualElement) -> complex:
    """Left Haar weight: sum_beta Tr(Q_beta) Tr(Q_beta^{-1} x_beta)."""
    total = 0.0 + 0.0j
    for b, m in x.blocks.items():
        qm = x.alg.src.qmats[b]
        total += np.trace(qm.q) * np.trace(np.linalg.inv(qm.q) @ m)
    return complex(total)


def hhat_R(x: DualElement) -> complex:
    """Right Haar weight: sum_beta Tr(Q_beta) Tr(Q_beta x_beta)."""
    total = 0.0 + 0.0j
    for b, m in x.blocks.items():
        qm = x.alg.src.qmats[b]
        total += np.trace(qm.q) * np.trace(qm.q @ m)
    return complex(total)


def _weight_vectors(alg: DualAlgebra):
    """hhat_L and hhat_R evaluated on the flat matrix-unit basis."""
    wl = np.zeros(alg.dim, dtype=np.complex128)
    wr = np.zeros(alg.dim, dtype=np.complex128)
    for b, n in enumerate(alg.sizes):
        qm = alg.src.qmats[b]
        tr = np.trace(qm.q)
        q_inv = np.linalg.inv(qm.q)
        for i in range(n):
            for j in range(n):
                wl[alg.flat(b, i, j)] = tr * q_inv[j, i]
                wr[alg.flat(b, i, j)] = tr * qm.q[j, i]
    return wl, wr


# ---------------------------------------------------------------------------
# the universal morphism


@dataclass(frozen=True, eq=False)
class PhiMap:
    """Linear map from the dual algebra into M_N, stored as a tensor."""

    alg: DualAlgebra
    size: int
    tensor: np.ndarray        # tensor[r,s,x]: entry (r,s) of Phi(e_x)
    report: VerificationReport

    def __call__(self, x: DualElement) -> np.ndarray:
        return np.einsum("rsx,x->rs", self.tensor, self.alg.flatten(x))


def phi_from_corep(v: Corep, w: BigW, haar: Functional, tol: Tolerance = DEFAULT_TOL,
                   seed: int = 3, pairs: int = 20) -> PhiMap:
    """Phi = F_V o F^{-1}: the unique non-degenerate *-homomorphism with
    (Phi (x) id)W = V.

    Runtime checks: multiplier unit goes to 1, stars are preserved, seeded
    products multiply, (Phi (x) id)W = V, and the image acts non-degenerately.
    """
    host = w.alg.src.host
    scale_v = max(1.0, linf(v.coeffs)) ** 2
    if corep_identity_residual(v) > 10 * tol.bound(scale_v):
        raise NotACorep("phi input fails the corep identity")
    if unitarity_residual(v) > 10 * tol.bound(scale_v):
        raise NotUnitary("phi input is not unitary")

    alg = w.alg
    n_v = v.size
    k = _pairing_matrix(host, haar)
    sv = star_coeffs(v)
    tensor = np.zeros((n_v, n_v, alg.dim), dtype=np.complex128)
    for b, nb in enumerate(alg.sizes):
        for i in range(nb):
            for j in range(nb):
                x = alg.flat(b, i, j)
                a = fourier_inv(alg.basis_element(b, i, j), w)
                tensor[:, :, x] = np.einsum("x,xy,jiy->ij", a, k, sv)

    checks = []

    def add(name, residual, scale=1.0):
        checks.append(CheckResult(name, float(residual), bool(residual <= 100 * tol.bound(scale))))

    ident = np.einsum("rsx,x->rs", tensor, alg.flatten(alg.identity()))
    add("unital-on-multiplier", linf(ident - np.eye(n_v)))

    star_res = 0.0
    for b, nb in enumerate(alg.sizes):
        for i in range(nb):
            for j in range(nb):
                star_res = max(star_res, linf(tensor[:, :, alg.flat(b, j, i)]
                                              - dagger(tensor[:, :, alg.flat(b, i, j)])))
    add("star-preserving", star_res, max(1.0, linf(tensor)))

    rng = np.random.default_rng(seed)
    mult_res = 0.0
    for _ in range(pairs):
        x = alg.random_element(rng)
        y = alg.random_element(rng)
        fx = np.einsum("rsx,x->rs", tensor, alg.flatten(x))
        fy = np.einsum("rsx,x->rs", tensor, alg.flatten(y))
        fxy = np.einsum("rsx,x->rs", tensor, alg.flatten(x * y))
        mult_res = max(mult_res, linf(fxy - fx @ fy))
    add("multiplicative", mult_res, max(1.0, linf(tensor) ** 2 * alg.dim ** 2))

    theta = coefficient_matrix(w)
    rebuilt = np.einsum("rsx,xc->rsc", tensor, theta)
    add("intertwines-W", linf(rebuilt - v.coeffs), max(1.0, linf(v.coeffs)))

    col_span = tensor.transpose(0, 2, 1).reshape(n_v, alg.dim * n_v)
    nondeg = rank_of_span(list(col_span.T), tol) == n_v
    checks.append(CheckResult("non-degenerate", 0.0 if nondeg else 1.0, nondeg))

    report = VerificationReport(tuple(checks))
    if not report.ok:
        raise SpecError(f"phi verification failed: {report.failures()}")
    return PhiMap(alg=alg, size=n_v, tensor=tensor, report=report)


# ---------------------------------------------------------------------------
# dual comultiplication and counit


def _w23_w13(w: BigW) -> Corep:
    """W_23 W_13 as a corep of size D^2: entry ((p,a),(q,b)) = W[a,b] W[p,q]."""
    host = w.alg.src.host
    wc = w.concrete.coeffs
    d = w.total_size
    coeffs = np.einsum("abx,pqy,xyc->paqbc", wc, wc, host.mult)
    return Corep(host=host, size=d * d, coeffs=coeffs.reshape(d * d, d * d, host.dim),
                 unitary=True)


def _block_positions(alg: DualAlgebra):
    """Row index in C^D of basis vector i of block beta."""
    pos = []
    p = 0
    for n in alg.sizes:
        pos.append(p)
        p += n
    return pos, p


@dataclass(frozen=True, eq=False)
class DualComultData:
    """Delta-hat as a coefficient tensor plus the counit vector."""

    alg: DualAlgebra
    c3: np.ndarray            # c3[x,u,v]: Delta-hat(e_x) = sum c3[x,u,v] e_u (x) e_v
    eps_hat: np.ndarray       # counit values on the flat basis
    phi: PhiMap
    report: VerificationReport


def dual_comult_map(w: BigW, haar: Functional, tol: Tolerance = DEFAULT_TOL) -> DualComultData:
    """Build Delta-hat from (Delta-hat (x) id)W = W_23 W_13 and verify the
    coalgebra laws on the full basis."""
    alg = w.alg
    v = _w23_w13(w)
    phi = phi_from_corep(v, w, haar, tol)
    pos, d_total = _block_positions(alg)

    c3 = np.zeros((alg.dim, alg.dim, alg.dim), dtype=np.complex128)
    recon_res = 0.0
    for x in range(alg.dim):
        mat = phi.tensor[:, :, x]                      # in M_{D^2}
        rebuilt = np.zeros_like(mat)
        for b1, n1 in enumerate(alg.sizes):
            for b2, n2 in enumerate(alg.sizes):
                for i in range(n1):
                    for j in range(n1):
                        for kk in range(n2):
                            for ll in range(n2):
                                r = (pos[b1] + i) * d_total + pos[b2] + kk
                                c = (pos[b1] + j) * d_total + pos[b2] + ll
                                val = mat[r, c]
                                c3[x, alg.flat(b1, i, j), alg.flat(b2, kk, ll)] = val
                                rebuilt[r, c] = val
        recon_res = max(recon_res, linf(rebuilt - mat))

    checks = []

    def add(name, residual, scale=1.0):
        checks.append(CheckResult(name, float(residual), bool(residual <= 100 * tol.bound(scale))))

    add("image-in-dual-tensor-square", recon_res, max(1.0, linf(phi.tensor)))
    add("coassociativity",
        linf(np.einsum("xuv,uab->xabv", c3, c3) - np.einsum("xuv,vab->xuab", c3, c3)),
        max(1.0, linf(c3)) ** 2)

    eps_hat = np.zeros(alg.dim, dtype=np.complex128)
    tb = alg.trivial_block
    eps_hat[alg.flat(tb, 0, 0)] = 1.0
    eye = np.eye(alg.dim)
    add("counit-left", np.max(np.abs(np.einsum("xuv,u->xv", c3, eps_hat) - eye)))
    add("counit-right", np.max(np.abs(np.einsum("xuv,v->xu", c3, eps_hat) - eye)))

    report = VerificationReport(tuple(checks))
    if not report.ok:
        raise SpecError(f"dual comultiplication verification failed: {report.failures()}")
    return DualComultData(alg=alg, c3=c3, eps_hat=eps_hat, phi=phi, report=report)


def dual_comult(x: DualElement, w: BigW, haar: Functional,
                tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Delta-hat(x) as a coefficient matrix over e_u (x) e_v."""
    data = dual_comult_map(w, haar, tol)
    return np.einsum("xuv,x->uv", data.c3, data.alg.flatten(x))


def dual_counit(x: DualElement, w: BigW | None = None, tol: Tolerance = DEFAULT_TOL) -> complex:
    """e-hat(x): the scalar sitting in the trivial block.

    When w is passed, (e-hat (x) id)W = 1 is verified as well.
    """
    tb = x.alg.trivial_block
    if tb is None:
        raise SpecError("dual counit needs a finite source (no trivial block)")
    value = complex(x.block(tb)[0, 0])
    if w is not None:
        host = w.alg.src.host
        total = w.blocks[tb].coeffs[0, 0]
        if linf(total - host.unit) > 100 * tol.bound(1.0):
            raise SpecError("(e-hat (x) id)W != 1")
    return value


# ---------------------------------------------------------------------------
# invariance, modular element, unimodularity


def verify_dual_invariance(src: IrrData, tol: Tolerance = DEFAULT_TOL) -> VerificationReport:
    """Left invariance of hhat_L and right invariance of hhat_R on a basis."""
    if not src.finite:
        raise SpecError("invariance checks need a finite source")
    w = big_w(src, tol)
    data = dual_comult_map(w, src.haar, tol)
    alg, c3 = data.alg, data.c3
    wl, wr = _weight_vectors(alg)
    unit_flat = alg.flatten(alg.identity())

    left = np.einsum("xuv,v->xu", c3, wl)
    right = np.einsum("xuv,u->xv", c3, wr)
    scale = max(1.0, linf(wl), linf(wr))
    checks = (
        CheckResult("hhatL-left-invariance", float(linf(left - np.outer(wl, unit_flat))),
                    bool(linf(left - np.outer(wl, unit_flat)) <= 100 * tol.bound(scale))),
        CheckResult("hhatR-right-invariance", float(linf(right - np.outer(wr, unit_flat))),
                    bool(linf(right - np.outer(wr, unit_flat)) <= 100 * tol.bound(scale))),
    )
    return VerificationReport(checks)


@dataclass(frozen=True, eq=False)
class ModularReport:
    checks: tuple             # CheckResult entries
    kac_reduction: bool | None   # finite sources: True when Q = 1 collapses the identities

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def modular_report(src: IrrData, tol: Tolerance = DEFAULT_TOL, seed: int = 11,
                   samples: int = 20) -> ModularReport:
    """Blockwise modular identities; Delta-hat based ones only for finite sources."""
    alg = build_dual(src, tol)
    checks = []

    def add(name, residual, scale=1.0):
        checks.append(CheckResult(name, float(residual), bool(residual <= 100 * tol.bound(scale))))

    balance = 0.0
    lower_ok = True
    for qm in src.qmats:
        ev = np.linalg.eigvalsh(qm.q)
        balance = max(balance, abs(float(np.sum(ev) - np.sum(1.0 / ev))))
        lower_ok = lower_ok and float(np.sum(ev)) >= qm.size - tol.bound(float(qm.size))
    add("trace-balance", balance, max(1.0, max(qm.d for qm in src.qmats)))
    checks.append(CheckResult("trace-lower-bound", 0.0 if lower_ok else 1.0, lower_ok))

    # hhat_R(x) = hhat_L(Q x Q), basis plus seeded samples
    rng = np.random.default_rng(seed)
    exch = 0.0
    q_elem = DualElement(alg=alg, blocks={b: src.qmats[b].q for b in range(len(alg.sizes))})
    tests = [alg.basis_element(b, i, j) for b, n in enumerate(alg.sizes)
             for i in range(n) for j in range(n)]
    tests += [alg.random_element(rng) for _ in range(samples)]
    for x in tests:
        exch = max(exch, abs(hhat_R(x) - hhat_L(q_elem * x * q_elem)))
    add("weight-exchange", exch, max(1.0, max(qm.d for qm in src.qmats) ** 2))

    kac_reduction = None
    if src.finite:
        w = big_w(src, tol)
        data = dual_comult_map(w, src.haar, tol)
        c3 = data.c3
        wl, wr = _weight_vectors(alg)
        q2 = alg.flatten(DualElement(alg=alg, blocks={b: src.qmats[b].q @ src.qmats[b].q
                                                      for b in range(len(alg.sizes))}))
        qm2 = alg.flatten(DualElement(alg=alg, blocks={
            b: np.linalg.inv(src.qmats[b].q @ src.qmats[b].q) for b in range(len(alg.sizes))}))
        scale = max(1.0, linf(wl), linf(wr))
        add("left-modular", linf(np.einsum("xuv,u->xv", c3, wl) - np.outer(wl, q2)), scale)
        add("right-modular", linf(np.einsum("xuv,v->xu", c3, wr) - np.outer(wr, qm2)), scale)
        kac_reduction = bool(max(linf(qm.q - np.eye(qm.size)) for qm in src.qmats)
                             <= 100 * tol.bound(1.0))
    return ModularReport(checks=tuple(checks), kac_reduction=kac_reduction)


@dataclass(frozen=True, eq=False)
class UnimodularityReport:
    haar_tracial: bool | None
    weights_equal: bool
    q_trivial: bool
    antipode_involutive: bool | None
    antipode_bounded: bool    # equivalent by theorem; always true at finite dimension
    residuals: dict
    unimodular: bool


def unimodularity_report(source, tol: Tolerance = DEFAULT_TOL):
    """Evaluate the unimodularity conditions and assert their consistency.

    Accepts a HopfData host (all four conditions) or a truncated IrrData
    (only the weight and Q conditions apply; the rest are not evaluable).
    """
    from .errors import InconsistentConditions

    if isinstance(source, HopfData):
        src = irr_data_from_host(source, tol)
    else:
        src = source

    alg = build_dual(src, tol)
    wl, wr = _weight_vectors(alg)
    res_w = linf(wl - wr)
    res_q = max(linf(qm.q - np.eye(qm.size)) for qm in src.qmats)
    scale_w = max(1.0, linf(wl), linf(wr))
    weights_equal = bool(res_w <= 100 * tol.bound(scale_w))
    q_trivial = bool(res_q <= 100 * tol.bound(1.0))

    residuals = {"weights_equal": float(res_w), "q_trivial": float(res_q)}
    haar_tracial = None
    antipode_involutive = None
    if src.finite:
        h = src.host
        k = _pairing_matrix(h, src.haar)
        res_tr = linf(k - k.T)
        haar_tracial = bool(res_tr <= 100 * tol.bound(max(1.0, linf(k))))
        residuals["haar_tracial"] = float(res_tr)
        if h.antipode is None:
            raise MissingAntipode("unimodularity check needs the antipode")
        res_s2 = linf(h.antipode @ h.antipode - np.eye(h.dim))
        antipode_involutive = bool(res_s2 <= 100 * tol.bound(max(1.0, linf(h.antipode) ** 2)))
        residuals["antipode_involutive"] = float(res_s2)

    evaluable = [c for c in (haar_tracial, weights_equal, q_trivial, antipode_involutive)
                 if c is not None]
    if any(evaluable) != all(evaluable):
        raise InconsistentConditions(f"unimodularity conditions disagree: {residuals}")
    return UnimodularityReport(
        haar_tracial=haar_tracial, weights_equal=weights_equal, q_trivial=q_trivial,
        antipode_involutive=antipode_involutive, antipode_bounded=True,
        residuals=residuals, unimodular=all(evaluable),
    )


# ---------------------------------------------------------------------------
# the dual as a Hopf *-algebra, and biduality


def dual_as_hopf(src: IrrData, tol: Tolerance = DEFAULT_TOL) -> HopfData:
    """Assemble (A-hat, Delta-hat, e-hat, S-hat, *) as plain structure tensors."""
    if not src.finite:
        raise SpecError("dual_as_hopf needs a finite source")
    w = big_w(src, tol)
    data = dual_comult_map(w, src.haar, tol)
    alg = data.alg
    n = alg.dim

    mult3 = np.zeros((n, n, n), dtype=np.complex128)
    for b, nb in enumerate(alg.sizes):
        for i in range(nb):
            for j in range(nb):
                for kk in range(nb):
                    mult3[alg.flat(b, i, j), alg.flat(b, j, kk), alg.flat(b, i, kk)] = 1.0
    unit = alg.flatten(alg.identity())
    star_j = np.zeros((n, n))
    for b, nb in enumerate(alg.sizes):
        for i in range(nb):
            for j in range(nb):
                star_j[alg.flat(b, j, i), alg.flat(b, i, j)] = 1.0
    labels = tuple(f"E{b}_{i}{j}" for b, nb in enumerate(alg.sizes)
                   for i in range(nb) for j in range(nb))

    hopf = make_hopf(mult=mult3, unit=unit, delta3=data.c3, epsilon=data.eps_hat,
                     star_j=star_j, labels=labels)
    s_hat = find_antipode(hopf, tol)
    return hopf.with_antipode(s_hat)


def biduality_check(h: HopfData, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Build the dual Hopf *-algebra from the corep pipeline and exhibit an
    isomorphism between the second dual and h itself."""
    src = irr_data_from_host(h, tol)
    a_hat = dual_as_hopf(src, tol)
    if not verify_all(a_hat, tol).ok:
        return False

    w = big_w(src, tol)
    theta = coefficient_matrix(w)      # H' -> A-hat, phi |-> (id (x) phi)W
    if rank_of_span(list(theta), tol) != h.dim:
        return False
    if not check_morphism(theta, a_hat, dual_hopf(h), tol):
        return False

    second = dual_hopf(a_hat)
    candidates = [theta.T]
    if h.antipode is not None:
        candidates.append(h.antipode @ theta.T)
    return any(check_morphism(kappa, h, second, tol) for kappa in candidates)
