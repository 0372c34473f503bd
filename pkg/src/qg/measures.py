"""Linear functionals on finite quantum groups: states, convolution, and the
Haar state by two independent constructions (direct linear solve, and Cesaro
averaging of convolution powers of a faithful state)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import HostMismatch, NoConvergence, NoSolution, NotAState
from .hopfcore import HopfData
from .tenscore import DEFAULT_TOL, Tolerance, linf, nullspace, psd_check

__all__ = [
    "Functional", "HaarResult",
    "convolve_functionals", "is_state", "haar_solve", "haar_cesaro",
]


@dataclass(frozen=True, eq=False)
class Functional:
    """Covector on a HopfData host; phi(b_i) = coeffs[i]."""

    host: HopfData
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128).reshape(self.host.dim)
        if not np.all(np.isfinite(c)):
            raise ValueError("functional coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    def __call__(self, x) -> complex:
        """Evaluate on an element given by its coordinate vector."""
        return complex(np.dot(self.coeffs, np.asarray(x, dtype=np.complex128)))


@dataclass(frozen=True, eq=False)
class HaarResult:
    state: Functional
    method: str               # "solve" or "cesaro"
    residual: float
    iterations: int | None = None


def convolve_functionals(phi: Functional, psi: Functional) -> Functional:
    """(phi * psi)(a) = (phi (x) psi)(Delta(a))."""
    if phi.host is not psi.host:
        raise HostMismatch("functionals live on different hosts")
    coeffs = np.einsum("kij,i,j->k", phi.host.delta3, phi.coeffs, psi.coeffs)
    return Functional(host=phi.host, coeffs=coeffs)


def is_state(phi: Functional, tol: Tolerance = DEFAULT_TOL) -> bool:
    """phi(1) = 1 and the Gram matrix [phi(b_i* b_j)] is PSD."""
    h = phi.host
    if abs(phi(h.unit) - 1.0) > tol.bound(1.0):
        return False
    gram = np.einsum("pi,pjk,k->ij", h.star.j, h.mult, phi.coeffs)
    return psd_check(gram, tol)


def _invariance_residual(host: HopfData, hv: np.ndarray) -> float:
    """Max residual of left and right invariance against basis functionals."""
    d = host.delta3
    target = np.outer(hv, host.unit)
    left = np.einsum("kip,i->kp", d, hv)   # (h * e_p)(b_k)
    right = np.einsum("kpj,j->kp", d, hv)  # (e_p * h)(b_k)
    return max(linf(left - target), linf(right - target))


def haar_solve(h: HopfData, tol: Tolerance = DEFAULT_TOL) -> HaarResult:
    """Haar state as the unique normalized solution of the invariance system.

    Left and right invariance, (id (x) h)Delta(a) = h(a) 1 and its mirror,
    are linear in the n unknown values h(b_k); the nullspace of the stacked
    system must be one-dimensional.
    """
    n = h.dim
    d = h.delta3
    # rows (a,i), columns j: d[a,i,j] - unit_i delta_{j,a}
    b_left = d.reshape(n * n, n).copy()
    for a in range(n):
        b_left[a * n:(a + 1) * n, a] -= h.unit
    # rows (a,j), columns i: d[a,i,j] - unit_j delta_{i,a}
    b_right = d.transpose(0, 2, 1).reshape(n * n, n).copy()
    for a in range(n):
        b_right[a * n:(a + 1) * n, a] -= h.unit

    system = np.vstack([b_left, b_right])
    ker = nullspace(system, tol)
    if ker.shape[1] == 0:
        raise NoSolution("no invariant functional: not a finite quantum group")
    if ker.shape[1] > 1:
        raise NoSolution(f"invariant functionals form a {ker.shape[1]}-dimensional space")
    v = ker[:, 0]
    z = np.dot(h.unit, v)
    if abs(z) <= tol.abs_tol:
        raise NoSolution("invariant functional vanishes on the unit")
    hv = v / z

    state = Functional(host=h, coeffs=hv)
    if not is_state(state, tol):
        raise NotAState("invariant functional exists but is not positive")
    residual = max(linf(system @ hv), _invariance_residual(h, hv))
    return HaarResult(state=state, method="solve", residual=float(residual))


def _default_omega(h: HopfData, seed: int = 0) -> Functional:
    """omega(a) = Tr(L_a G) / Tr(G) with G = M* M for seeded random M.

    Faithful with probability one when the left regular representation is a
    *-representation in the standard inner product (true for all catalog
    hosts).
    """
    n = h.dim
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    g = np.conj(m).T @ m
    w = np.einsum("ijk,jk->i", h.mult, g) / np.trace(g)
    return Functional(host=h, coeffs=w)


def haar_cesaro(h: HopfData, omega: Functional | None = None, max_iter: int = 10000,
                tol: Tolerance = DEFAULT_TOL, seed: int = 0) -> HaarResult:
    """Haar state as the limit of restarted Cesaro means of convolution powers.

    Each outer iteration replaces mu by the mean (1/m) sum_{k<=m} mu^{*k}
    with m = 8; the map is a strict contraction toward the Haar idempotent
    whenever the starting state is faithful, so successive means converge
    geometrically.  Stops when successive means differ by less than tol.
    """
    if omega is None:
        omega = _default_omega(h, seed)
    elif omega.host is not h:
        raise HostMismatch("omega lives on a different host")
    if not is_state(omega, tol):
        raise NotAState("starting functional omega is not a state")

    block = 8
    d = h.delta3
    mu = omega.coeffs
    thr = tol.bound(1.0)
    diff = np.inf
    for it in range(1, max_iter + 1):
        acc = np.zeros_like(mu)
        power = mu
        acc += power
        for _ in range(block - 1):
            power = np.einsum("kij,i,j->k", d, power, mu)
            acc += power
        new = acc / block
        diff = linf(new - mu)
        mu = new
        if diff < thr:
            break
    else:
        raise NoConvergence("Cesaro means did not stabilize",
                            iterations=max_iter, residual=float(diff))

    state = Functional(host=h, coeffs=mu)
    residual = _invariance_residual(h, mu)
    if residual > 1e3 * tol.bound(1.0):
        raise NoConvergence("Cesaro limit is not invariant",
                            iterations=it, residual=float(residual))
    if not is_state(state, tol):
        raise NotAState("Cesaro limit failed the state check")
    return HaarResult(state=state, method="cesaro", residual=float(residual), iterations=it)
