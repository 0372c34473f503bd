"""Dense complex tensor kernels.

Coordinate conventions, fixed here once and used by every other module:

* matrices act on coordinate columns;
* in a tensor product the leftmost factor carries the major index, so
  e_i (x) e_j of C^n (x) C^m sits at flat position i*m + j;
* antilinear maps are stored as a complex matrix J applied after
  entrywise conjugation, v |-> J @ conj(v).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoSolution

_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = 1e-9
    rel_tol: float = 1e-9

    def __post_init__(self):
        if not (0.0 <= self.abs_tol < 1.0 and 0.0 <= self.rel_tol < 1.0):
            raise ValueError("tolerances must lie in [0, 1)")

    def bound(self, scale=1.0):
        return self.abs_tol + self.rel_tol * scale

    def close(self, residual, scale=1.0):
        return residual <= self.bound(scale)


DEFAULT_TOL = Tolerance()


def as_cmatrix(entries) -> np.ndarray:
    """Coerce to a finite complex128 2-d array."""
    a = np.array(entries, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def dagger(a) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def linf(a) -> float:
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a)))


def kron(a, b) -> np.ndarray:
    """Tensor product with the leftmost factor major: (A(x)B)[(i,k),(j,l)] = A[i,j] B[k,l]."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def flip(n: int, m: int) -> np.ndarray:
    """Permutation matrix of the flip e_i (x) e_j |-> e_j (x) e_i, C^n (x) C^m -> C^m (x) C^n."""
    if n < 1 or m < 1:
        raise ValueError("leg dimensions must be >= 1")
    t = np.zeros((n * m, n * m), dtype=np.complex128)
    i = np.repeat(np.arange(n), m)
    j = np.tile(np.arange(m), n)
    t[j * n + i, i * m + j] = 1.0
    return t


def leg_embed(x, legs, dims) -> np.ndarray:
    """Embed the square matrix x, acting on the listed legs, as identity on all other legs.

    Legs are numbered from 1.  The order of `legs` is the order of the
    tensor factors x acts on, e.g. leg_embed(W, [2, 3], dims) is W_23.
    """
    x = as_cmatrix(x)
    legs = list(legs)
    dims = [int(d) for d in dims]
    k = len(dims)
    if len(set(legs)) != len(legs):
        raise ValueError("legs must be distinct")
    if any(l < 1 or l > k for l in legs):
        raise ValueError("leg index out of range")
    sub = 1
    for l in legs:
        sub *= dims[l - 1]
    if x.shape != (sub, sub):
        raise ValueError(f"matrix shape {x.shape} does not match legs of total dimension {sub}")
    if 2 * k > len(_LETTERS):
        raise ValueError("too many legs")

    out_sym = list(_LETTERS[:k])
    in_sym = list(_LETTERS[k:2 * k])
    xt = x.reshape([dims[l - 1] for l in legs] + [dims[l - 1] for l in legs])
    x_sub = "".join(out_sym[l - 1] for l in legs) + "".join(in_sym[l - 1] for l in legs)
    operands = [xt]
    subs = [x_sub]
    for t in range(1, k + 1):
        if t not in legs:
            operands.append(np.eye(dims[t - 1], dtype=np.complex128))
            subs.append(out_sym[t - 1] + in_sym[t - 1])
    spec = ",".join(subs) + "->" + "".join(out_sym) + "".join(in_sym)
    total = int(np.prod(dims))
    return np.einsum(spec, *operands).reshape(total, total)


def rank_of_span(vectors, tol: Tolerance = DEFAULT_TOL) -> int:
    """Numerical rank of the span of a list of equally-shaped arrays."""
    vecs = [np.asarray(v, dtype=np.complex128).ravel() for v in vectors]
    if not vecs:
        return 0
    shape0 = np.asarray(vectors[0]).shape
    for v in vectors:
        if np.asarray(v).shape != shape0:
            raise ValueError("all vectors must have the same shape")
    m = np.vstack(vecs)
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] <= tol.abs_tol:
        return 0
    return int(np.sum(s >= tol.rel_tol * s[0]))


def orthonormal_basis(vectors, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (rows) of the span of the given vectors (flattened)."""
    vecs = [np.asarray(v, dtype=np.complex128).ravel() for v in vectors]
    if not vecs:
        return np.zeros((0, 0), dtype=np.complex128)
    m = np.vstack(vecs)
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    if s.size == 0 or s[0] <= tol.abs_tol:
        return np.zeros((0, m.shape[1]), dtype=np.complex128)
    r = int(np.sum(s >= tol.rel_tol * s[0]))
    return vh[:r]


def psd_check(g, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff g is Hermitian within tol and has no eigenvalue below -abs_tol."""
    g = as_cmatrix(g)
    if g.shape[0] != g.shape[1]:
        raise ValueError("psd_check needs a square matrix")
    scale = max(1.0, linf(g))
    if linf(g - dagger(g)) > tol.bound(scale):
        return False
    w = np.linalg.eigvalsh((g + dagger(g)) / 2.0)
    if w.size == 0:
        return True
    return bool(w.min() >= -tol.abs_tol)


def nullspace(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Columns span the numerical kernel of a."""
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0:
        return np.eye(a.shape[1], dtype=np.complex128)
    u, s, vh = np.linalg.svd(a, full_matrices=True)
    if s.size == 0 or s[0] <= tol.abs_tol:
        return np.eye(a.shape[1], dtype=np.complex128)
    r = int(np.sum(s >= tol.rel_tol * s[0]))
    return dagger(vh[r:])


@dataclass(frozen=True, eq=False)
class LinearSolution:
    x: np.ndarray
    residual: float
    nullspace: np.ndarray  # columns span the kernel of the coefficient matrix

    @property
    def unique(self) -> bool:
        return self.nullspace.shape[1] == 0


def solve_linear(a, b, tol: Tolerance = DEFAULT_TOL) -> LinearSolution:
    """Least-squares solve of a @ x = b; raises NoSolution when the residual exceeds tol."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128).ravel()
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"incompatible shapes {a.shape} and {b.shape}")
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    residual = linf(a @ x - b)
    scale = max(1.0, linf(b))
    if residual > tol.bound(scale):
        raise NoSolution(f"linear system unsolvable, residual {residual:.3e}", residual=residual)
    return LinearSolution(x=x, residual=residual, nullspace=nullspace(a, tol))
