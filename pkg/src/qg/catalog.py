"""Deterministic builders for the worked examples.

Finite groups ship as explicit Cayley data (Z_n for n <= 12, S3, S4, D4, Q8),
each with a permutation realization used for defining corepresentations.
From a group we build the group algebra and the function algebra; alongside
these live the magic-unitary examples, the S_n^+ and SU_q(2) presentations,
and synthetic non-Kac dual data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .corep import Corep, QMatrix
from .dualqg import IrrData, truncated_irr_data
from .errors import SpecError
from .freestar import Presentation, WordPoly
from .hopfcore import HopfData, make_hopf
from .tenscore import DEFAULT_TOL, dagger, linf

__all__ = [
    "FiniteGroupSpec", "validate_group", "group", "group_names",
    "group_algebra", "function_algebra", "permutation_corep",
    "idempotent_monoid_bialgebra", "magic_block_example",
    "sn_plus_presentation", "suq2_presentation", "synthetic_nonkac",
    "hopf_entries",
]


@dataclass(frozen=True, eq=False)
class FiniteGroupSpec:
    """A finite group as an explicit multiplication table on 0..order-1."""

    name: str
    order: int
    cayley: tuple              # cayley[i][j] = index of g_i g_j
    identity: int
    inverse: tuple
    labels: tuple
    perm_action: tuple         # perm_action[g][x]: a faithful permutation action


def validate_group(g: FiniteGroupSpec) -> None:
    n = g.order
    t = np.array(g.cayley, dtype=int)
    if t.shape != (n, n):
        raise SpecError(f"Cayley table shape {t.shape} does not match order {n}")
    for i in range(n):
        if sorted(t[i]) != list(range(n)) or sorted(t[:, i]) != list(range(n)):
            raise SpecError("Cayley table is not a Latin square")
    if not np.array_equal(t[t, :], t[np.arange(n)[:, None, None], t[None, :, :]]):
        raise SpecError("Cayley table is not associative")
    e = g.identity
    if not (np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))):
        raise SpecError("identity index is wrong")
    for j in range(n):
        if t[g.inverse[j], j] != e or t[j, g.inverse[j]] != e:
            raise SpecError("inverse map is wrong")
    act = g.perm_action
    pts = len(act[e])
    if list(act[e]) != list(range(pts)):
        raise SpecError("permutation action does not fix the identity to id")
    for i in range(n):
        for j in range(n):
            composed = tuple(act[i][act[j][x]] for x in range(pts))
            if composed != tuple(act[t[i, j]]):
                raise SpecError("permutation action is not a homomorphism")


def _from_permutations(name: str, elems) -> FiniteGroupSpec:
    elems = sorted(elems)
    index = {p: i for i, p in enumerate(elems)}
    n = len(elems)
    pts = len(elems[0])
    cayley = tuple(tuple(index[tuple(p[q[x]] for x in range(pts))] for q in elems)
                   for p in elems)
    identity = index[tuple(range(pts))]
    inverse = []
    for p in elems:
        inv = [0] * pts
        for x in range(pts):
            inv[p[x]] = x
        inverse.append(index[tuple(inv)])
    labels = tuple("".join(map(str, p)) for p in elems)
    return FiniteGroupSpec(name=name, order=n, cayley=cayley, identity=identity,
                           inverse=tuple(inverse), labels=labels, perm_action=tuple(elems))


def _zn(n: int) -> FiniteGroupSpec:
    cayley = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    perm = tuple(tuple((i + x) % n for x in range(n)) for i in range(n))
    return FiniteGroupSpec(name=f"Z{n}", order=n, cayley=cayley, identity=0,
                           inverse=tuple((-i) % n for i in range(n)),
                           labels=tuple(str(i) for i in range(n)), perm_action=perm)


def _sym(n: int) -> FiniteGroupSpec:
    return _from_permutations(f"S{n}", itertools.permutations(range(n)))


def _d4() -> FiniteGroupSpec:
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    elems = {tuple(range(4))}
    frontier = [tuple(range(4))]
    while frontier:
        p = frontier.pop()
        for gen in (r, s):
            q = tuple(gen[p[x]] for x in range(4))
            if q not in elems:
                elems.add(q)
                frontier.append(q)
    return _from_permutations("D4", elems)


_Q8_TABLE = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
    ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
    ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
    ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
}


def _q8() -> FiniteGroupSpec:
    elems = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"),
             (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]
    index = {e: i for i, e in enumerate(elems)}

    def mul(a, b):
        s, l = _Q8_TABLE[(a[1], b[1])]
        return (a[0] * b[0] * s, l)

    cayley = tuple(tuple(index[mul(a, b)] for b in elems) for a in elems)
    inverse = []
    for i, a in enumerate(elems):
        inverse.append(next(j for j, b in enumerate(elems) if mul(a, b) == (1, "1")))
    labels = tuple(("" if s == 1 else "-") + l for s, l in elems)
    # regular action by left translation
    perm = tuple(tuple(cayley[g][x] for x in range(8)) for g in range(8))
    return FiniteGroupSpec(name="Q8", order=8, cayley=cayley, identity=0,
                           inverse=tuple(inverse), labels=labels, perm_action=perm)


_GROUPS = {}
for _n in range(1, 13):
    _GROUPS[f"Z{_n}"] = _zn(_n)
_GROUPS["S3"] = _sym(3)
_GROUPS["S4"] = _sym(4)
_GROUPS["D4"] = _d4()
_GROUPS["Q8"] = _q8()


def group_names() -> tuple:
    return tuple(_GROUPS.keys())


def group(name: str) -> FiniteGroupSpec:
    key = name.upper() if name.upper() in _GROUPS else name
    if key not in _GROUPS:
        raise SpecError(f"unknown group {name!r}; available: {', '.join(_GROUPS)}")
    return _GROUPS[key]


# ---------------------------------------------------------------------------
# Hopf algebras from groups


def group_algebra(g: FiniteGroupSpec) -> HopfData:
    """Basis = group elements, Delta(g) = g(x)g, S(g) = g^{-1}, g* = g^{-1}."""
    validate_group(g)
    n = g.order
    t = np.array(g.cayley, dtype=int)
    mult = np.zeros((n, n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            mult[i, j, t[i, j]] = 1.0
    unit = np.zeros(n, dtype=np.complex128)
    unit[g.identity] = 1.0
    delta3 = np.zeros((n, n, n), dtype=np.complex128)
    for k in range(n):
        delta3[k, k, k] = 1.0
    epsilon = np.ones(n, dtype=np.complex128)
    s = np.zeros((n, n), dtype=np.complex128)
    j_mat = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        s[g.inverse[j], j] = 1.0
        j_mat[g.inverse[j], j] = 1.0
    return make_hopf(mult=mult, unit=unit, delta3=delta3, epsilon=epsilon,
                     antipode=s, star_j=j_mat, labels=g.labels)


def function_algebra(g: FiniteGroupSpec) -> HopfData:
    """Basis = indicator functions, pointwise product, Delta from the table."""
    validate_group(g)
    n = g.order
    t = np.array(g.cayley, dtype=int)
    mult = np.zeros((n, n, n), dtype=np.complex128)
    for i in range(n):
        mult[i, i, i] = 1.0
    unit = np.ones(n, dtype=np.complex128)
    delta3 = np.zeros((n, n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            delta3[t[i, j], i, j] = 1.0
    epsilon = np.zeros(n, dtype=np.complex128)
    epsilon[g.identity] = 1.0
    s = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        s[g.inverse[j], j] = 1.0
    return make_hopf(mult=mult, unit=unit, delta3=delta3, epsilon=epsilon,
                     antipode=s, star_j=np.eye(n), labels=g.labels)


def permutation_corep(g: FiniteGroupSpec, h: HopfData) -> Corep:
    """Defining corep of the function algebra: v_ij = indicator of {g: g(j)=i}."""
    pts = len(g.perm_action[0])
    coeffs = np.zeros((pts, pts, g.order), dtype=np.complex128)
    for idx, perm in enumerate(g.perm_action):
        for j in range(pts):
            coeffs[perm[j], j, idx] = 1.0
    return Corep(host=h, size=pts, coeffs=coeffs, unitary=True)


def idempotent_monoid_bialgebra() -> HopfData:
    """The 2-element monoid {1, z : z^2 = z}: a *-bialgebra with no antipode."""
    mult = np.zeros((2, 2, 2), dtype=np.complex128)
    mult[0, 0, 0] = 1.0
    mult[0, 1, 1] = mult[1, 0, 1] = mult[1, 1, 1] = 1.0
    unit = np.array([1.0, 0.0], dtype=np.complex128)
    delta3 = np.zeros((2, 2, 2), dtype=np.complex128)
    delta3[0, 0, 0] = 1.0
    delta3[1, 1, 1] = 1.0
    epsilon = np.ones(2, dtype=np.complex128)
    return make_hopf(mult=mult, unit=unit, delta3=delta3, epsilon=epsilon,
                     antipode=None, star_j=np.eye(2), labels=("1", "z"))


def hopf_entries():
    """All (name, HopfData) catalog pairs: cg_* group algebras, c_* function algebras."""
    for name, spec in _GROUPS.items():
        yield f"cg_{name.lower()}", group_algebra(spec)
        yield f"c_{name.lower()}", function_algebra(spec)


# ---------------------------------------------------------------------------
# magic unitaries


def magic_block_example(p, q) -> np.ndarray:
    """[[1-p, p, 0, 0], [p, 1-p, 0, 0], [0, 0, 1-q, q], [0, 0, q, 1-q]]."""
    p = np.atleast_2d(np.asarray(p, dtype=np.complex128))
    q = np.atleast_2d(np.asarray(q, dtype=np.complex128))
    if p.shape != q.shape or p.shape[0] != p.shape[1]:
        raise SpecError("p and q must be square matrices of the same size")
    for name, m in (("p", p), ("q", q)):
        if linf(m - dagger(m)) > 100 * DEFAULT_TOL.bound(max(1.0, linf(m))):
            raise SpecError(f"{name} is not self-adjoint")
        if linf(m @ m - m) > 100 * DEFAULT_TOL.bound(max(1.0, linf(m)) ** 2):
            raise SpecError(f"{name} is not idempotent")
    d = p.shape[0]
    eye = np.eye(d, dtype=np.complex128)
    u = np.zeros((4, 4, d, d), dtype=np.complex128)
    u[0, 0] = eye - p
    u[0, 1] = p
    u[1, 0] = p
    u[1, 1] = eye - p
    u[2, 2] = eye - q
    u[2, 3] = q
    u[3, 2] = q
    u[3, 3] = eye - q
    return u


# ---------------------------------------------------------------------------
# presentations


def sn_plus_presentation(n: int) -> Presentation:
    """Free permutation group presentation: n^2 self-adjoint idempotents with
    row/column orthogonality and sum-to-unit eliminations."""
    if n < 1:
        raise SpecError("n must be at least 1")
    gen = [[f"u{j}_{k}" for k in range(n)] for j in range(n)]
    letters = [gen[j][k] for j in range(n) for k in range(n)]
    star_map = {l: l for l in letters}

    rules = []
    for l in letters:
        rules.append(((l, l), WordPoly.monomial((l,))))
    for j in range(n):
        for k in range(n):
            for l in range(n):
                if k != l:
                    rules.append(((gen[j][k], gen[j][l]), WordPoly.zero()))
                    rules.append(((gen[k][j], gen[l][j]), WordPoly.zero()))
    # eliminations last: last column from row sums, last row from column sums
    for j in range(n):
        rhs = WordPoly.one() - sum((WordPoly.monomial((gen[j][k],)) for k in range(n - 1)),
                                   WordPoly.zero())
        rules.append(((gen[j][n - 1],), rhs))
    for k in range(n - 1):
        rhs = WordPoly.one() - sum((WordPoly.monomial((gen[j][k],)) for j in range(n - 1)),
                                   WordPoly.zero())
        rules.append(((gen[n - 1][k],), rhs))

    relations = []
    for j in range(n):
        for k in range(n):
            relations.append(WordPoly.monomial((gen[j][k], gen[j][k])) -
                             WordPoly.monomial((gen[j][k],)))
            for l in range(n):
                if k != l:
                    relations.append(WordPoly.monomial((gen[j][k], gen[j][l])))
                    relations.append(WordPoly.monomial((gen[k][j], gen[l][j])))
    for j in range(n):
        relations.append(sum((WordPoly.monomial((gen[j][k],)) for k in range(n)),
                             WordPoly.zero()) - WordPoly.one())
        relations.append(sum((WordPoly.monomial((gen[k][j],)) for k in range(n)),
                             WordPoly.zero()) - WordPoly.one())

    # precedence: inner entries lowest, then last row, then last column, corner highest
    inner = [gen[j][k] for j in range(n - 1) for k in range(n - 1)]
    last_row = [gen[n - 1][k] for k in range(n - 1)]
    last_col = [gen[j][n - 1] for j in range(n - 1)]
    precedence = tuple(inner + last_row + last_col + [gen[n - 1][n - 1]])

    delta_gens = {gen[j][k]: WordPoly({(gen[j][l], gen[l][k] + "'"): 1.0 for l in range(n)})
                  for j in range(n) for k in range(n)}
    return Presentation(
        generators=tuple(letters), star_map=star_map, relations=tuple(relations),
        rules=tuple(rules), parameters={"n": n},
        weights={l: 1 for l in letters}, precedence=precedence, delta_gens=delta_gens,
    )


def suq2_presentation(q: float) -> Presentation:
    """Quantum SU_q(2) relations, oriented toward the normal-ordered basis
    with alpha powers leftmost and gamma* before gamma."""
    if q == 0:
        raise SpecError("q must be nonzero")
    q = float(q)
    a, as_, g, gs = "a", "a*", "g", "g*"
    star_map = {a: as_, as_: a, g: gs, gs: g}
    one = WordPoly.one()
    rules = (
        ((g, a), WordPoly.monomial((a, g), 1.0 / q)),
        ((gs, a), WordPoly.monomial((a, gs), 1.0 / q)),
        ((g, as_), WordPoly.monomial((as_, g), q)),
        ((gs, as_), WordPoly.monomial((as_, gs), q)),
        ((as_, a), one - WordPoly.monomial((gs, g))),
        ((a, as_), one - WordPoly.monomial((gs, g), q * q)),
        ((g, gs), WordPoly.monomial((gs, g))),
    )
    relations = (
        WordPoly.monomial((a, g)) - WordPoly.monomial((g, a), q),
        WordPoly.monomial((a, gs)) - WordPoly.monomial((gs, a), q),
        WordPoly.monomial((g, gs)) - WordPoly.monomial((gs, g)),
        WordPoly.monomial((as_, a)) + WordPoly.monomial((gs, g)) - one,
        WordPoly.monomial((a, as_)) + WordPoly.monomial((gs, g), q * q) - one,
    )
    delta_gens = {
        a: WordPoly({(a, "a'"): 1.0, (gs, "g'"): -q}),
        g: WordPoly({(g, "a'"): 1.0, (as_, "g'"): 1.0}),
    }
    return Presentation(
        generators=(a, g), star_map=star_map, relations=relations, rules=rules,
        parameters={"q": q}, weights={a: 2, as_: 2, g: 1, gs: 1},
        precedence=(a, as_, gs, g), delta_gens=delta_gens,
    )


# ---------------------------------------------------------------------------
# synthetic non-Kac data


def synthetic_nonkac(blocks) -> IrrData:
    """Truncated dual data with Q_alpha = diag(t, 1/t, 1, ...): Tr Q = Tr Q^{-1}
    exactly, non-Kac whenever some t != 1."""
    qmats = []
    for n, t in blocks:
        n = int(n)
        t = float(t)
        if n < 1:
            raise SpecError("block size must be at least 1")
        if t <= 0:
            raise SpecError("t must be positive")
        if t != 1.0 and n < 2:
            raise SpecError("a 1-dim block forces t = 1 (Tr Q = Tr Q^-1 fails otherwise)")
        diag = [t, 1.0 / t] + [1.0] * (n - 2) if t != 1.0 else [1.0] * n
        q = np.diag(np.array(diag, dtype=np.complex128))
        qmats.append(QMatrix(q=q, d=float(sum(diag))))
    return truncated_irr_data(qmats)
