"""Free *-algebra presentations with oriented rewriting.

Words are tuples of letter names; adjoint letters are ordinary letters
related through the presentation's star map.  Rewriting is exhaustive
leftmost scanning with rules tried in listed priority order, so normal
forms are deterministic.  Termination is certified per presentation by a
weighted graded-lexicographic order that every rule must strictly decrease.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SpecError, StepLimitExceeded
from .hopfcore import CheckResult, VerificationReport
from .tenscore import DEFAULT_TOL, Tolerance, dagger, linf

__all__ = [
    "WordPoly", "Presentation", "normal_form", "star_poly", "tensor_square",
    "delta_well_defined", "eval_hom", "validate_magic", "validate_presentation",
    "graded_lex_less",
]

COEFF_EPS = 1e-12            # coefficients below this are treated as exact zeros


class WordPoly:
    """Finite linear combination of words with complex coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for word, coeff in terms.items():
                c = complex(coeff)
                if abs(c) > COEFF_EPS:
                    clean[tuple(word)] = clean.get(tuple(word), 0) + c
        self.terms = {w: c for w, c in clean.items() if abs(c) > COEFF_EPS}

    @classmethod
    def zero(cls) -> "WordPoly":
        return cls({})

    @classmethod
    def one(cls) -> "WordPoly":
        return cls({(): 1.0})

    @classmethod
    def monomial(cls, word, coeff=1.0) -> "WordPoly":
        return cls({tuple(word): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def max_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def truncated(self, cap: int) -> "WordPoly":
        return WordPoly({w: c for w, c in self.terms.items() if len(w) <= cap})

    def __add__(self, other: "WordPoly") -> "WordPoly":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return WordPoly(terms)

    def __neg__(self) -> "WordPoly":
        return WordPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "WordPoly") -> "WordPoly":
        return self + (-other)

    def scaled(self, scalar) -> "WordPoly":
        return WordPoly({w: scalar * c for w, c in self.terms.items()})

    def __mul__(self, other: "WordPoly") -> "WordPoly":
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                terms[w] = terms.get(w, 0) + c1 * c2
        return WordPoly(terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            name = "*".join(w) if w else "1"
            bits.append(f"({c:.6g})·{name}")
        return " + ".join(bits)


def star_poly(p: WordPoly, star_map: dict) -> WordPoly:
    """Formal adjoint: reverse each word, star each letter, conjugate coefficients."""
    terms = {}
    for w, c in p.terms.items():
        sw = tuple(star_map[l] for l in reversed(w))
        terms[sw] = terms.get(sw, 0) + np.conjugate(c)
    return WordPoly(terms)


@dataclass(frozen=True, eq=False)
class Presentation:
    """Generators with adjoints, relations, and an oriented terminating rule set.

    precedence lists every letter in ascending rank for the tie-breaking
    lexicographic comparison; weights assigns the grading (default 1).
    """

    generators: tuple
    star_map: dict
    relations: tuple
    rules: tuple              # ((lhs word, rhs WordPoly), ...) in priority order
    parameters: dict = field(default_factory=dict)
    weights: dict = field(default_factory=dict)
    precedence: tuple = ()
    delta_gens: dict | None = None

    @property
    def letters(self) -> tuple:
        return tuple(self.star_map.keys())

    def weight(self, word) -> int:
        return sum(self.weights.get(l, 1) for l in word)


def graded_lex_less(w1, w2, weights: dict, rank: dict) -> bool:
    """True when w1 is strictly smaller: lower weight, else first differing
    letter has lower rank, else w1 is a proper prefix."""
    g1 = sum(weights.get(l, 1) for l in w1)
    g2 = sum(weights.get(l, 1) for l in w2)
    if g1 != g2:
        return g1 < g2
    for a, b in zip(w1, w2):
        if rank[a] != rank[b]:
            return rank[a] < rank[b]
    return len(w1) < len(w2)


def _find_redex(word, rules):
    """First rule in priority order that matches anywhere; its leftmost spot."""
    for lhs, rhs in rules:
        k = len(lhs)
        for pos in range(len(word) - k + 1):
            if word[pos:pos + k] == lhs:
                return pos, lhs, rhs
    return None


def normal_form(p: WordPoly, pres: Presentation, max_steps: int = 10000) -> WordPoly:
    """Fixpoint of exhaustive rewriting.  Each step applies the
    highest-priority rule that matches, at its leftmost occurrence, so normal
    forms are deterministic and listed priority is global: a lower rule never
    fires while a higher one still matches somewhere in the word."""
    current = p
    steps = 0
    while True:
        progressed = False
        out = {}
        for word in sorted(current.terms, key=lambda w: (len(w), w)):
            coeff = current.terms[word]
            hit = _find_redex(word, pres.rules)
            if hit is None:
                out[word] = out.get(word, 0) + coeff
                continue
            steps += 1
            if steps > max_steps:
                raise StepLimitExceeded(f"rewriting exceeded {max_steps} steps")
            progressed = True
            pos, lhs, rhs = hit
            prefix, suffix = word[:pos], word[pos + len(lhs):]
            for rw, rc in rhs.terms.items():
                w = prefix + rw + suffix
                out[w] = out.get(w, 0) + coeff * rc
        current = WordPoly(out)
        if not progressed:
            return current


def validate_presentation(pres: Presentation, max_steps: int = 100000) -> VerificationReport:
    """Relations normalize to zero and every rule decreases the declared order."""
    rank = {l: i for i, l in enumerate(pres.precedence or pres.letters)}
    checks = []
    reducing = True
    for lhs, rhs in pres.rules:
        for w in rhs.terms:
            if not graded_lex_less(w, lhs, pres.weights, rank):
                reducing = False
    checks.append(CheckResult("rules-reduce-order", 0.0 if reducing else 1.0, reducing))
    worst = 0.0
    for rel in pres.relations:
        worst = max(worst, normal_form(rel, pres, max_steps).max_coeff())
    checks.append(CheckResult("relations-normalize-to-zero", float(worst), worst <= 1e-9))
    return VerificationReport(tuple(checks))


# ---------------------------------------------------------------------------
# tensor square and coproduct well-definedness


def _primed(letter: str) -> str:
    return letter + "'"


def tensor_square(pres: Presentation) -> Presentation:
    """Doubled alphabet a(x)1 / 1(x)b with the cross-commutation rule
    (b', a) -> (a, b') pushing primed letters right."""
    letters = pres.letters
    star_map = dict(pres.star_map)
    star_map.update({_primed(l): _primed(s) for l, s in pres.star_map.items()})

    def prime_poly(p: WordPoly) -> WordPoly:
        return WordPoly({tuple(_primed(l) for l in w): c for w, c in p.terms.items()})

    def primed_rule(lhs, rhs):
        return tuple(_primed(l) for l in lhs), prime_poly(rhs)

    # Single-letter rules substitute a generator by a sum; they must rank
    # below the cross-commutation so products of like-primed letters get
    # sorted adjacent and cancel before any substitution expands them.
    products = [r for r in pres.rules if len(r[0]) > 1]
    substitutions = [r for r in pres.rules if len(r[0]) == 1]
    rules = products + [primed_rule(*r) for r in products]
    for b in letters:
        for a in letters:
            rules.append(((_primed(b), a), WordPoly.monomial((a, _primed(b)))))
    rules += substitutions + [primed_rule(*r) for r in substitutions]

    weights = dict(pres.weights)
    weights.update({_primed(l): pres.weights.get(l, 1) for l in letters})
    precedence = tuple(pres.precedence or letters) + tuple(
        _primed(l) for l in (pres.precedence or letters))
    return Presentation(
        generators=pres.generators + tuple(_primed(g) for g in pres.generators),
        star_map=star_map, relations=(), rules=tuple(rules),
        parameters=dict(pres.parameters), weights=weights, precedence=precedence,
    )


def delta_well_defined(pres: Presentation, delta_on_gens: dict | None = None,
                       degree_cap: int = 6, max_steps: int = 100000) -> VerificationReport:
    """Substitute generator coproduct images into every relation and check the
    result normalizes to zero in the tensor-square presentation, up to degree_cap."""
    images = delta_on_gens if delta_on_gens is not None else pres.delta_gens
    if images is None:
        raise SpecError("presentation carries no coproduct data")
    sq = tensor_square(pres)
    full = dict(images)
    for l, img in list(images.items()):
        full.setdefault(pres.star_map[l], star_poly(img, sq.star_map))

    checks = []
    for idx, rel in enumerate(pres.relations):
        total = WordPoly.zero()
        for word, coeff in rel.terms.items():
            term = WordPoly.one()
            for letter in word:
                term = (term * full[letter]).truncated(degree_cap)
            total = total + term.scaled(coeff)
        nf = normal_form(total.truncated(degree_cap), sq, max_steps)
        res = nf.max_coeff()
        checks.append(CheckResult(f"delta-relation-{idx}", float(res), res <= 1e-9))
    return VerificationReport(tuple(checks))


# ---------------------------------------------------------------------------
# concrete representations


def eval_hom(pres: Presentation, assignment: dict, tol: Tolerance = DEFAULT_TOL) -> VerificationReport:
    """Substitute matrices for generators and measure every relation's residual."""
    mats = {}
    for letter, m in assignment.items():
        mats[letter] = np.asarray(m, dtype=np.complex128)
    for letter in pres.letters:
        if letter not in mats:
            partner = pres.star_map[letter]
            if partner not in mats:
                raise SpecError(f"no matrix for generator {letter}")
            mats[letter] = dagger(mats[partner])
    dims = {m.shape for m in mats.values()}
    if len(dims) != 1 or any(a != b for a, b in dims):
        raise SpecError(f"assignment matrices must share one square shape, got {dims}")
    d = next(iter(dims))[0]
    eye = np.eye(d, dtype=np.complex128)

    checks = []
    for idx, rel in enumerate(pres.relations):
        acc = np.zeros((d, d), dtype=np.complex128)
        scale = 1.0
        for word, coeff in rel.terms.items():
            m = eye
            for letter in word:
                m = m @ mats[letter]
            acc = acc + coeff * m
            scale = max(scale, linf(m) * abs(coeff))
        res = linf(acc)
        checks.append(CheckResult(f"relation-{idx}", float(res),
                                  bool(res <= 100 * tol.bound(scale))))
    return VerificationReport(tuple(checks))


def validate_magic(u, tol: Tolerance = DEFAULT_TOL) -> VerificationReport:
    """Entrywise projections, rows and columns summing to 1, and the derived
    orthogonality relations along rows and columns."""
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim == 2:
        u = u.reshape(u.shape[0], u.shape[1], 1, 1)
    if u.ndim != 4 or u.shape[0] != u.shape[1] or u.shape[2] != u.shape[3]:
        raise SpecError(f"magic unitary must be square blocks in a square layout, got {u.shape}")
    n, d = u.shape[0], u.shape[2]
    eye = np.eye(d, dtype=np.complex128)
    scale = max(1.0, linf(u))

    adj = max(linf(u[j, k] - dagger(u[j, k])) for j in range(n) for k in range(n))
    idem = max(linf(u[j, k] @ u[j, k] - u[j, k]) for j in range(n) for k in range(n))
    rows = max(linf(sum(u[j, k] for k in range(n)) - eye) for j in range(n))
    cols = max(linf(sum(u[j, k] for j in range(n)) - eye) for k in range(n))
    row_orth = 0.0
    col_orth = 0.0
    for j in range(n):
        for k in range(n):
            for l in range(n):
                if k == l:
                    continue
                row_orth = max(row_orth, linf(u[j, k] @ u[j, l]))
                col_orth = max(col_orth, linf(u[k, j] @ u[l, j]))

    def check(name, res, sc):
        return CheckResult(name, float(res), bool(res <= 100 * tol.bound(sc)))

    return VerificationReport((
        check("entries-self-adjoint", adj, scale),
        check("entries-idempotent", idem, scale ** 2),
        check("row-sums-unit", rows, max(1.0, n * scale)),
        check("column-sums-unit", cols, max(1.0, n * scale)),
        check("row-orthogonality", row_orth, scale ** 2),
        check("column-orthogonality", col_orth, scale ** 2),
    ))
