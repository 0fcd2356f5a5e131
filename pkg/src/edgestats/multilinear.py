"""Multilinear polynomials with exact rational coefficients.

A polynomial is a finite map from supports (ascending tuples of variable
indices in [1..n]) to nonzero Fractions.  This module provides evaluation,
restriction, edge-indicator polynomials of hypergraphs, coefficient
thresholding back into hypergraphs, exact value distributions under
Rademacher or Bernoulli inputs, and the .mlp text format.

``exhaustive_distribution`` is exact over all assignments of the variables
that actually appear.  It recurses on one variable at a time and memoises
subdistributions modulo constant shift, which collapses the symmetric
polynomials used in the anticoncentration experiments to polynomial size
while remaining a plain exhaustive enumeration semantically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .hypergraph import Hypergraph, _trusted
from .serialize import format_rational, parse_rational

__all__ = [
    "MultilinearPoly",
    "edge_indicator_poly",
    "threshold_hypergraph",
    "constant_exceeds",
    "multiply_mod_squares",
    "ValueDistribution",
    "exhaustive_distribution",
    "parse_mlp",
    "format_mlp",
]

Support = tuple[int, ...]
InputLaw = Union[str, int, Fraction]

MAX_ACTIVE_VARS = 24


def _canonical_support(support: Iterable[int], n: int) -> Support:
    t = tuple(sorted(support))
    if len(set(t)) != len(t):
        raise ValueError(f"support {tuple(support)} repeats a variable")
    if t and (t[0] < 1 or t[-1] > n):
        raise ValueError(f"support {t} leaves the variable range [1..{n}]")
    return t


@dataclass(frozen=True)
class MultilinearPoly:
    """Immutable multilinear polynomial in variables x_1 .. x_n."""

    n: int
    terms: tuple[tuple[Support, Fraction], ...]

    @classmethod
    def from_terms(
        cls,
        n: int,
        terms: Mapping[Iterable[int], Fraction | int] | Iterable[tuple[Iterable[int], Fraction | int]],
    ) -> "MultilinearPoly":
        if n < 0:
            raise ValueError(f"variable count must be nonnegative, got {n}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Support, Fraction] = {}
        for support, coeff in items:
            s = _canonical_support(support, n)
            if s in acc:
                raise ValueError(f"duplicate term support {s}")
            c = Fraction(coeff)
            if c != 0:
                acc[s] = c
        ordered = tuple(sorted(acc.items(), key=lambda it: (len(it[0]), it[0])))
        return cls(n, ordered)

    @classmethod
    def zero(cls, n: int) -> "MultilinearPoly":
        return cls.from_terms(n, {})

    def coeffs(self) -> dict[Support, Fraction]:
        return dict(self.terms)

    def coeff(self, support: Iterable[int]) -> Fraction:
        s = tuple(sorted(support))
        for sup, c in self.terms:
            if sup == s:
                return c
        return Fraction(0)

    @property
    def degree(self) -> int:
        """Largest support size with a nonzero coefficient; 0 for the zero
        polynomial and for constants."""
        return max((len(s) for s, _ in self.terms), default=0)

    @property
    def active_variables(self) -> tuple[int, ...]:
        seen: set[int] = set()
        for s, _ in self.terms:
            seen.update(s)
        return tuple(sorted(seen))

    def evaluate(self, x: Sequence[Fraction | int] | Mapping[int, Fraction | int]) -> Fraction:
        """Value at a full input vector; x may be a length-n sequence
        (position i-1 holds x_i) or a mapping from variable index."""
        if isinstance(x, Mapping):
            lookup = {i: Fraction(v) for i, v in x.items()}
        else:
            if len(x) != self.n:
                raise ValueError(f"input vector has length {len(x)}, expected {self.n}")
            lookup = {i + 1: Fraction(v) for i, v in enumerate(x)}
        total = Fraction(0)
        for support, c in self.terms:
            prod = c
            for v in support:
                if v not in lookup:
                    raise ValueError(f"input is missing variable x_{v}")
                prod *= lookup[v]
                if prod == 0:
                    break
            total += prod
        return total

    def restrict(self, assignment: Mapping[int, Fraction | int]) -> "MultilinearPoly":
        """Fix a subset of coordinates; the result keeps the ambient n."""
        fixed = {int(i): Fraction(v) for i, v in assignment.items()}
        for i in fixed:
            if not 1 <= i <= self.n:
                raise ValueError(f"assignment fixes x_{i}, outside [1..{self.n}]")
        acc: dict[Support, Fraction] = {}
        for support, c in self.terms:
            scale = c
            free: list[int] = []
            for v in support:
                if v in fixed:
                    scale *= fixed[v]
                else:
                    free.append(v)
            if scale == 0:
                continue
            key = tuple(free)
            acc[key] = acc.get(key, Fraction(0)) + scale
        return MultilinearPoly.from_terms(self.n, acc)


def edge_indicator_poly(graph: Hypergraph) -> MultilinearPoly:
    """Sum of the edge monomials of ``graph``: on 0/1 inputs it counts the
    edges inside the set of coordinates equal to 1."""
    return MultilinearPoly(graph.n, tuple((e, Fraction(1)) for e in graph.edges))


def threshold_hypergraph(poly: MultilinearPoly, bound: Fraction | int, d: int) -> Hypergraph:
    """The d-uniform hypergraph of degree-d supports with |coefficient|
    strictly above ``bound``.  Needs d >= 1; the degree-0 analogue is the
    single flag :func:`constant_exceeds`."""
    if d < 1:
        raise ValueError("threshold_hypergraph needs d >= 1; use constant_exceeds for d = 0")
    b = Fraction(bound)
    edges = sorted(s for s, c in poly.terms if len(s) == d and abs(c) > b)
    return _trusted(poly.n, d, edges)


def constant_exceeds(poly: MultilinearPoly, bound: Fraction | int) -> bool:
    """Whether the constant coefficient has |value| strictly above ``bound``."""
    return abs(poly.coeff(())) > Fraction(bound)


def multiply_mod_squares(p: MultilinearPoly, q: MultilinearPoly) -> MultilinearPoly:
    """Product under the reduction x_i^2 = 1 (symmetric-difference
    convolution of supports).  On inputs in {-1, +1} this agrees with the
    numeric product, which is exactly the sense in which power sums like
    (x_1 + ... + x_m)^d are multilinearised here."""
    if p.n != q.n:
        raise ValueError(f"variable counts differ: {p.n} vs {q.n}")
    acc: dict[Support, Fraction] = {}
    for s1, c1 in p.terms:
        set1 = frozenset(s1)
        for s2, c2 in q.terms:
            key = tuple(sorted(set1.symmetric_difference(s2)))
            acc[key] = acc.get(key, Fraction(0)) + c1 * c2
    return MultilinearPoly.from_terms(p.n, acc)


# ---------------------------------------------------------------------------
# Exact value distributions


@dataclass(frozen=True)
class ValueDistribution:
    """Finite exact distribution of a polynomial's value: sorted atom
    tuple of (value, probability), probabilities summing to 1."""

    atoms: tuple[tuple[Fraction, Fraction], ...]

    @classmethod
    def from_dict(cls, d: Mapping[Fraction, Fraction]) -> "ValueDistribution":
        items = tuple(sorted((Fraction(v), Fraction(p)) for v, p in d.items() if p != 0))
        total = sum(p for _, p in items)
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, expected 1")
        if any(p < 0 for _, p in items):
            raise ValueError("negative probability atom")
        return cls(items)

    def as_dict(self) -> dict[Fraction, Fraction]:
        return dict(self.atoms)

    def point_probability(self, value: Fraction | int) -> Fraction:
        v = Fraction(value)
        for val, p in self.atoms:
            if val == v:
                return p
        return Fraction(0)

    def interval_probability(self, center: Fraction | int, radius: Fraction | int) -> Fraction:
        """Pr[|X - center| <= radius]."""
        c, t = Fraction(center), Fraction(radius)
        return sum((p for v, p in self.atoms if abs(v - c) <= t), Fraction(0))

    def max_point_probability(self) -> tuple[Fraction, Fraction]:
        """(value, probability) of the heaviest atom; ties break toward
        the smallest value."""
        best_v, best_p = self.atoms[0]
        for v, p in self.atoms[1:]:
            if p > best_p:
                best_v, best_p = v, p
        return best_v, best_p


def _law_branches(law: InputLaw) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Two (input value, probability) branches for one variable."""
    if isinstance(law, str):
        if law.lower() != "rademacher":
            raise ValueError(f"unknown input law {law!r}; use 'rademacher' or a rational p")
        half = Fraction(1, 2)
        return (Fraction(-1), half), (Fraction(1), half)
    p = Fraction(law)
    if not 0 <= p <= 1:
        raise ValueError(f"Bernoulli parameter must lie in [0, 1], got {p}")
    return (Fraction(0), 1 - p), (Fraction(1), p)


def exhaustive_distribution(poly: MultilinearPoly, law: InputLaw) -> ValueDistribution:
    """Exact distribution of poly's value when every variable that appears
    is drawn i.i.d. from ``law`` ('rademacher', or a rational p meaning
    Bernoulli(p) on {0, 1}).  Variables that do not appear are irrelevant
    and are not enumerated.  At most 24 active variables."""
    active = poly.active_variables
    if len(active) > MAX_ACTIVE_VARS:
        raise ValueError(
            f"{len(active)} active variables exceeds the exhaustive cap of {MAX_ACTIVE_VARS}"
        )
    (v_lo, p_lo), (v_hi, p_hi) = _law_branches(law)

    memo: dict[tuple, dict[Fraction, Fraction]] = {}

    def dist(coeffs: dict[Support, Fraction]) -> dict[Fraction, Fraction]:
        shift = coeffs.get((), Fraction(0))
        body = {s: c for s, c in coeffs.items() if s and c != 0}
        key = tuple(sorted(body.items()))
        got = memo.get(key)
        if got is None:
            if not body:
                got = {Fraction(0): Fraction(1)}
            else:
                var = min(s[0] for s in body)
                without: dict[Support, Fraction] = {}
                with_v: dict[Support, Fraction] = {}
                for s, c in body.items():
                    if s and s[0] == var:
                        with_v[s[1:]] = c
                    else:
                        without[s] = c
                got = {}
                for value, weight in ((v_lo, p_lo), (v_hi, p_hi)):
                    child = dict(without)
                    for s, c in with_v.items():
                        child[s] = child.get(s, Fraction(0)) + c * value
                    for atom, pr in dist(child).items():
                        got[atom] = got.get(atom, Fraction(0)) + weight * pr
            memo[key] = got
        if shift == 0:
            return got
        return {atom + shift: pr for atom, pr in got.items()}

    # Supports are ascending tuples, so s[0] is each term's least variable
    # and the recursion always branches on the least active one.
    return ValueDistribution.from_dict(dist(dict(poly.terms)))


# ---------------------------------------------------------------------------
# .mlp file format: line 1 is "<n>"; each further line is
# "<num>/<den> : v1 v2 ..." (empty variable list for the constant term);
# '#' starts a comment; blank lines ignored; duplicate supports rejected.


def parse_mlp(text: str) -> MultilinearPoly:
    n = None
    acc: dict[Support, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise ValueError(f"line {lineno}: header must be the variable count") from None
            if n < 0:
                raise ValueError(f"line {lineno}: negative variable count {n}")
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected '<coeff> : <vars>', got {raw!r}")
        coeff_part, var_part = line.split(":", 1)
        try:
            coeff = parse_rational(coeff_part)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        try:
            support = tuple(int(x) for x in var_part.split())
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer variable id in {raw!r}") from None
        if any(support[i] >= support[i + 1] for i in range(len(support) - 1)):
            raise ValueError(f"line {lineno}: variables must be strictly ascending")
        if support and (support[0] < 1 or support[-1] > n):
            raise ValueError(f"line {lineno}: variable outside [1..{n}]")
        if support in acc:
            raise ValueError(f"line {lineno}: duplicate support {support}")
        acc[support] = coeff
    if n is None:
        raise ValueError("empty input: missing variable-count header line")
    return MultilinearPoly.from_terms(n, acc)


def format_mlp(poly: MultilinearPoly) -> str:
    lines = [str(poly.n)]
    for support, coeff in poly.terms:
        vars_part = " ".join(str(v) for v in support)
        lines.append(f"{format_rational(coeff)} : {vars_part}".rstrip())
    return "\n".join(lines) + "\n"
