"""Coupling a uniform k-slice point to independent signs, exactly.

A coupling on [1..n] is a sequence of k disjoint ordered vertex pairs
(minus slot, plus slot) together with k independent uniform signs; the
0/1 vector selecting the plus or minus slot of each pair by its sign is
distributed as a uniform k-subset of the 2k paired vertices, and any
polynomial of that vector expands exactly as a signed multilinear
polynomial in the k signs.  This module computes those sign-expansion
coefficients, checks the expansion identity exhaustively, and carries the
threshold and dense-core bookkeeping built on top of the coefficients.

Expansion semantics: a support W of the input polynomial contributes only
when W lies inside the paired vertices and contains no pair entirely
(otherwise the selected 0/1 vector kills the monomial); such a W touches
some set J(W) of pairs, one vertex each, and feeds every sign monomial
indexed by a subset I of J(W) with weight (-1)^(minus slots of I hit by W)
times its coefficient times 2^(-|W|).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .multilinear import MultilinearPoly
from .rng import new_generator, rademacher, sample_ordered
from .serialize import format_rational

__all__ = [
    "Coupling",
    "sample_coupling",
    "sign_expansion_coefficient",
    "sign_expansion_table",
    "SignExpansionReport",
    "check_sign_expansion",
    "coefficient_bound",
    "LOThresholds",
    "lo_thresholds",
    "top_extension_count",
    "minimal_dense_core",
]

Pair = tuple[int, int]
SignIndex = tuple[int, ...]


def _validate_pairs(pairs: Sequence[Pair], n: int) -> tuple[Pair, ...]:
    ps = tuple((int(a), int(b)) for a, b in pairs)
    flat = [v for p in ps for v in p]
    if len(set(flat)) != len(flat):
        raise ValueError("coupling pairs must use pairwise distinct vertices")
    if flat and (min(flat) < 1 or max(flat) > n):
        raise ValueError(f"coupling pairs leave the vertex range [1..{n}]")
    return ps


@dataclass(frozen=True)
class Coupling:
    """k disjoint ordered (minus, plus) vertex pairs on [1..n] plus signs."""

    n: int
    pairs: tuple[Pair, ...]
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        _validate_pairs(self.pairs, self.n)
        if len(self.signs) != len(self.pairs):
            raise ValueError("need exactly one sign per pair")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be -1 or +1")

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def paired_vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.pairs for v in p)

    @property
    def chosen(self) -> frozenset[int]:
        """The vertex each sign selects: plus slot on +1, minus slot on -1."""
        return frozenset(
            p[1] if s == 1 else p[0] for p, s in zip(self.pairs, self.signs)
        )

    @property
    def sigma(self) -> tuple[int, ...]:
        """The full 0/1 vector on [1..n] indicating the chosen vertices."""
        chosen = self.chosen
        return tuple(1 if v in chosen else 0 for v in range(1, self.n + 1))

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "pairs": [list(p) for p in self.pairs],
            "signs": list(self.signs),
        }


def sample_coupling(n: int, k: int, seed: int) -> Coupling:
    """Seeded coupling: one ordered Fisher-Yates draw of 2k distinct
    vertices consumed pairwise as (minus, plus), then k sign bits."""
    if 2 * k > n:
        raise ValueError(f"need 2k <= n, got k={k}, n={n}")
    rng = new_generator(seed)
    flat = sample_ordered(rng, n, 2 * k)
    pairs = tuple((flat[2 * i], flat[2 * i + 1]) for i in range(k))
    signs = tuple(rademacher(rng) for _ in range(k))
    return Coupling(n, pairs, signs)


def _expansion_contributions(poly: MultilinearPoly, pairs: Sequence[Pair]):
    """Yield (touched pair index set J(W), minus slots of W, coeff, |W|)
    for every support of ``poly`` that survives the pairing."""
    slot: dict[int, tuple[int, int]] = {}
    for i, (minus, plus) in enumerate(pairs, start=1):
        slot[minus] = (i, -1)
        slot[plus] = (i, 1)
    for support, coeff in poly.terms:
        if not support:
            yield frozenset(), frozenset(), coeff, 0
            continue
        touched: dict[int, int] = {}
        ok = True
        for v in support:
            hit = slot.get(v)
            if hit is None:  # vertex outside the paired set: monomial dies
                ok = False
                break
            idx, side = hit
            if idx in touched:  # both slots of one pair: sigma product is 0
                ok = False
                break
            touched[idx] = side
        if not ok:
            continue
        minus_slots = frozenset(i for i, side in touched.items() if side == -1)
        yield frozenset(touched), minus_slots, coeff, len(support)


def sign_expansion_coefficient(
    poly: MultilinearPoly, pairs: Sequence[Pair], index: Iterable[int]
) -> Fraction:
    """Coefficient of the sign monomial prod_{i in index} xi_i in the
    expansion of ``poly`` over a coupling with the given pairs."""
    ps = _validate_pairs(tuple(pairs), poly.n)
    idx = frozenset(index)
    if idx and (min(idx) < 1 or max(idx) > len(ps)):
        raise ValueError(f"sign index {sorted(idx)} leaves the pair range [1..{len(ps)}]")
    total = Fraction(0)
    for touched, minus_slots, coeff, size in _expansion_contributions(poly, ps):
        if idx <= touched:
            sign = -1 if len(idx & minus_slots) % 2 else 1
            total += sign * coeff * Fraction(1, 2**size)
    return total


def sign_expansion_table(
    poly: MultilinearPoly, pairs: Sequence[Pair]
) -> dict[SignIndex, Fraction]:
    """All sign-expansion coefficients at once, keyed by ascending index
    tuples; only indices reachable from some surviving support appear.
    Absent indices have coefficient exactly 0."""
    ps = _validate_pairs(tuple(pairs), poly.n)
    table: dict[SignIndex, Fraction] = {}
    for touched, minus_slots, coeff, size in _expansion_contributions(poly, ps):
        weight = coeff * Fraction(1, 2**size)
        touched_sorted = sorted(touched)
        for m in range(len(touched_sorted) + 1):
            for idx in itertools.combinations(touched_sorted, m):
                sign = -1 if len(frozenset(idx) & minus_slots) % 2 else 1
                table[idx] = table.get(idx, Fraction(0)) + sign * weight
    return {idx: c for idx, c in table.items() if c != 0}


class SignExpansionReport(NamedTuple):
    k: int
    coefficients: dict[SignIndex, Fraction]
    max_abs_discrepancy: Fraction
    assignments_checked: int

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "coefficients": {
                " ".join(map(str, idx)): format_rational(c)
                for idx, c in sorted(self.coefficients.items())
            },
            "max_abs_discrepancy": format_rational(self.max_abs_discrepancy),
            "assignments_checked": self.assignments_checked,
        }


def check_sign_expansion(poly: MultilinearPoly, pairs: Sequence[Pair]) -> SignExpansionReport:
    """Exhaustively verify the expansion identity over all 2^k sign vectors.

    For each sign vector the polynomial is evaluated directly on the
    selected 0/1 vector and compared with the expansion's value; the
    report carries the maximum absolute difference (0 when the identity
    holds, always, since both sides are exact rationals).
    """
    ps = _validate_pairs(tuple(pairs), poly.n)
    k = len(ps)
    if k > 20:
        raise ValueError(f"k = {k} sign variables exceeds the exhaustive cap of 20")
    table = sign_expansion_table(poly, ps)
    supports = [(frozenset(s), c) for s, c in poly.terms]
    worst = Fraction(0)
    for signs in itertools.product((-1, 1), repeat=k):
        chosen = frozenset(p[1] if s == 1 else p[0] for p, s in zip(ps, signs))
        direct = sum((c for s, c in supports if s <= chosen), Fraction(0))
        expanded = Fraction(0)
        for idx, coeff in table.items():
            prod = 1
            for i in idx:
                prod *= signs[i - 1]
            expanded += prod * coeff
        worst = max(worst, abs(direct - expanded))
    return SignExpansionReport(k, table, worst, 2**k)


def coefficient_bound(q: Fraction | int, d: int, n: int, index_size: int) -> Fraction:
    """Size bound q * 2^|I| * n^(d - |I|) for a sign-expansion coefficient
    of a degree-<=d polynomial with coefficients bounded by q."""
    if index_size > d:
        return Fraction(0)
    return Fraction(q) * 2**index_size * Fraction(n) ** (d - index_size)


class LOThresholds(NamedTuple):
    """Level thresholds b_0..b_d and the aggregate a(f, t)."""

    bounds: tuple[Fraction, ...]
    aggregate: Fraction


def lo_thresholds(q: Fraction | int, d: int, n: int, f: int, t: Fraction | int) -> LOThresholds:
    """Thresholds b_g = q * 2^g * n^(d-g) for g = 0..d and the tail
    aggregate a(f, t) = sum_{g=f+1}^{d} t^(g-f) * b_g (empty sum is 0)."""
    if d < 0 or not 0 <= f <= d:
        raise ValueError(f"need 0 <= f <= d, got f={f}, d={d}")
    q = Fraction(q)
    t = Fraction(t)
    bounds = tuple(q * 2**g * Fraction(n) ** (d - g) for g in range(d + 1))
    aggregate = sum(
        (t ** (g - f) * bounds[g] for g in range(f + 1, d + 1)), Fraction(0)
    )
    return LOThresholds(bounds, aggregate)


def top_extension_count(poly: MultilinearPoly, base: Iterable[int], universe: Iterable[int]) -> int:
    """Number of top-degree supports of ``poly`` that contain ``base`` and
    stay inside ``universe``."""
    b = frozenset(base)
    uni = frozenset(universe)
    d = poly.degree
    return sum(
        1
        for support, _ in poly.terms
        if len(support) == d and b <= frozenset(support) <= uni
    )


def minimal_dense_core(
    poly: MultilinearPoly, edge: Iterable[int], m: Fraction | int, universe: Iterable[int]
) -> tuple[int, ...]:
    """Smallest (then lexicographically least) F inside ``edge`` whose
    top-degree extension count within ``universe`` reaches (n/m)^(d-|F|),
    with n the ambient variable count and d the polynomial degree.

    ``edge`` must be the support of a nonzero top-degree coefficient, so
    F = edge itself always qualifies (count >= 1 = threshold) and the
    search cannot fail.
    """
    e = tuple(sorted(set(edge)))
    d = poly.degree
    if len(e) != d or poly.coeff(e) == 0:
        raise ValueError(
            f"{e} is not the support of a nonzero degree-{d} coefficient"
        )
    uni = frozenset(universe)
    if not frozenset(e) <= uni:
        raise ValueError(f"edge {e} leaves the universe")
    ratio = Fraction(poly.n) / Fraction(m)
    for size in range(d + 1):
        for cand in itertools.combinations(e, size):
            if top_extension_count(poly, cand, uni) >= ratio ** (d - size):
                return cand
    raise AssertionError("unreachable: the full edge always qualifies")
