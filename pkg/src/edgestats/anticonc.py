"""Anticoncentration toolbox: exact total-variation comparisons between
hypergeometric and binomial laws, junta pushforwards of the slice versus
the product measure, Poisson-type interval bounds for nonnegative
polynomials of sparse Bernoulli inputs, and exact slice moments.

All distributions here are finite and all probabilities are Fractions;
comparisons against closed-form bounds are exact except the optional
1/e + gamma convenience, which is irrational and reported as a float.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

from .multilinear import MultilinearPoly, exhaustive_distribution
from .serialize import format_rational

__all__ = [
    "TVReport",
    "hypergeom_pmf",
    "binom_pmf",
    "hypergeom_binom_tv",
    "max_prob_binomial_one",
    "PoissonReport",
    "poisson_interval_check",
    "junta_tv",
    "slice_monomial_mean",
    "slice_covariance",
    "SliceMoments",
    "slice_moments",
]


class TVReport(NamedTuple):
    tv: Fraction
    bound: Fraction
    precondition_met: bool

    @property
    def violated(self) -> bool:
        """True when the bound was applicable and the distance beats it."""
        return self.precondition_met and self.tv > self.bound

    def to_json_dict(self) -> dict:
        return {
            "tv": format_rational(self.tv),
            "bound": format_rational(self.bound),
            "precondition_met": self.precondition_met,
            "violated": self.violated,
        }


def _comb0(m: int, j: int) -> int:
    """Binomial coefficient extended by zero outside 0 <= j <= m."""
    return comb(m, j) if 0 <= j <= m else 0


def hypergeom_pmf(n: int, k: int, t: int) -> dict[int, Fraction]:
    """Law of |U cap T| for a uniform k-subset U of [1..n] and a fixed
    t-set T, on the full index range 0..t (zeros included)."""
    if not (0 <= k <= n and 0 <= t <= n):
        raise ValueError(f"need 0 <= k, t <= n, got n={n}, k={k}, t={t}")
    total = comb(n, k)
    return {
        j: Fraction(comb(t, j) * _comb0(n - t, k - j), total) for j in range(t + 1)
    }


def binom_pmf(t: int, p: Fraction) -> dict[int, Fraction]:
    """Binomial(t, p) point masses on 0..t, exactly."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"success probability must lie in [0, 1], got {p}")
    q = 1 - p
    return {j: comb(t, j) * p**j * q ** (t - j) for j in range(t + 1)}


def hypergeom_binom_tv(n: int, k: int, t: int) -> TVReport:
    """Exact TV distance between the k-out-of-n hypergeometric overlap law
    on a t-set and Binomial(t, k/n), against the bound (t-1)/(n-1).

    The bound is only claimed when (k/n)(1-k/n)t >= 1; the report records
    whether that held.
    """
    hyp = hypergeom_pmf(n, k, t)
    p = Fraction(k, n)
    binom = binom_pmf(t, p)
    tv = sum((abs(hyp[j] - binom[j]) for j in range(t + 1)), Fraction(0)) / 2
    bound = Fraction(t - 1, n - 1) if n >= 2 else Fraction(0)
    precondition = p * (1 - p) * t >= 1
    return TVReport(tv, bound, precondition)


def max_prob_binomial_one(p: Fraction) -> Fraction:
    """max over trial counts m >= 1 of Pr[Binomial(m, p) = 1], exactly.

    The point mass m*p*(1-p)^(m-1) rises while m <= (1-p)/p and falls
    after, so a forward scan that stops at the first strict decrease
    finds the maximum.
    """
    p = Fraction(p)
    if not 0 < p <= 1:
        raise ValueError(f"need p in (0, 1], got {p}")
    best = p  # m = 1
    m = 2
    while True:
        cur = m * p * (1 - p) ** (m - 1)
        if cur < best:
            return best
        best = cur
        m += 1


@dataclass(frozen=True)
class PoissonReport:
    """Exact interval mass of a nonnegative sparse polynomial under
    Bernoulli(p) inputs, compared against the binomial point-mass bound
    (exact) and optionally against 1/e + gamma (float)."""

    probability: Fraction
    binomial_bound: Fraction
    precondition_met: bool
    bound_satisfied: bool
    active_count: int
    level: Fraction
    radius: Fraction
    p: Fraction
    e_bound: float | None = None
    e_bound_satisfied: bool | None = None

    def to_json_dict(self) -> dict:
        d = {
            "probability": format_rational(self.probability),
            "binomial_bound": format_rational(self.binomial_bound),
            "precondition_met": self.precondition_met,
            "bound_satisfied": self.bound_satisfied,
            "active_count": self.active_count,
            "level": format_rational(self.level),
            "radius": format_rational(self.radius),
            "p": format_rational(self.p),
        }
        if self.e_bound is not None:
            d["e_bound"] = repr(self.e_bound)
            d["e_bound_satisfied"] = self.e_bound_satisfied
        return d


def poisson_interval_check(
    poly: MultilinearPoly,
    p: Fraction,
    level: Fraction | int,
    radius: Fraction | int,
    *,
    gamma: float | None = None,
) -> PoissonReport:
    """Exact Pr[|poly(inputs) - level| <= radius] under i.i.d. Bernoulli(p)
    inputs on the active variables, versus max_prob_binomial_one(p).

    Requires nonnegative coefficients and zero constant term (errors
    otherwise).  The regime hypothesis level > 3^s * radius, s the active
    variable count, is reported as ``precondition_met``, not enforced.
    """
    if any(c < 0 for _, c in poly.terms):
        raise ValueError("polynomial has a negative coefficient")
    if poly.coeff(()) != 0:
        raise ValueError("polynomial has a nonzero constant term")
    if len(poly.active_variables) > 20:
        raise ValueError(
            f"{len(poly.active_variables)} active variables exceeds this check's cap of 20"
        )
    p = Fraction(p)
    level = Fraction(level)
    radius = Fraction(radius)
    if radius < 0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    s = len(poly.active_variables)
    dist = exhaustive_distribution(poly, p)
    prob = dist.interval_probability(level, radius)
    bound = max_prob_binomial_one(p)
    precondition = level > Fraction(3) ** s * radius
    report = PoissonReport(
        probability=prob,
        binomial_bound=bound,
        precondition_met=precondition,
        bound_satisfied=prob <= bound,
        active_count=s,
        level=level,
        radius=radius,
        p=p,
    )
    if gamma is not None:
        e_bound = math.exp(-1.0) + gamma
        report = replace(report, e_bound=e_bound, e_bound_satisfied=float(prob) <= e_bound)
    return report


def junta_tv(
    table: Mapping[tuple[int, ...], Hashable],
    coords: Sequence[int],
    n: int,
    k: int,
) -> TVReport:
    """TV distance between the pushforwards of a coordinate-junta under
    the uniform k-slice of [1..n] and under i.i.d. Bernoulli(k/n).

    ``table`` must assign a value to every subset of ``coords`` (keys are
    ascending tuples).  Requires k <= n/2; the claimed bound is
    (max(s, 2n/k) - 1)/(n - 1) with s = len(coords).
    """
    s_coords = tuple(sorted(set(coords)))
    if len(s_coords) != len(tuple(coords)):
        raise ValueError("junta coordinates must be distinct")
    s = len(s_coords)
    if s > 14:
        raise ValueError(f"junta arity {s} exceeds the 2^14 enumeration cap")
    if s_coords and (s_coords[0] < 1 or s_coords[-1] > n):
        raise ValueError(f"coordinates leave the range [1..{n}]")
    if not 1 <= k or 2 * k > n:
        raise ValueError(f"need 1 <= k <= n/2, got k={k}, n={n}")
    p = Fraction(k, n)
    total = comb(n, k)
    slice_law: dict[Hashable, Fraction] = {}
    product_law: dict[Hashable, Fraction] = {}
    for size in range(s + 1):
        for t in itertools.combinations(s_coords, size):
            if t not in table:
                raise ValueError(f"table is missing the subset {t}")
            v = table[t]
            pr_slice = Fraction(_comb0(n - s, k - size), total)
            pr_prod = p**size * (1 - p) ** (s - size)
            slice_law[v] = slice_law.get(v, Fraction(0)) + pr_slice
            product_law[v] = product_law.get(v, Fraction(0)) + pr_prod
    values = set(slice_law) | set(product_law)
    tv = (
        sum(
            (
                abs(slice_law.get(v, Fraction(0)) - product_law.get(v, Fraction(0)))
                for v in values
            ),
            Fraction(0),
        )
        / 2
    )
    bound = (max(Fraction(s), Fraction(2 * n, k)) - 1) / (n - 1)
    return TVReport(tv, bound, True)


# ---------------------------------------------------------------------------
# Exact slice moments


def slice_monomial_mean(size: int, n: int, k: int) -> Fraction:
    """E of a 0/1 monomial on a given support size under the uniform
    k-slice: the falling-factorial ratio (k)_size / (n)_size."""
    if size < 0 or size > n:
        raise ValueError(f"support size {size} outside [0..{n}]")
    out = Fraction(1)
    for i in range(size):
        out *= Fraction(k - i, n - i)
        if out == 0:
            return out
    return out


def slice_covariance(w: Iterable[int], t: Iterable[int], n: int, k: int) -> Fraction:
    """Exact covariance of the 0/1 monomials on supports w and t under the
    uniform k-slice of [1..n]; the supports may overlap."""
    ws, ts = frozenset(w), frozenset(t)
    union = ws | ts
    if union and (min(union) < 1 or max(union) > n):
        raise ValueError(f"supports leave the vertex range [1..{n}]")
    if not 0 <= k <= n:
        raise ValueError(f"slice weight {k} outside [0..{n}]")
    return slice_monomial_mean(len(union), n, k) - slice_monomial_mean(
        len(ws), n, k
    ) * slice_monomial_mean(len(ts), n, k)


class SliceMoments(NamedTuple):
    mean: Fraction
    variance: Fraction

    def to_json_dict(self) -> dict:
        return {"mean": format_rational(self.mean), "variance": format_rational(self.variance)}


def slice_moments(poly: MultilinearPoly, n: int, k: int) -> SliceMoments:
    """Exact mean and variance of ``poly`` on the uniform k-slice of [1..n].

    The variance never loops over support pairs.  Grouping supports by
    size, the pair mass at each intersection size j follows by binomial
    inversion from the subset sums S_o = sum over o-sets A of (total
    coefficient weight covering A) squared, each computable in one pass
    over the supports; covariances then depend only on (sizes, j).
    """
    if not 0 <= k <= n:
        raise ValueError(f"slice weight {k} outside [0..{n}]")
    active = poly.active_variables
    if active and (active[0] < 1 or active[-1] > n):
        raise ValueError(f"polynomial variables leave the slice range [1..{n}]")

    mean = sum(
        (c * slice_monomial_mean(len(s), n, k) for s, c in poly.terms), Fraction(0)
    )

    classes: dict[int, list[tuple[tuple[int, ...], Fraction]]] = {}
    for s, c in poly.terms:
        classes.setdefault(len(s), []).append((s, c))

    # cover[w][o]: o-subset -> total coefficient weight of size-w supports
    # containing it.
    cover: dict[int, list[dict[tuple[int, ...], Fraction]]] = {}
    for w, members in classes.items():
        per_o: list[dict[tuple[int, ...], Fraction]] = []
        for o in range(w + 1):
            acc: dict[tuple[int, ...], Fraction] = {}
            for s, c in members:
                for a in itertools.combinations(s, o):
                    acc[a] = acc.get(a, Fraction(0)) + c
            per_o.append(acc)
        cover[w] = per_o

    mono_cache: dict[int, Fraction] = {}

    def mono(w: int) -> Fraction:
        # Only reached with w <= n: a nonzero pair mass certifies a pair of
        # supports whose union has exactly w vertices inside [1..n].
        if w not in mono_cache:
            mono_cache[w] = slice_monomial_mean(w, n, k)
        return mono_cache[w]

    variance = Fraction(0)
    sizes = sorted(classes)
    for i, w1 in enumerate(sizes):
        for w2 in sizes[i:]:
            omax = min(w1, w2)
            subset_sums = []
            for o in range(omax + 1):
                d1, d2 = cover[w1][o], cover[w2][o]
                if len(d2) < len(d1):
                    d1, d2 = d2, d1
                subset_sums.append(
                    sum((v * d2[a] for a, v in d1.items() if a in d2), Fraction(0))
                )
            contrib = Fraction(0)
            for j in range(omax + 1):
                pair_mass = sum(
                    (-1) ** (o - j) * comb(o, j) * subset_sums[o]
                    for o in range(j, omax + 1)
                )
                if pair_mass:
                    contrib += pair_mass * (mono(w1 + w2 - j) - mono(w1) * mono(w2))
            variance += contrib if w1 == w2 else 2 * contrib
    return SliceMoments(mean, variance)
