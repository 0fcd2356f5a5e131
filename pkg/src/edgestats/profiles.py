"""Edge-count statistics of k-subsets: exact profiles, sampled point
estimates, and exact conditional expectation tables over a pivot set.

Everything exact is a Fraction or an unbounded int; the only float in the
module is the reported confidence half-width of a Monte Carlo estimate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .hypergraph import Hypergraph
from .multilinear import MultilinearPoly
from .rng import new_generator, sample_ordered
from .serialize import format_int, format_rational, parse_int

__all__ = [
    "EdgeProfile",
    "exact_profile",
    "PointEstimate",
    "estimate_point",
    "JuntaEntry",
    "JuntaTable",
    "conditional_junta",
]

DEFAULT_PROFILE_CAP = 10**8


@dataclass(frozen=True)
class EdgeProfile:
    """Exact histogram of induced edge counts over all k-subsets of [1..n].

    ``counts`` maps each attained edge count to the number of k-subsets
    attaining it; the values sum to ``total`` = C(n, k).
    """

    n: int
    k: int
    counts: Mapping[int, int]
    total: int

    def probability(self, level: int) -> Fraction:
        return Fraction(self.counts.get(level, 0), self.total)

    def mean(self) -> Fraction:
        return Fraction(
            sum(level * mult for level, mult in self.counts.items()), self.total
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "total": format_int(self.total),
            "counts": {
                str(level): format_int(mult) for level, mult in sorted(self.counts.items())
            },
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "EdgeProfile":
        counts = {int(level): parse_int(mult) for level, mult in d["counts"].items()}
        return cls(int(d["n"]), int(d["k"]), counts, parse_int(d["total"]))


def exact_profile(graph: Hypergraph, k: int, *, max_subsets: int = DEFAULT_PROFILE_CAP) -> EdgeProfile:
    """Exhaustive profile of e(G[U]) over every k-subset U.

    Refuses to enumerate more than ``max_subsets`` subsets; estimate_point
    is the sampling fallback at that scale.
    """
    if not 0 <= k <= graph.n:
        raise ValueError(f"subset size {k} outside [0..{graph.n}]")
    total = comb(graph.n, k)
    if total > max_subsets:
        raise ValueError(
            f"C({graph.n},{k}) = {total} subsets exceeds the enumeration cap "
            f"{max_subsets}; raise max_subsets or use estimate_point"
        )
    counts: dict[int, int] = {}
    scan_edges = graph.edge_count <= comb(k, graph.r)
    members = None if scan_edges else graph.edge_set
    for u in itertools.combinations(range(1, graph.n + 1), k):
        if scan_edges:
            uset = frozenset(u)
            c = sum(1 for e in graph.edges if uset.issuperset(e))
        else:
            c = sum(1 for w in itertools.combinations(u, graph.r) if w in members)
        counts[c] = counts.get(c, 0) + 1
    return EdgeProfile(graph.n, k, counts, total)


@dataclass(frozen=True)
class PointEstimate:
    """Monte Carlo estimate of Pr[e(G[U]) = level] over uniform k-subsets."""

    n: int
    k: int
    level: int
    samples: int
    hits: int
    seed: int

    @property
    def estimate(self) -> Fraction:
        return Fraction(self.hits, self.samples)

    @property
    def half_width(self) -> float:
        """Normal-approximation 95% half-width, the one inexact field."""
        p = self.hits / self.samples
        return 1.96 * math.sqrt(p * (1.0 - p) / self.samples)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "level": self.level,
            "samples": self.samples,
            "hits": self.hits,
            "seed": self.seed,
            "estimate": format_rational(self.estimate),
            "half_width": repr(self.half_width),
        }


def estimate_point(graph: Hypergraph, k: int, level: int, samples: int, seed: int) -> PointEstimate:
    """Sample ``samples`` uniform k-subsets (one ordered Fisher-Yates draw
    each, in order) and count those inducing exactly ``level`` edges."""
    if not 0 <= k <= graph.n:
        raise ValueError(f"subset size {k} outside [0..{graph.n}]")
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    rng = new_generator(seed)
    r = graph.r
    use_subsets = comb(k, r) < graph.edge_count
    members = graph.edge_set if use_subsets else None
    edges = None if use_subsets else graph.edges
    hits = 0
    for _ in range(samples):
        u = sample_ordered(rng, graph.n, k)
        if use_subsets:
            u.sort()
            c = sum(1 for w in itertools.combinations(u, r) if w in members)
        else:
            uset = frozenset(u)
            c = sum(1 for e in edges if uset.issuperset(e))
        if c == level:
            hits += 1
    return PointEstimate(graph.n, k, level, samples, hits, seed)


# ---------------------------------------------------------------------------
# Conditional expectation tables over a pivot vertex set


@dataclass(frozen=True)
class JuntaEntry:
    value: Fraction
    feasible: bool


@dataclass(frozen=True)
class JuntaTable:
    """E[e(G[U]) | U cap Y = T] for every T subseteq Y, exactly.

    Subsets T with no k-subset satisfying U cap Y = T are flagged
    infeasible and carry value 0.  The table is the primary object; a
    multilinear view exists through :meth:`as_polynomial`.
    """

    n: int
    k: int
    pivot: tuple[int, ...]
    entries: Mapping[tuple[int, ...], JuntaEntry]

    def value(self, subset: Iterable[int]) -> Fraction:
        t = tuple(sorted(subset))
        entry = self.entries[t]
        if not entry.feasible:
            raise ValueError(f"conditioning event U cap Y = {t} has probability zero")
        return entry.value

    def feasible_items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return [(t, e.value) for t, e in sorted(self.entries.items()) if e.feasible]

    def subset_probability(self, subset: Iterable[int]) -> Fraction:
        """Pr[U cap Y = T] under a uniform k-subset U."""
        t = tuple(sorted(subset))
        if t not in self.entries:
            raise ValueError(f"{t} is not a subset of the pivot {self.pivot}")
        outside = self.n - len(self.pivot)
        need = self.k - len(t)
        if need < 0 or need > outside:
            return Fraction(0)
        return Fraction(comb(outside, need), comb(self.n, self.k))

    def as_polynomial(self) -> MultilinearPoly:
        """Moebius inversion of the table into a multilinear polynomial on
        the pivot coordinates: p(1_T) equals the table value at T.  Only
        defined when every subset is feasible."""
        bad = [t for t, e in sorted(self.entries.items()) if not e.feasible]
        if bad:
            raise ValueError(f"table has infeasible subsets, no total polynomial view: {bad}")
        coeffs: dict[tuple[int, ...], Fraction] = {}
        for s in self.entries:
            total = Fraction(0)
            sset = set(s)
            for size in range(len(s) + 1):
                for t in itertools.combinations(sorted(sset), size):
                    total += (-1) ** (len(s) - size) * self.entries[t].value
            if total != 0:
                coeffs[s] = total
        return MultilinearPoly.from_terms(self.n, coeffs)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "pivot": list(self.pivot),
            "entries": {
                " ".join(map(str, t)): {
                    "value": format_rational(e.value),
                    "feasible": e.feasible,
                }
                for t, e in sorted(self.entries.items())
            },
        }


def conditional_junta(graph: Hypergraph, k: int, pivot: Iterable[int]) -> JuntaTable:
    """Exact table of E[e(G[U]) | U cap Y = T] over all T subseteq Y.

    Conditioned on U cap Y = T, the rest of U is a uniform (k - |T|)-subset
    of [1..n] minus Y, so each edge W contributes the exact hypergeometric
    probability that W minus Y lands inside it, provided W cap Y lies in T.
    """
    y = tuple(sorted(set(pivot)))
    if y and (y[0] < 1 or y[-1] > graph.n):
        raise ValueError(f"pivot leaves the vertex range [1..{graph.n}]")
    if len(y) > 20:
        raise ValueError(f"pivot of size {len(y)} exceeds the 2^20 table cap")
    if not 0 <= k <= graph.n:
        raise ValueError(f"subset size {k} outside [0..{graph.n}]")
    yset = frozenset(y)
    outside = graph.n - len(y)
    # Pre-split each edge into its pivot part and the residue size.
    split_edges = [
        (frozenset(e) & yset, graph.r - len(frozenset(e) & yset)) for e in graph.edges
    ]
    entries: dict[tuple[int, ...], JuntaEntry] = {}
    for size in range(len(y) + 1):
        for t in itertools.combinations(y, size):
            need = k - size
            if need < 0 or need > outside:
                entries[t] = JuntaEntry(Fraction(0), False)
                continue
            tset = frozenset(t)
            denom = comb(outside, need)
            total = Fraction(0)
            for inside_y, residue in split_edges:
                if inside_y <= tset and residue <= need:
                    total += Fraction(comb(outside - residue, need - residue), denom)
            entries[t] = JuntaEntry(total, True)
    return JuntaTable(graph.n, k, y, entries)
