"""Greedy vertex covers certifying matchings in every residual graph.

For an r-uniform graph G and a growing pivot set Z, the residue family of
a trace S inside Z collects the parts outside S of the edges whose exact
Z-intersection is S.  A trace is relevant when its family is nonempty but
every proper subtrace's family is empty; it is bad when additionally its
family's maximum matching has fewer than m edges.  The greedy cover
repeatedly picks the smallest bad relevant trace (size, then
lexicographic), adds the vertex set of the lexicographically least
maximum matching of its family, and stops when no bad trace remains; full
traces (|S| = r, whose residues are empty sets) are never treated as bad,
since a one-vertex-smaller trace always drives the verified conclusion.

The cover is validated by ``verify_cover``: for every subset X of the
final pivot Y, deleting the vertices of Y - X and truncating to residues
must leave a top uniformity class with a matching of size at least m, and
a nonempty Y must meet every edge.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .hypergraph import Hypergraph, lex_min_maximum_matching, matching_number

__all__ = [
    "edge_residues",
    "relevant_sets",
    "ResidualGraph",
    "residual",
    "CoverStep",
    "CoverCertificate",
    "default_step_cap",
    "greedy_cover",
    "CoverVerification",
    "verify_cover",
]

Trace = tuple[int, ...]

VERIFY_PIVOT_CAP = 25


def _check_pivot(graph: Hypergraph, pivot: Iterable[int], label: str) -> frozenset[int]:
    p = frozenset(pivot)
    if p and (min(p) < 1 or max(p) > graph.n):
        raise ValueError(f"{label} leaves the vertex range [1..{graph.n}]")
    return p


def edge_residues(graph: Hypergraph, pivot: Iterable[int], trace: Iterable[int]) -> frozenset[frozenset[int]]:
    """Residues e - S of the edges whose exact pivot intersection is S.

    Duplicates collapse (set semantics); the empty residue appears exactly
    when S is itself an edge.
    """
    y = _check_pivot(graph, pivot, "pivot")
    s = frozenset(trace)
    if not s <= y:
        raise ValueError(f"trace {sorted(s)} is not a subset of the pivot {sorted(y)}")
    out = set()
    for e in graph.edges:
        es = frozenset(e)
        if es & y == s:
            out.add(es - s)
    return frozenset(out)


def relevant_sets(graph: Hypergraph, pivot: Iterable[int]) -> list[Trace]:
    """Traces S inside the pivot with a nonempty residue family but empty
    families at every proper subtrace, sorted by (size, lexicographic).

    Only exact intersections e cap pivot can have nonempty families, so
    those are the only candidates; a candidate is relevant exactly when
    no proper subset is also a candidate.
    """
    y = _check_pivot(graph, pivot, "pivot")
    candidates = {tuple(sorted(frozenset(e) & y)) for e in graph.edges}
    cand_set = set(candidates)
    out = []
    for s in candidates:
        if any(
            sub in cand_set
            for size in range(len(s))
            for sub in itertools.combinations(s, size)
        ):
            continue
        out.append(s)
    out.sort(key=lambda t: (len(t), t))
    return out


@dataclass(frozen=True)
class ResidualGraph:
    """Mixed-uniformity residual: edge residues after deleting the kept
    pivot part and truncating, all sizes in [1..r]."""

    n: int
    r: int
    edges: frozenset[frozenset[int]]

    def by_size(self) -> dict[int, list[tuple[int, ...]]]:
        out: dict[int, list[tuple[int, ...]]] = {}
        for e in self.edges:
            out.setdefault(len(e), []).append(tuple(sorted(e)))
        for lst in out.values():
            lst.sort()
        return out

    @property
    def top_size(self) -> int:
        if not self.edges:
            raise ValueError("empty residual graph has no top uniformity class")
        return max(len(e) for e in self.edges)

    def top_class(self) -> list[tuple[int, ...]]:
        top = self.top_size
        return sorted(tuple(sorted(e)) for e in self.edges if len(e) == top)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "classes": {
                str(size): [list(e) for e in edges]
                for size, edges in sorted(self.by_size().items())
            },
        }


def residual(graph: Hypergraph, pivot: Iterable[int], kept: Iterable[int]) -> ResidualGraph:
    """Delete the vertices of pivot - kept, then replace each surviving
    edge by its part outside ``kept``, dropping emptied edges and
    collapsing duplicates."""
    y = _check_pivot(graph, pivot, "pivot")
    x = frozenset(kept)
    if not x <= y:
        raise ValueError(f"kept set {sorted(x)} is not a subset of the pivot {sorted(y)}")
    removed = y - x
    out = set()
    for e in graph.edges:
        es = frozenset(e)
        if es & removed:
            continue
        res = es - x
        if res:
            out.add(res)
    return ResidualGraph(graph.n, graph.r, frozenset(out))


@dataclass(frozen=True)
class CoverStep:
    pivot_before: Trace
    trace: Trace
    matching: tuple[tuple[int, ...], ...]
    added: Trace

    def to_json_dict(self) -> dict:
        return {
            "pivot_before": list(self.pivot_before),
            "trace": list(self.trace),
            "matching": [list(e) for e in self.matching],
            "added": list(self.added),
        }


@dataclass(frozen=True)
class CoverCertificate:
    n: int
    r: int
    m: int
    pivot: Trace
    steps: tuple[CoverStep, ...]
    terminated: bool
    step_cap: int

    @property
    def step_cap_hit(self) -> bool:
        return not self.terminated

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "m": self.m,
            "pivot": list(self.pivot),
            "steps": [s.to_json_dict() for s in self.steps],
            "terminated": self.terminated,
            "step_cap": self.step_cap,
        }


def default_step_cap(r: int, m: int) -> int:
    return 10 * (r * m) ** (r + 2)


def _bad_traces(graph: Hypergraph, pivot: frozenset[int], m: int) -> list[tuple[Trace, frozenset[frozenset[int]]]]:
    out = []
    for s in relevant_sets(graph, sorted(pivot)):
        if len(s) >= graph.r:
            continue
        fam = edge_residues(graph, sorted(pivot), s)
        if matching_number(fam) <= m - 1:
            out.append((s, fam))
    return out


def greedy_cover(graph: Hypergraph, m: int, step_cap: int | None = None) -> CoverCertificate:
    """Run the greedy trace-repair loop to a pivot with no bad trace.

    Deterministic throughout: bad traces are ordered by (size, lex), the
    matching added is the lexicographically least maximum one, and the
    pivot grows strictly each step.  If ``step_cap`` (default
    10 * (r*m)^(r+2)) is reached first, the certificate snapshot is
    returned with ``terminated`` false rather than raising.
    """
    if m < 1:
        raise ValueError(f"target matching size must be positive, got {m}")
    cap = default_step_cap(graph.r, m) if step_cap is None else step_cap
    if cap < 0:
        raise ValueError(f"step cap must be nonnegative, got {cap}")
    pivot: frozenset[int] = frozenset()
    steps: list[CoverStep] = []
    terminated = False
    while True:
        bad = _bad_traces(graph, pivot, m)
        if not bad:
            terminated = True
            break
        if len(steps) >= cap:
            break
        trace, fam = bad[0]
        matching = lex_min_maximum_matching(fam)
        added = tuple(sorted(set().union(*matching)))
        steps.append(CoverStep(tuple(sorted(pivot)), trace, matching, added))
        pivot = pivot | set(added)
    return CoverCertificate(
        graph.n, graph.r, m, tuple(sorted(pivot)), tuple(steps), terminated, cap
    )


@dataclass(frozen=True)
class CoverVerification:
    ok: bool
    failing_subset: Trace | None
    failing_edge: Trace | None
    checked_subsets: int

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "failing_subset": None if self.failing_subset is None else list(self.failing_subset),
            "failing_edge": None if self.failing_edge is None else list(self.failing_edge),
            "checked_subsets": self.checked_subsets,
        }


def verify_cover(graph: Hypergraph, pivot: Iterable[int], m: int) -> CoverVerification:
    """Exhaustively check the cover conclusion for every subset of the pivot.

    Subsets are visited in (size, lexicographic) order and the first
    violation is returned as a witness: a kept-set X whose nonempty
    residual has a top uniformity class with matching below m.  A nonempty
    pivot must additionally meet every edge; the first uncovered edge (in
    edge order) is reported the same way.
    """
    y = sorted(_check_pivot(graph, pivot, "pivot"))
    if len(y) > VERIFY_PIVOT_CAP:
        raise ValueError(
            f"pivot of size {len(y)} needs 2^{len(y)} subset checks, above the cap"
        )
    if y:
        yset = frozenset(y)
        for e in graph.edges:
            if yset.isdisjoint(e):
                return CoverVerification(False, None, e, 0)
    checked = 0
    for size in range(len(y) + 1):
        for x in itertools.combinations(y, size):
            checked += 1
            rg = residual(graph, y, x)
            if not rg.edges:
                continue
            if matching_number(rg.top_class()) < m:
                return CoverVerification(False, x, None, checked)
    return CoverVerification(True, None, None, checked)
