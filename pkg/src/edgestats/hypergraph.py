"""Uniform hypergraphs on vertex set [1..n] with exact edge statistics.

Edges are canonicalised to ascending vertex tuples and the edge list is
kept globally sorted, so iteration order (and hence every downstream
tie-break and report) is deterministic.  Values are immutable after
construction; all operations are pure and safe to call concurrently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple, Sequence

from .rng import bernoulli, new_generator

__all__ = [
    "Hypergraph",
    "from_edges",
    "induced_edge_count",
    "induced_subgraph",
    "matching_number",
    "lex_min_maximum_matching",
    "LiftConstruction",
    "construct_lift",
    "lift_supersets",
    "lift_target_level",
    "construct_split",
    "split_target_level",
    "random_hypergraph",
    "parse_hg",
    "format_hg",
]

Edge = tuple[int, ...]


def _canonical_edge(edge: Iterable[int], n: int, r: int, *, label: str = "edge") -> Edge:
    vs = sorted(edge)
    if len(vs) != r:
        raise ValueError(f"{label} {tuple(edge)} has {len(vs)} vertices, expected {r}")
    if len(set(vs)) != len(vs):
        raise ValueError(f"{label} {tuple(edge)} repeats a vertex")
    if vs and (vs[0] < 1 or vs[-1] > n):
        raise ValueError(f"{label} {tuple(vs)} leaves the vertex range [1..{n}]")
    return tuple(vs)


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on vertex set [1..n].

    ``edges`` is a sorted tuple of ascending vertex tuples.  Use
    :func:`from_edges` (or the equivalent classmethod) to build one from
    raw data with full validation.
    """

    n: int
    r: int
    edges: tuple[Edge, ...]
    _edge_set: frozenset[Edge] | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return from_edges(n, r, edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def edge_set(self) -> frozenset[Edge]:
        # Built lazily: the membership index is only needed by the
        # counting paths, and large constructed graphs may never ask.
        cached = object.__getattribute__(self, "_edge_set")
        if cached is None:
            cached = frozenset(self.edges)
            object.__setattr__(self, "_edge_set", cached)
        return cached

    def induced_edge_count(self, subset: Iterable[int]) -> int:
        return induced_edge_count(self, subset)

    def matching_number(self) -> int:
        return matching_number(self)

    def complement(self) -> "Hypergraph":
        """The r-uniform complement: all r-sets of [1..n] not in self."""
        present = self.edge_set
        comp = tuple(
            w for w in itertools.combinations(range(1, self.n + 1), self.r) if w not in present
        )
        return Hypergraph(self.n, self.r, comp)


def from_edges(n: int, r: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Validate and canonicalise an edge list into a Hypergraph.

    Rejects out-of-range vertices, wrong-size or vertex-repeating edges,
    and duplicate edges (the artifact treats a repeated edge as a data
    error, not a multiset).
    """
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    if r < 1:
        raise ValueError(f"uniformity must be a positive integer, got {r}")
    canon: list[Edge] = []
    seen: set[Edge] = set()
    for e in edges:
        ce = _canonical_edge(e, n, r)
        if ce in seen:
            raise ValueError(f"duplicate edge {ce}")
        seen.add(ce)
        canon.append(ce)
    canon.sort()
    return Hypergraph(n, r, tuple(canon))


def _trusted(n: int, r: int, sorted_edges: list[Edge]) -> Hypergraph:
    """Internal constructor for generators that already produce canonical,
    duplicate-free, sorted edges; skips the per-edge validation pass."""
    return Hypergraph(n, r, tuple(sorted_edges))


def induced_edge_count(graph: Hypergraph, subset: Iterable[int]) -> int:
    """Number of edges of ``graph`` contained in ``subset``.

    Picks the cheaper of two exact strategies: scan the edge list, or
    enumerate the r-subsets of ``subset`` against the membership index.
    """
    u = frozenset(subset)
    if not u <= frozenset(range(1, graph.n + 1)):
        bad = sorted(u - frozenset(range(1, graph.n + 1)))
        raise ValueError(f"subset contains vertices outside [1..{graph.n}]: {bad}")
    if len(u) < graph.r:
        return 0
    inside = comb(len(u), graph.r)
    if graph.edge_count <= inside:
        return sum(1 for e in graph.edges if u.issuperset(e))
    members = graph.edge_set
    ordered = sorted(u)
    return sum(1 for w in itertools.combinations(ordered, graph.r) if w in members)


def induced_subgraph(graph: Hypergraph, subset: Iterable[int], *, relabel: bool = True) -> Hypergraph:
    """Subgraph induced on ``subset``; vertices relabelled to [1..|subset|]
    by rank unless ``relabel`` is false (then n stays and labels persist)."""
    u = sorted(set(subset))
    if u and (u[0] < 1 or u[-1] > graph.n):
        raise ValueError(f"subset leaves the vertex range [1..{graph.n}]")
    uset = frozenset(u)
    kept = [e for e in graph.edges if uset.issuperset(e)]
    if not relabel:
        return Hypergraph(graph.n, graph.r, tuple(kept))
    rank = {v: i + 1 for i, v in enumerate(u)}
    mapped = sorted(tuple(sorted(rank[v] for v in e)) for e in kept)
    return Hypergraph(len(u), graph.r, tuple(mapped))


def _as_edge_tuples(graph_or_edges: Hypergraph | Iterable[Iterable[int]]) -> list[Edge]:
    if isinstance(graph_or_edges, Hypergraph):
        return list(graph_or_edges.edges)
    out: set[Edge] = set()
    for e in graph_or_edges:
        t = tuple(sorted(e))
        if not t:
            raise ValueError("matching is undefined for an empty edge")
        if len(set(t)) != len(t):
            raise ValueError(f"edge {t} repeats a vertex")
        out.add(t)
    return sorted(out)


def matching_number(graph_or_edges: Hypergraph | Iterable[Iterable[int]]) -> int:
    """Maximum number of pairwise vertex-disjoint edges, exactly.

    Accepts a Hypergraph or any iterable of edges, mixed sizes allowed
    (the cover machinery calls it on residue families).  Branch and bound
    on the lexicographically smallest available edge; a greedy matching
    seeds the incumbent and two cheap upper bounds prune.
    """
    edges = _as_edge_tuples(graph_or_edges)
    if not edges:
        return 0
    min_size = min(len(e) for e in edges)

    # Greedy incumbent over the lex-sorted list.
    best = 0
    used: set[int] = set()
    for e in edges:
        if used.isdisjoint(e):
            used.update(e)
            best += 1

    def upper(avail: list[Edge]) -> int:
        if not avail:
            return 0
        free: set[int] = set()
        for e in avail:
            free.update(e)
        return min(len(avail), len(free) // min_size)

    def rec(avail: list[Edge], count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if not avail or count + upper(avail) <= best:
            return
        e = avail[0]
        rec([f for f in avail[1:] if set(f).isdisjoint(e)], count + 1)
        rec(avail[1:], count)

    rec(edges, 0)
    return best


def lex_min_maximum_matching(graph_or_edges: Hypergraph | Iterable[Iterable[int]]) -> tuple[Edge, ...]:
    """The maximum matching whose sorted edge list is lexicographically least.

    Built greedily: the next edge is the smallest one that still extends
    to a maximum matching among strictly larger disjoint edges.
    """
    edges = _as_edge_tuples(graph_or_edges)
    target = matching_number(edges)
    chosen: list[Edge] = []
    avail = edges
    while target > 0:
        for i, e in enumerate(avail):
            rest = [f for f in avail[i + 1:] if set(f).isdisjoint(e)]
            if matching_number(rest) >= target - 1:
                chosen.append(e)
                avail = rest
                target -= 1
                break
        else:  # pragma: no cover - matching_number guarantees progress
            raise AssertionError("no extendable edge found")
    return tuple(chosen)


# ---------------------------------------------------------------------------
# Constructions


class LiftConstruction(NamedTuple):
    """Result of the lift construction: the lifted graph, the random base
    it was lifted from, and the per-subset target level C(k-s, r-s)."""

    graph: Hypergraph
    base: Hypergraph
    level: int


def lift_target_level(k: int, s: int, r: int) -> int:
    """Edges through one base edge inside a k-subset: C(k-s, r-s)."""
    return comb(k - s, r - s)


def lift_supersets(base: Hypergraph, r: int) -> Hypergraph:
    """All r-sets of [1..n] containing at least one edge of ``base``."""
    if r < base.r:
        raise ValueError(f"lift uniformity {r} is below the base uniformity {base.r}")
    n = base.n
    out: set[Edge] = set()
    for f in base.edges:
        fset = set(f)
        rest = [v for v in range(1, n + 1) if v not in fset]
        for t in itertools.combinations(rest, r - base.r):
            out.add(tuple(sorted(f + t)))
    return _trusted(n, r, sorted(out))


def construct_lift(n: int, k: int, s: int, r: int, seed: int) -> LiftConstruction:
    """Seeded lift: sample an s-uniform base with edge probability
    1/C(k,s) (each s-set decided by one exact Bernoulli draw, in
    lexicographic order), then take all r-sets covering a base edge.
    """
    if not 1 <= s <= r <= k <= n:
        raise ValueError(f"need 1 <= s <= r <= k <= n, got s={s}, r={r}, k={k}, n={n}")
    rng = new_generator(seed)
    p = Fraction(1, comb(k, s))
    base_edges = [
        w for w in itertools.combinations(range(1, n + 1), s) if bernoulli(rng, p)
    ]
    base = _trusted(n, s, base_edges)
    return LiftConstruction(lift_supersets(base, r), base, lift_target_level(k, s, r))


def split_target_level(k: int, s_hits: int, r: int) -> int:
    """Induced edge count of the split graph on a k-subset meeting the
    distinguished side in exactly ``s_hits`` vertices."""
    return s_hits * comb(k - s_hits, r - 1)


def construct_split(n: int, side: Iterable[int], r: int) -> Hypergraph:
    """All r-sets meeting the distinguished vertex set in exactly one vertex."""
    s = sorted(set(side))
    if s and (s[0] < 1 or s[-1] > n):
        raise ValueError(f"distinguished side leaves the vertex range [1..{n}]")
    if r > n:
        raise ValueError(f"uniformity {r} exceeds vertex count {n}")
    sset = set(s)
    rest = [v for v in range(1, n + 1) if v not in sset]
    edges = [
        tuple(sorted((v,) + t))
        for v in s
        for t in itertools.combinations(rest, r - 1)
    ]
    edges.sort()
    return _trusted(n, r, edges)


def random_hypergraph(n: int, r: int, p: Fraction | int, seed_or_rng) -> Hypergraph:
    """Each r-set of [1..n] kept independently with exact probability p,
    decided in lexicographic order.  Accepts a seed or a live generator."""
    rng = seed_or_rng if hasattr(seed_or_rng, "getrandbits") else new_generator(seed_or_rng)
    p = Fraction(p)
    edges = [
        w for w in itertools.combinations(range(1, n + 1), r) if bernoulli(rng, p)
    ]
    return _trusted(n, r, edges)


# ---------------------------------------------------------------------------
# .hg file format: line 1 is "<n> <r>", then one edge per line as ascending
# space-separated vertex ids; '#' starts a comment; blank lines ignored.


def parse_hg(text: str) -> Hypergraph:
    """Parse .hg text; errors carry the 1-based offending line number."""
    n = r = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: header must be '<n> <r>', got {raw!r}")
            try:
                n, r = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"line {lineno}: header must hold two integers") from None
            if n < 0 or r < 1:
                raise ValueError(f"line {lineno}: invalid header values n={n}, r={r}")
            continue
        try:
            vs = [int(x) for x in parts]
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer vertex id in {raw!r}") from None
        if len(vs) != r:
            raise ValueError(f"line {lineno}: edge has {len(vs)} vertices, expected {r}")
        if any(vs[i] >= vs[i + 1] for i in range(len(vs) - 1)):
            raise ValueError(f"line {lineno}: vertices must be strictly ascending")
        if vs[0] < 1 or vs[-1] > n:
            raise ValueError(f"line {lineno}: vertex outside [1..{n}]")
        e = tuple(vs)
        if e in seen:
            raise ValueError(f"line {lineno}: duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    if n is None:
        raise ValueError("empty input: missing '<n> <r>' header line")
    edges.sort()
    return _trusted(n, r, edges)


def format_hg(graph: Hypergraph) -> str:
    lines = [f"{graph.n} {graph.r}"]
    lines.extend(" ".join(str(v) for v in e) for e in graph.edges)
    return "\n".join(lines) + "\n"
