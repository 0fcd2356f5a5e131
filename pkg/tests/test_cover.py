"""Greedy pivot covers: residue families, relevant traces, the repair
loop's certificates, and exhaustive verification."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgestats.cover import (
    CoverCertificate,
    default_step_cap,
    edge_residues,
    greedy_cover,
    relevant_sets,
    residual,
    verify_cover,
)
from edgestats.hypergraph import from_edges, random_hypergraph
from edgestats.rng import new_generator, rand_below


def tent():
    """Three 3-edges sharing vertices: {1,2,3}, {1,4,5}, {3,4,5}."""
    return from_edges(5, 3, [(1, 2, 3), (1, 4, 5), (3, 4, 5)])


# ---------------------------------------------------------------------------
# residue families and relevance


def test_edge_residues_at_a_single_pivot_vertex():
    g = tent()
    assert edge_residues(g, [1], [1]) == frozenset(
        {frozenset({2, 3}), frozenset({4, 5})}
    )
    assert edge_residues(g, [1], []) == frozenset({frozenset({3, 4, 5})})


def test_edge_residues_empty_residue_marks_an_edge_inside_the_pivot():
    g = from_edges(4, 2, [(1, 2), (3, 4)])
    assert frozenset() in edge_residues(g, [1, 2], [1, 2])


def test_edge_residues_validation():
    g = tent()
    with pytest.raises(ValueError, match="subset of the pivot"):
        edge_residues(g, [1], [2])
    with pytest.raises(ValueError, match="range"):
        edge_residues(g, [9], [9])


def test_relevant_sets_prefer_smaller_traces():
    g = tent()
    # With pivot {1}, the empty trace already has a nonempty family, so
    # {1} is not relevant.
    assert relevant_sets(g, [1]) == [()]
    # With pivot {1,3} no edge misses the pivot; {1} and {3} are the
    # minimal candidates and {1,3} is shadowed by {1}.
    assert relevant_sets(g, [1, 3]) == [(1,), (3,)]


def test_relevant_sets_empty_graph():
    assert relevant_sets(from_edges(4, 2, []), [1, 2]) == []


# ---------------------------------------------------------------------------
# residual graphs


def test_residual_keeps_only_edges_avoiding_the_dropped_part():
    g = tent()
    rg = residual(g, [1, 3], [1])
    assert rg.edges == frozenset({frozenset({4, 5})})
    assert rg.top_size == 2
    assert rg.top_class() == [(4, 5)]


def test_residual_can_be_empty():
    g = tent()
    assert residual(g, [1, 3], []).edges == frozenset()


def test_residual_collapses_duplicates_and_mixes_sizes():
    g = tent()
    rg = residual(g, [1, 3], [1, 3])
    assert rg.edges == frozenset({frozenset({2}), frozenset({4, 5})})
    assert rg.by_size() == {1: [(2,)], 2: [(4, 5)]}
    assert rg.top_class() == [(4, 5)]


def test_residual_validation():
    g = tent()
    with pytest.raises(ValueError, match="subset of the pivot"):
        residual(g, [1], [2])
    with pytest.raises(ValueError, match="top uniformity"):
        residual(g, [1, 3], []).top_size


# ---------------------------------------------------------------------------
# the greedy loop


def test_greedy_on_the_empty_graph_is_trivial():
    cert = greedy_cover(from_edges(5, 2, []), 3)
    assert cert.pivot == ()
    assert cert.steps == ()
    assert cert.terminated


def test_greedy_swallows_a_single_edge():
    cert = greedy_cover(from_edges(2, 2, [(1, 2)]), 2)
    assert cert.pivot == (1, 2)
    assert len(cert.steps) == 1
    assert cert.steps[0].trace == ()
    assert cert.steps[0].added == (1, 2)
    assert cert.terminated


def test_greedy_leaves_a_large_matching_alone():
    cert = greedy_cover(from_edges(4, 2, [(1, 2), (3, 4)]), 2)
    assert cert.pivot == ()
    assert cert.steps == ()
    assert cert.terminated


def test_greedy_validates_inputs():
    with pytest.raises(ValueError, match="positive"):
        greedy_cover(from_edges(3, 2, []), 0)
    with pytest.raises(ValueError, match="nonnegative"):
        greedy_cover(from_edges(3, 2, []), 1, step_cap=-1)


def test_step_cap_returns_a_snapshot_instead_of_raising():
    cert = greedy_cover(from_edges(2, 2, [(1, 2)]), 2, step_cap=0)
    assert not cert.terminated
    assert cert.step_cap_hit
    assert cert.steps == ()
    assert cert.pivot == ()


def test_default_step_cap_value():
    assert default_step_cap(2, 2) == 10 * 4**4


def _relevant_size_vector(graph, pivot):
    counts = [0] * (graph.r + 1)
    for s in relevant_sets(graph, pivot):
        counts[len(s)] += 1
    return counts


@given(st.integers(0, 2**30))
@settings(max_examples=40, deadline=None)
def test_greedy_steps_shrink_the_relevant_profile(seed):
    """Each step adds 1..r(m-1) fresh vertices and lexicographically
    decreases the per-size census of relevant traces."""
    rng = new_generator(seed)
    n = 4 + rand_below(rng, 6)
    p = Fraction(1 + rand_below(rng, 3), 8)
    g = random_hypergraph(n, 3, p, rng)
    m = 2
    cert = greedy_cover(g, m)
    assert cert.terminated
    for step in cert.steps:
        before = set(step.pivot_before)
        assert 1 <= len(step.added) <= g.r * (m - 1)
        assert not before & set(step.added)
        vec_before = _relevant_size_vector(g, step.pivot_before)
        vec_after = _relevant_size_vector(g, sorted(before | set(step.added)))
        assert vec_after != vec_before
        first = next(
            i for i in range(len(vec_before)) if vec_after[i] != vec_before[i]
        )
        assert vec_after[first] < vec_before[first]


@given(st.integers(0, 2**30))
@settings(max_examples=40, deadline=None)
def test_greedy_certificates_verify(seed):
    rng = new_generator(seed)
    n = 4 + rand_below(rng, 6)
    p = Fraction(1 + rand_below(rng, 3), 8)
    g = random_hypergraph(n, 3, p, rng)
    cert = greedy_cover(g, 2)
    assert cert.terminated
    check = verify_cover(g, cert.pivot, 2)
    assert check.ok, (check.failing_subset, check.failing_edge)
    assert check.checked_subsets == 2 ** len(cert.pivot)


# ---------------------------------------------------------------------------
# verification


def test_verify_accepts_a_full_edge_pivot():
    g = from_edges(2, 2, [(1, 2)])
    check = verify_cover(g, [1, 2], 1)
    assert check.ok
    assert check.checked_subsets == 4


def test_verify_rejects_the_empty_pivot_when_the_matching_is_short():
    g = from_edges(2, 2, [(1, 2)])
    check = verify_cover(g, [], 2)
    assert not check.ok
    assert check.failing_subset == ()
    assert check.failing_edge is None


def test_verify_reports_an_uncovered_edge():
    g = from_edges(4, 2, [(1, 2), (3, 4)])
    check = verify_cover(g, [1], 1)
    assert not check.ok
    assert check.failing_edge == (3, 4)


def test_verify_caps_the_pivot_size():
    g = from_edges(30, 2, [])
    with pytest.raises(ValueError, match="cap"):
        verify_cover(g, range(1, 27), 1)


def test_certificate_serialization_shape():
    cert = greedy_cover(from_edges(2, 2, [(1, 2)]), 2)
    d = cert.to_json_dict()
    assert d["pivot"] == [1, 2]
    assert d["terminated"] is True
    assert d["steps"][0]["added"] == [1, 2]
    assert isinstance(cert, CoverCertificate)
