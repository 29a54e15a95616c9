import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflmon import quiver as qv
from reflmon.mutation_class import (
    NoMatch,
    b_shapes,
    check_A_eps,
    check_B_eps,
    check_D_eps,
    classify_D_eps,
    connecting_vertices,
    enumerate_class,
    verify_class_characterization,
)
from reflmon.quiver import EPS


def _graph(q):
    g = nx.DiGraph()
    for i, v in enumerate(q.labels):
        g.add_node(v, frozen=v == EPS, d=q.d[i])
    for s, d, _ in q.arrows():
        g.add_edge(s, d, b=(q.entry(s, d), q.entry(d, s)))
    return g


def brute_class_size(q0):
    """BFS over raw matrices, deduplicated by graph isomorphism fixing eps."""
    nm = lambda a, b: a == b
    reps, frontier = [q0], [q0]
    while frontier:
        nxt = []
        for q in frontier:
            for k in q.mutable:
                r = qv.mutate(q, k)
                gr = _graph(r)
                if not any(nx.is_isomorphic(gr, _graph(s), node_match=nm, edge_match=nm) for s in reps):
                    reps.append(r)
                    nxt.append(r)
        frontier = nxt
    return len(reps)


@pytest.mark.parametrize("fam,n", [("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("D", 4)])
def test_class_size_matches_isomorphism_oracle(get_catalog, fam, n):
    assert len(get_catalog(fam, n)) == brute_class_size(qv.standard_quiver(fam, n))


def test_small_class_sizes(get_catalog):
    # frozen oracle values from brute_class_size
    assert [len(get_catalog(*k)) for k in [("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("D", 4)]] == [
        2, 5, 14, 6, 20, 35]


def test_a2_class_members(get_catalog):
    cat = get_catalog("A", 2)
    assert {tuple(m.quiver.arrows()) for m in cat.members} == {(("1", EPS, 1),), ((EPS, "1", 1),)}


def test_a3_class_contains_both_example_quivers(get_catalog):
    cat = get_catalog("A", 3)
    q0 = qv.standard_quiver("A", 3)
    assert cat.index_of(q0) == 0
    assert cat.index_of(qv.mutate(q0, "2")) is not None


@pytest.mark.parametrize("fam,n", [("A", 3), ("B", 3), ("D", 4)])
def test_catalog_is_closed(get_catalog, fam, n):
    cat = get_catalog(fam, n)
    for (i, k), j in cat.adjacency.items():
        assert cat.index_of(qv.mutate(cat.members[i].quiver, k)) == j
    for m in cat.members:
        assert qv.mutate_sequence(qv.standard_quiver(fam, n), m.witness) == m.quiver


def test_connecting_vertices():
    assert connecting_vertices(qv.standard_quiver("A", 3)) == {"1", EPS}
    tri = qv.mutate(qv.standard_quiver("A", 3), "2")
    assert connecting_vertices(tri) == {"1", "2", EPS}
    assert connecting_vertices(tri, {"1"}) == {"1"}


def test_a_predicate_examples():
    q0 = qv.standard_quiver("A", 3)
    assert check_A_eps(q0)
    assert check_A_eps(qv.mutate(q0, "2"))
    square = qv.from_edges("A", ["1", "2", "3"], [("1", "2", 1), ("2", "3", 1), ("3", EPS, 1), (EPS, "1", 1)])
    assert not check_A_eps(square)


def test_b_predicate_examples():
    assert check_B_eps(qv.standard_quiver("B", 2))
    assert b_shapes(qv.standard_quiver("B", 2))[0].shape == "pendant"
    q2 = qv.mutate_sequence(qv.standard_quiver("B", 3), ["2", "1", "0"])
    assert check_B_eps(q2)
    assert [r.shape for r in b_shapes(q2)] == ["triangle"]
    assert not check_B_eps(qv.standard_quiver("A", 3))


def test_d_classification_examples():
    rep = classify_D_eps(qv.standard_quiver("D", 4))
    assert rep.shape == "TypeI" and rep.roles == {"a": "0", "b": "1", "c": "2"}
    with pytest.raises(NoMatch):
        classify_D_eps(qv.standard_quiver("B", 3))
    # the quiver reached by the pivots 3, 2, 0 has eps on a 3-cycle and reads as a Type III shape
    q3 = qv.mutate_sequence(qv.standard_quiver("D", 4), ["3", "2", "0"])
    rep = classify_D_eps(q3)
    assert rep.shape == "TypeIII" and rep.roles["c"] == EPS


@pytest.mark.parametrize("fam,n", [("A", 3), ("A", 4), ("B", 2), ("B", 3), ("D", 4)])
def test_characterization_both_directions(fam, n):
    rep = verify_class_characterization(fam, n)
    assert rep.sound and rep.complete, rep


@pytest.mark.parametrize("fam,n", [("D", 5), ("D", 6)])
def test_d_predicate_sound_on_larger_ranks(get_catalog, fam, n):
    cat = get_catalog(fam, n)
    for m in cat.members:
        assert check_D_eps(m.quiver)
        classify_D_eps(m.quiver)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([("A", 4), ("B", 3), ("D", 4)]), st.lists(st.integers(0, 10), max_size=15))
def test_predicate_invariant_under_mutation(fk, steps):
    fam, n = fk
    pred = {"A": check_A_eps, "B": check_B_eps, "D": check_D_eps}[fam]
    q = qv.standard_quiver(fam, n)
    for s in steps:
        q = qv.mutate(q, q.mutable[s % len(q.mutable)])
        assert pred(q)


ALL = [("A", 2), ("A", 3), ("A", 4), ("A", 5), ("B", 2), ("B", 3), ("B", 4), ("D", 4), ("D", 5)]


def _cycle_shape_ok(c):
    ws = sorted(c.weights)
    if all(w == 1 for w in ws):
        return True
    if len(c) == 3:
        return ws == [1, 2, 2]
    if len(c) == 4:
        # two weight-2 arcs on opposite sides
        return ws == [1, 1, 2, 2] and c.weights[0] == c.weights[2]
    return False


@pytest.mark.parametrize("fam,n", ALL)
def test_class_invariants_exhaustive(get_catalog, fam, n):
    for m in get_catalog(fam, n).members:
        q = m.quiver
        for k in q.mutable:
            r = qv.mutate(q, k)
            r.check()
            assert qv.mutate(r, k) == q
        assert all(w in (1, 2) for _, _, w in q.arrows())
        # chordless_cycles raises on a non-oriented cycle
        assert all(_cycle_shape_ok(c) for c in qv.chordless_cycles(q))


def test_shortest_path_tie_raises():
    square = qv.from_edges("A", ["1", "2", "3"], [("1", "2", 1), ("2", EPS, 1), (EPS, "3", 1), ("3", "1", 1)])
    with pytest.raises(qv.AmbiguousPath):
        qv.shortest_path_to_frozen(square, "1")
