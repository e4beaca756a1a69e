import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import same_subgroup
from periodicflex import fixtures
from periodicflex.gaincore import (
    GainGraph,
    GainGraphError,
    apply_switching,
    chord_cycle_walk,
    circuit_gain,
    combined_span,
    components,
    henneberg1_extend,
    invert_switching,
    is_balanced,
    is_connected,
    rank,
    span_subgroup,
    span_witnesses,
    spanning_forest,
    spanning_tree_normalize,
    switch,
    walk_gain,
)
from periodicflex.intlattice import hnf
from strategies import gain_graphs, gains, switchings


def star():
    return GainGraph(2, ["u", "a", "b"], [("ua", "u", "a", (1, 2)), ("bu", "b", "u", (3, -1))])


def test_canonical_orientation():
    G = GainGraph(2, ["1", "2"], [("e", "2", "1", (1, -2)), ("L", "1", "1", (-1, 3))])
    e, L = G.edge("e"), G.edge("L")
    assert (e.tail, e.head, e.gain) == ("1", "2", (-1, 2))
    assert L.gain == (1, -3)


def test_same_edge_both_ways():
    a = GainGraph(1, ["1", "2"], [("e", "1", "2", (3,))])
    b = GainGraph(1, ["1", "2"], [("e", "2", "1", (-3,))])
    assert a == b


@pytest.mark.parametrize(
    "k, vertices, edges",
    [
        (3, ["1"], []),
        (1, ["1", "1"], []),
        (1, ["1"], [("L", "1", "1", (0,))]),
        (1, ["1", "2"], [("e", "1", "3", (0,))]),
        (2, ["1", "2"], [("e", "1", "2", (0,))]),
        (1, ["1", "2"], [("e", "1", "2", (0,)), ("e", "2", "1", (1,))]),
    ],
)
def test_invalid_graphs(k, vertices, edges):
    with pytest.raises(GainGraphError):
        GainGraph(k, vertices, edges)


def test_switch_star():
    # edges leaving u gain +mu, edges entering u lose mu
    H = switch(star(), "u", (1, 1))
    assert H.edge("ua").gain == (2, 3)
    bu = H.edge("bu")
    assert (bu.tail, bu.head) == ("u", "b")
    assert bu.gain == (-2, 2)  # stored reversed: (b,u,(2,-2))


def test_switch_identity_and_errors():
    G = star()
    assert switch(G, "u", (0, 0)) == G
    assert switch(switch(G, "a", (2, -5)), "a", (-2, 5)) == G
    with pytest.raises(GainGraphError):
        switch(G, "z", (1, 0))


def test_switch_leaves_loops():
    G = GainGraph(1, ["1", "2"], [("L", "1", "1", (2,)), ("e", "1", "2", (0,))])
    H = switch(G, "1", (5,))
    assert H.edge("L").gain == (2,)
    assert H.edge("e").gain == (5,)


def test_normalize_zeroes_forest():
    G = fixtures.prism_type2().graph
    H, seq = spanning_tree_normalize(G)
    assert H == apply_switching(G, seq)
    for comp in spanning_forest(H):
        for v in comp.vertices:
            assert not any(comp.potential[v])
    # every edge gain now lies in the span
    S = span_subgroup(H)
    assert all(e.gain in S for e in H.edges)


def test_normalize_disconnected():
    G = GainGraph(1, list("abcd"), [("ab", "a", "b", (3,)), ("cd", "c", "d", (-2,))])
    H, _ = spanning_tree_normalize(G)
    assert all(e.gain == (0,) for e in H.edges)
    assert components(G) == [["a", "b"], ["c", "d"]]


def test_loop_and_parallel_span_is_everything():
    G = fixtures.loop_and_parallel_pair().graph
    assert span_subgroup(G) == hnf([(1, 0), (0, 1)])
    assert rank(G) == 2
    assert not is_balanced(G)


def test_circuit_gain():
    G = fixtures.triangle().graph
    # "ca" is stored as a -> c
    assert circuit_gain(G, [("ab", 1), ("bc", 1), ("ca", -1)]) == (0,)
    G = fixtures.prism_flex1().graph
    # 1 -> 3 -> 4 -> 2 -> 1 along red edges
    assert circuit_gain(G, [("13", 1), ("34g", 1), ("24", -1), ("12g", -1)]) == (0,)
    with pytest.raises(GainGraphError):
        circuit_gain(G, [("13", 1), ("34g", 1)])
    with pytest.raises(GainGraphError):
        walk_gain(G, [("13", 1), ("12", 1)])


def test_span_of_disconnected_subgraph_needs_combined():
    G = fixtures.prism_type2().graph
    with pytest.raises(GainGraphError):
        span_subgroup(G, ["13", "56"])
    assert combined_span(G, ["13", "56"]).is_trivial


def test_henneberg_extend():
    G = fixtures.prism_type2().graph
    H = henneberg1_extend(G, "1", "1", (0, 0), (1, 0))
    assert len(H.vertices) == len(G.vertices) + 1
    assert len(H.edges) == len(G.edges) + 2
    assert rank(H) == rank(G)
    with pytest.raises(GainGraphError):
        henneberg1_extend(G, "1", "1", (1, 0), (1, 0))
    with pytest.raises(GainGraphError):
        henneberg1_extend(G, "9", "1", (0, 0), (1, 0))
    with pytest.raises(GainGraphError):
        henneberg1_extend(G, "1", "2", (0, 0), (1, 0), new_vertex="3")


@given(st.data())
def test_switching_preserves_spans_and_circuit_gains(data):
    G = data.draw(gain_graphs())
    seq = data.draw(switchings(G))
    H = apply_switching(G, seq)
    assert combined_span(H) == combined_span(G)
    for g, walk in span_witnesses(G):
        assert circuit_gain(H, walk) == g
    assert apply_switching(H, invert_switching(seq)) == G


@given(st.data())
def test_switch_one_at_a_time_matches_batch(data):
    G = data.draw(gain_graphs())
    seq = data.draw(switchings(G))
    H = G
    for u, mu in seq:
        H = switch(H, u, mu)
    assert H == apply_switching(G, seq)


@given(st.data())
def test_switches_commute(data):
    G = data.draw(gain_graphs())
    u = data.draw(st.sampled_from(G.vertices))
    v = data.draw(st.sampled_from(G.vertices))
    a, b = data.draw(gains(G.k)), data.draw(gains(G.k))
    assert switch(switch(G, u, a), v, b) == switch(switch(G, v, b), u, a)


@given(st.data())
def test_relabel_preserves_span(data):
    G = data.draw(gain_graphs(connected=False))
    perm = data.draw(st.permutations(list(G.vertices)))
    mapping = {v: f"x{w}" for v, w in zip(G.vertices, perm)}
    H = G.relabel(mapping, sorted(mapping.values()))
    assert combined_span(H) == combined_span(G)
    assert is_connected(H) == is_connected(G)


@given(gain_graphs(connected=False))
def test_span_witnesses_generate_span(G):
    ws = span_witnesses(G)
    for g, walk in ws:
        assert circuit_gain(G, walk) == g
    assert same_subgroup([g for g, _ in ws], list(combined_span(G).basis))


@given(gain_graphs())
def test_chord_walks_close_at_root(G):
    for comp in spanning_forest(G):
        for e in comp.chords:
            for d in (1, -1):
                walk = chord_cycle_walk(comp, e, d)
                g = circuit_gain(G, walk)
                assert (g == (0,) * G.k) == (circuit_gain(G, chord_cycle_walk(comp, e, -d)) == (0,) * G.k)
