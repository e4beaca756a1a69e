import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cases import CONSTRUCTIBLE, IDS
from periodicflex import fixtures
from periodicflex.colouring import Colouring, classify
from periodicflex.construct import (
    ConstructionError,
    FlexKind,
    ParametricFlex,
    build,
    construct_balanced,
    construct_fixed_lattice,
    construct_for_colouring,
    construct_rank_deficient,
    construct_type1,
    construct_type2,
    coordinates,
    decode_number,
    encode_number,
    extend_flex_henneberg,
    red_potential,
    unimodular_complement,
)
from periodicflex.gaincore import GainGraph, apply_switching
from periodicflex.generate import random_constructible_instance
from periodicflex.verify import edge_residual, gram_drift, nontriviality, squared_lengths
from strategies import gain_graphs, switchings


def check(G, flex):
    assert edge_residual(G, flex) < 1e-9
    assert flex.base().is_full()
    assert nontriviality(G, flex)[0]
    assert min(squared_lengths(G, flex.base())) > 1e-12


@pytest.mark.parametrize("name, G, delta", CONSTRUCTIBLE, ids=IDS)
def test_fixture_constructions(name, G, delta):
    C = construct_for_colouring(G, delta)
    assert C.separation_checked
    assert C.graph is G
    check(G, C.flex)


def test_kinds_follow_classes():
    kinds = {name: construct_for_colouring(G, d).flex.kind for name, G, d in CONSTRUCTIBLE}
    assert kinds["doubled_prism:fixed"] is FlexKind.FIXED_LATTICE_SHEAR
    assert kinds["doubled_prism:flex1"] is FlexKind.ONE_PERIODIC_GRID
    assert kinds["prism_type1:given"] is FlexKind.TYPE1_GRID
    assert kinds["prism_type2:given"] is FlexKind.TYPE2_SCISSOR
    assert kinds["square_red_loop_repaired:given"] is FlexKind.FIXED_LATTICE_SHEAR


def test_type2_zero_beta_not_fixed_uses_auxiliary_direction():
    f = fixtures.type2_zero_beta()
    G, delta = f.graph, f.colourings["given"]
    c = classify(G, delta)
    assert c.type2 and c.beta == (0, 0) and not c.fixed_lattice
    C = construct_type2(G, delta)
    assert C.flex.kind is FlexKind.TYPE2_SCISSOR
    beta = tuple(C.flex.params["beta"])
    assert beta != (0, 0)
    check(G, C.flex)


def test_type2_zero_beta_fixed_routes_to_shear():
    f = fixtures.square_red_loop(blue_32=(0, -1))
    C = construct_type2(f.graph, f.colourings["given"])
    assert C.flex.kind is FlexKind.FIXED_LATTICE_SHEAR
    check(f.graph, C.flex)


def test_type2_zero_alpha_swaps_colours():
    f = fixtures.type2_zero_beta()
    G, delta = f.graph, f.colourings["given"].swapped()
    assert classify(G, delta).alpha == (0, 0)
    C = construct_type2(G, delta)
    assert C.colouring == delta
    assert any("swapped" in n for n in C.notes)
    check(G, C.flex)


def test_balanced_rotation():
    G = fixtures.triangle().graph
    C = construct_balanced(G)
    check(G, C.flex)
    assert np.max(gram_drift(C.flex)) < 1e-12
    G2 = GainGraph(2, ["a", "b"], [("ab", "a", "b", (3, -1))])
    check(G2, build(G2, "balanced-rotation").flex)
    with pytest.raises(ConstructionError):
        construct_balanced(fixtures.prism_flex1().graph)


def test_rank_deficient():
    G = GainGraph(2, ["a", "b", "c"], [("ab", "a", "b", (2, 4)), ("bc", "b", "c", (0, 0)), ("ca", "c", "a", (0, 0)), ("bL", "b", "b", (1, 2))])
    C = construct_rank_deficient(G)
    assert C.flex.params["alpha"] == [1, 2]
    assert C.flex.domain == (0.0, 1.0)
    check(G, C.flex)
    with pytest.raises(ConstructionError):
        construct_rank_deficient(fixtures.prism_type2().graph)


def test_wrong_class_is_rejected():
    G, delta = fixtures.prism_type2().graph, fixtures.prism_type2().colourings["given"]
    with pytest.raises(ConstructionError):
        construct_type1(G, delta)
    with pytest.raises(ConstructionError):
        construct_fixed_lattice(G, delta)
    f = fixtures.square_common_line()
    with pytest.raises(ConstructionError, match="type 3"):
        construct_for_colouring(f.graph, f.colourings["given"])
    with pytest.raises(ConstructionError):
        build(G, "type2-scissor")
    with pytest.raises(ConstructionError):
        build(G, "nonsense", delta)


def test_disconnected_is_rejected():
    G = GainGraph(1, list("abcd"), [("ab", "a", "b", (0,)), ("cd", "c", "d", (1,)), ("cL", "c", "c", (1,))])
    delta = Colouring.from_sets(["ab"], ["cd", "cL"])
    with pytest.raises(ConstructionError):
        construct_fixed_lattice(G, delta)


def test_flex_reports_back_to_input_gains():
    # constructions switch internally; positions are shifted back so the
    # original gains are the ones that keep their lengths
    f = fixtures.prism_type2()
    G = apply_switching(f.graph, [("3", (1, -2)), ("6", (0, 3))])
    C = construct_for_colouring(G, f.colourings["given"])
    assert C.flex.params["shift"]
    assert C.normalized != G
    assert edge_residual(G, C.flex) < 1e-9
    assert edge_residual(C.normalized, C.flex) > 1e-3


@given(st.data())
def test_construction_after_switching(data):
    name, G, delta = data.draw(st.sampled_from(CONSTRUCTIBLE))
    H = apply_switching(G, data.draw(switchings(G)))
    C = construct_for_colouring(H, delta)
    assert edge_residual(H, C.flex) < 1e-9


@given(st.integers(0, 10**6))
def test_random_constructible_instances(seed):
    G, delta, cls = random_constructible_instance(seed)
    check(G, construct_for_colouring(G, delta, cls).flex)


@given(gain_graphs(k=2, max_edges=6))
def test_balanced_or_rank_deficient_graphs(G):
    from periodicflex.gaincore import combined_span

    S = combined_span(G)
    if S.rank < 2:
        C = construct_rank_deficient(G)
        assert edge_residual(G, C.flex) < 1e-9
        assert C.flex.base().is_full()
    if S.is_trivial:
        assert edge_residual(G, construct_balanced(G).flex) < 1e-9


def test_perturbed_parameters_break_edges():
    f = fixtures.prism_type2()
    flex = construct_for_colouring(f.graph, f.colourings["given"]).flex
    params = dict(flex.params)
    params["grid"] = dict(params["grid"])
    v = f.graph.vertices[0]
    x, y = params["grid"][v]
    params["grid"][v] = [x, encode_number(decode_number(y) + Fraction(1, 3))]
    bad = ParametricFlex(flex.kind, flex.k, flex.vertices, params, flex.domain)
    assert edge_residual(f.graph, bad) > 1e-3


def test_henneberg_extension():
    f = fixtures.prism_type2()
    base = construct_for_colouring(f.graph, f.colourings["given"]).flex
    H, ext = extend_flex_henneberg(f.graph, base, "1", (1, 0))
    assert len(H.vertices) == 7 and len(H.edges) == len(f.graph.edges) + 2
    assert edge_residual(H, ext) < 1e-9
    r = float(decode_number(ext.params["r"]))
    for t in ext.grid(64):
        _, (x, y), fa = ext.henneberg_terms(t)
        assert abs(x * math.cos(fa) + y * math.sin(fa) + (x * x + y * y) / (2 * r)) < 1e-9
    assert np.all(np.abs(np.diff(ext.henneberg_angles(ext.grid(64)))) < 1)
    with pytest.raises(ConstructionError):
        extend_flex_henneberg(f.graph, base, "1", (0, 0))


def test_henneberg_on_one_periodic():
    f = fixtures.prism_flex1()
    base = construct_for_colouring(f.graph, f.colourings["given"]).flex
    H, ext = extend_flex_henneberg(f.graph, base, "3", (2,))
    assert edge_residual(H, ext) < 1e-9
    assert nontriviality(H, ext)[0]


@given(st.one_of(st.fractions(max_denominator=1000), st.integers(-10**9, 10**9)))
def test_rational_encoding_is_exact(x):
    assert decode_number(encode_number(Fraction(x))) == Fraction(x)


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_encoding_round_trips(x):
    assert decode_number(encode_number(x)) == x


def test_decode_rejects():
    for bad in (True, None, [1]):
        with pytest.raises(ValueError):
            decode_number(bad)


@given(st.tuples(st.integers(-30, 30), st.integers(-30, 30)).filter(lambda v: math.gcd(*v) == 1))
def test_unimodular_complement(alpha):
    beta = unimodular_complement(alpha)
    assert alpha[0] * beta[1] - alpha[1] * beta[0] == 1


def test_unimodular_complement_needs_primitive():
    with pytest.raises(ConstructionError):
        unimodular_complement((2, 4))


@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_coordinates(g):
    a, b = coordinates(g, (1, 1), (0, 2))
    assert (a * 1 + b * 0, a * 1 + b * 2) == g
    with pytest.raises(ConstructionError):
        coordinates(g, (1, 2), (2, 4))


def test_red_potential_inconsistent():
    G = GainGraph(1, ["a", "b"], [("e", "a", "b", (1,)), ("f", "a", "b", (2,))])
    with pytest.raises(ConstructionError):
        red_potential(G, ["e", "f"])
    assert red_potential(G, ["e"]) == {"a": (0,), "b": (2,)}
