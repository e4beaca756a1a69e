"""Small named gain graphs with colourings, used in tests and as CLI examples.

Vertices are the strings "1", "2", ...; an edge written ``(id, a, b, g)`` is
the arrow a -> b carrying gain g. Edges without a stated gain carry 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .colouring import Colouring
from .gaincore import GainGraph


@dataclass
class Fixture:
    name: str
    graph: GainGraph
    colourings: dict = field(default_factory=dict)
    note: str = ""


def _vs(n):
    return [str(i) for i in range(1, n + 1)]


def _split(edges):
    """Turn ``(id, a, b, gain, colour)`` rows into graph edges and a colouring."""
    graph_edges = [(eid, a, b, g) for eid, a, b, g, _ in edges]
    red = [eid for eid, *_, c in edges if c == "r"]
    blue = [eid for eid, *_, c in edges if c == "b"]
    return graph_edges, Colouring.from_sets(red, blue)


def loop_and_parallel_pair():
    """Two vertices, a parallel pair differing by (1,0) and a loop (0,1); span is Z^2."""
    G = GainGraph(2, _vs(2), [
        ("12", "1", "2", (0, 0)),
        ("12g", "1", "2", (1, 0)),
        ("1L", "1", "1", (0, 1)),
    ])
    return Fixture("loop_and_parallel_pair", G)


def square_with_blue_loop(alpha=(1, 0), beta=(0, 1), gamma=(0, 1)):
    """Four vertices: red 1->2 (alpha), 1->3 (gamma), 2-3; blue 1-2, 1-4, 2-4 and a loop beta at 2."""
    edges, delta = _split([
        ("12r", "1", "2", alpha, "r"),
        ("12b", "1", "2", (0, 0), "b"),
        ("14", "1", "4", (0, 0), "b"),
        ("24", "2", "4", (0, 0), "b"),
        ("13", "1", "3", gamma, "r"),
        ("23", "2", "3", (0, 0), "r"),
        ("2L", "2", "2", beta, "b"),
    ])
    return Fixture("square_with_blue_loop", GainGraph(2, _vs(4), edges), {"given": delta})


def doubled_prism():
    """Z-gain prism on two triangles 1-2-5 and 3-4-6, with the rungs 1-2 and 3-4 doubled by gain 1.

    ``fixed``: blue matching 1-3, 2-4, 5-6, everything else red.
    ``flex1``: the matching plus both gain-1 edges blue, the rest red.
    """
    G = GainGraph(1, _vs(6), [
        ("13", "1", "3", (0,)),
        ("24", "2", "4", (0,)),
        ("56", "5", "6", (0,)),
        ("25", "2", "5", (0,)),
        ("15", "1", "5", (0,)),
        ("12", "1", "2", (0,)),
        ("12g", "1", "2", (1,)),
        ("46", "4", "6", (0,)),
        ("36", "3", "6", (0,)),
        ("34g", "3", "4", (1,)),
        ("34", "3", "4", (0,)),
    ])
    ids = [e.id for e in G.edges]
    blue_fixed = ["13", "24", "56"]
    blue_flex = blue_fixed + ["12g", "34g"]
    return Fixture("doubled_prism", G, {
        "fixed": Colouring.from_sets([e for e in ids if e not in blue_fixed], blue_fixed),
        "flex1": Colouring.from_sets([e for e in ids if e not in blue_flex], blue_flex),
    })


def blue_k4_red_square():
    """Blue K4 with zero gains and a red 4-cycle whose gains cancel (type 1)."""
    edges, delta = _split([
        ("12b", "1", "2", (0, 0), "b"),
        ("13b", "1", "3", (0, 0), "b"),
        ("14b", "1", "4", (0, 0), "b"),
        ("23b", "2", "3", (0, 0), "b"),
        ("24b", "2", "4", (0, 0), "b"),
        ("34b", "3", "4", (0, 0), "b"),
        ("12r", "1", "2", (1, 0), "r"),
        ("23r", "2", "3", (0, 1), "r"),
        ("43r", "4", "3", (1, 0), "r"),
        ("14r", "1", "4", (0, 1), "r"),
    ])
    return Fixture("blue_k4_red_square", GainGraph(2, _vs(4), edges), {"given": delta})


def doubled_path_with_loops():
    """Path 1-2-3 with every edge doubled (red (1,1) out of 2, blue 0) and two loops at 2 (type 2)."""
    edges, delta = _split([
        ("21r", "2", "1", (1, 1), "r"),
        ("21b", "2", "1", (0, 0), "b"),
        ("23r", "2", "3", (1, 1), "r"),
        ("23b", "2", "3", (0, 0), "b"),
        ("2Lb", "2", "2", (0, 1), "b"),
        ("2Lr", "2", "2", (1, 0), "r"),
    ])
    return Fixture("doubled_path_with_loops", GainGraph(2, _vs(3), edges), {"given": delta})


def square_common_line():
    """Square with a diagonal where both colour spans lie on Z(1,0) (type 3)."""
    edges, delta = _split([
        ("21b", "2", "1", (0, 0), "b"),
        ("14b", "1", "4", (0, 0), "b"),
        ("24b", "2", "4", (0, 0), "b"),
        ("14bg", "1", "4", (1, 0), "b"),
        ("13r", "1", "3", (0, 0), "r"),
        ("23r", "2", "3", (0, 1), "r"),
        ("34r", "3", "4", (0, 1), "r"),
        ("21r", "2", "1", (-1, 1), "r"),
    ])
    return Fixture("square_common_line", GainGraph(2, _vs(4), edges), {"given": delta})


def square_red_loop(blue_32=(0, 1)):
    """Square 1-2-3-4 with red 1-4, 1->2 (1,0), 2-4 and a red loop (1,0) at 3; blue star at 3.

    As printed, blue 3->4 and 3->2 both carry (0,1). ``blue_32`` lets tests
    vary the gain of blue 3->2.
    """
    edges, delta = _split([
        ("14", "1", "4", (0, 0), "r"),
        ("12", "1", "2", (1, 0), "r"),
        ("24", "2", "4", (0, 0), "r"),
        ("34", "3", "4", (0, 1), "b"),
        ("31", "3", "1", (0, 0), "b"),
        ("32", "3", "2", blue_32, "b"),
        ("3L", "3", "3", (1, 0), "r"),
    ])
    return Fixture("square_red_loop", GainGraph(2, _vs(4), edges), {"given": delta})


def prism_with_pendant():
    """Z^2 prism with a pendant vertex 7; red edges form a zero-gain matching-like forest (fixed lattice)."""
    edges, delta = _split([
        ("13", "1", "3", (0, 0), "r"),
        ("24", "2", "4", (0, 0), "r"),
        ("56", "5", "6", (0, 0), "r"),
        ("47", "4", "7", (0, 0), "r"),
        ("25", "2", "5", (0, 0), "b"),
        ("15", "1", "5", (0, 0), "b"),
        ("12", "1", "2", (0, 0), "b"),
        ("12g", "1", "2", (1, 0), "b"),
        ("27", "2", "7", (1, 1), "b"),
        ("46", "4", "6", (0, 0), "b"),
        ("36", "3", "6", (0, 0), "b"),
        ("34g", "3", "4", (0, 1), "b"),
    ])
    return Fixture("prism_with_pendant", GainGraph(2, _vs(7), edges), {"given": delta})


def _prism(k, g13, g24, g56, g12, g34, g25=None, g46=None):
    z = (0,) * k
    edges, delta = _split([
        ("13", "1", "3", g13, "r"),
        ("24", "2", "4", g24, "r"),
        ("56", "5", "6", g56, "r"),
        ("12g", "1", "2", g12, "r"),
        ("34g", "3", "4", g34, "r"),
        ("25", "2", "5", g25 or z, "b"),
        ("15", "1", "5", z, "b"),
        ("12", "1", "2", z, "b"),
        ("46", "4", "6", g46 or z, "b"),
        ("36", "3", "6", z, "b"),
        ("34", "3", "4", z, "b"),
    ])
    return GainGraph(k, _vs(6), edges), delta


def prism_flex1():
    """Z-gain prism with a balanced red 4-cycle and zero-gain blue triangles (flexible 1-lattice)."""
    G, delta = _prism(1, (2,), (2,), (1,), (1,), (1,))
    return Fixture("prism_flex1", G, {"given": delta})


def prism_type1():
    """Z^2 version of :func:`prism_flex1` (type 1)."""
    G, delta = _prism(2, (1, 0), (1, 0), (2, 0), (1, 1), (1, 1))
    return Fixture("prism_type1", G, {"given": delta})


def prism_type2():
    """Z^2 prism whose red span is Z(1,0) and blue span Z(0,1) (type 2)."""
    G, delta = _prism(2, (1, 2), (1, 2), (2, 0), (1, 1), (2, 1), g25=(0, 1), g46=(0, 2))
    return Fixture("prism_type2", G, {"given": delta})


def type2_zero_beta():
    """Red edge plus red loop (1,1), one blue edge: type 2 with beta = 0 but not fixed-lattice."""
    edges, delta = _split([
        ("r", "1", "2", (0, 0), "r"),
        ("rL", "1", "1", (1, 1), "r"),
        ("b", "1", "2", (1, 0), "b"),
    ])
    return Fixture("type2_zero_beta", GainGraph(2, _vs(2), edges), {"given": delta})


def type3_only():
    """Loopless rank 2 graph on three vertices whose only candidate colourings are type 3."""
    G = GainGraph(2, _vs(3), [
        ("e1", "1", "2", (0, 0)),
        ("e2", "1", "3", (-1, 0)),
        ("e3", "1", "2", (-1, 1)),
        ("e4", "2", "3", (1, 0)),
        ("e5", "2", "3", (0, 1)),
        ("e6", "1", "2", (-1, -1)),
        ("e7", "2", "3", (1, -1)),
    ])
    return Fixture("type3_only", G)


def triangle():
    """Zero-gain triangle, two red edges and one blue."""
    edges, delta = _split([
        ("ab", "a", "b", (0,), "r"),
        ("bc", "b", "c", (0,), "r"),
        ("ca", "c", "a", (0,), "b"),
    ])
    return Fixture("triangle", GainGraph(1, ["a", "b", "c"], edges), {"given": delta})


CATALOGUE = {
    f.__name__: f
    for f in (
        loop_and_parallel_pair,
        square_with_blue_loop,
        doubled_prism,
        blue_k4_red_square,
        doubled_path_with_loops,
        square_common_line,
        square_red_loop,
        prism_with_pendant,
        prism_flex1,
        prism_type1,
        prism_type2,
        type2_zero_beta,
        type3_only,
        triangle,
    )
}


def get(name):
    return CATALOGUE[name]()
