"""Flexible placement-lattices with closed-form motions.

Every construction works on a switched copy G' of the input graph and then
transports the result back: if G' is G switched by a net amount m(u) at each
vertex, then ``p(u) = p'(u) - L m(u)`` gives a framework of G with the same
edge vectors. The transported motion is still closed form, so every flex here
is a :class:`ParametricFlex` on the original graph.

Edge separation (no edge of length zero) is checked exactly, on the integer
or rational data the placement is built from, never on floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from . import colouring as col
from .colouring import BLUE, RED, Colouring, classify
from .gaincore import (
    GainGraphError,
    apply_switching,
    combined_span,
    henneberg1_extend,
    fresh_vertex,
    spanning_forest,
    spanning_tree_normalize,
    total_shift,
)
from .intlattice import TRIVIAL, Coset, coset_intersects_line, hnf, independent, is_zero, line_containing, primitive, vzero


class ConstructionError(ValueError):
    pass


class FlexKind(str, Enum):
    FIXED_LATTICE_SHEAR = "FixedLatticeShear"
    BALANCED_ROTATION = "BalancedRotation"
    ONE_PERIODIC_GRID = "OnePeriodicGrid"
    TYPE1_GRID = "Type1Grid"
    TYPE2_SCISSOR = "Type2Scissor"
    RANK_DEFICIENT_SCALE = "RankDeficientScale"
    HENNEBERG_CIRCLE = "HennebergCircle"


@dataclass
class PlacementLattice:
    """Positions ``P[i]`` of ``vertices[i]`` in the plane and a 2 x k lattice matrix ``L``."""

    vertices: tuple
    P: np.ndarray
    L: np.ndarray

    def __post_init__(self):
        self._index = {v: i for i, v in enumerate(self.vertices)}

    def p(self, v):
        return self.P[self._index[v]]

    def edge_vector(self, e):
        return self.p(e.tail) - self.p(e.head) - self.L @ np.asarray(e.gain, dtype=float)

    def is_full(self, tol=1e-9):
        return np.linalg.matrix_rank(self.L, tol=tol) == self.L.shape[1]


# number encoding for flex parameters: ints stay ints, rationals become "p/q"
# strings and floats become 17-significant-digit strings


def encode_number(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (int, np.integer)):
        return int(x)
    return format(float(x), ".17g")


def decode_number(x):
    if isinstance(x, bool):
        raise ValueError("boolean is not a number")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return Fraction(x) if "/" in x else float(x)
    raise ValueError(f"not an encoded number: {x!r}")


def _as_float(x):
    return float(decode_number(x)) if isinstance(x, str) else float(x)


def _rotation(t):
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s], [s, c]])


def _basis_inverse(alpha, beta):
    """Inverse of the matrix with columns alpha, beta, as floats."""
    M = np.array([[alpha[0], beta[0]], [alpha[1], beta[1]]], dtype=float)
    return np.linalg.inv(M)


def _lattice(kind, k, params, t):
    if kind is FlexKind.FIXED_LATTICE_SHEAR:
        c = [_as_float(x) for x in params["c"]]
        return np.diag(c) if k == 2 else np.array([[c[0]], [0.0]])
    if kind is FlexKind.BALANCED_ROTATION:
        L0 = np.eye(2) if k == 2 else np.array([[1.0], [0.0]])
        return _rotation(t) @ L0
    if kind is FlexKind.ONE_PERIODIC_GRID:
        return np.array([[-2 + math.cos(t)], [math.sin(t)]])
    if kind is FlexKind.TYPE1_GRID:
        c, s = math.cos(t), math.sin(t)
        return np.array([[-2 + c, s], [s, -2 - c]])
    if kind is FlexKind.TYPE2_SCISSOR:
        images = np.array([[math.cos(t), 0.0], [math.sin(t), 1.0]])
        return images @ _basis_inverse(params["alpha"], params["beta"])
    if kind is FlexKind.RANK_DEFICIENT_SCALE:
        images = np.array([[1.0, 0.0], [0.0, 1.0 + t]])
        return images @ _basis_inverse(params["alpha"], params["beta"])
    raise ValueError(f"no lattice rule for {kind}")


def _positions(kind, params, vertices, t):
    grid = params["grid"]
    P = np.array([[_as_float(x) for x in grid[v]] for v in vertices], dtype=float)
    if kind is FlexKind.FIXED_LATTICE_SHEAR:
        x, y = P[:, 0].copy(), P[:, 1].copy()
        P = np.column_stack([x + y * math.sin(t), y * math.cos(t)])
    return P


@dataclass
class ParametricFlex:
    """A closed-form motion ``t -> (p_t, L_t)`` of a placement-lattice.

    ``params["shift"]`` holds the net switching per vertex that maps the
    construction graph back to the input graph (omitted entries are zero).
    """

    kind: FlexKind
    k: int
    vertices: tuple
    params: dict
    domain: tuple = (0.0, 2 * math.pi)
    inner: "ParametricFlex" = None

    def __post_init__(self):
        self.kind = FlexKind(self.kind)
        self.vertices = tuple(self.vertices)

    def sample(self, t):
        t = float(t)
        if self.kind is FlexKind.HENNEBERG_CIRCLE:
            return self._sample_henneberg(t)
        L = _lattice(self.kind, self.k, self.params, t)
        P = _positions(self.kind, self.params, self.vertices, t)
        shift = self.params.get("shift", {})
        if shift:
            m = np.array([shift.get(v, [0] * self.k) for v in self.vertices], dtype=float)
            P = P - m @ L.T
        return PlacementLattice(self.vertices, P, L)

    def base(self):
        return self.sample(self.domain[0])

    def grid(self, samples):
        return np.linspace(self.domain[0], self.domain[1], samples)

    def henneberg_terms(self, t):
        """(x_t, y_t), f(t) for the new vertex of a Henneberg flex."""
        frame = self.inner.sample(t)
        g = np.asarray(self.params["gain"], dtype=float)
        x, y = frame.L @ g
        r = _as_float(self.params["r"])
        f = math.acos(-math.hypot(x, y) / (2 * r)) + math.atan2(y, x)
        return frame, (x, y), f

    def henneberg_angles(self, ts):
        """f sampled over ``ts`` with 2*pi jumps removed."""
        return np.unwrap([self.henneberg_terms(t)[2] for t in ts])

    def _sample_henneberg(self, t):
        frame, _, f = self.henneberg_terms(t)
        r = _as_float(self.params["r"])
        anchor = frame.p(self.params["anchor"])
        new = anchor + r * np.array([math.cos(f), math.sin(f)])
        return PlacementLattice(self.vertices, np.vstack([frame.P, new]), frame.L)


@dataclass
class Construction:
    """Result of a construction: the flex, its base frame, and the exact checks done."""

    graph: object
    flex: ParametricFlex
    recipe: str
    colouring: Colouring = None
    normalized: object = None
    separation_checked: bool = False
    notes: list = field(default_factory=list)

    @property
    def placement(self):
        return self.flex.base()


def _shift_param(G, sequence):
    shift = total_shift(G, sequence)
    return {v: list(m) for v, m in shift.items() if not is_zero(m)}


def _require(cls, flag, name):
    if not getattr(cls, flag):
        raise ConstructionError(f"colouring is not {name} (classes: {cls.classes or 'none'})")


def _index_components(G, edge_ids):
    """Map vertex -> index of its component in the subgraph on ``edge_ids``; also the forest."""
    forest = spanning_forest(G, edge_ids)
    index = {}
    for i, comp in enumerate(forest):
        for v in comp.vertices:
            index[v] = i
    return index, forest


def _check_separation(Gn, separated):
    """Run the exact per-edge separation predicate; raise on any failure."""
    bad = [e.id for e in Gn.edges if not separated(e)]
    if bad:
        raise ConstructionError(f"internal error: edges {bad} have zero length in the construction")


def _require_connected(G):
    if len(spanning_forest(G)) > 1:
        raise ConstructionError("graph is disconnected")


# fixed lattice


def construct_fixed_lattice(G, delta, cls=None):
    """Shear flex with a constant lattice for a fixed-lattice NBAC-colouring.

    Vertices sit on the grid (x, y) where x indexes components of the
    balanced colour and y components of the unbalanced one; the motion is
    ``(x + y sin t, y cos t)``.
    """
    _require_connected(G)
    cls = cls or classify(G, delta)
    _require(cls, "fixed_lattice", "a fixed-lattice NBAC-colouring")
    unbalanced = cls.unbalanced_colour
    balanced = col.other(unbalanced)
    bal_ids = delta.edges(balanced)
    Gn, seq = spanning_tree_normalize(G, bal_ids)
    if any(not is_zero(Gn.edge(e).gain) for e in bal_ids):
        raise ConstructionError("internal error: balanced colour did not normalize to zero gains")
    x, _ = _index_components(Gn, bal_ids)
    y, _ = _index_components(Gn, delta.edges(unbalanced))
    grid = {v: [x[v], y[v]] for v in G.vertices}
    # The constants are irrational, so an edge has length zero only when its
    # gain is zero and both ends share a grid point.
    _check_separation(Gn, lambda e: not is_zero(e.gain) or grid[e.tail] != grid[e.head])
    c = [math.sqrt(2), math.sqrt(3)] if G.k == 2 else [math.sqrt(2)]
    params = {"grid": grid, "c": [encode_number(v) for v in c], "shift": _shift_param(G, seq)}
    flex = ParametricFlex(FlexKind.FIXED_LATTICE_SHEAR, G.k, G.vertices, params)
    return Construction(G, flex, col.FIXED_LATTICE_SHEAR, delta, Gn, True)


# balanced graphs


def _parabola_grid(G):
    return {v: [i, i * i] for i, v in enumerate(G.vertices)}


def construct_balanced(G):
    """Constant injective placement with a rotating lattice."""
    if not combined_span(G).is_trivial:
        raise ConstructionError("graph is not balanced")
    Gn, seq = spanning_tree_normalize(G)
    grid = _parabola_grid(G)
    _check_separation(Gn, lambda e: is_zero(e.gain) and grid[e.tail] != grid[e.head])
    params = {"grid": grid, "shift": _shift_param(G, seq)}
    flex = ParametricFlex(FlexKind.BALANCED_ROTATION, G.k, G.vertices, params)
    return Construction(G, flex, col.BALANCED_ROTATION, None, Gn, True)


# flexible 1-lattice and type 1


def normalize_blue_trivial(G, delta):
    """Switch so that blue edges have gain 0 and red edges nonzero gain.

    Blue is first zeroed on a spanning forest (blue is balanced, so every
    blue edge becomes 0). If some red edge is still zero, every vertex of the
    i-th blue component is switched by ``i * mu`` with ``mu`` larger than all
    gains in the first coordinate.
    """
    blue = delta.edges(BLUE)
    red = delta.edges(RED)
    Gn, seq = spanning_tree_normalize(G, blue)
    if any(not is_zero(Gn.edge(e).gain) for e in blue):
        raise ConstructionError("blue colour is not balanced")
    if any(is_zero(Gn.edge(e).gain) for e in red):
        mu = 1 + Gn.max_gain()
        step = (mu,) + (0,) * (G.k - 1)
        comp_index, forest = _index_components(Gn, blue)
        extra = [(v, tuple(i * s for s in step)) for i, comp in enumerate(forest) for v in comp.vertices if i]
        Gn = apply_switching(Gn, extra)
        seq = seq + extra
    if any(is_zero(Gn.edge(e).gain) for e in red):
        raise ConstructionError("a red edge keeps zero gain; colouring has a balanced almost blue circuit")
    return Gn, seq


def red_potential(G, edge_ids, factor=2, increment=None):
    """Potential q with ``q(w) - q(v) = increment(g)`` on every edge (v, w, g) of the subgraph.

    ``increment`` defaults to ``factor * g``. It must be linear in the gain;
    q is obtained by integrating along a spanning forest and then checked on
    every edge, which fails exactly when some circuit has nonzero increment.
    """
    if increment is None:
        def increment(g):
            return tuple(factor * x for x in g)
    q = {}
    for comp in spanning_forest(G, edge_ids):
        for v in comp.vertices:
            q[v] = increment(comp.potential[v])
    for eid in edge_ids:
        e = G.edge(eid)
        diff = tuple(a - b for a, b in zip(q[e.head], q[e.tail]))
        if diff != tuple(increment(e.gain)):
            raise ConstructionError(f"inconsistent potential on edge {eid}")
    return q


def construct_flexible_1lattice(G, delta, cls=None):
    """Red components on horizontal rows, lattice vector (-2 + cos t, sin t)."""
    if G.k != 1:
        raise ConstructionError("flexible 1-lattice construction needs k = 1")
    _require_connected(G)
    cls = cls or classify(G, delta)
    _require(cls, "flexible_1_lattice", "a flexible 1-lattice NBAC-colouring")
    Gn, seq = normalize_blue_trivial(G, delta)
    red = delta.edges(RED)
    q = red_potential(Gn, red, 2)
    row, _ = _index_components(Gn, red)
    grid = {v: [q[v][0], row[v]] for v in G.vertices}
    # At t = 0 the lattice vector is (-1, 0).
    _check_separation(Gn, lambda e: (grid[e.tail][0] - grid[e.head][0] + e.gain[0], grid[e.tail][1] - grid[e.head][1]) != (0, 0))
    params = {"grid": grid, "shift": _shift_param(G, seq)}
    flex = ParametricFlex(FlexKind.ONE_PERIODIC_GRID, 1, G.vertices, params)
    return Construction(G, flex, col.ONE_PERIODIC_GRID, delta, Gn, True)


def construct_type1(G, delta, cls=None):
    """Two-dimensional analogue of the 1-lattice construction."""
    if G.k != 2:
        raise ConstructionError("type 1 construction needs k = 2")
    _require_connected(G)
    cls = cls or classify(G, delta)
    _require(cls, "type1", "a type 1 NBAC-colouring")
    Gn, seq = normalize_blue_trivial(G, delta)
    red = delta.edges(RED)
    q = red_potential(Gn, red, 2)
    row, _ = _index_components(Gn, red)
    # Horizontal offsets wider than any potential difference keep distinct
    # red components apart along blue edges.
    D = 1 + 2 * max((abs(x) for v in q for x in q[v]), default=0)
    grid = {v: [q[v][0] + row[v] * D, q[v][1]] for v in G.vertices}

    def separated(e):
        # L_0 has columns (-1, 0) and (0, -3).
        g = e.gain
        dx = grid[e.tail][0] - grid[e.head][0] + g[0]
        dy = grid[e.tail][1] - grid[e.head][1] + 3 * g[1]
        return (dx, dy) != (0, 0)

    _check_separation(Gn, separated)
    params = {"grid": grid, "shift": _shift_param(G, seq)}
    flex = ParametricFlex(FlexKind.TYPE1_GRID, 2, G.vertices, params)
    return Construction(G, flex, col.TYPE1_GRID, delta, Gn, True)


# type 2


def coordinates(g, alpha, beta):
    """Rational (a, b) with g = a*alpha + b*beta."""
    det = alpha[0] * beta[1] - alpha[1] * beta[0]
    if det == 0:
        raise ConstructionError("alpha and beta are not independent")
    a = Fraction(g[0] * beta[1] - g[1] * beta[0], det)
    b = Fraction(alpha[0] * g[1] - alpha[1] * g[0], det)
    return a, b


def normalize_type2(G, delta, alpha, beta):
    """Switch so that blue gains lie in Z*beta and red gains are a*alpha + b*beta with a != 0."""
    if not independent(alpha, beta):
        raise ConstructionError("alpha and beta must be linearly independent")
    blue = delta.edges(BLUE)
    red = delta.edges(RED)
    Gn, seq = spanning_tree_normalize(G, blue)
    for eid in blue:
        if coordinates(Gn.edge(eid).gain, alpha, beta)[0] != 0:
            raise ConstructionError(f"blue edge {eid} has gain outside Z*beta")
    a_red = {eid: coordinates(Gn.edge(eid).gain, alpha, beta)[0] for eid in red}
    if any(a == 0 for a in a_red.values()):
        N = 1 + math.floor(max(abs(a) for a in a_red.values()))
        step = tuple(N * (x + y) for x, y in zip(alpha, beta))
        _, forest = _index_components(Gn, blue)
        extra = [(v, tuple(i * s for s in step)) for i, comp in enumerate(forest) for v in comp.vertices if i]
        Gn = apply_switching(Gn, extra)
        seq = seq + extra
    for eid in red:
        if coordinates(Gn.edge(eid).gain, alpha, beta)[0] == 0:
            raise ConstructionError(f"red edge {eid} keeps a zero alpha coefficient")
    return Gn, seq


def _auxiliary_beta(G, delta, alpha):
    """A primitive direction standing in for a zero beta.

    Picks the first small primitive vector independent of alpha that carries
    no almost blue circuit gain (blue is balanced, so each closing red edge
    has a single circuit gain).
    """
    blue = col.WalkGainSystem(G, delta, BLUE)
    forbidden = []
    for e in blue.closing_edges:
        C = blue.closing_coset(e)
        if C is not None:
            forbidden.append(C.offset)
    radius = 1
    while True:
        cands = sorted(
            {primitive((x, y)) for x in range(-radius, radius + 1) for y in range(-radius, radius + 1) if (x, y) != (0, 0)},
            key=lambda v: (abs(v[0]) + abs(v[1]), v),
        )
        for b in cands:
            if independent(alpha, b) and all(coset_intersects_line(Coset(g, hnf([], 2)), b) is None for g in forbidden):
                return b
        radius += 1


def construct_type2(G, delta, alpha=None, beta=None, cls=None):
    """Scissor flex: L_t alpha = (cos t, sin t) turns while L_t beta = (0, 1) stays.

    Red component R_j is placed on the vertical line x = j with heights from
    the beta coordinates of the red potentials.
    """
    if G.k != 2:
        raise ConstructionError("type 2 construction needs k = 2")
    _require_connected(G)
    cls = cls or classify(G, delta)
    _require(cls, "type2", "a type 2 NBAC-colouring")
    alpha = tuple(alpha) if alpha is not None else cls.alpha
    beta = tuple(beta) if beta is not None else cls.beta
    if is_zero(alpha):
        # Mirror case: swap the colours so that the unbalanced side is red.
        swapped = delta.swapped()
        result = construct_type2(G, swapped, beta, alpha)
        result.colouring = delta
        result.notes.append("colours swapped so that alpha is nonzero")
        return result
    notes = []
    if is_zero(beta):
        if cls.fixed_lattice:
            result = construct_fixed_lattice(G, delta, cls)
            result.notes.append("beta = 0 and the colouring is fixed-lattice")
            return result
        beta = _auxiliary_beta(G, delta, alpha)
        notes.append(f"beta = 0; auxiliary direction {beta} used for the lattice")
    Gn, seq = normalize_type2(G, delta, alpha, beta)
    red = delta.edges(RED)
    row, forest = _index_components(Gn, red)
    # q(v) - q(w) = b on a red edge (v, w, a*alpha + b*beta)
    height = {}
    for comp in forest:
        for v in comp.vertices:
            height[v] = -coordinates(comp.potential[v], alpha, beta)[1]
    for eid in red:
        e = Gn.edge(eid)
        if height[e.tail] - height[e.head] != coordinates(e.gain, alpha, beta)[1]:
            raise ConstructionError(f"inconsistent red potential on edge {eid}")
    grid = {v: [row[v], height[v]] for v in G.vertices}

    def separated(e):
        # L_0 alpha = (1, 0), L_0 beta = (0, 1)
        a, b = coordinates(e.gain, alpha, beta)
        return (grid[e.tail][0] - grid[e.head][0] - a, grid[e.tail][1] - grid[e.head][1] - b) != (0, 0)

    _check_separation(Gn, separated)
    params = {
        "grid": {v: [encode_number(x) for x in xy] for v, xy in grid.items()},
        "alpha": list(alpha),
        "beta": list(beta),
        "shift": _shift_param(G, seq),
    }
    flex = ParametricFlex(FlexKind.TYPE2_SCISSOR, 2, G.vertices, params)
    return Construction(G, flex, col.TYPE2_SCISSOR, delta, Gn, True, notes)


# rank at most one


def unimodular_complement(alpha):
    """beta with det[alpha beta] = 1 for a primitive alpha."""
    a, b = alpha

    def egcd(x, y):
        if y == 0:
            return (1 if x >= 0 else -1), 0, abs(x)
        s, t, g = egcd(y, x % y)
        return t, s - (x // y) * t, g

    # a*y - b*x = 1  <=>  a*s + b*t = 1 with s = y, t = -x
    s, t, g = egcd(a, b)
    if g != 1:
        raise ConstructionError(f"{alpha} is not primitive")
    return (-t, s)


def construct_rank_deficient(G):
    """Scale the lattice along a direction missing from the span: L_t beta = (1 + t) L beta."""
    if G.k != 2:
        raise ConstructionError("rank-deficient construction needs k = 2")
    span = combined_span(G)
    if span.rank > 1:
        raise ConstructionError("graph has rank 2")
    line = line_containing(span)
    alpha = (1, 0) if line == TRIVIAL else line
    beta = unimodular_complement(alpha)
    Gn, seq = spanning_tree_normalize(G)
    grid = _parabola_grid(G)

    def separated(e):
        a, b = coordinates(e.gain, alpha, beta)
        if b != 0:
            raise ConstructionError("internal error: gain outside Z*alpha after normalization")
        return (grid[e.tail][0] - grid[e.head][0] - a, grid[e.tail][1] - grid[e.head][1]) != (0, 0)

    _check_separation(Gn, separated)
    params = {"grid": grid, "alpha": list(alpha), "beta": list(beta), "shift": _shift_param(G, seq)}
    flex = ParametricFlex(FlexKind.RANK_DEFICIENT_SCALE, 2, G.vertices, params, domain=(0.0, 1.0))
    return Construction(G, flex, col.RANK_DEFICIENT_SCALE, None, Gn, True)


# Henneberg extension


def extend_flex_henneberg(G, flex, v1, gamma, probes=256, new_vertex=None):
    """Add a vertex joined to ``v1`` by gains 0 and ``gamma`` and move it along.

    The new vertex sits at ``p_t(v1) + r (cos f, sin f)`` with
    ``f = arccos(-|L_t gamma| / 2r) + atan2(L_t gamma)``; the two new edges are
    stored as (v1, v0, 0) and (v1, v0, gamma) and both keep length r.
    """
    gamma = tuple(gamma)
    if len(gamma) != G.k or is_zero(gamma):
        raise ConstructionError("gamma must be a nonzero gain vector")
    if v1 not in G.vertices:
        raise GainGraphError(f"unknown vertex {v1}")
    ts = np.linspace(flex.domain[0], flex.domain[1], probes)
    g = np.asarray(gamma, dtype=float)
    norms = [float(np.linalg.norm(flex.sample(t).L @ g)) for t in ts]
    if min(norms) <= 1e-12:
        raise ConstructionError("L_t gamma vanishes on the flex domain")
    r = 1 + max(norms) / 2
    v0 = new_vertex if new_vertex is not None else fresh_vertex(G)
    H = henneberg1_extend(G, v1, v1, vzero(G.k), tuple(-x for x in gamma), new_vertex=v0)
    params = {"anchor": v1, "vertex": v0, "gain": list(gamma), "r": encode_number(r)}
    ext = ParametricFlex(FlexKind.HENNEBERG_CIRCLE, G.k, tuple(G.vertices) + (v0,), params, flex.domain, inner=flex)
    return H, ext


# dispatch


def build(G, recipe_id, delta=None, cls=None):
    """Run the construction named by a decision recipe id."""
    if recipe_id == col.BALANCED_ROTATION:
        return construct_balanced(G)
    if recipe_id == col.RANK_DEFICIENT_SCALE:
        return construct_rank_deficient(G)
    if delta is None:
        raise ConstructionError(f"recipe {recipe_id} needs a colouring")
    builders = {
        col.FIXED_LATTICE_SHEAR: construct_fixed_lattice,
        col.ONE_PERIODIC_GRID: construct_flexible_1lattice,
        col.TYPE1_GRID: construct_type1,
    }
    if recipe_id in builders:
        return builders[recipe_id](G, delta, cls=cls)
    if recipe_id == col.TYPE2_SCISSOR:
        return construct_type2(G, delta, cls=cls)
    raise ConstructionError(f"unknown recipe {recipe_id}")


def construct_for_colouring(G, delta, cls=None):
    """Pick the construction for a colouring: fixed-lattice, then type 2 / flexible 1-lattice, then type 1."""
    cls = cls or classify(G, delta)
    for flag, rid in (
        ("fixed_lattice", col.FIXED_LATTICE_SHEAR),
        ("type2", col.TYPE2_SCISSOR),
        ("flexible_1_lattice", col.ONE_PERIODIC_GRID),
        ("type1", col.TYPE1_GRID),
    ):
        if getattr(cls, flag):
            return build(G, rid, delta, cls)
    if cls.type3:
        raise ConstructionError("type 3 colourings have no known construction")
    raise ConstructionError("colouring is not in a constructible class")
