"""Red/blue edge colourings of gain graphs and their classification.

The circuit conditions quantify over all closed walks, which is an infinite
set. They become finite questions through one observation: inside a connected
monochromatic component the gains of walks from ``a`` to ``b`` form the coset
``phi(b) - phi(a) + S``, where ``phi`` are spanning tree potentials and ``S`` is
generated by the fundamental cycles. An almost-monochromatic circuit through a
closing edge ``(a, b, g)`` therefore has gain in ``g + phi(a) - phi(b) + S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .gaincore import (
    GainGraphError,
    chord_cycle_gain,
    chord_cycle_walk,
    circuit_gain,
    combined_span,
    is_connected,
    spanning_forest,
)
from .intlattice import (
    TRIVIAL,
    Coset,
    coset_intersects_line,
    express,
    hnf,
    independent,
    is_zero,
    line_containing,
    vadd,
    vscale,
    vsub,
    vzero,
)

RED = "red"
BLUE = "blue"


def other(colour):
    return BLUE if colour == RED else RED


class ColouringError(ValueError):
    pass


class Colouring:
    """Total map edge id -> RED/BLUE."""

    __slots__ = ("_assignment",)

    def __init__(self, assignment):
        for c in assignment.values():
            if c not in (RED, BLUE):
                raise ColouringError(f"unknown colour {c!r}")
        self._assignment = dict(assignment)

    @classmethod
    def from_sets(cls, red=(), blue=()):
        assignment = {e: RED for e in red}
        for e in blue:
            if e in assignment:
                raise ColouringError(f"edge {e} is both red and blue")
            assignment[e] = BLUE
        return cls(assignment)

    def __getitem__(self, eid):
        return self._assignment[eid]

    def __eq__(self, other_):
        return isinstance(other_, Colouring) and self._assignment == other_._assignment

    def __hash__(self):
        return hash(frozenset(self._assignment.items()))

    def __repr__(self):
        return f"Colouring(red={self.edges(RED)}, blue={self.edges(BLUE)})"

    def items(self):
        return self._assignment.items()

    def edges(self, colour):
        return [e for e, c in self._assignment.items() if c == colour]

    def swapped(self):
        return Colouring({e: other(c) for e, c in self._assignment.items()})

    def check_total(self, G):
        ids = {e.id for e in G.edges}
        missing = ids - set(self._assignment)
        extra = set(self._assignment) - ids
        if missing or extra:
            raise ColouringError(f"colouring is not total on the edges (missing {sorted(missing)}, unknown {sorted(extra)})")

    def is_surjective(self):
        return RED in self._assignment.values() and BLUE in self._assignment.values()


class WalkGainSystem:
    """Potentials and fundamental subgroups of the components of one colour."""

    def __init__(self, G, delta, colour):
        self.graph = G
        self.colour = colour
        ids = [e.id for e in G.edges if delta[e.id] == colour]
        self.components = spanning_forest(G, ids)
        self.component_of = {}
        for i, comp in enumerate(self.components):
            for v in comp.vertices:
                self.component_of[v] = i
        self.chord_gains = [[chord_cycle_gain(c, e) for e in c.chords] for c in self.components]
        self.subgroups = [hnf(gains, G.k) for gains in self.chord_gains]
        self.closing_edges = [e for e in G.edges if delta[e.id] != colour]

    @property
    def span(self):
        """Subgroup generated by all circuit gains of this colour."""
        return hnf([b for S in self.subgroups for b in S.basis], self.graph.k)

    def potential(self, v):
        return self.components[self.component_of[v]].potential[v]

    def same_component(self, a, b):
        return self.component_of[a] == self.component_of[b]

    def walk_coset(self, a, b):
        """Gains of monochromatic walks a -> b, or None if b is unreachable."""
        if not self.same_component(a, b):
            return None
        i = self.component_of[a]
        return Coset(vsub(self.potential(b), self.potential(a)), self.subgroups[i])

    def closing_coset(self, e):
        """Gains of circuits made of ``e`` (tail to head) and a walk back."""
        if not self.same_component(e.tail, e.head):
            return None
        i = self.component_of[e.tail]
        offset = vsub(vadd(e.gain, self.potential(e.tail)), self.potential(e.head))
        return Coset(offset, self.subgroups[i])

    def circuit_through(self, e, target):
        """Closed walk starting with ``e`` (tail to head), closed in this colour, with gain ``target``."""
        i = self.component_of[e.tail]
        comp = self.components[i]
        base = vsub(vadd(e.gain, comp.potential[e.tail]), comp.potential[e.head])
        coeffs = express(self.chord_gains[i], vsub(target, base), self.graph.k)
        if coeffs is None:
            return None
        walk = [(e.id, 1)] + comp.path_to_root(e.head)
        for chord, x in zip(comp.chords, coeffs):
            cycle = chord_cycle_walk(comp, chord, 1 if x > 0 else -1)
            walk.extend(cycle * abs(x))
        walk.extend(comp.path_from_root(e.tail))
        if circuit_gain(self.graph, walk) != tuple(target):
            raise AssertionError("witness walk does not have the claimed gain")
        return walk

    def unbalanced_circuit(self):
        """A closed walk of this colour with nonzero gain, or None if balanced."""
        for comp, gains in zip(self.components, self.chord_gains):
            for chord, g in zip(comp.chords, gains):
                if not is_zero(g):
                    return chord_cycle_walk(comp, chord)
        return None

    def independent_circuits(self):
        """Two closed walks of this colour with linearly independent gains, if any."""
        found = []
        for comp, gains in zip(self.components, self.chord_gains):
            for chord, g in zip(comp.chords, gains):
                if is_zero(g):
                    continue
                if not found:
                    found.append((g, chord_cycle_walk(comp, chord)))
                elif independent(found[0][0], g):
                    return [found[0][1], chord_cycle_walk(comp, chord)]
        return None

    # the three almost-circuit questions

    def balanced_closing(self):
        for e in self.closing_edges:
            C = self.closing_coset(e)
            if C is not None and C.contains_zero:
                return self.circuit_through(e, vzero(self.graph.k))
        return None

    def any_closing(self):
        for e in self.closing_edges:
            if self.same_component(e.tail, e.head):
                comp = self.components[self.component_of[e.tail]]
                return [(e.id, 1)] + comp.path_to_root(e.head) + comp.path_from_root(e.tail)
        return None

    def closing_in_line(self, alpha):
        for e in self.closing_edges:
            C = self.closing_coset(e)
            if C is None:
                continue
            c = coset_intersects_line(C, alpha)
            if c is not None:
                return self.circuit_through(e, vscale(c, alpha))
        return None


def build_walk_gain_system(G, delta, colour):
    return WalkGainSystem(G, delta, colour)


def balanced_almost_circuit(G, delta, colour):
    """Balanced circuit with exactly one edge not of ``colour``, or None.

    ``colour`` names the majority colour: RED looks for balanced almost red
    circuits (one blue edge, the rest red).
    """
    return WalkGainSystem(G, delta, colour).balanced_closing()


def almost_circuit_any_gain(G, delta, colour):
    return WalkGainSystem(G, delta, colour).any_closing()


def almost_circuit_gain_in_line(G, delta, colour, alpha):
    return WalkGainSystem(G, delta, colour).closing_in_line(tuple(alpha))


def check_almost_circuit(G, delta, colour, walk, condition="balanced", alpha=None):
    """Directly verify a witness: closed, one off-colour edge, gain as claimed."""
    try:
        gain = circuit_gain(G, walk)
    except GainGraphError:
        return False
    off = [eid for eid, _ in walk if delta[eid] != colour]
    if len(off) != 1:
        return False
    if condition == "balanced":
        return is_zero(gain)
    if condition == "any":
        return True
    if condition == "line":
        return coset_intersects_line(Coset(gain, hnf([], G.k)), alpha) is not None
    raise ValueError(f"unknown condition {condition}")


# classification

CLASS_NAMES = ("nbac", "fixed", "flex1", "type1", "type2", "type3")


@dataclass
class Violation:
    reason: str
    walks: list = field(default_factory=list)


@dataclass
class Classification:
    k: int
    surjective: bool
    is_nbac: bool
    fixed_lattice: bool = False
    flexible_1_lattice: bool = False
    type1: bool = False
    type2: bool = False
    type3: bool = False
    alpha: tuple = None
    beta: tuple = None
    type3_alpha: tuple = None
    unbalanced_colour: str = None
    red_span: object = None
    blue_span: object = None
    violations: dict = field(default_factory=dict)

    @property
    def classes(self):
        flags = {
            "nbac": self.is_nbac,
            "fixed": self.fixed_lattice,
            "flex1": self.flexible_1_lattice,
            "type1": self.type1,
            "type2": self.type2,
            "type3": self.type3,
        }
        return [name for name in CLASS_NAMES if flags[name]]

    def has(self, name):
        return name in self.classes

    def to_dict(self):
        out = {
            "classes": self.classes,
            "red_span": [list(b) for b in self.red_span.basis],
            "blue_span": [list(b) for b in self.blue_span.basis],
        }
        if self.fixed_lattice:
            out["unbalanced_colour"] = self.unbalanced_colour
        if self.type2:
            out["alpha"] = list(self.alpha)
            out["beta"] = list(self.beta)
        if self.type3:
            out["alpha"] = list(self.type3_alpha)
        out["violations"] = {
            name: [{"reason": v.reason, "walks": [[[eid, d] for eid, d in w] for w in v.walks]} for v in vs]
            for name, vs in sorted(self.violations.items())
        }
        return out


def _line_or_zero(S, k):
    line = line_containing(S)
    if line == TRIVIAL:
        return vzero(k)
    return line


def classify(G, delta):
    """Evaluate every colouring class on ``delta``, with witnesses for failures."""
    delta.check_total(G)
    k = G.k
    red = WalkGainSystem(G, delta, RED)
    blue = WalkGainSystem(G, delta, BLUE)
    red_span, blue_span = red.span, blue.span
    violations = {}

    def fail(name, reason, *walks):
        violations.setdefault(name, []).append(Violation(reason, [w for w in walks if w is not None]))

    surjective = delta.is_surjective()
    nbac = surjective
    if not surjective:
        fail("nbac", "colouring is not surjective")
    for system in (red, blue):
        w = system.balanced_closing()
        if w is not None:
            nbac = False
            fail("nbac", f"balanced almost {system.colour} circuit", w)

    c = Classification(k, surjective, nbac, red_span=red_span, blue_span=blue_span, violations=violations)
    if not nbac:
        for name in CLASS_NAMES[1:]:
            if name == "flex1" and k != 1 or name in ("type1", "type2", "type3") and k != 2:
                continue
            fail(name, "not an NBAC-colouring")
        return c

    red_bal, blue_bal = red_span.is_trivial, blue_span.is_trivial

    # fixed lattice: one side unbalanced, other balanced, no almost circuits on the unbalanced side
    for unbal, bal, bal_is_balanced, unbal_is_balanced in (
        (red, blue, blue_bal, red_bal),
        (blue, red, red_bal, blue_bal),
    ):
        if unbal_is_balanced:
            continue
        if not bal_is_balanced:
            fail("fixed", "both colours are unbalanced", red.unbalanced_circuit(), blue.unbalanced_circuit())
            break
        w = unbal.any_closing()
        if w is not None:
            fail("fixed", f"almost {unbal.colour} circuit", w)
            continue
        c.fixed_lattice = True
        c.unbalanced_colour = unbal.colour
        break
    if red_bal and blue_bal:
        fail("fixed", "both colours are balanced")

    if k == 1:
        if red_bal and blue_bal:
            c.flexible_1_lattice = True
        else:
            fail("flex1", "a colour is unbalanced", red.unbalanced_circuit() or blue.unbalanced_circuit())
        return c

    if red_bal and blue_bal:
        c.type1 = True
    else:
        fail("type1", "a colour is unbalanced", red.unbalanced_circuit() or blue.unbalanced_circuit())

    alpha = _line_or_zero(red_span, k)
    beta = _line_or_zero(blue_span, k)
    if alpha is None or beta is None:
        system = red if alpha is None else blue
        fail("type2", f"{system.colour} span has rank 2", *system.independent_circuits())
    elif is_zero(alpha) and is_zero(beta):
        fail("type2", "both colours are balanced")
    elif not (is_zero(alpha) or is_zero(beta) or independent(alpha, beta)):
        fail("type2", "red and blue spans lie on a common line", red.unbalanced_circuit(), blue.unbalanced_circuit())
    else:
        wr = red.closing_in_line(alpha)
        wb = blue.closing_in_line(beta)
        if wr is not None:
            fail("type2", "almost red circuit with gain in Z*alpha", wr)
        if wb is not None:
            fail("type2", "almost blue circuit with gain in Z*beta", wb)
        if wr is None and wb is None:
            c.type2 = True
            c.alpha, c.beta = alpha, beta

    if alpha is None or beta is None:
        system = red if alpha is None else blue
        fail("type3", f"{system.colour} span has rank 2", *system.independent_circuits())
    elif is_zero(alpha) or is_zero(beta):
        fail("type3", f"{RED if is_zero(alpha) else BLUE} colour is balanced")
    elif alpha != beta:
        fail("type3", "red and blue spans lie on different lines", red.unbalanced_circuit(), blue.unbalanced_circuit())
    else:
        wr = red.closing_in_line(alpha)
        wb = blue.closing_in_line(alpha)
        if wr is not None:
            fail("type3", "almost red circuit with gain in Z*alpha", wr)
        if wb is not None:
            fail("type3", "almost blue circuit with gain in Z*alpha", wb)
        if wr is None and wb is None:
            c.type3 = True
            c.type3_alpha = alpha
    return c


# enumeration


def bfs_edge_order(G):
    """Edges in order of discovery by BFS from the vertices in order."""
    order = []
    seen_edges = set()
    seen = set()
    for root in G.vertices:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            for e in G.incident(v):
                if e.id not in seen_edges:
                    seen_edges.add(e.id)
                    order.append(e)
                w = e.head if e.tail == v else e.tail
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


class _ColourForest:
    """Incremental components with potentials and spans for one colour."""

    def __init__(self, G):
        self.k = G.k
        self.root = {v: v for v in G.vertices}
        self.pot = {v: vzero(G.k) for v in G.vertices}
        self.members = {v: [v] for v in G.vertices}
        self.span = {v: hnf([], G.k) for v in G.vertices}

    def copy(self):
        new = _ColourForest.__new__(_ColourForest)
        new.k = self.k
        new.root = dict(self.root)
        new.pot = dict(self.pot)
        new.members = {r: list(m) for r, m in self.members.items()}
        new.span = dict(self.span)
        return new

    def closes_balanced(self, e):
        ra, rb = self.root[e.tail], self.root[e.head]
        if ra != rb:
            return False
        offset = vsub(vadd(e.gain, self.pot[e.tail]), self.pot[e.head])
        return Coset(offset, self.span[ra]).contains_zero

    def add(self, e):
        """Add edge ``e``; return the root of the component that changed."""
        a, b = e.tail, e.head
        ra, rb = self.root[a], self.root[b]
        if ra == rb:
            z = vsub(vadd(e.gain, self.pot[a]), self.pot[b])
            if not is_zero(z):
                self.span[ra] = self.span[ra] + hnf([z], self.k)
            return ra
        # Re-root b's component so that pot[b] = pot[a] + gain.
        shift = vsub(vadd(self.pot[a], e.gain), self.pot[b])
        for u in self.members[rb]:
            self.pot[u] = vadd(self.pot[u], shift)
            self.root[u] = ra
        self.members[ra].extend(self.members.pop(rb))
        self.span[ra] = self.span[ra] + self.span.pop(rb)
        return ra


def _prune_violation(forests, assigned, e, colour):
    """True if assigning ``colour`` to ``e`` forces a balanced almost circuit."""
    mine, theirs = forests[colour], forests[other(colour)]
    if theirs.closes_balanced(e):
        return True
    mine_before = mine.root[e.tail] == mine.root[e.head]
    r = mine.add(e)
    if mine_before and is_zero(vsub(vadd(e.gain, mine.pot[e.tail]), mine.pot[e.head])):
        return False
    for f, cf in assigned:
        if cf != colour and mine.root[f.tail] == r and mine.closes_balanced(f):
            return True
    return False


CLASS_FILTERS = {
    "nbac": lambda c: c.is_nbac,
    "fixed": lambda c: c.fixed_lattice,
    "flex1": lambda c: c.flexible_1_lattice,
    "type1": lambda c: c.type1,
    "type2": lambda c: c.type2,
    "type3": lambda c: c.type3,
}


def enumerate_colourings(G, filter="nbac", limit=None):
    """Yield ``(colouring, classification)`` for colourings passing ``filter``.

    Colourings are taken up to swapping the two colours: the first edge in BFS
    order is always red. Branches are cut as soon as the coloured edges
    contain a balanced almost-monochromatic circuit, so only NBAC-colourings
    are ever produced; ``filter`` is a class name or a predicate on the
    classification. The order is deterministic (red before blue at each edge).
    """
    pred = CLASS_FILTERS[filter] if isinstance(filter, str) else filter
    if limit is not None and limit <= 0:
        return
    order = bfs_edge_order(G)
    if len(order) < 2:
        return
    count = 0
    empty = {RED: _ColourForest(G), BLUE: _ColourForest(G)}
    stack = [(0, empty, [])]
    # Explicit DFS; children pushed blue first so red is explored first.
    while stack:
        depth, forests, assigned = stack.pop()
        if depth == len(order):
            colours = {c for _, c in assigned}
            if len(colours) < 2:
                continue
            delta = Colouring({f.id: c for f, c in assigned})
            cls = classify(G, delta)
            if pred(cls):
                yield delta, cls
                count += 1
                if limit is not None and count >= limit:
                    return
            continue
        e = order[depth]
        choices = (RED,) if depth == 0 else (BLUE, RED)
        for colour in choices:
            new = {RED: forests[RED], BLUE: forests[BLUE]}
            new[colour] = forests[colour].copy()
            if _prune_violation(new, assigned, e, colour):
                continue
            stack.append((depth + 1, new, assigned + [(e, colour)]))


# decisions


class Mode(Enum):
    FIXED = "fixed"
    FLEX1 = "flex1"
    FLEX2 = "flex2"


FLEXIBLE = "Flexible"
NOT_FLEXIBLE = "NotFlexible"
UNKNOWN = "Unknown"

# recipe ids, one per construction
BALANCED_ROTATION = "balanced-rotation"
FIXED_LATTICE_SHEAR = "fixed-lattice-shear"
ONE_PERIODIC_GRID = "one-periodic-grid"
TYPE1_GRID = "type1-grid"
TYPE2_SCISSOR = "type2-scissor"
RANK_DEFICIENT_SCALE = "rank-deficient-scale"


class DisconnectedGraphError(GainGraphError):
    def __init__(self, components):
        super().__init__(f"graph has {len(components)} connected components")
        self.components = components


@dataclass
class Recipe:
    id: str
    colouring: Colouring = None
    classification: Classification = None


@dataclass
class Decision:
    verdict: str
    mode: Mode
    recipes: list = field(default_factory=list)
    reason: str = ""
    rank: int = 0
    balanced: bool = False
    witness: Recipe = None

    @property
    def recipe(self):
        return self.recipes[0] if self.recipes else None


def colouring_recipe(cls, k):
    if cls.fixed_lattice:
        return FIXED_LATTICE_SHEAR
    if k == 1 and cls.flexible_1_lattice:
        return ONE_PERIODIC_GRID
    if k == 2 and cls.type2:
        return TYPE2_SCISSOR
    if k == 2 and cls.type1:
        return TYPE1_GRID
    return None


def decide(G, mode, all_recipes=False):
    """Decide flexibility of a connected gain graph under ``mode``.

    With ``all_recipes`` every construction route is collected (one colouring
    per recipe); otherwise the search stops at the first route found.
    """
    mode = Mode(mode)
    if mode is Mode.FLEX1 and G.k != 1:
        raise GainGraphError("mode flex1 needs a Z-gain graph (k = 1)")
    if mode is Mode.FLEX2 and G.k != 2:
        raise GainGraphError("mode flex2 needs a Z^2-gain graph (k = 2)")
    if not is_connected(G):
        raise DisconnectedGraphError([c.vertices for c in spanning_forest(G)])
    span = combined_span(G)
    r = span.rank
    balanced = span.is_trivial
    decision = Decision(UNKNOWN, mode, rank=r, balanced=balanced)

    if mode is Mode.FLEX2 and r < 2:
        decision.recipes.append(Recipe(RANK_DEFICIENT_SCALE))
    if balanced and mode is not Mode.FLEX2:
        decision.recipes.append(Recipe(BALANCED_ROTATION))

    wanted = {
        Mode.FIXED: (FIXED_LATTICE_SHEAR,),
        Mode.FLEX1: (FIXED_LATTICE_SHEAR, ONE_PERIODIC_GRID),
        Mode.FLEX2: (FIXED_LATTICE_SHEAR, TYPE2_SCISSOR, TYPE1_GRID),
    }[mode]
    seen_type3 = None
    found = {}
    if all_recipes or not decision.recipes:
        for delta, cls in enumerate_colourings(G, "nbac"):
            for rid in wanted:
                if rid in found:
                    continue
                ok = {
                    FIXED_LATTICE_SHEAR: cls.fixed_lattice,
                    ONE_PERIODIC_GRID: cls.flexible_1_lattice,
                    TYPE2_SCISSOR: cls.type2,
                    TYPE1_GRID: cls.type1,
                }[rid]
                if ok:
                    found[rid] = Recipe(rid, delta, cls)
            if cls.type3 and seen_type3 is None:
                seen_type3 = Recipe("type3", delta, cls)
            if found and not all_recipes:
                break
            if all_recipes and len(found) == len(wanted):
                break
    decision.recipes.extend(found[rid] for rid in wanted if rid in found)

    if decision.recipes:
        decision.verdict = FLEXIBLE
        decision.reason = "construction available"
    elif mode is Mode.FLEX2 and not G.has_loop() and seen_type3 is not None:
        decision.verdict = UNKNOWN
        decision.reason = (
            "only type 3 colourings exist; flexibility of such loopless rank 2 "
            "graphs is conjectural and no construction is known"
        )
        decision.recipes = []
        decision.witness = seen_type3
    else:
        decision.verdict = NOT_FLEXIBLE
        decision.reason = "no qualifying colouring and the lattice span has full rank" if mode is Mode.FLEX2 else (
            "unbalanced and no qualifying colouring"
        )
    return decision


def decide_components(G, mode):
    """Per-component decisions for a possibly disconnected graph."""
    out = []
    for comp in spanning_forest(G):
        keep = set(comp.vertices)
        sub = type(G)(G.k, [v for v in G.vertices if v in keep], [e for e in G.edges if e.tail in keep])
        out.append((comp.vertices, decide(sub, mode)))
    return out
