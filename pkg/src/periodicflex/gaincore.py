"""Z^k-gain graphs: data model, switching, walks and spans.

An edge ``(v, w, g)`` is the same edge as ``(w, v, -g)``. Edges are stored with
tail before head in vertex order, and loops with a lexicographically positive
gain, so each edge has exactly one stored form. Edge ids never change, which
lets colourings survive switching.

A walk is a list of ``(edge_id, direction)`` steps, direction ``+1`` meaning
tail to head and ``-1`` head to tail.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .intlattice import hnf, is_zero, vadd, vneg, vscale, vsub, vzero


class GainGraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    gain: tuple

    @property
    def is_loop(self):
        return self.tail == self.head

    def ends(self, direction):
        """(start, end) of the edge when traversed in ``direction``."""
        return (self.tail, self.head) if direction > 0 else (self.head, self.tail)


def _lex_positive(g):
    for x in g:
        if x:
            return x > 0
    return False


class GainGraph:
    """Finite multigraph with Z^k gains. Immutable once built."""

    def __init__(self, k, vertices, edges):
        if k not in (1, 2):
            raise GainGraphError(f"k must be 1 or 2, got {k}")
        self.k = k
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise GainGraphError("duplicate vertex ids")
        self._index = {v: i for i, v in enumerate(self.vertices)}
        stored = []
        seen = set()
        for e in edges:
            eid, tail, head, gain = e if not isinstance(e, Edge) else (e.id, e.tail, e.head, e.gain)
            gain = tuple(int(x) for x in gain)
            if len(gain) != k:
                raise GainGraphError(f"edge {eid}: gain {gain} does not have length {k}")
            if tail not in self._index or head not in self._index:
                raise GainGraphError(f"edge {eid}: unknown endpoint")
            if eid in seen:
                raise GainGraphError(f"duplicate edge id {eid}")
            seen.add(eid)
            if tail == head:
                if is_zero(gain):
                    raise GainGraphError(f"edge {eid}: loop with zero gain")
                if not _lex_positive(gain):
                    gain = vneg(gain)
            elif self._index[tail] > self._index[head]:
                tail, head, gain = head, tail, vneg(gain)
            stored.append(Edge(str(eid), tail, head, gain))
        self.edges = tuple(stored)
        self._by_id = {e.id: e for e in self.edges}
        self._incident = {v: [] for v in self.vertices}
        for e in self.edges:
            self._incident[e.tail].append(e)
            if not e.is_loop:
                self._incident[e.head].append(e)

    def __eq__(self, other):
        return (
            isinstance(other, GainGraph)
            and self.k == other.k
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.k, self.vertices, self.edges))

    def __repr__(self):
        return f"GainGraph(k={self.k}, |V|={len(self.vertices)}, |E|={len(self.edges)})"

    def edge(self, eid):
        try:
            return self._by_id[eid]
        except KeyError:
            raise GainGraphError(f"unknown edge {eid}") from None

    def index(self, v):
        return self._index[v]

    def incident(self, v):
        return self._incident[v]

    def has_loop(self):
        return any(e.is_loop for e in self.edges)

    def max_gain(self):
        return max((abs(x) for e in self.edges for x in e.gain), default=0)

    def with_gains(self, gains):
        """Copy of the graph with edge gains replaced from ``gains[edge_id]``."""
        return GainGraph(self.k, self.vertices, [(e.id, e.tail, e.head, gains.get(e.id, e.gain)) for e in self.edges])

    def subgraph_edges(self, edge_ids):
        keep = set(edge_ids)
        return GainGraph(self.k, self.vertices, [e for e in self.edges if e.id in keep])

    def relabel(self, mapping, vertex_order=None):
        """Rename vertices by ``mapping``; ``vertex_order`` fixes the new order."""
        order = vertex_order if vertex_order is not None else [mapping[v] for v in self.vertices]
        return GainGraph(self.k, order, [(e.id, mapping[e.tail], mapping[e.head], e.gain) for e in self.edges])


def switch(G, u, mu):
    """Switching at ``u`` by ``mu``: edges leaving u gain +mu, edges entering lose mu."""
    if u not in G.vertices:
        raise GainGraphError(f"unknown vertex {u}")
    mu = tuple(mu)
    if is_zero(mu):
        return G
    gains = {}
    for e in G.incident(u):
        if e.is_loop:
            continue
        gains[e.id] = vadd(e.gain, mu) if e.tail == u else vsub(e.gain, mu)
    return G.with_gains(gains)


def apply_switching(G, sequence):
    """Apply a list of ``(vertex, mu)`` switches in one pass."""
    shift = total_shift(G, sequence)
    gains = {e.id: vsub(vadd(e.gain, shift[e.tail]), shift[e.head]) for e in G.edges}
    return G.with_gains(gains)


def total_shift(G, sequence):
    """Net switching amount at every vertex."""
    shift = {v: vzero(G.k) for v in G.vertices}
    for u, mu in sequence:
        if u not in shift:
            raise GainGraphError(f"unknown vertex {u}")
        shift[u] = vadd(shift[u], mu)
    return shift


def invert_switching(sequence):
    return [(u, vneg(mu)) for u, mu in reversed(sequence)]


def components(G, edge_ids=None):
    """Connected components (lists of vertices in BFS order) of the subgraph on ``edge_ids``.

    Every vertex of G appears in exactly one component; isolated vertices form
    their own. Components are ordered by their lowest vertex.
    """
    return [c.vertices for c in spanning_forest(G, edge_ids)]


@dataclass
class TreeComponent:
    """BFS tree of one component with potentials and chords.

    ``parent[v]`` is the step ``(edge_id, direction)`` from the parent of v
    to v, so the tree walk root -> v has gain ``potential[v]``.
    """

    graph: GainGraph
    root: str
    vertices: list
    potential: dict
    parent: dict
    chords: list

    def path_from_root(self, v):
        steps = []
        while v != self.root:
            eid, d = self.parent[v]
            steps.append((eid, d))
            v = self.graph.edge(eid).ends(d)[0]
        steps.reverse()
        return steps

    def path_to_root(self, v):
        return reverse_walk(self.path_from_root(v))


def spanning_forest(G, edge_ids=None):
    """BFS forest of the subgraph on ``edge_ids`` (all edges if None).

    Roots are taken in vertex order and edges are scanned in edge-list order,
    which makes the forest deterministic.
    """
    allowed = None if edge_ids is None else set(edge_ids)
    seen = set()
    forest = []
    for root in G.vertices:
        if root in seen:
            continue
        potential = {root: vzero(G.k)}
        parent = {}
        order = [root]
        seen.add(root)
        tree_edges = set()
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for e in G.incident(v):
                if allowed is not None and e.id not in allowed:
                    continue
                if e.is_loop:
                    continue
                d = 1 if e.tail == v else -1
                w = e.ends(d)[1]
                if w in seen:
                    continue
                seen.add(w)
                potential[w] = vadd(potential[v], vscale(d, e.gain))
                parent[w] = (e.id, d)
                tree_edges.add(e.id)
                order.append(w)
                queue.append(w)
        members = set(order)
        chords = [
            e for e in G.edges
            if e.tail in members and (allowed is None or e.id in allowed) and e.id not in tree_edges
        ]
        forest.append(TreeComponent(G, root, order, potential, parent, chords))
    return forest


def chord_cycle_gain(comp, e):
    """Gain of the fundamental cycle root -> tail -> (e) -> head -> root."""
    return vsub(vadd(comp.potential[e.tail], e.gain), comp.potential[e.head])


def chord_cycle_walk(comp, e, direction=1):
    """Fundamental closed walk at the root through chord ``e``."""
    a, b = e.ends(direction)
    return comp.path_from_root(a) + [(e.id, direction)] + comp.path_to_root(b)


def reverse_walk(walk):
    return [(eid, -d) for eid, d in reversed(walk)]


def walk_endpoints(G, walk):
    """Start and end vertex of a walk, checking consecutive steps connect."""
    if not walk:
        raise GainGraphError("empty walk")
    start = None
    cur = None
    for eid, d in walk:
        if d not in (1, -1):
            raise GainGraphError(f"bad direction {d}")
        a, b = G.edge(eid).ends(d)
        if cur is None:
            start = a
        elif a != cur:
            raise GainGraphError(f"walk is not connected at edge {eid}")
        cur = b
    return start, cur


def walk_gain(G, walk):
    """Signed gain sum along an (open or closed) walk."""
    walk_endpoints(G, walk)
    total = vzero(G.k)
    for eid, d in walk:
        total = vadd(total, vscale(d, G.edge(eid).gain))
    return total


def circuit_gain(G, walk):
    """Gain of a closed walk; raises if the walk is not closed."""
    start, end = walk_endpoints(G, walk)
    if start != end:
        raise GainGraphError("walk is not closed")
    return walk_gain(G, walk)


def span_subgroup(G, edge_ids=None):
    """Subgroup generated by the circuit gains of a connected subgraph.

    ``edge_ids`` selects the subgraph (all edges if None). The subgraph formed
    by those edges and their endpoints must be connected.
    """
    forest = spanning_forest(G, edge_ids)
    if edge_ids is not None:
        forest = [c for c in forest if len(c.vertices) > 1 or c.chords]
    if len(forest) > 1:
        raise GainGraphError("subgraph is disconnected; split it into components first")
    gens = [chord_cycle_gain(c, e) for c in forest for e in c.chords]
    return hnf(gens, G.k)


def combined_span(G, edge_ids=None):
    """Subgroup generated by all circuit gains of a possibly disconnected subgraph."""
    gens = [chord_cycle_gain(c, e) for c in spanning_forest(G, edge_ids) for e in c.chords]
    return hnf(gens, G.k)


def span_witnesses(G, edge_ids=None):
    """Pairs (gain, closed walk) for every chord, one per fundamental cycle."""
    out = []
    for comp in spanning_forest(G, edge_ids):
        for e in comp.chords:
            out.append((chord_cycle_gain(comp, e), chord_cycle_walk(comp, e)))
    return out


def rank(G):
    return combined_span(G).rank


def is_balanced(G, edge_ids=None):
    return combined_span(G, edge_ids).is_trivial


def is_connected(G):
    return len(spanning_forest(G)) <= 1


def spanning_tree_normalize(G, edge_ids=None):
    """Switch so that a BFS spanning forest has all-zero gains.

    With ``edge_ids`` only the forest of that subgraph is zeroed (used to clear
    the gains inside one colour class). Returns the new graph and the
    switching sequence that produced it.
    """
    sequence = []
    for comp in spanning_forest(G, edge_ids):
        for v in comp.vertices:
            if not is_zero(comp.potential[v]):
                sequence.append((v, comp.potential[v]))
    return apply_switching(G, sequence), sequence


def fresh_vertex(G, hint="v0"):
    name = hint
    i = 0
    while name in G.vertices:
        i += 1
        name = f"{hint}_{i}"
    return name


def fresh_edge_id(G, hint):
    ids = {e.id for e in G.edges}
    name = hint
    i = 0
    while name in ids:
        i += 1
        name = f"{hint}_{i}"
    return name


def henneberg1_extend(G, v1, v2, g1, g2, new_vertex=None):
    """Add a vertex v0 with edges (v0, v1, g1) and (v0, v2, g2)."""
    for v in (v1, v2):
        if v not in G.vertices:
            raise GainGraphError(f"unknown vertex {v}")
    g1, g2 = tuple(g1), tuple(g2)
    if v1 == v2 and g1 == g2:
        raise GainGraphError("the two new edges would coincide")
    v0 = new_vertex if new_vertex is not None else fresh_vertex(G)
    if v0 in G.vertices:
        raise GainGraphError(f"vertex {v0} already exists")
    e1 = fresh_edge_id(G, f"{v0}-{v1}")
    edges = list(G.edges) + [(e1, v0, v1, g1)]
    probe = GainGraph(G.k, list(G.vertices) + [v0], edges)
    e2 = fresh_edge_id(probe, f"{v0}-{v2}")
    edges.append((e2, v0, v2, g2))
    return GainGraph(G.k, list(G.vertices) + [v0], edges)
