"""Seeded random gain graphs and constructible instances for tests and the oracle command."""

from __future__ import annotations

import random

from .colouring import enumerate_colourings
from .gaincore import GainGraph


def random_gain(rng, k, r):
    return tuple(rng.randint(-r, r) for _ in range(k))


def random_gain_graph(rng, n, m, k, gain_range=2, connected=True, loops=True):
    """``n`` vertices "1".."n" and ``m`` edges "e1".."em" with gains in ``[-gain_range, gain_range]^k``.

    With ``connected`` the first n - 1 edges form a random spanning tree
    (so m must be at least n - 1). Loops never get gain 0.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)
    vs = [str(i) for i in range(1, n + 1)]
    pairs = []
    if connected:
        if m < n - 1:
            raise ValueError("too few edges for a connected graph")
        for i in range(1, n):
            pairs.append((vs[rng.randrange(i)], vs[i]))
    while len(pairs) < m:
        a, b = rng.choice(vs), rng.choice(vs)
        if a == b and (not loops or gain_range == 0):
            continue
        pairs.append((a, b))
    edges = []
    for j, (a, b) in enumerate(pairs, 1):
        g = random_gain(rng, k, gain_range)
        while a == b and not any(g):
            g = random_gain(rng, k, gain_range)
        if rng.random() < 0.5:
            a, b, g = b, a, tuple(-x for x in g)
        edges.append((f"e{j}", a, b, g))
    return GainGraph(k, vs, edges)


CONSTRUCTIBLE = ("fixed", "flex1", "type1", "type2")


def constructible(cls, k):
    if cls.fixed_lattice:
        return True
    if k == 1:
        return cls.flexible_1_lattice
    return cls.type1 or cls.type2


def random_constructible_instance(rng, k=None, max_vertices=6, max_edges=10, gain_range=2, want=None, attempts=10_000):
    """Draw random connected graphs until one has a constructible NBAC-colouring.

    ``want`` optionally names the class to look for ("fixed", "flex1",
    "type1" or "type2"). Returns ``(graph, colouring, classification)``.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)
    for _ in range(attempts):
        kk = k if k is not None else rng.choice((1, 2))
        n = rng.randint(2, max_vertices)
        m = rng.randint(max(n, 2), max(max_edges, n))
        G = random_gain_graph(rng, n, m, kk, gain_range)
        pool = []
        for delta, cls in enumerate_colourings(G, "nbac", limit=256):
            if want is not None and not cls.has(want):
                continue
            if constructible(cls, kk):
                pool.append((delta, cls))
        if pool:
            delta, cls = rng.choice(pool)
            return G, delta, cls
    raise RuntimeError("no constructible instance found")
