"""Numerical checks on flexes and a brute-force walk oracle for the circuit tests.

The flex checks accept anything with ``sample(t)`` returning a
:class:`~periodicflex.construct.PlacementLattice` and a ``domain`` pair, so
tests can feed hand-made motions as well as constructed ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .intlattice import independent, is_zero, primitive, vscale

DEFAULT_SAMPLES = 64
RESIDUAL_TOL = 1e-9
VARIES_TOL = 1e-6


def sample_grid(flex, samples=DEFAULT_SAMPLES):
    return np.linspace(flex.domain[0], flex.domain[1], samples)


def _frames(flex, samples):
    return [flex.sample(t) for t in sample_grid(flex, samples)]


def _edge_arrays(G, frame):
    idx = {v: i for i, v in enumerate(frame.vertices)}
    tails = np.array([idx[e.tail] for e in G.edges], dtype=int)
    heads = np.array([idx[e.head] for e in G.edges], dtype=int)
    gains = np.array([e.gain for e in G.edges], dtype=float).reshape(len(G.edges), G.k)
    return tails, heads, gains


def squared_lengths(G, frame):
    """``|p(v) - p(w) - L g|^2`` for every edge, in graph order."""
    if not G.edges:
        return np.zeros(0)
    tails, heads, gains = _edge_arrays(G, frame)
    vec = frame.P[tails] - frame.P[heads] - gains @ frame.L.T
    return np.einsum("ij,ij->i", vec, vec)


def edge_residual(G, flex, samples=DEFAULT_SAMPLES):
    """Largest change of any squared edge length relative to the first frame."""
    if samples < 2:
        raise ValueError("need at least two samples")
    frames = _frames(flex, samples)
    base = squared_lengths(G, frames[0])
    worst = 0.0
    for f in frames[1:]:
        if len(base):
            worst = max(worst, float(np.max(np.abs(squared_lengths(G, f) - base))))
    return worst


def angle_function(e1, e2, placement):
    """Inner product of the two edge vectors ``p(v) - p(w) - L g``."""
    return float(placement.edge_vector(e1) @ placement.edge_vector(e2))


def gram_matrix(L):
    return L.T @ L


def gram_drift(flex, samples=DEFAULT_SAMPLES):
    """k x k array of ranges of ``(L_t e_i) . (L_t e_j)`` over the grid."""
    grams = np.array([gram_matrix(f.L) for f in _frames(flex, samples)])
    return grams.max(axis=0) - grams.min(axis=0)


def probe_gains(k, bound):
    return list(itertools.product(range(-bound, bound + 1), repeat=k))


def nontriviality(G, flex, samples=DEFAULT_SAMPLES, bound=None, tol=VARIES_TOL):
    """Look for a congruence invariant that changes along the flex.

    The invariants are ``|p(v) - p(w) - L g|^2`` for all vertex pairs and all
    g with ``|g|_inf <= bound`` (default 1 + largest gain entry), plus the
    lattice Gram entries. Any of them varying by more than ``10 * tol``
    proves the flex is not a congruence. Returns ``(found, witness)``.
    """
    if samples < 8:
        raise ValueError("need at least 8 samples")
    bound = 1 + G.max_gain() if bound is None else bound
    frames = _frames(flex, samples)
    n = len(frames[0].vertices)
    k = frames[0].L.shape[1]
    gains = np.array(probe_gains(k, bound), dtype=float)
    ii, jj = np.triu_indices(n)
    lo = hi = None
    for f in frames:
        diff = f.P[ii][:, None, :] - f.P[jj][:, None, :] - (gains @ f.L.T)[None, :, :]
        d2 = np.einsum("pgc,pgc->pg", diff, diff)
        lo = d2 if lo is None else np.minimum(lo, d2)
        hi = d2 if hi is None else np.maximum(hi, d2)
    spread = hi - lo
    drift = gram_drift(flex, samples)
    best = float(spread.max()) if spread.size else 0.0
    if drift.max() > best:
        i, j = np.unravel_index(int(np.argmax(drift)), drift.shape)
        witness = {"quantity": "gram", "entry": [int(i), int(j)], "range": float(drift[i, j])}
        best = float(drift[i, j])
    elif spread.size:
        p, g = np.unravel_index(int(np.argmax(spread)), spread.shape)
        vs = frames[0].vertices
        witness = {
            "quantity": "distance",
            "pair": [vs[ii[p]], vs[jj[p]]],
            "gain": [int(x) for x in gains[g]],
            "range": best,
        }
    else:
        witness = None
    if best > 10 * tol:
        return True, witness
    return False, None


def _integer_direction(x, y, max_entry=1000):
    """Small integer vector along the real direction (x, y), or None."""
    if abs(x) >= abs(y):
        r = Fraction(y / x).limit_denominator(max_entry)
        g = (r.denominator, r.numerator)
    else:
        r = Fraction(x / y).limit_denominator(max_entry)
        g = (r.numerator, r.denominator)
    return primitive(g) if not is_zero(g) else None


def _steady_lines(grams, tol):
    """Integer directions g whose length g^T G_t g looks constant.

    Every difference G_t - G_0 gives a binary quadratic form; the steady
    directions are the common zero lines of those forms. The forms span a
    space of dimension 0 to 3; with dimension 1 or 2 there are at most two
    lines, read off one form and confirmed by the caller.
    """
    rows = np.array([[d[0, 0], 2 * d[0, 1], d[1, 1]] for d in grams - grams[0]])
    scale = max(1.0, float(np.abs(grams).max()))
    _, sv, vt = np.linalg.svd(rows, full_matrices=False)
    rank = int(np.sum(sv > tol * scale))
    if rank == 0 or rank == 3:
        return []
    a, b, c = vt[0]
    disc = b * b - 4 * a * c
    if disc < -tol * scale:
        return []
    root = np.sqrt(max(disc, 0.0))
    if abs(a) > abs(c):
        dirs = [((-b + root) / (2 * a), 1.0), ((-b - root) / (2 * a), 1.0)]
    else:
        dirs = [(1.0, (-b + root) / (2 * c)), (1.0, (-b - root) / (2 * c))]
    out = []
    for x, y in dirs:
        g = _integer_direction(x, y)
        if g is not None and g not in out:
            out.append(g)
    return out


def scissor_detect(flex, samples=DEFAULT_SAMPLES, bound=2, tol=RESIDUAL_TOL):
    """Find independent alpha, beta whose lengths stay fixed while their inner product moves.

    Candidates are the primitive vectors with entries up to ``bound`` plus
    the integer directions solved from the Gram drift, so large alpha and
    beta are found too. Returns ``(found, alpha, beta, off_diagonal_range)``.
    """
    frames = _frames(flex, samples)
    if frames[0].L.shape[1] != 2:
        raise ValueError("scissor detection needs k = 2")
    Ls = np.array([f.L for f in frames])
    grams = np.einsum("tij,tik->tjk", Ls, Ls)
    vecs = [g for g in probe_gains(2, bound) if not is_zero(g) and primitive(g) == g]
    vecs += [g for g in _steady_lines(grams, tol) if g not in vecs]
    images = {g: Ls @ np.array(g, dtype=float) for g in vecs}
    norms = {g: np.einsum("ti,ti->t", x, x) for g, x in images.items()}
    # one representative per +-pair
    steady = [g for g in vecs if np.ptp(norms[g]) < tol * max(1.0, norms[g][0]) and g > tuple(-x for x in g)]
    for a, b in itertools.combinations(steady, 2):
        if not independent(a, b):
            continue
        dots = np.einsum("ti,ti->t", images[a], images[b])
        spread = float(np.ptp(dots))
        if spread > 10 * tol:
            return True, a, b, spread
    return False, None, None, 0.0


@dataclass
class FlexReport:
    samples: int
    tolerance: float
    max_edge_residual: float
    gram_drift: list
    nontrivial: bool
    nontrivial_witness: dict = None
    scissor: bool = False
    scissor_alpha: tuple = None
    scissor_beta: tuple = None
    scissor_range: float = 0.0
    full: bool = True
    min_edge_length: float = 0.0

    @property
    def residual_ok(self):
        return self.max_edge_residual < self.tolerance

    def to_dict(self):
        return {
            "samples": self.samples,
            "tolerance": self.tolerance,
            "max_edge_residual": self.max_edge_residual,
            "residual_ok": self.residual_ok,
            "gram_drift": self.gram_drift,
            "nontrivial": self.nontrivial,
            "nontrivial_witness": self.nontrivial_witness,
            "scissor": self.scissor,
            "scissor_alpha": list(self.scissor_alpha) if self.scissor_alpha else None,
            "scissor_beta": list(self.scissor_beta) if self.scissor_beta else None,
            "scissor_off_diagonal_range": self.scissor_range,
            "full": self.full,
            "min_edge_length": self.min_edge_length,
        }


def report(G, flex, samples=DEFAULT_SAMPLES, tol=RESIDUAL_TOL, scissor_bound=2):
    base = flex.sample(flex.domain[0])
    lengths = squared_lengths(G, base)
    nontrivial, witness = nontriviality(G, flex, samples)
    rep = FlexReport(
        samples=samples,
        tolerance=tol,
        max_edge_residual=edge_residual(G, flex, samples),
        gram_drift=gram_drift(flex, samples).tolist(),
        nontrivial=nontrivial,
        nontrivial_witness=witness,
        full=bool(np.linalg.matrix_rank(base.L, tol=1e-9) == base.L.shape[1]),
        min_edge_length=float(np.sqrt(lengths.min())) if len(lengths) else 0.0,
    )
    if base.L.shape[1] == 2:
        found, a, b, spread = scissor_detect(flex, samples, scissor_bound, tol)
        # a scissor motion changes a lattice Gram entry, so it is never trivial
        rep.scissor = found and nontrivial
        if rep.scissor:
            rep.scissor_alpha, rep.scissor_beta, rep.scissor_range = a, b, spread
    return rep


# brute-force walk oracle

FOUND = "found"
NOT_FOUND = "not-found"
INCONCLUSIVE = "inconclusive"


@dataclass
class OracleResult:
    status: str
    walk: list = field(default_factory=list)
    nodes: int = 0


def _gain_matches(gain, condition, alpha):
    if condition == "balanced":
        return is_zero(gain)
    if condition == "any":
        return True
    if condition == "line":
        if is_zero(alpha):
            return is_zero(gain)
        i = next(j for j, x in enumerate(alpha) if x)
        if gain[i] % alpha[i]:
            return False
        return vscale(gain[i] // alpha[i], alpha) == tuple(gain)
    raise ValueError(f"unknown condition {condition}")


class _Budget(Exception):
    pass


def _closed_walks(G, delta, colour, bound, budget):
    """Yield ``(gain, walk)`` for closed walks with exactly one edge not of ``colour``.

    The off-colour edge is always taken first, tail to head; the reversed
    walk has the negated gain, and every condition checked here is symmetric
    under negation. States ``(vertex, usage, gain)`` are expanded depth first
    and never twice; raises :class:`_Budget` after ``budget`` expansions.
    Edge usage is packed into one integer with a digit per edge.
    """
    mono = [e for e in G.edges if delta[e.id] == colour]
    base = bound + 1
    steps = {v: [] for v in G.vertices}
    for i, e in enumerate(mono):
        unit = base**i
        steps[e.tail].append((e.id, 1, e.head, unit, e.gain))
        steps[e.head].append((e.id, -1, e.tail, unit, tuple(-x for x in e.gain)))
    nodes = 0
    for closing in G.edges:
        if delta[closing.id] == colour:
            continue
        start = closing.tail
        root = (closing.head, 0, tuple(closing.gain))
        seen = {root}
        # entries: (state, parent entry, step)
        stack = [(root, None, (closing.id, 1))]
        while stack:
            entry = stack.pop()
            (v, usage, gain), _, _ = entry
            if v == start:
                yield gain, _unwind(entry)
            nodes += 1
            if nodes > budget:
                raise _Budget(nodes)
            for eid, d, nxt, unit, g in steps[v]:
                if (usage // unit) % base >= bound:
                    continue
                state = (nxt, usage + unit, tuple(x + y for x, y in zip(gain, g)))
                if state not in seen:
                    seen.add(state)
                    stack.append((state, entry, (eid, d)))


def _unwind(entry):
    walk = []
    while entry is not None:
        walk.append(entry[2])
        entry = entry[1]
    return walk[::-1]


def bounded_walk_oracle(G, delta, colour, condition="balanced", bound=3, alpha=None, budget=200_000):
    """Search closed walks with one edge not of ``colour`` and each edge used at most ``bound`` times.

    Reports FOUND with the first walk whose gain meets the condition (0, any,
    or in Z*alpha), NOT_FOUND after an exhaustive search, and INCONCLUSIVE
    when ``budget`` state expansions run out first.
    """
    if condition == "line" and alpha is None:
        raise ValueError("condition 'line' needs alpha")
    alpha = tuple(alpha) if alpha is not None else None
    try:
        for gain, walk in _closed_walks(G, delta, colour, bound, budget):
            if _gain_matches(gain, condition, alpha):
                return OracleResult(FOUND, walk)
    except _Budget as exc:
        return OracleResult(INCONCLUSIVE, [], exc.args[0])
    return OracleResult(NOT_FOUND)


def oracle_gains(G, delta, colour, bound=3, budget=200_000, wanted=None):
    """Closing gains reachable within the bound, each with one walk.

    Returns ``(gains, complete)``. With ``wanted`` (a list of
    ``(condition, alpha)``) the search stops as soon as every wanted
    condition has a witness; ``complete`` is then False but no answer is
    lost. Otherwise ``complete`` is False only when the budget ran out.
    """
    gains = {}
    pending = list(wanted) if wanted is not None else None
    try:
        for gain, walk in _closed_walks(G, delta, colour, bound, budget):
            if gain in gains:
                continue
            gains[gain] = walk
            if pending is not None:
                pending = [(c, a) for c, a in pending if not _gain_matches(gain, c, a)]
                if not pending:
                    return gains, False
    except _Budget:
        return gains, False
    return gains, True


def max_multiplicity(walk):
    counts = {}
    for eid, _ in walk:
        counts[eid] = counts.get(eid, 0) + 1
    return max(counts.values(), default=0)


@dataclass
class Discrepancy:
    colour: str
    condition: str
    alpha: tuple
    implementation: list
    oracle: OracleResult
    problem: str

    def to_dict(self):
        return {
            "colour": self.colour,
            "condition": self.condition,
            "alpha": list(self.alpha) if self.alpha else None,
            "implementation_walk": [[e, d] for e, d in self.implementation] if self.implementation else None,
            "oracle_status": self.oracle.status,
            "oracle_walk": [[e, d] for e, d in self.oracle.walk],
            "problem": self.problem,
        }


def _implementation(G, delta, colour, condition, alpha):
    from .colouring import almost_circuit_any_gain, almost_circuit_gain_in_line, balanced_almost_circuit

    if condition == "balanced":
        return balanced_almost_circuit(G, delta, colour)
    if condition == "any":
        return almost_circuit_any_gain(G, delta, colour)
    return almost_circuit_gain_in_line(G, delta, colour, alpha)


def cross_check(G, delta, conditions, bound=3, budget=200_000):
    """Compare the coset checks with the oracle on one colouring.

    ``conditions`` is a list of ``(colour, condition, alpha)``. A discrepancy
    is: the oracle finds a witness the implementation missed; an
    implementation witness fails direct verification; or the oracle
    exhaustively finds nothing although the implementation's witness stays
    within the multiplicity bound. Returns ``(discrepancies, tally)``.
    """
    from .colouring import check_almost_circuit

    problems = []
    tally = {FOUND: 0, NOT_FOUND: 0, INCONCLUSIVE: 0}
    searched = {}
    for colour, condition, alpha in conditions:
        if colour not in searched:
            wanted = [(c, a) for col, c, a in conditions if col == colour]
            searched[colour] = oracle_gains(G, delta, colour, bound, budget, wanted)
        gains, complete = searched[colour]
        hit = next((w for g, w in gains.items() if _gain_matches(g, condition, alpha)), None)
        if hit is not None:
            res = OracleResult(FOUND, hit)
        else:
            res = OracleResult(NOT_FOUND if complete else INCONCLUSIVE)
        tally[res.status] += 1
        walk = _implementation(G, delta, colour, condition, alpha)

        def flag(problem):
            problems.append(Discrepancy(colour, condition, alpha, walk, res, problem))

        if walk is not None and not check_almost_circuit(G, delta, colour, walk, condition, alpha):
            flag("implementation witness fails verification")
        if res.status == FOUND and walk is None:
            flag("oracle found a witness the implementation missed")
        if res.status == NOT_FOUND and walk is not None and max_multiplicity(walk) <= bound:
            flag("implementation witness within the bound but oracle found none")
    return problems, tally


def standard_conditions(k):
    """Conditions checked per colouring: both colours, balanced / any / a few lines."""
    lines = [(1,), (2,)] if k == 1 else [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)]
    out = []
    for colour in ("red", "blue"):
        out.append((colour, "balanced", None))
        out.append((colour, "any", None))
        out.extend((colour, "line", a) for a in lines)
    return out
