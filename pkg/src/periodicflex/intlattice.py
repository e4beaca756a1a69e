"""Exact arithmetic on subgroups and cosets of Z^k.

Subgroups are stored by their row Hermite normal form, which is unique, so two
subgroups are equal exactly when their bases are equal. Everything here works
on plain integer tuples and is written for any k, although the rest of the
package only uses k = 1 and k = 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

TRIVIAL = "trivial"


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(c, a):
    return tuple(c * x for x in a)


def vzero(k):
    return (0,) * k


def is_zero(a):
    return not any(a)


def _check_dims(vectors, k):
    for v in vectors:
        if len(v) != k:
            raise ValueError(f"vector {tuple(v)} does not have length {k}")


def _echelon(rows, k, ncols=None):
    """Integer row reduction on the first ``ncols`` columns.

    Rows may carry extra trailing columns (bookkeeping) that are transformed
    along with them. Returns ``(pivot_rows, zero_rows)`` where the pivot rows
    are in reduced Hermite form on the leading columns and the zero rows are
    the leftovers whose leading part vanished.
    """
    ncols = k if ncols is None else ncols
    rows = [list(r) for r in rows]
    pivots = []
    for col in range(ncols):
        active = [r for r in rows if r[col] != 0]
        if not active:
            continue
        rest = [r for r in rows if r[col] == 0]
        # Euclid on the column until a single row remains nonzero there.
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                if r[col] != 0:
                    nxt.append(r)
                else:
                    rest.append(r)
            active = nxt
        p = active[0]
        if p[col] < 0:
            p = [-x for x in p]
        pivots.append((col, p))
        rows = rest
    # Reduce entries above each pivot into [0, pivot).
    for i, (col, p) in enumerate(pivots):
        for j in range(i):
            cj, r = pivots[j]
            q = r[col] // p[col]
            if q:
                pivots[j] = (cj, [x - q * y for x, y in zip(r, p)])
    zero_rows = [r for r in rows if any(r)]
    return pivots, zero_rows


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of Z^k given by its Hermite normal form basis."""

    k: int
    basis: tuple = ()

    @property
    def rank(self):
        return len(self.basis)

    @property
    def is_trivial(self):
        return not self.basis

    def __contains__(self, g):
        return contains(self, g)

    def __add__(self, other):
        if other.k != self.k:
            raise ValueError("dimension mismatch")
        return hnf(self.basis + other.basis, self.k)

    def reduce(self, g):
        """Canonical representative of ``g`` modulo the subgroup."""
        g = list(g)
        for row in self.basis:
            col = _pivot_col(row)
            q = g[col] // row[col]
            if q:
                g = [x - q * y for x, y in zip(g, row)]
        return tuple(g)


def _pivot_col(row):
    for i, x in enumerate(row):
        if x:
            return i
    raise ValueError("zero row in basis")


def hnf(generators, k=None):
    """Return the subgroup generated by ``generators`` in Hermite normal form.

    Args:
        generators: iterable of integer vectors, all of the same length.
        k: ambient dimension; inferred from the first generator if omitted.

    Returns:
        Subgroup with a unique basis. An empty generator list gives the
        trivial subgroup.
    """
    generators = [tuple(int(x) for x in g) for g in generators]
    if k is None:
        if not generators:
            raise ValueError("cannot infer k from an empty generator list")
        k = len(generators[0])
    _check_dims(generators, k)
    pivots, _ = _echelon([g for g in generators if any(g)], k)
    return Subgroup(k, tuple(tuple(r) for _, r in pivots))


def trivial_subgroup(k):
    return Subgroup(k, ())


def contains(S, g):
    """True iff ``g`` lies in ``S``."""
    _check_dims([g], S.k)
    return is_zero(S.reduce(g))


def express(generators, target, k=None):
    """Integer coefficients ``x`` with ``sum(x_i * generators[i]) == target``.

    Returns None if ``target`` is not in the generated subgroup.
    """
    generators = [tuple(g) for g in generators]
    k = len(target) if k is None else k
    _check_dims(generators + [tuple(target)], k)
    n = len(generators)
    rows = [list(g) + [1 if j == i else 0 for j in range(n)] for i, g in enumerate(generators)]
    pivots, _ = _echelon(rows, k, ncols=k)
    rest = list(target) + [0] * n
    coeffs = [0] * n
    for col, p in pivots:
        if any(rest[c] for c in range(col)):
            return None
        q, r = divmod(rest[col], p[col])
        if r:
            return None
        rest = [x - q * y for x, y in zip(rest, p)]
        coeffs = [c + q * y for c, y in zip(coeffs, p[k:])]
    if any(rest[:k]):
        return None
    assert _combine(generators, coeffs, k) == tuple(target)
    return coeffs


def _combine(generators, coeffs, k):
    total = vzero(k)
    for c, g in zip(coeffs, generators):
        total = vadd(total, vscale(c, g))
    return total


@dataclass(frozen=True)
class Coset:
    """The coset ``offset + subgroup`` with the offset in canonical form."""

    offset: tuple
    subgroup: Subgroup

    def __post_init__(self):
        object.__setattr__(self, "offset", self.subgroup.reduce(self.offset))

    def __contains__(self, g):
        return contains(self.subgroup, vsub(g, self.offset))

    @property
    def contains_zero(self):
        return is_zero(self.offset)


def coset_intersects_line(C, alpha):
    """Find an integer c with ``c * alpha`` in the coset ``C``.

    With ``alpha = 0`` this asks whether C contains 0 and returns 0 or None.
    Among all solutions the smallest non-negative one is returned.
    """
    alpha = tuple(alpha)
    k = C.subgroup.k
    _check_dims([alpha], k)
    if is_zero(alpha):
        return 0 if C.contains_zero else None
    # Solve c*alpha - s = offset over Z by reducing the offset against the
    # echelon form of {alpha} + basis(S), tracking the coefficient of alpha.
    rows = [list(alpha) + [1]] + [list(b) + [0] for b in C.subgroup.basis]
    pivots, zero_rows = _echelon(rows, k, ncols=k)
    rest = list(C.offset) + [0]
    c = 0
    for col, p in pivots:
        if any(rest[i] for i in range(col)):
            return None
        q, r = divmod(rest[col], p[col])
        if r:
            return None
        rest = [x - q * y for x, y in zip(rest, p)]
        c += q * p[k]
    if any(rest[:k]):
        return None
    period = 0
    for r in zero_rows:
        period = gcd(period, r[k])
    if period:
        c %= period
    if vscale(c, alpha) not in C:
        raise AssertionError("line intersection witness failed verification")
    return c


def primitive(v):
    """Divide out the content of ``v`` and make its first nonzero entry positive."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    v = tuple(x // g for x in v)
    for x in v:
        if x:
            return v if x > 0 else vneg(v)
    return v


def line_containing(S):
    """Primitive alpha with S inside Z*alpha.

    Returns ``TRIVIAL`` for the trivial subgroup and None when S has rank 2 or
    more, since then no line contains it.
    """
    if S.is_trivial:
        return TRIVIAL
    if S.rank > 1:
        return None
    return primitive(S.basis[0])


def independent(a, b):
    """Linear independence of two vectors in Z^2 (or Z^1, where it never holds)."""
    if len(a) == 1:
        return False
    return a[0] * b[1] - a[1] * b[0] != 0
