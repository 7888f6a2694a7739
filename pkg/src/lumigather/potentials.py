"""Lexicographic 5-entry potential functions over configurations.

Entries are exact where possible (areas, counts) and certified otherwise:
a sum of Euclidean distances is kept as the multiset of its squared-distance
radicands plus an exact part, and is compared through interval enclosures at
escalating precision.  Two sums over identical radicand multisets compare
exactly; beyond that, square-free canonicalization decides equality (distinct
square-free parts are linearly independent over the rationals), so a
comparison is reported Undecided only when precision genuinely runs out.
"""

from dataclasses import dataclass
from enum import Enum

from .geometry import Classification, dist_sq, hull_area_twice, midpoint, on_segment
from .rational import R0, Rat, format_rat, isqrt, sqrt_exact, sqrt_interval

INF = "inf"

_ESCALATION = (64, 256, 1024)
_LAST_RESORT = (4096, 16384)


class Cmp(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1
    UNDECIDED = 2


@dataclass(frozen=True, slots=True)
class SqrtSum:
    """exact + sum of sqrt(radicand) over a sorted multiset of rationals."""

    exact: object
    radicands: tuple

    def interval(self, bits):
        lo = hi = self.exact
        for r in self.radicands:
            a, b = sqrt_interval(r, bits)
            lo += a
            hi += b
        return lo, hi

    def is_zero(self):
        return not self.radicands and self.exact == 0

    def __repr__(self):
        return f"SqrtSum({self.exact}+sqrt{list(self.radicands)})"


def sqrt_sum(radicands, exact=R0):
    """Build a distance-sum value, folding exact square roots into the base.

    Returns a plain rational when nothing irrational remains.
    """
    base = exact
    irr = []
    for r in radicands:
        if r < 0:
            raise ValueError("negative radicand")
        if r == 0:
            continue
        s = sqrt_exact(r)
        if s is None:
            irr.append(r)
        else:
            base += s
    if not irr:
        return base
    irr.sort()
    return SqrtSum(base, tuple(irr))


def _as_pair(v):
    if isinstance(v, SqrtSum):
        return v.exact, v.radicands
    return Rat(v), ()


_PRIMES = None


def _small_primes():
    global _PRIMES
    if _PRIMES is None:
        n = 10000
        sieve = bytearray([1]) * (n + 1)
        sieve[0] = sieve[1] = 0
        for i in range(2, int(n**0.5) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _PRIMES = [i for i in range(2, n + 1) if sieve[i]]
    return _PRIMES


def _canonical_sqrt(rad):
    """sqrt(rad) as (coeff, squarefree m), or None when factoring gives out.

    rad = p/q gives sqrt(p*q)/q; square parts of p*q move into the rational
    coefficient.  Any cofactor surviving trial division below 1e4 that is not
    a perfect square and not provably prime leaves the result unusable.
    """
    p, q = rad.numerator, rad.denominator
    n = int(p * q)
    coeff = Rat(1, int(q))
    m = 1
    for f in _small_primes():
        if f * f > n:
            break
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e:
            coeff *= Rat(f) ** (e // 2)
            if e % 2:
                m *= f
    if n > 1:
        s = isqrt(n)
        if s * s == n:
            coeff *= Rat(int(s))
        elif n < 10**8:
            m *= n  # survived trial division and below 1e8: prime
        else:
            return None
    return coeff, m


def _canonical_form(pair):
    exact, rads = pair
    form = {}
    for r in rads:
        c = _canonical_sqrt(r)
        if c is None:
            return None
        coeff, m = c
        if m == 1:
            exact += coeff
        else:
            form[m] = form.get(m, R0) + coeff
    form = {m: c for m, c in form.items() if c != 0}
    return exact, form


def compare_values(a, b):
    """Exact-aware comparison of two non-negative distance-sum values."""
    if a == INF or b == INF:
        if a == INF and b == INF:
            return Cmp.EQUAL
        return Cmp.GREATER if a == INF else Cmp.LESS
    ea, ra = _as_pair(a)
    eb, rb = _as_pair(b)
    if ra == rb:
        if ea == eb:
            return Cmp.EQUAL
        return Cmp.LESS if ea < eb else Cmp.GREATER
    for bits in _ESCALATION:
        alo, ahi = SqrtSum(ea, ra).interval(bits)
        blo, bhi = SqrtSum(eb, rb).interval(bits)
        if ahi < blo:
            return Cmp.LESS
        if alo > bhi:
            return Cmp.GREATER
    ca = _canonical_form((ea, ra))
    cb = _canonical_form((eb, rb))
    if ca is not None and cb is not None and ca[0] == cb[0] and ca[1] == cb[1]:
        return Cmp.EQUAL
    for bits in _LAST_RESORT:
        alo, ahi = SqrtSum(ea, ra).interval(bits)
        blo, bhi = SqrtSum(eb, rb).interval(bits)
        if ahi < blo:
            return Cmp.LESS
        if alo > bhi:
            return Cmp.GREATER
    return Cmp.UNDECIDED


def lex_less(a, b):
    """Lexicographic comparison of two 5-entry potential vectors.

    Returns LESS/GREATER/EQUAL, or UNDECIDED when an entry comparison cannot
    be resolved at the precision ceiling (reported, never guessed).
    """
    for x, y in zip(a, b):
        c = compare_values(x, y)
        if c is Cmp.EQUAL:
            continue
        return c
    return Cmp.EQUAL


def serialize_entry(v, bits=64):
    if v == INF:
        return "inf"
    if isinstance(v, SqrtSum):
        lo, hi = v.interval(bits)
        return [format_rat(lo), format_rat(hi)]
    return format_rat(Rat(v))


def serialize_potential(vec, bits=64):
    return [serialize_entry(v, bits) for v in vec]


ZERO_VEC = (R0, R0, R0, R0, R0)


def _walk_start(hull):
    """Start vertex of the perimeter walk for an asymmetric hull.

    Rightmost-topmost, excluding the far endpoints of the contraction target
    edges: a robot leaving such an endpoint along its minimum edge travels
    CCW-backward past the start, which would flip the walk-distance sum
    upward and break the strict decrease the termination argument needs.
    """
    from .geometry import selected_min_edges

    verts = hull.vertices
    k = len(verts)
    forbidden = {verts[(i + 1) % k] for i in selected_min_edges(hull)}
    return max((v for v in verts if v not in forbidden), key=lambda v: (v.x, v.y))


def potential_f(config):
    """Line-election potential: (area, center-dist, inside-count, edge-walk, vertex-dist).

    Collinear configurations score exactly zero everywhere.  Symmetric hulls
    use the center-distance sum; asymmetric hulls use the inside count, the
    counter-clockwise perimeter walk from the rightmost-topmost vertex to
    every robot on the boundary, and the nearest-vertex distance sum.
    """
    memo = config.memo
    if "f" in memo:
        return memo["f"]
    if config.on_lds:
        memo["f"] = ZERO_VEC
        return ZERO_VEC
    hull = config.hull
    verts = hull.vertices
    k = len(verts)
    area = hull_area_twice(verts) / 2
    robots = [p for p, _ in config.entries]
    if hull.classification in (
        Classification.SYM_CONTRACTIBLE,
        Classification.SYM_NONCONTRACTIBLE,
    ):
        center = _hull_center(verts)
        f2 = sqrt_sum([dist_sq(center, p) for p in robots])
        vec = (area, f2, 0, R0, R0)
    else:
        v0 = _walk_start(hull)
        start = verts.index(v0)
        ring = verts[start:] + verts[:start]
        on_boundary = _boundary_index(ring)
        inside = 0
        f4_rads = []
        f5_rads = []
        for p in robots:
            loc = on_boundary(p)
            if loc is None:
                inside += 1
            else:
                f4_rads.extend(loc)
            f5_rads.append(min(dist_sq(p, v) for v in verts))
        vec = (area, R0, inside, sqrt_sum(f4_rads), sqrt_sum(f5_rads))
    memo["f"] = vec
    return vec


def _hull_center(verts):
    from .geometry import hull_center_of

    return hull_center_of(verts)


def _boundary_index(ring):
    """Locator of boundary points as perimeter-walk radicand lists from ring[0]."""
    k = len(ring)
    edge_rads = [dist_sq(ring[i], ring[(i + 1) % k]) for i in range(k)]

    def locate(p):
        prefix = []
        for i in range(k):
            a, b = ring[i], ring[(i + 1) % k]
            if p == a:
                return list(prefix)
            if on_segment(p, a, b) and p != b:
                return list(prefix) + [dist_sq(a, p)]
            prefix.append(edge_rads[i])
        return None

    return locate


def potential_g(config):
    """Two-color gathering potential, branching on the number of A points."""
    memo = config.memo
    if "g" in memo:
        return memo["g"]
    if not config.on_lds:
        raise ValueError("potential_g requires a collinear configuration")
    cc = config.cc
    robots = config.entries
    n_a = cc.counts.get("A", 0)
    if n_a == 1:
        p_a = next(p for p, f in cc.stations if "A" in f)
        g1 = sqrt_sum([dist_sq(p_a, p) for p, _ in robots])
        vec = (g1, R0, R0, 0, R0)
    elif n_a in (0, 2):
        span = sqrt_sum([cc.span_sq()])
        p_m = midpoint(cc.endpoint_left, cc.endpoint_right)
        g3 = sqrt_sum([dist_sq(p_m, p) for p, _ in robots])
        n_b = sum(1 for _, c in robots if c == "B")
        vec = (INF, span, g3, n_b, R0)
    else:
        g5 = sqrt_sum(
            [
                min(dist_sq(p, cc.endpoint_left), dist_sq(p, cc.endpoint_right))
                for p, _ in robots
            ]
        )
        vec = (INF, INF, INF, INF, g5)
    memo["g"] = vec
    return vec
