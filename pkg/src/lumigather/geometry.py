"""Exact rational planar geometry.

All predicates here (collinearity, hull membership, symmetry, nearest-vertex
selection) are decided by integer arithmetic on cross products and squared
distances.  There is no tolerance parameter anywhere in this module.
"""

from dataclasses import dataclass
from enum import Enum

from .rational import Rat


@dataclass(frozen=True, slots=True)
class Point:
    x: object
    y: object

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, k):
        return Point(self.x * k, self.y * k)

    def __lt__(self, other):
        return (self.x, self.y) < (other.x, other.y)

    def __repr__(self):
        return f"({self.x},{self.y})"


def pt(x, y=None):
    """Point from ints/rationals; a (num, den) tuple means num/den."""
    if y is None:
        x, y = x

    def r(v):
        return Rat(*v) if isinstance(v, tuple) else Rat(v)

    return Point(r(x), r(y))


def cross(o, a, b):
    """Twice the signed area of triangle o-a-b; >0 means b left of o->a."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def dot(o, a, b):
    return (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y)


def dist_sq(a, b):
    dx = a.x - b.x
    dy = a.y - b.y
    return dx * dx + dy * dy


def midpoint(a, b):
    half = Rat(1, 2)
    return Point((a.x + b.x) * half, (a.y + b.y) * half)


def on_segment(p, a, b):
    """True when p lies on the closed segment ab."""
    if cross(a, b, p) != 0:
        return False
    d = dot(a, p, b)
    return 0 <= d <= dist_sq(a, b)


class Classification(Enum):
    SYM_NONCONTRACTIBLE = "sym-noncontractible"
    SYM_CONTRACTIBLE = "sym-contractible"
    ASYM_NONCONTRACTIBLE = "asym-noncontractible"
    ASYM_CONTRACTIBLE = "asym-contractible"
    ON_LDS = "on-lds"


@dataclass(frozen=True, slots=True)
class CollinearSignal:
    """All distinct positions are collinear (includes 1 and 2 points)."""

    points: tuple


@dataclass(frozen=True, slots=True)
class HullView:
    """Strict convex hull of a set of occupied positions.

    vertices are counter-clockwise starting at the lexicographically smallest
    point; edge i runs from vertices[i] to vertices[(i+1) % k].  The
    classification is taken with respect to the full occupied point set the
    hull was built from, not just the vertices.
    """

    vertices: tuple
    edge_lengths_sq: tuple
    classification: Classification


def convex_hull(points):
    """Strict CCW hull of the given occupied positions.

    Returns a HullView, or a CollinearSignal when every distinct position is
    collinear (a single point and two points count as collinear).
    """
    pts = sorted(set(points))
    if not pts:
        raise ValueError("convex_hull of empty point set")
    if len(pts) <= 2:
        return CollinearSignal(tuple(pts))

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    ring = lower[:-1] + upper[:-1]
    if len(ring) < 3:
        return CollinearSignal(tuple(pts))
    start = ring.index(pts[0])
    ring = ring[start:] + ring[:start]
    verts = tuple(ring)
    k = len(verts)
    edges = tuple(dist_sq(verts[i], verts[(i + 1) % k]) for i in range(k))
    sym = all(e == edges[0] for e in edges)
    if sym:
        center = hull_center_of(verts)
        ok = all(p in set(verts) or p == center for p in pts)
        cls = Classification.SYM_CONTRACTIBLE if ok else Classification.SYM_NONCONTRACTIBLE
    else:
        ok = all(_on_hull_boundary(p, verts) for p in pts)
        cls = Classification.ASYM_CONTRACTIBLE if ok else Classification.ASYM_NONCONTRACTIBLE
    return HullView(verts, edges, cls)


def _on_hull_boundary(p, verts):
    k = len(verts)
    return any(on_segment(p, verts[i], verts[(i + 1) % k]) for i in range(k))


def hull_center_of(vertices):
    """Vertex centroid.  For regular polygons this is the circumcenter."""
    k = len(vertices)
    inv = Rat(1, k)
    sx = sum((v.x for v in vertices), Rat(0))
    sy = sum((v.y for v in vertices), Rat(0))
    return Point(sx * inv, sy * inv)


def hull_center(hull):
    return hull_center_of(hull.vertices)


def is_symmetric(hull):
    """All hull edges have equal (squared) length."""
    return all(e == hull.edge_lengths_sq[0] for e in hull.edge_lengths_sq)


def is_contractible(points, hull=None):
    """Contractibility of an occupied point set (must not be collinear).

    Symmetric hulls: every occupied point is a vertex or the center.
    Asymmetric hulls: every occupied point lies on the hull boundary.
    """
    if hull is None:
        hull = convex_hull(points)
    if isinstance(hull, CollinearSignal):
        raise ValueError("contractibility undefined for collinear configurations")
    return hull.classification in (
        Classification.SYM_CONTRACTIBLE,
        Classification.ASYM_CONTRACTIBLE,
    )


def is_on_lds(points):
    """True when all occupied positions are collinear (1 or 2 points: true)."""
    pts = list(dict.fromkeys(points))
    if len(pts) <= 2:
        return True
    a, b = pts[0], pts[1]
    return all(cross(a, b, p) == 0 for p in pts[2:])


def hull_area_twice(verts):
    """Twice the (positive, CCW) shoelace area of the vertex ring."""
    k = len(verts)
    s = Rat(0)
    for i in range(k):
        a, b = verts[i], verts[(i + 1) % k]
        s += a.x * b.y - b.x * a.y
    return s


def selected_min_edges(hull):
    """Indices of the minimum edges a contraction acts on.

    Minimum edges come in maximal cyclic runs of consecutive edges; an
    isolated minimum edge is its own run.  Only the first edge of each run in
    CCW order is contracted.  The hull must not have all edges minimal.
    """
    edges = hull.edge_lengths_sq
    k = len(edges)
    m = min(edges)
    is_min = [e == m for e in edges]
    if all(is_min):
        raise ValueError("all edges minimal: symmetric hull has no contraction target")
    return [i for i in range(k) if is_min[i] and not is_min[(i - 1) % k]]


def min_edge_targets(points):
    """Contraction moves for an asymmetric contractible configuration.

    For each selected minimum edge (v_k, v_{k+1}) in CCW order, every
    occupied point on the closed edge other than v_k is paired with v_k.
    With shared chirality v_k is the edge's right vertex.
    """
    hull = convex_hull(points)
    if isinstance(hull, CollinearSignal):
        raise ValueError("min_edge_targets needs a non-collinear configuration")
    if hull.classification is not Classification.ASYM_CONTRACTIBLE:
        raise ValueError("min_edge_targets requires an asymmetric contractible configuration")
    verts = hull.vertices
    k = len(verts)
    occupied = sorted(set(points))
    out = []
    for i in selected_min_edges(hull):
        right, other = verts[i], verts[(i + 1) % k]
        for p in occupied:
            if p != right and on_segment(p, right, other):
                out.append((p, right))
    out.sort(key=lambda pr: (pr[0].x, pr[0].y))
    return out


def nearest_vertex(p, hull):
    """Hull vertex at minimum exact squared distance from p.

    Ties are broken by the smallest clockwise angle of (p -> vertex) from the
    ray (p -> hull center); with p at the center exactly, the first tied
    vertex in the canonical CCW ring is taken.
    """
    verts = hull.vertices
    if p in verts:
        raise ValueError("nearest_vertex is undefined for a hull vertex")
    best = min(dist_sq(p, v) for v in verts)
    cands = [v for v in verts if dist_sq(p, v) == best]
    if len(cands) == 1:
        return cands[0]
    c = hull_center_of(verts)
    r = c - p
    if r.x == 0 and r.y == 0:
        return cands[0]

    def bucket(v):
        cr = r.x * v.y - r.y * v.x
        dt = r.x * v.x + r.y * v.y
        if cr == 0:
            return 0 if dt > 0 else 2
        return 1 if cr < 0 else 3

    def before(u, w):
        # Smaller clockwise angle from r wins.
        bu, bw = bucket(u), bucket(w)
        if bu != bw:
            return bu < bw
        return u.x * w.y - u.y * w.x < 0

    chosen = cands[0] - p
    chosen_pt = cands[0]
    for v in cands[1:]:
        vec = v - p
        if before(vec, chosen):
            chosen = vec
            chosen_pt = v
    return chosen_pt
