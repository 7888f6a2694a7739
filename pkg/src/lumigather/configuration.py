"""Configurations, snapshots and observation frames.

A Configuration is the multiset of (position, color) pairs at an instant.
Derived analyses (occupied points, convex hull, collinearity, line pattern)
are computed lazily and cached, so the many per-robot algorithm evaluations
that share one instant pay for geometry once.
"""

from dataclasses import dataclass

from .geometry import (
    CollinearSignal,
    Classification,
    Point,
    convex_hull,
    is_on_lds,
)
from .patterns import classify_line
from .rational import R0, Rat


class Configuration:
    """Canonical multiset of (Point, color) with cached analyses."""

    __slots__ = (
        "entries",
        "_points",
        "_occupied",
        "_hull",
        "_on_lds",
        "_cc",
        "_colors",
        "_contraction",
        "memo",
    )

    def __init__(self, entries):
        self.entries = tuple(sorted(entries, key=lambda e: (e[0].x, e[0].y, e[1])))
        self._points = None
        self._occupied = None
        self._hull = None
        self._on_lds = None
        self._cc = None
        self._colors = None
        self._contraction = None
        self.memo = {}

    def __eq__(self, other):
        return isinstance(other, Configuration) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __len__(self):
        return len(self.entries)

    @property
    def points(self):
        """Mapping Point -> frozenset of colors present there."""
        if self._points is None:
            acc = {}
            for p, c in self.entries:
                acc.setdefault(p, set()).add(c)
            self._points = {p: frozenset(cs) for p, cs in acc.items()}
        return self._points

    @property
    def occupied(self):
        if self._occupied is None:
            self._occupied = tuple(sorted(self.points))
        return self._occupied

    @property
    def colors_present(self):
        if self._colors is None:
            self._colors = frozenset(c for _, c in self.entries)
        return self._colors

    @property
    def hull(self):
        """HullView or CollinearSignal over the occupied points."""
        if self._hull is None:
            self._hull = convex_hull(self.occupied)
        return self._hull

    @property
    def on_lds(self):
        if self._on_lds is None:
            self._on_lds = is_on_lds(self.occupied)
        return self._on_lds

    @property
    def classification(self):
        if isinstance(self.hull, CollinearSignal):
            return Classification.ON_LDS
        return self.hull.classification

    @property
    def cc(self):
        """ColorConfig of a collinear configuration."""
        if self._cc is None:
            if not self.on_lds:
                raise ValueError("cc requested for a non-collinear configuration")
            self._cc = classify_line(self.points)
        return self._cc

    def gathered(self):
        return len(self.occupied) == 1

    def contraction_targets(self):
        """Memoized minimum-edge contraction moves (asym contractible only)."""
        if self._contraction is None:
            from .geometry import min_edge_targets

            self._contraction = tuple(min_edge_targets(self.occupied))
        return self._contraction

    def recolor(self, mapper):
        """New Configuration with colors mapped through ``mapper``."""
        return Configuration(tuple((p, mapper(c)) for p, c in self.entries))


@dataclass(frozen=True, slots=True)
class Snapshot:
    """What one robot sees: a configuration plus its own position and light.

    The engine executes algorithms on global-frame snapshots; per-robot frames
    exist for the equivariance harness.
    """

    config: Configuration
    own_pos: Point
    own_light: str

    @property
    def points(self):
        return self.config.points

    @property
    def on_lds(self):
        return self.config.on_lds

    @property
    def cc(self):
        return self.config.cc

    @property
    def colors_present(self):
        return self.config.colors_present


@dataclass(frozen=True, slots=True)
class Frame:
    """Orientation-preserving rational similarity of the plane.

    rotation (cos_r, sin_r) must be a Pythagorean pair with
    cos_r**2 + sin_r**2 == 1, scale must be positive.
    """

    cos_r: object
    sin_r: object
    scale: object
    translation: Point

    def __post_init__(self):
        if self.cos_r * self.cos_r + self.sin_r * self.sin_r != 1:
            raise ValueError("rotation is not a Pythagorean pair")
        if self.scale <= 0:
            raise ValueError("frame must be orientation-preserving (scale > 0)")

    @staticmethod
    def identity():
        return Frame(Rat(1), R0, Rat(1), Point(R0, R0))

    @staticmethod
    def from_triple(a, b, c, scale=1, tx=0, ty=0):
        """Frame from a Pythagorean triple a^2 + b^2 = c^2."""
        return Frame(Rat(a, c), Rat(b, c), Rat(scale), Point(Rat(tx), Rat(ty)))

    def apply(self, p):
        x = self.scale * (self.cos_r * p.x - self.sin_r * p.y) + self.translation.x
        y = self.scale * (self.sin_r * p.x + self.cos_r * p.y) + self.translation.y
        return Point(x, y)

    def inverse_apply(self, p):
        ux = (p.x - self.translation.x) / self.scale
        uy = (p.y - self.translation.y) / self.scale
        return Point(self.cos_r * ux + self.sin_r * uy, -self.sin_r * ux + self.cos_r * uy)

    def apply_snapshot(self, snap):
        cfg = Configuration(tuple((self.apply(p), c) for p, c in snap.config.entries))
        return Snapshot(cfg, self.apply(snap.own_pos), snap.own_light)
