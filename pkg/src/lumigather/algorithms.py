"""Gathering algorithms as pure functions of (snapshot, own light).

Each algorithm maps a Snapshot to an Action (new light color plus a
destination in the snapshot's frame; destination equal to the current
position means stay).  All are stateless and equivariant under
orientation-preserving rational similarities.
"""

from dataclasses import dataclass

from .configuration import Snapshot
from .geometry import (
    Classification,
    dist_sq,
    hull_center,
    midpoint,
    nearest_vertex,
    on_segment,
)


def _on_boundary(p, hull):
    verts = hull.vertices
    k = len(verts)
    return any(on_segment(p, verts[i], verts[(i + 1) % k]) for i in range(k))


@dataclass(frozen=True, slots=True)
class Action:
    color: str
    dest: object
    inner_exec: bool = False


def split_color(c):
    if "." in c:
        phase, inner = c.split(".", 1)
        return phase, inner
    return c, None


def join_color(phase, inner):
    return phase if inner is None else f"{phase}.{inner}"


def phase_of(c):
    return c.split(".", 1)[0]


def inner_of(c):
    return c.split(".", 1)[1] if "." in c else "O"


def _endpoints_near_far(cc, me):
    """Nearest and furthest endpoint; exact-midpoint ties go to the left one."""
    left, right = cc.endpoint_left, cc.endpoint_right
    dl, dr = dist_sq(me, left), dist_sq(me, right)
    if dl <= dr:
        return left, right
    return right, left


def elect_one_lds(snap):
    """Line-formation step: contract the hull by the configuration's class.

    Colorless; a collinear snapshot is the target condition and yields stay.
    """
    me, light = snap.own_pos, snap.own_light
    stay = Action(light, me)
    if snap.on_lds:
        return stay
    hull = snap.config.hull
    cls = hull.classification
    if cls is Classification.SYM_NONCONTRACTIBLE:
        center = hull_center(hull)
        if me not in hull.vertices and me != center:
            return Action(light, center)
        return stay
    if cls is Classification.ASYM_NONCONTRACTIBLE:
        # only robots strictly inside move here; a robot already on the
        # boundary walking to its nearest vertex could travel CCW-backward
        # past the perimeter-walk start and break the descent argument
        if not _on_boundary(me, hull):
            return Action(light, nearest_vertex(me, hull))
        return stay
    if cls is Classification.SYM_CONTRACTIBLE:
        center = hull_center(hull)
        if me != center:
            return Action(light, center)
        return stay
    for src, dst in snap.config.contraction_targets():
        if src == me:
            return Action(light, dst)
    return stay


def _ab_star_b(cc):
    """One endpoint carries color A (possibly mixed), all other points are pure B.

    Matching by color presence rather than by pure factors keeps the rule
    stable when a B robot arrives exactly on the A endpoint.
    """
    a_points = [p for p, f in cc.stations if "A" in f]
    if len(a_points) != 1:
        return None
    p_a = a_points[0]
    if p_a != cc.endpoint_left and p_a != cc.endpoint_right:
        return None
    if all(f == frozenset(("B",)) for p, f in cc.stations if p != p_a):
        return p_a
    return None


def lu_gather(snap):
    """Two-color gathering from a collinear configuration."""
    assert snap.on_lds, "lu_gather requires a collinear snapshot"
    me, light = snap.own_pos, snap.own_light
    cc = snap.cc
    k = len(cc.stations)
    stay = Action(light, me)
    mid = midpoint(cc.endpoint_left, cc.endpoint_right)
    present = snap.colors_present

    if present == {"A"}:
        if k == 1:
            return stay
        if k == 2:
            return Action("B", mid)
        pn, _ = _endpoints_near_far(cc, me)
        if me != pn:
            return Action("A", pn)
        return stay

    if present == {"B"}:
        if k >= 2 and (me == cc.endpoint_left or me == cc.endpoint_right):
            return Action("A", me)
        return stay

    p_a = _ab_star_b(cc)
    if light == "A":
        if p_a is not None:
            return stay
        if cc.has_exact_midpoint and cc.factors == (
            frozenset("A"),
            frozenset("B"),
            frozenset("A"),
        ):
            return Action("B", mid)
        return stay
    if p_a is not None:
        return Action("B", p_a)
    return Action("B", mid)


def lu_gather_in_async(snap):
    """Three-color gathering from a collinear configuration, ASYNC-safe.

    Case split on the set of colors present; within each family the guards
    follow the color-class grammar top to bottom, first match wins.
    """
    assert snap.on_lds, "lu_gather_in_async requires a collinear snapshot"
    me, light = snap.own_pos, snap.own_light
    cc = snap.cc
    stations = cc.stations
    k = len(stations)
    stay = Action(light, me)
    left, right = cc.endpoint_left, cc.endpoint_right
    mid = midpoint(left, right)
    pn, _ = _endpoints_near_far(cc, me)
    present = snap.colors_present

    if present == {"S"}:
        if k == 2:
            return Action("M", mid)
        if k >= 3 and me != pn:
            return Action("S", pn)
        return stay

    if present == {"S", "M"}:
        s_points = [p for p, f in stations if "S" in f]
        if len(s_points) == 1:
            if light == "S":
                return Action("E", me)
            return stay
        both_ends = set(s_points) == {left, right}
        interior_pure_m = all(
            f == frozenset("M") for p, f in stations if p != left and p != right
        )
        if len(s_points) == 2 and both_ends and interior_pure_m:
            if light == "S":
                return Action("M", mid)
            return stay
        if len(s_points) >= 2 and light == "S":
            return Action("M", me)
        return stay

    if present == {"S", "E"}:
        if k == 2 and light == "E":
            return Action("S", me)
        # the sandwich guards demand the interior station exactly at the
        # midpoint: a robot still in flight is always seen strictly short of
        # it, so a transient merge of stations can never fake this shape
        if cc.has_exact_midpoint and stations[1][1] == frozenset("E"):
            n_e = sum(1 for _, f in stations if "E" in f)
            if n_e > 1 and me == pn and light == "E":
                return Action("S", me)
            if cc.factors == (frozenset("S"), frozenset("E"), frozenset("S")) and light == "S":
                return Action("M", me)
        return stay

    if present == {"M"}:
        return Action("E", me)

    if present == {"M", "E"}:
        e_points = [p for p, f in stations if "E" in f]
        if len(e_points) == 1 and k >= 2:
            p_e = e_points[0]
            if me != p_e:
                return Action(light, p_e)
            return stay
        if light == "M":
            return Action("E", me)
        return stay

    if present == {"E"}:
        if k == 1:
            return stay
        if k == 2:
            return Action("S", me)
        if cc.has_exact_midpoint:
            if me == pn:
                return Action("S", me)
            return stay
        if me != pn:
            return Action("E", mid)
        return stay

    # all three colors present
    se_points = [p for p, f in stations if "S" in f or "E" in f]
    if len(se_points) == 1:
        if light == "S":
            return Action("E", me)
        return stay
    if (
        cc.has_exact_midpoint
        and stations[1][1] == frozenset("E")
        and all("E" not in f for p, f in stations if p != stations[1][0])
        and me == pn
        and light == "S"
    ):
        return Action("M", me)
    return stay


def _inner_view(snap):
    """Snapshot the inner algorithm sees: phase components stripped."""
    cfg = snap.config.recolor(inner_of)
    return Snapshot(cfg, snap.own_pos, inner_of(snap.own_light))


def sim_for_unfair(inner_fn):
    """Wrap an unfair-scheduler algorithm for asynchronous execution.

    Adds a phase component (S, M, E) rotated through color cycles; the inner
    algorithm runs only in all-S configurations, on the inner-color view.
    """

    def wrapped(snap):
        me, light = snap.own_pos, snap.own_light
        phase, icolor = split_color(light)
        phases = frozenset(phase_of(c) for c in snap.colors_present)
        stay = Action(light, me)
        if phases == {"S"}:
            iv = _inner_view(snap)
            act = inner_fn(iv)
            if act.color != iv.own_light or act.dest != me:
                new_inner = None if icolor is None else act.color
                return Action(join_color("M", new_inner), act.dest, inner_exec=True)
            return stay
        if phases == {"S", "M"}:
            if phase == "S":
                return Action(join_color("M", icolor), me)
            return stay
        if phases == {"M"} or phases == {"M", "E"}:
            if phase == "M":
                return Action(join_color("E", icolor), me)
            return stay
        if phases == {"E"} or phases == {"E", "S"}:
            if phase == "E":
                return Action(join_color("S", icolor), me)
            return stay
        return stay

    return wrapped


def _line_then_gather(snap):
    """Inner algorithm of the six-color composition (alphabet A, B)."""
    if not snap.on_lds:
        return elect_one_lds(snap)
    return lu_gather(snap)


_SIM_ELECT = sim_for_unfair(elect_one_lds)
_SIM_COMPOSITE = sim_for_unfair(_line_then_gather)


def six_color_gather(snap):
    """Simulation wrapper around line-election plus two-color gathering."""
    return _SIM_COMPOSITE(snap)


def three_color_gather(snap):
    """Line-election under simulation, then direct three-color gathering."""
    if snap.on_lds:
        return lu_gather_in_async(snap)
    return _SIM_ELECT(snap)


@dataclass(frozen=True, slots=True)
class AlgorithmSpec:
    id: str
    colors: tuple
    initial: str
    fn: object
    needs_onlds_start: bool = False

    def __call__(self, snap):
        act = self.fn(snap)
        if act.color not in self.colors:
            raise AssertionError(f"{self.id} emitted color {act.color!r} outside alphabet")
        return act


_PRODUCT = tuple(f"{p}.{i}" for p in ("S", "M", "E") for i in ("A", "B"))

ALGORITHMS = {
    "elect-one-lds": AlgorithmSpec("elect-one-lds", ("O",), "O", elect_one_lds),
    "lu-gather": AlgorithmSpec("lu-gather", ("A", "B"), "A", lu_gather, True),
    "six-color": AlgorithmSpec("six-color", _PRODUCT, "S.A", six_color_gather),
    "lu-gather-async": AlgorithmSpec(
        "lu-gather-async", ("S", "M", "E"), "S", lu_gather_in_async, True
    ),
    "three-color": AlgorithmSpec("three-color", ("S", "M", "E"), "S", three_color_gather),
}


def get_algorithm(name):
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}") from None
