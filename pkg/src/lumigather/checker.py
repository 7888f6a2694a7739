"""Trace-level verification of the protocol guarantees.

Every checker consumes only a trace: configurations are re-derived from the
event log and compared against the logged Config lines, so an engine bug
surfaces as a replay mismatch rather than a silent pass.  Each check returns
a Report; reports are merged associatively by the fuzz harness.
"""

import json
import re
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

from .algorithms import get_algorithm, phase_of
from .configuration import Configuration, Snapshot
from .geometry import Point, cross, dist_sq, on_segment
from .patterns import PendingAnnotation
from .potentials import (
    Cmp,
    compare_values,
    lex_less,
    potential_f,
    potential_g,
    serialize_potential,
    sqrt_sum,
)
from .rational import Rat, parse_rat


@dataclass
class Report:
    check: str
    passed: bool = True
    violations: list = field(default_factory=list)
    undecided: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def violate(self, t, detail):
        self.passed = False
        self.violations.append({"t": t, "detail": detail})

    def undecide(self, t, detail):
        self.undecided.append({"t": t, "detail": detail})

    def to_json(self):
        return {
            "check": self.check,
            "pass": self.passed,
            "violations": self.violations,
            "undecided": self.undecided,
            **({"extras": self.extras} if self.extras else {}),
        }

    def __str__(self):
        return json.dumps(self.to_json(), sort_keys=True)


def _point(xy):
    return Point(parse_rat(xy[0]), parse_rat(xy[1]))


_PHASE_RE = re.compile(r"(LC(BE)?)*(L|LC|LCB)?")


class _MoveRec:
    __slots__ = ("t_b", "t_e", "origin", "reach", "progress", "end_pos")

    def __init__(self, t_b, origin, reach):
        self.t_b = t_b
        self.t_e = None
        self.origin = origin
        self.reach = reach
        self.progress = {}
        self.end_pos = None


class TraceData:
    """Parsed trace with per-robot timelines and visible-state queries."""

    def __init__(self, trace):
        lines = trace.lines if hasattr(trace, "lines") else list(trace)
        self.header = lines[0]
        assert self.header.get("kind") == "Header"
        self.algorithm = get_algorithm(self.header["algorithm"])
        self.scheduler = self.header["scheduler"]
        self.delta = parse_rat(self.header["delta"])
        self.move_span_cap = int(self.header.get("move_span_cap", 16))
        self.n = int(self.header["n"])
        self.initial = [
            (_point((r["x"], r["y"])), r["color"]) for r in self.header["robots"]
        ]
        self.status = None
        self.end_time = None
        self.configs = {}
        self.events = []
        self.rounds = {}
        for ln in lines[1:]:
            kind = ln["kind"]
            if kind == "Config":
                self.configs[ln["t"]] = tuple(
                    (_point(e[:2]), e[2]) for e in ln["entries"]
                )
            elif kind == "End":
                self.status = ln["status"]
                self.end_time = ln["t"]
            elif kind == "RoundStart":
                self.rounds[ln["t"]] = ln["activated"]
                self.events.append(ln)
            else:
                self.events.append(ln)
        self.config_times = sorted(self.configs)
        self._cache = {}
        self._build_timelines()

    def intern(self, entries):
        cfg = self._cache.get(entries)
        if cfg is None:
            cfg = Configuration(entries)
            self._cache[entries] = cfg
        return cfg

    def config_at(self, t):
        return self.intern(self.configs[t])

    def _build_timelines(self):
        n = self.n
        self.looks = [[] for _ in range(n)]
        self.computes = [[] for _ in range(n)]
        self.moves = [[] for _ in range(n)]
        pos = [p for p, _ in self.initial]
        for ev in self.events:
            kind = ev["kind"]
            if kind == "RoundStart":
                continue
            rid = ev["robot"]
            t = ev["t"]
            if kind == "Look":
                self.looks[rid].append(t)
            elif kind == "Compute":
                self.computes[rid].append(
                    (t, ev["color"], _point(ev["dest"]), bool(ev.get("exec")))
                )
            elif kind == "MoveBegin":
                self.moves[rid].append(_MoveRec(t, pos[rid], _point(ev["reach"])))
            elif kind == "MoveProgress":
                if not self.moves[rid]:
                    raise ValueError(f"MoveProgress without MoveBegin (robot {rid}, t={t})")
                self.moves[rid][-1].progress[t] = _point(ev["pos"])
            elif kind == "MoveEnd":
                if not self.moves[rid]:
                    raise ValueError(f"MoveEnd without MoveBegin (robot {rid}, t={t})")
                m = self.moves[rid][-1]
                m.t_e = t
                m.end_pos = _point(ev["pos"])
                pos[rid] = m.end_pos
        self._comp_times = [[c[0] for c in cs] for cs in self.computes]
        self._move_tbs = [[m.t_b for m in ms] for ms in self.moves]

    # -- visible state (asynchronous timing rules) -------------------------

    def visible_color(self, rid, t):
        """Color observed at time t: a change at exactly t is not yet seen."""
        i = bisect_left(self._comp_times[rid], t)
        if i == 0:
            return self.initial[rid][1]
        return self.computes[rid][i - 1][1]

    def color_after(self, rid, t):
        """Color with every Compute at or before t applied."""
        i = bisect_right(self._comp_times[rid], t)
        if i == 0:
            return self.initial[rid][1]
        return self.computes[rid][i - 1][1]

    def visible_pos(self, rid, t):
        i = bisect_left(self._move_tbs[rid], t)  # moves with t_b < t
        if i == 0:
            return self.initial[rid][0]
        m = self.moves[rid][i - 1]
        if m.t_e is not None and t >= m.t_e + 1:
            return m.reach
        return m.progress[t]

    def visible_entries(self, t):
        ents = [
            (self.visible_pos(i, t), self.visible_color(i, t)) for i in range(self.n)
        ]
        ents.sort(key=lambda e: (e[0].x, e[0].y, e[1]))
        return tuple(ents)

    def pending_state(self, rid, t):
        """PendingAnnotation of the robot just after instant t.

        Pending move: a Compute at or before t whose movement has not ended
        by t.  Pending color: a Look strictly before t with the matching
        Compute still to come (a Look exactly at t reads the instant's own
        configuration and is not a leftover).
        """
        cs = self.computes[rid]
        i = bisect_right(self._comp_times[rid], t)
        if i:
            t_c, color, dest, _ = cs[i - 1]
            ms = [m for m in self.moves[rid] if m.t_b >= t_c]
            ended = ms and ms[0].t_e is not None and ms[0].t_e <= t
            origin = ms[0].origin if ms else self.visible_pos(rid, t_c)
            if dest != origin and not ended:
                return PendingAnnotation(pending_move=True, destination=dest)
        j = bisect_left(self.looks[rid], t)
        if j:
            t_l = self.looks[rid][j - 1]
            if i == 0 or cs[i - 1][0] < t_l:
                nxt = cs[i] if i < len(cs) else None
                return PendingAnnotation(
                    pending_color=True, next_color=nxt[1] if nxt else None
                )
        return PendingAnnotation()


# --------------------------------------------------------------------------
# Replay validation
# --------------------------------------------------------------------------


def applicable_checks(trace):
    """Check names that make sense for this trace's algorithm and scheduler."""
    td = trace if isinstance(trace, TraceData) else TraceData(trace)
    alg = td.algorithm.id
    round_based = td.scheduler in ("fsync", "ssync", "ssync-unfair")
    names = ["replay"]
    if alg == "elect-one-lds":
        if round_based:
            names.append("monotone")
    elif alg == "lu-gather":
        if round_based:
            names.append("monotone")
        names.append("gather")
    elif alg == "lu-gather-async":
        names += ["shrink", "gather"]
    else:  # simulation-wrapped gatherers
        names += ["cycle", "switch", "gather"]
    names.append("equivariance")
    return names


def validate_trace(trace):
    """Replay the event log and flag any divergence from the Config lines.

    Also enforces per-robot phase order, the asynchronous timing rules (a
    Compute is invisible at its own instant, movers advance strictly and are
    seen at the destination only after the move ends) and that every Compute
    equals the algorithm's output on the replayed snapshot.
    """
    td = TraceData(trace)
    rep = Report("replay")
    if td.scheduler == "async":
        _validate_async(td, rep)
    else:
        _validate_sync(td, rep)
    return rep


def _validate_async(td, rep):
    for t in td.config_times:
        if td.visible_entries(t) != td.configs[t]:
            rep.violate(t, "replayed configuration differs from logged Config")
    for rid in range(td.n):
        events = []
        for tl in td.looks[rid]:
            events.append((tl, 0, "L"))
        for (tc, _, _, _) in td.computes[rid]:
            events.append((tc, 1, "C"))
        for m in td.moves[rid]:
            events.append((m.t_b, 2, "B"))
            if m.t_e is not None:
                events.append((m.t_e, 3, "E"))
        events.sort()
        seq = "".join(k for _, _, k in events)
        if not _PHASE_RE.fullmatch(seq):
            rep.violate(None, f"robot {rid}: phase order broken: {seq}")
        last_t = -1
        for t, _, k in events:
            if t <= last_t:
                rep.violate(t, f"robot {rid}: events not strictly ordered")
            last_t = t
        for m in td.moves[rid]:
            if m.t_e is not None:
                if m.t_e < m.t_b + 1:
                    rep.violate(m.t_e, f"robot {rid}: move ended before t_b+1")
                if m.t_e - m.t_b > td.move_span_cap:
                    rep.violate(m.t_e, f"robot {rid}: move span exceeds cap")
                if m.end_pos != m.reach:
                    rep.violate(m.t_e, f"robot {rid}: end position differs from reach")
            d_full = dist_sq(m.origin, m.reach)
            prev = Rat(0)
            for t in sorted(m.progress):
                p = m.progress[t]
                if not on_segment(p, m.origin, m.reach) or p == m.reach:
                    rep.violate(t, f"robot {rid}: progress point off half-open segment")
                d = dist_sq(m.origin, p)
                if d <= prev and d != 0:
                    rep.violate(t, f"robot {rid}: progress distance not increasing")
                prev = d
            if d_full == 0:
                rep.violate(m.t_b, f"robot {rid}: zero-distance move not omitted")
        # every Compute must reproduce the algorithm on the replayed snapshot
        looks = td.looks[rid]
        for (tc, color, dest, _) in td.computes[rid]:
            i = bisect_left(looks, tc) - 1
            if i < 0:
                rep.violate(tc, f"robot {rid}: Compute without Look")
                continue
            tl = looks[i]
            snap = Snapshot(
                td.intern(td.visible_entries(tl)),
                td.visible_pos(rid, tl),
                td.visible_color(rid, tl),
            )
            act = td.algorithm(snap)
            if act.color != color or act.dest != dest:
                rep.violate(tc, f"robot {rid}: Compute differs from algorithm output")


def _validate_sync(td, rep):
    pos = [p for p, _ in td.initial]
    light = [c for _, c in td.initial]

    def entries():
        return tuple(sorted(zip(pos, light), key=lambda e: (e[0].x, e[0].y, e[1])))

    events_by_t = {}
    for ev in td.events:
        events_by_t.setdefault(ev["t"], []).append(ev)
    for t in td.config_times:
        if entries() != td.configs[t]:
            rep.violate(t, "replayed configuration differs from logged Config")
        cfg = td.intern(entries())
        for ev in events_by_t.get(t, ()):
            kind = ev["kind"]
            if kind == "Compute":
                rid = ev["robot"]
                act = td.algorithm(Snapshot(cfg, pos[rid], light[rid]))
                if act.color != ev["color"] or act.dest != _point(ev["dest"]):
                    rep.violate(t, f"robot {rid}: Compute differs from algorithm output")
                light[rid] = ev["color"]
            elif kind == "MoveEnd":
                rid = ev["robot"]
                reached = _point(ev["pos"])
                comp = next(
                    (
                        e
                        for e in events_by_t[t]
                        if e["kind"] == "Compute" and e["robot"] == rid
                    ),
                    None,
                )
                if comp is None:
                    rep.violate(t, f"robot {rid}: MoveEnd without Compute in round")
                    pos[rid] = reached
                    continue
                dest = _point(comp["dest"])
                origin = pos[rid]
                if not on_segment(reached, origin, dest):
                    rep.violate(t, f"robot {rid}: reached point off move segment")
                granted = dist_sq(origin, reached)
                full = dist_sq(origin, dest)
                dd = td.delta * td.delta
                if granted < dd and granted < full:
                    rep.violate(t, f"robot {rid}: move shorter than delta guarantee")
                pos[rid] = reached


# --------------------------------------------------------------------------
# Potential monotonicity
# --------------------------------------------------------------------------


def _classify_f(config):
    return config.classification.value


def _cc_family(cc):
    pure_a = all(f == frozenset("A") for f in cc.factors)
    pure_b = all(f == frozenset("B") for f in cc.factors)
    k = len(cc.stations)
    if pure_a:
        return "A" if k == 1 else ("AA" if k == 2 else "AA+A")
    if pure_b:
        return "B" if k == 1 else "BB*B"
    n_a = cc.counts.get("A", 0)
    if n_a == 1:
        return "AB*B"
    if cc.has_exact_midpoint and cc.factors == (
        frozenset("A"),
        frozenset("B"),
        frozenset("A"),
    ):
        return "AB_mA"
    if n_a == 2:
        return "AB+A"
    return "mixed"


def check_monotone(trace, which=None):
    """Strict lexicographic decrease of the potential across effective rounds.

    A round is effective when it activates at least one enabled robot; other
    rounds must leave the configuration unchanged.  Undecided comparisons are
    reported separately (a precision matter, not a violation).
    """
    td = TraceData(trace)
    if which is None:
        which = "g" if td.algorithm.id in ("lu-gather",) else "f"
    potential = potential_f if which == "f" else potential_g
    rep = Report(f"monotone-{which}")
    if td.scheduler not in ("ssync", "ssync-unfair", "fsync"):
        rep.violate(None, "monotone check expects a round-based trace")
        return rep
    pos = [p for p, _ in td.initial]
    light = [c for _, c in td.initial]
    events_by_t = {}
    for ev in td.events:
        events_by_t.setdefault(ev["t"], []).append(ev)
    rounds = 0
    for t in sorted(td.rounds):
        if t + 1 not in td.configs:
            break
        cfg = td.config_at(t)
        nxt = td.config_at(t + 1)
        activated = td.rounds[t]
        effective = False
        for rid in activated:
            act = td.algorithm(Snapshot(cfg, pos[rid], light[rid]))
            if act.color != light[rid] or act.dest != pos[rid]:
                effective = True
                break
        if effective:
            rounds += 1
            before = potential(cfg)
            after = potential(nxt)
            c = lex_less(after, before)
            if c is Cmp.UNDECIDED:
                rep.undecide(t, {"before": serialize_potential(before)})
            elif c is not Cmp.LESS:
                row = _classify_f(cfg) if which == "f" else _cc_family(cfg.cc)
                rep.violate(
                    t,
                    {
                        "row": row,
                        "before": serialize_potential(before),
                        "after": serialize_potential(after),
                        "cmp": c.name,
                    },
                )
        elif cfg.entries != nxt.entries:
            rep.violate(t, "round with no enabled robot changed the configuration")
        for ev in events_by_t.get(t, ()):
            if ev["kind"] == "Compute":
                light[ev["robot"]] = ev["color"]
            elif ev["kind"] == "MoveEnd":
                pos[ev["robot"]] = _point(ev["pos"])
    rep.extras["effective_rounds"] = rounds
    return rep


def annotate_potentials(trace, which=None):
    """Copy of the trace with a potential annotation after every Config line.

    Annotation lines look like {"kind": "Potential", "t": n, "f": [...5...]}
    with entries "inf", "p/q" or ["lo", "hi"] enclosures.
    """
    td = TraceData(trace)
    if which is None:
        which = "g" if td.algorithm.id == "lu-gather" else "f"
    potential = potential_f if which == "f" else potential_g
    from .engine import Trace

    out = Trace.__new__(Trace)
    out.lines = []
    out.status = trace.status
    out.end_time = trace.end_time
    for ln in trace.lines:
        out.lines.append(ln)
        if ln.get("kind") == "Config":
            cfg = td.config_at(ln["t"])
            if which == "g" and not cfg.on_lds:
                continue
            vec = serialize_potential(potential(cfg))
            out.lines.append({"kind": "Potential", "t": ln["t"], which: vec})
    return out


def snapshot_has_convention_ties(snap):
    """True when the action depends on a global tie-break convention.

    A robot exactly at the hull centroid, or a collinear interior robot
    exactly at the endpoint midpoint, is resolved by fixed conventions that
    are deliberately not frame-equivariant (measure-zero situations).
    """
    from .geometry import hull_center, midpoint

    cfg = snap.config
    if cfg.on_lds:
        cc = cfg.cc
        mid = midpoint(cc.endpoint_left, cc.endpoint_right)
        ends = (cc.endpoint_left, cc.endpoint_right)
        return any(p == mid for p in cfg.points if p not in ends)
    return any(p == hull_center(cfg.hull) for p in cfg.points)


def check_equivariance_trace(trace, frames_per_snapshot=5, max_configs=10):
    """Equivariance of the trace's algorithm over snapshots drawn from it.

    Snapshots whose action rests on a tie-break convention are skipped.
    """
    import random

    td = TraceData(trace)
    rng = random.Random(int(td.header.get("adversary", {}).get("seed", 0)) ^ 0xE9)
    from .configuration import Frame
    from .rational import Rat as _R

    triples = ((3, 4, 5), (5, 12, 13), (8, 15, 17))
    rep = Report("equivariance")
    checked = 0
    skipped = 0
    for t in td.config_times[:max_configs]:
        cfg = td.config_at(t)
        for p, c in cfg.entries:
            if snapshot_has_convention_ties(Snapshot(cfg, p, c)):
                skipped += 1
                continue
            base = td.algorithm(Snapshot(cfg, p, c))
            for _ in range(frames_per_snapshot):
                a, b, cc_ = triples[rng.randrange(len(triples))]
                if rng.random() < 0.5:
                    a, b = b, a
                frame = Frame(
                    _R(a, cc_),
                    _R(b, cc_) if rng.random() < 0.5 else _R(-b, cc_),
                    _R(rng.randint(1, 9), rng.randint(1, 3)),
                    Point(_R(rng.randint(-20, 20)), _R(rng.randint(-20, 20))),
                )
                moved = frame.apply_snapshot(Snapshot(cfg, p, c))
                act = td.algorithm(moved)
                checked += 1
                if act.color != base.color or frame.inverse_apply(act.dest) != base.dest:
                    rep.violate(t, f"output not equivariant at robot on {p}")
    rep.extras["checked"] = checked
    rep.extras["skipped_tie_conventions"] = skipped
    return rep


# --------------------------------------------------------------------------
# Simulation color-cycle checks
# --------------------------------------------------------------------------

_PHASE_DFA = {
    frozenset("S"): (frozenset("S"), frozenset("SM"), frozenset("M")),
    frozenset("SM"): (frozenset("SM"), frozenset("M")),
    frozenset("M"): (frozenset("M"), frozenset("ME"), frozenset("E")),
    frozenset("ME"): (frozenset("ME"), frozenset("E")),
    frozenset("E"): (frozenset("E"), frozenset("ES"), frozenset("S")),
    frozenset("ES"): (frozenset("ES"), frozenset("S")),
}


def _wrapped_segment(td):
    """Config times governed by the simulation wrapper."""
    ts = td.config_times
    if td.algorithm.id == "six-color":
        return ts
    out = []
    for t in ts:
        if td.config_at(t).on_lds:
            break
        out.append(t)
    return out


def check_cycle_snapshot(trace):
    """Within each color cycle, all inner executions saw one configuration.

    Also verifies the phase rotation allS -> allM -> allE -> allS (with the
    two-color transitions in between) over the wrapper-governed segment.
    """
    td = TraceData(trace)
    rep = Report("cycle-snapshot")
    seg = _wrapped_segment(td)
    if not seg:
        rep.extras["cycles"] = 0
        return rep
    classes = {}
    for t in seg:
        cfg = td.config_at(t)
        classes[t] = frozenset(phase_of(c) for c in cfg.colors_present)
    prev = None
    for t in seg:
        cls = classes[t]
        if cls not in _PHASE_DFA:
            rep.violate(t, f"illegal phase class {sorted(cls)}")
        elif prev is not None and cls != prev and cls not in _PHASE_DFA.get(prev, ()):
            rep.violate(t, f"illegal phase transition {sorted(prev)} -> {sorted(cls)}")
        prev = cls
    # cycle boundaries: entries into the all-S class
    starts = [
        t
        for i, t in enumerate(seg)
        if classes[t] == frozenset("S") and (i == 0 or classes[seg[i - 1]] != frozenset("S"))
    ]
    cycles = 0
    seg_set = set(seg)
    for ci, start in enumerate(starts):
        end = starts[ci + 1] if ci + 1 < len(starts) else (seg[-1] + 1)
        snaps = []
        for rid in range(td.n):
            looks = td.looks[rid]
            for (tc, _, _, ex) in td.computes[rid]:
                if not ex:
                    continue
                i = bisect_left(looks, tc) - 1
                if i < 0:
                    continue
                tl = looks[i]
                if start <= tl < end and tl in seg_set:
                    snap_entries = td.visible_entries(tl)
                    cls = frozenset(phase_of(c) for _, c in snap_entries)
                    if cls != frozenset("S"):
                        rep.violate(
                            tl, f"robot {rid} ran the inner algorithm outside all-S"
                        )
                    snaps.append((rid, tl, snap_entries))
        if snaps:
            cycles += 1
            base = snaps[0][2]
            for rid, tl, ents in snaps[1:]:
                if ents != base:
                    rep.violate(
                        tl,
                        f"robot {rid} executed the inner algorithm on a different "
                        f"configuration than robot {snaps[0][0]}",
                    )
    rep.extras["cycles"] = cycles
    return rep


# --------------------------------------------------------------------------
# Switch-shape check
# --------------------------------------------------------------------------

_SHAPE_COMBOS = {
    2: {("S", "none"), ("S", "pc:M"), ("M", "none"), ("M", "move")},
    3: {("M", "none"), ("M", "move"), ("M", "pc:E"), ("E", "none")},
    4: {("S", "none"), ("S", "pc:M"), ("M", "none")},
    5: {("M", "none"), ("M", "pc:E"), ("E", "none")},
}


def check_onlds_switch(trace):
    """Shape of the first collinear configuration and its pending moves.

    At the first collinear instant every pending destination must lie on the
    configuration's line, the per-robot (color, pending) combinations must
    fit one of the five admissible shapes, and collinearity must persist to
    the end of the trace.
    """
    td = TraceData(trace)
    rep = Report("onlds-switch")
    phase = phase_of
    t_star = None
    for t in td.config_times:
        if td.config_at(t).on_lds:
            t_star = t
            break
    if t_star is None:
        rep.violate(None, "trace never reaches a collinear configuration")
        return rep
    for t in td.config_times:
        if t > t_star and not td.config_at(t).on_lds:
            rep.violate(t, "collinearity lost after the switch")
    cfg = td.config_at(t_star)
    occupied = cfg.occupied
    distinct = list(occupied)

    def on_line(q):
        if len(distinct) < 2:
            return True
        return cross(distinct[0], distinct[1], q) == 0

    states = []
    for rid in range(td.n):
        color = phase(td.color_after(rid, t_star))
        pending = td.pending_state(rid, t_star)
        if pending.pending_move:
            if not on_line(pending.destination):
                rep.violate(
                    t_star, f"robot {rid} pending destination off the line"
                )
            states.append((color, "move"))
        elif pending.pending_color:
            nxt = phase(pending.next_color) if pending.next_color else "?"
            # an upcoming Compute keeping the color is no annotation at all
            states.append((color, "none") if nxt == color else (color, f"pc:{nxt}"))
        else:
            states.append((color, "none"))
    single = len(occupied) == 1
    has_m = any(c == "M" for c, _ in states)
    matched = None
    if all(s == ("S", "none") for s in states):
        matched = 1
    for shape, combos in _SHAPE_COMBOS.items():
        if matched:
            break
        if shape in (4, 5) and not single:
            continue
        if all(s in combos for s in states) and has_m:
            matched = shape
    if matched is None:
        rep.violate(t_star, {"shape": "unmatched", "states": sorted(set(states))})
    rep.extras["t_switch"] = t_star
    rep.extras["shape"] = matched
    return rep


# --------------------------------------------------------------------------
# Per-loop shrink check
# --------------------------------------------------------------------------


def check_shrink(trace, delta=None):
    """Endpoint distance drops by at least 2*delta between loop entries.

    Loop entries are the first instants of maximal runs where the visible
    configuration is exactly two all-S stations.
    """
    td = TraceData(trace)
    if delta is None:
        delta = td.delta
    rep = Report("shrink")
    entries = []
    prev_ss = False
    for t in td.config_times:
        cfg = td.config_at(t)
        is_ss = (
            cfg.on_lds
            and len(cfg.occupied) == 2
            and all(c == "S" for _, c in cfg.entries)
        )
        if is_ss and not prev_ss:
            entries.append((t, cfg.cc.span_sq()))
        prev_ss = is_ss
    rep.extras["loops"] = len(entries)
    two_delta = 2 * delta
    for (t0, d0), (t1, d1) in zip(entries, entries[1:]):
        lhs = sqrt_sum([d0])
        rhs = sqrt_sum([d1], exact=two_delta)
        c = compare_values(lhs, rhs)
        if c is Cmp.UNDECIDED:
            rep.undecide(t1, "shrink comparison undecided")
        elif c is Cmp.LESS:
            rep.violate(t1, f"loop entered at {t1} shrank less than 2*delta")
    return rep


# --------------------------------------------------------------------------
# Gathering detection
# --------------------------------------------------------------------------


def check_gathered(trace):
    """First time all robots share one point, stable to the end of the trace."""
    td = TraceData(trace)
    rep = Report("gathered")
    t_g = None
    for t in td.config_times:
        single = len(td.config_at(t).occupied) == 1
        if single and t_g is None:
            t_g = t
        elif not single and t_g is not None:
            rep.violate(t, f"gathered at {t_g} but spread again at {t}")
            t_g = None
    final_t = td.config_times[-1]
    final = td.config_at(final_t)
    stable = True
    for p, c in final.entries:
        act = td.algorithm(Snapshot(final, p, c))
        if act.color != c or act.dest != p:
            stable = False
            rep.violate(final_t, "a robot is still enabled in the final configuration")
            break
    gathered = t_g is not None and stable and rep.passed
    rep.extras["gathered"] = gathered
    rep.extras["time"] = t_g if gathered else None
    if not gathered and rep.passed:
        rep.passed = False
        rep.violations.append({"t": None, "detail": "no stable gathering in trace"})
    return rep


# --------------------------------------------------------------------------
# Equivariance
# --------------------------------------------------------------------------


def check_equivariance(algorithm, snapshot, frames):
    """Algorithm output commutes with orientation-preserving similarities."""
    spec = get_algorithm(algorithm) if isinstance(algorithm, str) else algorithm
    rep = Report("equivariance")
    base = spec(snapshot)
    for i, frame in enumerate(frames):
        moved = frame.apply_snapshot(snapshot)
        act = spec(moved)
        if act.color != base.color or frame.inverse_apply(act.dest) != base.dest:
            rep.violate(i, "transformed output does not map back to the original")
    rep.extras["frames"] = len(frames)
    return rep


# --------------------------------------------------------------------------
# Exhaustive small-instance exploration
# --------------------------------------------------------------------------


def enumerate_unfair(
    entries,
    algorithm,
    depth,
    fractions=(Rat(1),),
    delta=Rat(1),
    node_ceiling=100000,
):
    """Explore every activation subset per round to a depth bound.

    Asserts strict potential decrease on every edge (f for line election, g
    for two-color gathering) and records whether each fixpoint reached is
    collinear respectively gathered.  One fraction from the set applies to
    all movers of a round.  Aborts with a partial report above the node
    ceiling.
    """
    spec = get_algorithm(algorithm) if isinstance(algorithm, str) else algorithm
    potential = potential_g if spec.id == "lu-gather" else potential_f
    goal = (
        (lambda cfg: cfg.gathered())
        if spec.id == "lu-gather"
        else (lambda cfg: cfg.on_lds)
    )
    rep = Report(f"enumerate-{spec.id}")
    rep.extras.update(nodes=0, edges=0, fixpoints=0, unfinished=0, aborted=False)
    if depth <= 0:
        return rep
    cache = {}

    def intern(ents):
        cfg = cache.get(ents)
        if cfg is None:
            cfg = Configuration(ents)
            cache[ents] = cfg
        return cfg

    from .engine import apply_move

    root = tuple(sorted(entries, key=lambda e: (e[0].x, e[0].y, e[1])))
    best_depth = {root: 0}
    stack = [(root, 0)]
    fractions = tuple(Rat(f) for f in fractions)
    while stack:
        ents, d = stack.pop()
        rep.extras["nodes"] += 1
        if rep.extras["nodes"] > node_ceiling:
            rep.extras["aborted"] = True
            break
        cfg = intern(ents)
        robots = list(ents)
        acts = [spec(Snapshot(cfg, p, c)) for p, c in robots]
        enab = [
            i
            for i, (p, c) in enumerate(robots)
            if acts[i].color != c or acts[i].dest != p
        ]
        if not enab:
            rep.extras["fixpoints"] += 1
            if not goal(cfg):
                rep.violate(d, {"detail": "fixpoint misses the goal", "state": _fmt(ents)})
            continue
        if d >= depth:
            rep.extras["unfinished"] += 1
            continue
        before = potential(cfg)
        for mask in range(1, 1 << len(enab)):
            subset = [enab[i] for i in range(len(enab)) if mask >> i & 1]
            for frac in fractions:
                nxt = list(robots)
                for i in subset:
                    act = acts[i]
                    p, _ = robots[i]
                    reached = (
                        apply_move(p, act.dest, frac, delta) if act.dest != p else p
                    )
                    nxt[i] = (reached, act.color)
                child = tuple(sorted(nxt, key=lambda e: (e[0].x, e[0].y, e[1])))
                rep.extras["edges"] += 1
                after = potential(intern(child))
                c = lex_less(after, before)
                if c is Cmp.UNDECIDED:
                    rep.undecide(d, {"state": _fmt(ents)})
                elif c is not Cmp.LESS:
                    rep.violate(
                        d,
                        {
                            "detail": f"potential not decreasing ({c.name})",
                            "state": _fmt(ents),
                            "subset": subset,
                        },
                    )
                known = best_depth.get(child)
                if known is None or known > d + 1:
                    best_depth[child] = d + 1
                    stack.append((child, d + 1))
    return rep


def _fmt(entries):
    return [[str(p.x), str(p.y), c] for p, c in entries]
