"""Execution engine: FSYNC/SSYNC (fair and unfair) rounds and ASYNC events.

Timing model for ASYNC runs: all phase starts happen at integer times.  A
Compute at time t is observable from t+1 (a Look at t still reads the former
color).  A movement begun at t_B and ended at t_E >= t_B + 1 is observed at
the origin up to t_B, at adversary-chosen strictly advancing interior points
during [t_B+1, t_E], and at the reached point from t_E + 1.  Within one run
everything is a deterministic function of (scenario, seed).
"""

import json
from dataclasses import dataclass

from .algorithms import get_algorithm
from .configuration import Configuration, Snapshot
from .geometry import Point, dist_sq
from .rational import Rat, format_rat, min_rat_ge_sqrt, parse_rat

SCHEDULERS = ("fsync", "ssync", "ssync-unfair", "async")
POLICIES = ("random", "rigid", "stingy", "round-robin", "ssync-embedded", "ssync-stingy")


class ScenarioError(ValueError):
    pass


class EmptyActivation(ValueError):
    pass


class IllegalChoice(ValueError):
    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class BudgetExhausted(RuntimeError):
    def __init__(self, final_config, trace):
        super().__init__("step budget exhausted")
        self.final_config = final_config
        self.trace = trace


@dataclass(frozen=True)
class Scenario:
    robots: tuple  # ((Point, color), ...)
    delta: object
    scheduler: str
    algorithm: str
    policy: str = "random"
    seed: int = 0
    step_budget: int = 100000
    fairness_bound: int = 0  # 0 means default 8*n
    move_span_cap: int = 16

    def __post_init__(self):
        if not self.robots:
            raise ScenarioError("scenario needs at least one robot")
        if self.delta <= 0:
            raise ScenarioError("delta must be positive")
        if self.step_budget <= 0:
            raise ScenarioError("step_budget must be positive")
        if self.scheduler not in SCHEDULERS:
            raise ScenarioError(f"unknown scheduler {self.scheduler!r}")
        if self.policy not in POLICIES:
            raise ScenarioError(f"unknown adversary policy {self.policy!r}")
        if self.move_span_cap < 1:
            raise ScenarioError("move_span_cap must be >= 1")
        if self.fairness_bound < 0:
            raise ScenarioError("fairness_bound must be >= 1 (0 selects the default)")
        spec = get_algorithm(self.algorithm)
        for _, c in self.robots:
            if c not in spec.colors:
                raise ScenarioError(f"color {c!r} outside alphabet of {self.algorithm}")
        if spec.needs_onlds_start:
            from .geometry import is_on_lds

            if not is_on_lds([p for p, _ in self.robots]):
                raise ScenarioError(f"{self.algorithm} requires a collinear start")

    @property
    def bound(self):
        return self.fairness_bound if self.fairness_bound else 8 * len(self.robots)

    @staticmethod
    def from_json(data):
        try:
            robots = tuple(
                (Point(parse_rat(r["x"]), parse_rat(r["y"])), str(r["color"]))
                for r in data["robots"]
            )
            adversary = data.get("adversary", {})
            return Scenario(
                robots=robots,
                delta=parse_rat(data["delta"]),
                scheduler=str(data["scheduler"]),
                algorithm=str(data["algorithm"]),
                policy=str(adversary.get("policy", "random")),
                seed=int(adversary.get("seed", 0)),
                step_budget=int(data.get("step_budget", 100000)),
                fairness_bound=int(data.get("fairness_bound", 0)),
                move_span_cap=int(data.get("move_span_cap", 16)),
            )
        except ScenarioError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"malformed scenario: {exc}") from exc

    def to_json(self):
        return {
            "robots": [
                {"x": format_rat(p.x), "y": format_rat(p.y), "color": c}
                for p, c in self.robots
            ],
            "delta": format_rat(self.delta),
            "scheduler": self.scheduler,
            "algorithm": self.algorithm,
            "adversary": {"policy": self.policy, "seed": self.seed},
            "step_budget": self.step_budget,
            "fairness_bound": self.fairness_bound,
            "move_span_cap": self.move_span_cap,
        }

    @staticmethod
    def load(path):
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ScenarioError(f"invalid scenario JSON: {exc}") from exc
        return Scenario.from_json(data)


def _dump(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class Trace:
    """Ordered JSONL event log plus configuration snapshots."""

    def __init__(self, header):
        self.lines = [dict(header, kind="Header")]
        self.status = None
        self.end_time = None

    def log(self, **kw):
        self.lines.append(kw)

    def config_line(self, t, entries):
        self.log(
            kind="Config",
            t=t,
            entries=[[format_rat(p.x), format_rat(p.y), c] for p, c in entries],
        )

    def end(self, t, status):
        self.status = status
        self.end_time = t
        self.log(kind="End", t=t, status=status)

    @property
    def header(self):
        return self.lines[0]

    def dumps(self):
        return "".join(_dump(line) + "\n" for line in self.lines)

    def write(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    @staticmethod
    def parse(text):
        lines = [json.loads(ln) for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0].get("kind") != "Header":
            raise ValueError("trace does not start with a Header line")
        tr = Trace.__new__(Trace)
        tr.lines = lines
        tr.status = None
        tr.end_time = None
        for ln in reversed(lines):
            if ln.get("kind") == "End":
                tr.status = ln["status"]
                tr.end_time = ln["t"]
                break
        return tr

    @staticmethod
    def load(path):
        with open(path, "r", encoding="utf-8") as fh:
            return Trace.parse(fh.read())


def _header(scenario):
    h = scenario.to_json()
    h["n"] = len(scenario.robots)
    h["fairness_bound"] = scenario.bound
    return h


def apply_move(origin, dest, fraction, delta):
    """Reached point of a non-rigid move truncated at ``fraction``.

    The adversary must grant at least min(delta, full distance); a fraction
    falling short is clamped up, exactly to distance delta when that point is
    rational and to the next 1/64 fraction above otherwise.
    """
    if not (0 < fraction <= 1):
        raise ValueError("fraction must be in (0, 1]")
    if dest == origin:
        return origin
    d2 = dist_sq(origin, dest)
    dd = delta * delta
    if d2 <= dd or fraction == 1:
        return dest
    lam = fraction
    if lam * lam * d2 < dd:
        lam = min_rat_ge_sqrt(dd / d2)
        if lam >= 1:
            return dest
    return Point(origin.x + lam * (dest.x - origin.x), origin.y + lam * (dest.y - origin.y))


class _ConfigCache:
    """Interns Configuration objects so repeated instants share analyses."""

    def __init__(self):
        self._cache = {}

    def get(self, entries):
        cfg = self._cache.get(entries)
        if cfg is None:
            cfg = Configuration(entries)
            self._cache[entries] = cfg
        return cfg


# --------------------------------------------------------------------------
# Synchronous rounds
# --------------------------------------------------------------------------


class SyncWorld:
    """Round-based world: per-robot positions and lights, atomic rounds."""

    def __init__(self, positions, lights, cache=None):
        self.positions = list(positions)
        self.lights = list(lights)
        self.cache = cache or _ConfigCache()

    @staticmethod
    def from_scenario(scenario):
        return SyncWorld([p for p, _ in scenario.robots], [c for _, c in scenario.robots])

    def entries(self):
        return tuple(sorted(zip(self.positions, self.lights), key=lambda e: (e[0].x, e[0].y, e[1])))

    def config(self):
        return self.cache.get(self.entries())

    def snapshot(self, i):
        return Snapshot(self.config(), self.positions[i], self.lights[i])

    def action(self, algorithm, i):
        cfg = self.config()
        key = ("act", algorithm.id, self.positions[i], self.lights[i])
        act = cfg.memo.get(key)
        if act is None:
            act = algorithm(Snapshot(cfg, self.positions[i], self.lights[i]))
            cfg.memo[key] = act
        return act


def enabled(world, algorithm, i):
    """Whether activating robot i now would change its color or position."""
    act = world.action(algorithm, i)
    return act.color != world.lights[i] or act.dest != world.positions[i]


def enabled_ids(world, algorithm):
    return [i for i in range(len(world.positions)) if enabled(world, algorithm, i)]


def ssync_round(world, algorithm, activated, fractions, delta, trace=None, t=0):
    """One atomic synchronous round over the activated set.

    All activated robots look at the same configuration, compute, and move
    together; ``fractions`` maps robot index to the adversary truncation.
    Returns the new SyncWorld.
    """
    activated = sorted(set(activated))
    if not activated:
        raise EmptyActivation("a round must activate at least one robot")
    acts = {i: world.action(algorithm, i) for i in activated}
    new = SyncWorld(world.positions, world.lights, world.cache)
    if trace is not None:
        trace.log(kind="RoundStart", t=t, activated=list(activated))
    for i in activated:
        act = acts[i]
        origin = world.positions[i]
        if trace is not None:
            trace.log(kind="Look", t=t, robot=i)
            trace.log(
                kind="Compute",
                t=t,
                robot=i,
                color=act.color,
                dest=[format_rat(act.dest.x), format_rat(act.dest.y)],
                exec=bool(act.inner_exec),
            )
        new.lights[i] = act.color
        if act.dest != origin:
            frac = fractions.get(i, Rat(1)) if isinstance(fractions, dict) else Rat(fractions)
            reached = apply_move(origin, act.dest, frac, delta)
            new.positions[i] = reached
            if trace is not None:
                trace.log(
                    kind="MoveBegin",
                    t=t,
                    robot=i,
                    reach=[format_rat(reached.x), format_rat(reached.y)],
                )
                trace.log(
                    kind="MoveEnd",
                    t=t,
                    robot=i,
                    pos=[format_rat(reached.x), format_rat(reached.y)],
                )
    return new


def _run_sync(scenario, rng):
    algorithm = get_algorithm(scenario.algorithm)
    world = SyncWorld.from_scenario(scenario)
    trace = Trace(_header(scenario))
    n = len(scenario.robots)
    bound = scenario.bound
    last_act = [0] * n
    ineffective_streak = 0
    t = 0
    trace.config_line(0, world.entries())
    while True:
        enab = enabled_ids(world, algorithm)
        if not enab:
            status = "gathered" if world.config().gathered() else "fixpoint"
            trace.end(t, status)
            return trace
        if t >= scenario.step_budget:
            trace.end(t, "budget")
            raise BudgetExhausted(world.config(), trace)
        if scenario.scheduler == "fsync":
            activated = list(range(n))
        elif scenario.scheduler == "ssync":
            activated = [i for i in range(n) if rng.random() < 0.5]
            for i in range(n):
                if t - last_act[i] >= bound and i not in activated:
                    activated.append(i)
            if not activated:
                activated = [rng.randrange(n)]
        else:  # ssync-unfair
            activated = [i for i in range(n) if rng.random() < 0.5]
            if not activated:
                activated = [rng.randrange(n)]
            if ineffective_streak >= bound - 1 and not (set(activated) & set(enab)):
                activated.append(enab[rng.randrange(len(enab))])
        activated = sorted(set(activated))
        fractions = {i: _pick_fraction(scenario.policy, rng) for i in activated}
        world = ssync_round(world, algorithm, activated, fractions, scenario.delta, trace, t)
        if set(activated) & set(enab):
            ineffective_streak = 0
        else:
            ineffective_streak += 1
        for i in activated:
            last_act[i] = t
        t += 1
        trace.config_line(t, world.entries())


_FRACTIONS = (Rat(1), Rat(3, 4), Rat(1, 2), Rat(1, 4))


def _pick_fraction(policy, rng):
    if policy == "stingy":
        return Rat(1, 1024)
    if policy in ("rigid", "round-robin"):
        return Rat(1)
    return _FRACTIONS[rng.randrange(len(_FRACTIONS))]


# --------------------------------------------------------------------------
# Asynchronous event machine
# --------------------------------------------------------------------------

IDLE, OBSERVED, COMPUTED, MOVING = "idle", "observed", "computed", "moving"


class _MoveRec:
    __slots__ = ("t_b", "t_e", "origin", "reach", "progress", "mu")

    def __init__(self, t_b, origin, reach):
        self.t_b = t_b
        self.t_e = None
        self.origin = origin
        self.reach = reach
        self.progress = {}
        self.mu = Rat(0)


class _Robot:
    __slots__ = (
        "pos",
        "light",
        "prev_light",
        "light_t",
        "phase",
        "look_t",
        "comp_t",
        "snapshot",
        "action",
        "move",
        "starve",
    )

    def __init__(self, pos, light):
        self.pos = pos
        self.light = light
        self.prev_light = light
        self.light_t = -1
        self.phase = IDLE
        self.look_t = -1
        self.comp_t = -1
        self.snapshot = None
        self.action = None
        self.move = None
        self.starve = 0

    def visible_color(self, t):
        return self.prev_light if self.light_t == t else self.light

    def visible_pos(self, t):
        m = self.move
        if m is None or t <= m.t_b:
            return m.origin if m is not None and t <= m.t_b else self.pos
        if m.t_e is not None and t >= m.t_e + 1:
            return m.reach
        return m.progress[t]


class AsyncWorld:
    """Event-level asynchronous world driven by explicit adversary choices."""

    def __init__(self, scenario):
        self.scenario = scenario
        self.algorithm = get_algorithm(scenario.algorithm)
        self.delta = scenario.delta
        self.bound = scenario.bound
        self.cap = scenario.move_span_cap
        self.robots = [_Robot(p, c) for p, c in scenario.robots]
        self.t = 0
        self.steps = 0
        self.cache = _ConfigCache()
        self.trace = Trace(_header(scenario))
        self.trace.config_line(0, self._visible_entries())
        self._terminal_memo = {}

    # -- visible state ----------------------------------------------------

    def _visible_entries(self):
        ents = [(r.visible_pos(self.t), r.visible_color(self.t)) for r in self.robots]
        ents.sort(key=lambda e: (e[0].x, e[0].y, e[1]))
        return tuple(ents)

    def visible_config(self):
        return self.cache.get(self._visible_entries())

    def observe(self, rid, frame=None):
        """Snapshot robot ``rid`` would take now (own light included)."""
        r = self.robots[rid]
        snap = Snapshot(self.visible_config(), r.visible_pos(self.t), r.visible_color(self.t))
        if frame is not None:
            snap = frame.apply_snapshot(snap)
        return snap

    # -- legality ----------------------------------------------------------

    def legal_actions(self, rid):
        r = self.robots[rid]
        t = self.t
        out = []
        if r.phase == IDLE:
            if (r.move is None or t >= r.move.t_e + 1) and t > r.comp_t:
                out.append("look")
        elif r.phase == OBSERVED:
            if t > r.look_t:
                out.append("compute")
        elif r.phase == COMPUTED:
            if t > r.comp_t:
                out.append("move_begin")
        elif r.phase == MOVING:
            if t >= r.move.t_b + 1:
                out.append("move_end")
        return out

    def _fairness_violation(self, serving):
        for i, r in enumerate(self.robots):
            if i == serving:
                continue
            if r.starve >= self.bound and self.legal_actions(i):
                return i
        return None

    # -- the single-step transition ---------------------------------------

    def async_step(self, choice):
        """Apply one adversary choice; raises IllegalChoice on a bad one."""
        kind = choice[0]
        if self.steps >= self.scenario.step_budget:
            self.trace.end(self.t, "budget")
            raise BudgetExhausted(self.visible_config(), self.trace)
        self.steps += 1
        if kind == "advance":
            for r in self.robots:
                if r.move is not None and r.move.t_e is None and self.t - r.move.t_b >= self.cap:
                    raise IllegalChoice("move span cap reached; move must end before advancing")
            starved = self._fairness_violation(None)
            if starved is not None:
                raise IllegalChoice(f"fairness: robot {starved} starved beyond bound")
            self._advance(choice[1] if len(choice) > 1 else None)
            return
        rid = choice[1]
        r = self.robots[rid]
        legal = self.legal_actions(rid)
        if kind not in legal:
            raise IllegalChoice(f"{kind} not legal for robot {rid} (phase {r.phase})")
        starved = self._fairness_violation(rid)
        if starved is not None:
            raise IllegalChoice(f"fairness: robot {starved} starved beyond bound")
        if kind == "look":
            r.snapshot = self.observe(rid)
            r.look_t = self.t
            r.phase = OBSERVED
            self.trace.log(kind="Look", t=self.t, robot=rid)
        elif kind == "compute":
            act = self.algorithm(r.snapshot)
            r.action = act
            r.comp_t = self.t
            r.prev_light = r.light
            r.light = act.color
            r.light_t = self.t
            r.snapshot = None
            self.trace.log(
                kind="Compute",
                t=self.t,
                robot=rid,
                color=act.color,
                dest=[format_rat(act.dest.x), format_rat(act.dest.y)],
                exec=bool(act.inner_exec),
            )
            if act.dest == r.pos:
                r.phase = IDLE  # zero-distance cycle: Move omitted
                r.action = None
            else:
                r.phase = COMPUTED
        elif kind == "move_begin":
            frac = choice[2] if len(choice) > 2 else Rat(1)
            reached = apply_move(r.pos, r.action.dest, frac, self.delta)
            r.move = _MoveRec(self.t, r.pos, reached)
            r.phase = MOVING
            self.trace.log(
                kind="MoveBegin",
                t=self.t,
                robot=rid,
                reach=[format_rat(reached.x), format_rat(reached.y)],
            )
        else:  # move_end
            m = r.move
            m.t_e = self.t
            r.pos = m.reach
            r.phase = IDLE
            r.action = None
            self.trace.log(
                kind="MoveEnd",
                t=self.t,
                robot=rid,
                pos=[format_rat(m.reach.x), format_rat(m.reach.y)],
            )
        for i, other in enumerate(self.robots):
            if i == rid:
                other.starve = 0
            elif self.legal_actions(i):
                other.starve += 1

    def _advance(self, mus):
        self.t += 1
        t = self.t
        for i, r in enumerate(self.robots):
            m = r.move
            if m is not None and m.t_b + 1 <= t and (m.t_e is None or t <= m.t_e):
                mu = None if mus is None else mus.get(i)
                if mu is None:
                    mu = m.mu + (1 - m.mu) / 2
                if not (m.mu < mu < 1):
                    raise IllegalChoice("progress fraction must strictly advance within (0,1)")
                m.mu = mu
                p = Point(
                    m.origin.x + mu * (m.reach.x - m.origin.x),
                    m.origin.y + mu * (m.reach.y - m.origin.y),
                )
                m.progress[t] = p
                self.trace.log(
                    kind="MoveProgress",
                    t=t,
                    robot=i,
                    pos=[format_rat(p.x), format_rat(p.y)],
                )
            if self.legal_actions(i):
                r.starve += 1
        self.trace.config_line(t, self._visible_entries())

    # -- termination -------------------------------------------------------

    def true_entries(self):
        ents = [(r.pos, r.light) for r in self.robots]
        ents.sort(key=lambda e: (e[0].x, e[0].y, e[1]))
        return tuple(ents)

    def is_terminal(self):
        """All robots idle and none enabled on the settled configuration."""
        if any(r.phase != IDLE for r in self.robots):
            return False
        ents = self.true_entries()
        memo = self._terminal_memo.get(ents)
        if memo is None:
            cfg = self.cache.get(ents)
            memo = True
            for r in self.robots:
                act = self.algorithm(Snapshot(cfg, r.pos, r.light))
                if act.color != r.light or act.dest != r.pos:
                    memo = False
                    break
            self._terminal_memo[ents] = memo
        return memo


class RandomAsyncPolicy:
    """Seeded uniform adversary over legal choices with forced fairness."""

    MUS = tuple(Rat(j, 8) for j in (1, 2, 3, 5, 7))

    def __init__(self, rng, stingy=False, rigid=False):
        self.rng = rng
        self.stingy = stingy
        self.rigid = rigid

    def fraction(self):
        if self.rigid:
            return Rat(1)
        if self.stingy:
            return Rat(1, 1024)
        return _FRACTIONS[self.rng.randrange(len(_FRACTIONS))]

    def _mus(self, world):
        out = {}
        for i, r in enumerate(world.robots):
            m = r.move
            if m is not None and m.t_b + 1 <= world.t + 1 and (m.t_e is None or world.t + 1 <= m.t_e):
                step = self.MUS[self.rng.randrange(len(self.MUS))]
                out[i] = m.mu + (1 - m.mu) * step
        return out

    def step(self, world):
        legal = []
        for i in range(len(world.robots)):
            for kind in world.legal_actions(i):
                legal.append((kind, i))
        # serve robots approaching the fairness bound first, worst starvation
        # first; the margin covers a full drain of simultaneously starved ones
        margin = 2 * len(world.robots) + 2
        worst = None
        for kind, i in legal:
            if world.robots[i].starve >= world.bound - margin:
                if worst is None or world.robots[i].starve > world.robots[worst[1]].starve:
                    worst = (kind, i)
        if worst is not None:
            return self._fill(worst)
        # movers at the span cap must end before the clock advances again
        for kind, i in legal:
            if kind == "move_end" and world.t - world.robots[i].move.t_b >= world.cap - 1:
                return self._fill((kind, i))
        if not legal or self.rng.random() < 0.3:
            return ("advance", self._mus(world))
        return self._fill(legal[self.rng.randrange(len(legal))])

    def _fill(self, choice):
        kind, i = choice
        if kind == "move_begin":
            return (kind, i, self.fraction())
        return (kind, i)


class RoundRobinAsyncPolicy:
    """One robot completes a full rigid cycle at a time, in index order."""

    def __init__(self, rng):
        self.rng = rng
        self.current = 0
        self.started = False

    def step(self, world):
        n = len(world.robots)
        r = world.robots[self.current]
        if self.started and r.phase == IDLE:
            self.current = (self.current + 1) % n
            self.started = False
        legal = world.legal_actions(self.current)
        if not legal:
            return ("advance", None)
        kind = legal[0]
        if kind == "look":
            self.started = True
        if kind == "move_begin":
            return (kind, self.current, Rat(1))
        return (kind, self.current)


class SsyncEmbeddedPolicy:
    """Lockstep batches: everyone looks, then computes, then moves."""

    def __init__(self, rng, stingy=False):
        self.rng = rng
        self.stingy = stingy

    def _fraction(self):
        if self.stingy:
            return Rat(1, 1024)
        return _FRACTIONS[self.rng.randrange(len(_FRACTIONS))]

    def step(self, world):
        rs = world.robots
        t = world.t
        idle = [i for i, r in enumerate(rs) if r.phase == IDLE]
        observed = [i for i, r in enumerate(rs) if r.phase == OBSERVED]
        computed = [i for i, r in enumerate(rs) if r.phase == COMPUTED]
        moving = [i for i, r in enumerate(rs) if r.phase == MOVING]
        batch_open = not observed or rs[observed[0]].look_t == t
        if idle and not computed and not moving and batch_open:
            if all("look" in world.legal_actions(i) for i in idle):
                return ("look", idle[0])
            if not observed:
                return ("advance", None)
        if observed:
            i = observed[0]
            if "compute" in world.legal_actions(i):
                return ("compute", i)
            return ("advance", None)
        if computed:
            i = computed[0]
            if "move_begin" in world.legal_actions(i):
                return ("move_begin", i, self._fraction())
            return ("advance", None)
        if moving:
            i = moving[0]
            if "move_end" in world.legal_actions(i):
                return ("move_end", i)
            return ("advance", None)
        return ("advance", None)


def _make_policy(scenario, rng):
    if scenario.policy in ("random", "stingy", "rigid"):
        return RandomAsyncPolicy(
            rng,
            stingy=scenario.policy == "stingy",
            rigid=scenario.policy == "rigid",
        )
    if scenario.policy == "round-robin":
        return RoundRobinAsyncPolicy(rng)
    return SsyncEmbeddedPolicy(rng, stingy=scenario.policy == "ssync-stingy")


def _run_async(scenario, rng):
    world = AsyncWorld(scenario)
    policy = _make_policy(scenario, rng)
    while True:
        if world.is_terminal():
            world._advance(None)
            status = "gathered" if world.visible_config().gathered() else "fixpoint"
            world.trace.end(world.t, status)
            return world.trace
        choice = policy.step(world)
        world.async_step(choice)


def run(scenario):
    """Execute a scenario to a deterministic trace.

    Terminates at a fixpoint (gathered or otherwise) or raises
    BudgetExhausted carrying the final configuration and partial trace.
    """
    import random

    rng = random.Random(scenario.seed)
    if scenario.scheduler == "async":
        return _run_async(scenario, rng)
    return _run_sync(scenario, rng)


def observe(world, observer_id, frame=None):
    """Snapshot a robot would take now, for AsyncWorld or SyncWorld."""
    if isinstance(world, AsyncWorld):
        return world.observe(observer_id, frame)
    snap = world.snapshot(observer_id)
    if frame is not None:
        snap = frame.apply_snapshot(snap)
    return snap
