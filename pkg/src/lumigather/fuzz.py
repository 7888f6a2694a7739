"""Randomized scenario generation and per-run checking.

Everything is reproducible from a master seed: scenario coordinates, the
per-run engine seed and the adversary's choices all derive from it.  The
command-line ``fuzz`` subcommand and the acceptance suite both drive this
module.
"""

import random
from dataclasses import dataclass, field

from .algorithms import get_algorithm
from .checker import (
    check_cycle_snapshot,
    check_gathered,
    check_monotone,
    check_onlds_switch,
    check_shrink,
    validate_trace,
)
from .engine import BudgetExhausted, Scenario, run
from .geometry import Point
from .rational import Rat


def _rand_rat(rng, bound, den_bound=4):
    den = rng.randint(1, den_bound)
    num = rng.randint(-bound * den, bound * den)
    return Rat(num, den)


def random_points(rng, n, bound, den_bound=4):
    return [
        Point(_rand_rat(rng, bound, den_bound), _rand_rat(rng, bound, den_bound))
        for _ in range(n)
    ]


def random_collinear_points(rng, n, bound, den_bound=4):
    """n points on a random rational segment, both endpoints occupied."""
    while True:
        a, b = random_points(rng, 2, bound, den_bound)
        if a != b:
            break
    pts = [a, b]
    for _ in range(n - 2):
        lam = Rat(rng.randint(0, 16), 16)
        pts.append(Point(a.x + lam * (b.x - a.x), a.y + lam * (b.y - a.y)))
    return pts


def random_scenario(
    rng,
    algorithm,
    scheduler,
    n,
    bound=100,
    delta=Rat(1),
    policy="random",
    step_budget=50000,
    den_bound=4,
):
    spec = get_algorithm(algorithm)
    if spec.needs_onlds_start:
        pts = random_collinear_points(rng, n, bound, den_bound)
    else:
        pts = random_points(rng, n, bound, den_bound)
    return Scenario(
        robots=tuple((p, spec.initial) for p in pts),
        delta=delta,
        scheduler=scheduler,
        algorithm=algorithm,
        policy=policy,
        seed=rng.randrange(2**31),
        step_budget=step_budget,
    )


_CHECKS = {
    "replay": lambda tr, sc: validate_trace(tr),
    "monotone": lambda tr, sc: check_monotone(tr),
    "monotone-f": lambda tr, sc: check_monotone(tr, "f"),
    "monotone-g": lambda tr, sc: check_monotone(tr, "g"),
    "cycle": lambda tr, sc: check_cycle_snapshot(tr),
    "switch": lambda tr, sc: check_onlds_switch(tr),
    "shrink": lambda tr, sc: check_shrink(tr, sc.delta),
    "gather": lambda tr, sc: check_gathered(tr),
}

DEFAULT_CHECKS = {
    "elect-one-lds": ("replay", "monotone-f"),
    "lu-gather": ("replay", "monotone-g", "gather"),
    "lu-gather-async": ("replay", "shrink", "gather"),
    "three-color": ("replay", "cycle", "switch", "gather"),
    "six-color": ("replay", "cycle", "switch", "gather"),
}


def checks_for(algorithm, names):
    if names in (None, "all", ["all"]):
        return DEFAULT_CHECKS[algorithm]
    if isinstance(names, str):
        names = [s.strip() for s in names.split(",") if s.strip()]
    return tuple(names)


@dataclass
class RunOutcome:
    scenario: Scenario
    trace: object = None
    budget_exhausted: bool = False
    reports: list = field(default_factory=list)
    alphabet: frozenset = frozenset()

    @property
    def ok(self):
        return not self.budget_exhausted and all(r.passed for r in self.reports)

    @property
    def undecided(self):
        return sum(len(r.undecided) for r in self.reports)


def run_with_checks(scenario, checks=None):
    out = RunOutcome(scenario)
    try:
        out.trace = run(scenario)
    except BudgetExhausted as exc:
        out.trace = exc.trace
        out.budget_exhausted = True
        return out
    out.alphabet = frozenset(
        ln["color"] for ln in out.trace.lines if ln.get("kind") == "Compute"
    )
    for name in checks_for(scenario.algorithm, checks):
        out.reports.append(_CHECKS[name](out.trace, scenario))
    return out


@dataclass
class FuzzSummary:
    algorithm: str
    scheduler: str
    runs: int = 0
    failures: list = field(default_factory=list)
    undecided: int = 0
    outcomes: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures and self.undecided == 0

    def to_json(self):
        return {
            "algorithm": self.algorithm,
            "scheduler": self.scheduler,
            "runs": self.runs,
            "failures": self.failures,
            "undecided": self.undecided,
            "pass": self.ok,
        }


def fuzz(
    algorithm,
    scheduler,
    runs,
    seed,
    n_range=(3, 6),
    bound=20,
    deltas=(Rat(1),),
    policy="random",
    step_budget=50000,
    checks=None,
    keep_traces=False,
):
    """Run many random scenarios, applying the per-algorithm checker set."""
    if runs < 1:
        raise ValueError("runs must be >= 1")
    rng = random.Random(seed)
    summary = FuzzSummary(algorithm, scheduler)
    for k in range(runs):
        n = rng.randint(*n_range)
        delta = deltas[k % len(deltas)]
        sc = random_scenario(
            rng,
            algorithm,
            scheduler,
            n,
            bound=bound,
            delta=delta,
            policy=policy,
            step_budget=step_budget,
        )
        out = run_with_checks(sc, checks)
        summary.runs += 1
        summary.undecided += out.undecided
        if not out.ok:
            summary.failures.append(
                {
                    "run": k,
                    "scenario": sc.to_json(),
                    "budget_exhausted": out.budget_exhausted,
                    "reports": [r.to_json() for r in out.reports if not r.passed],
                }
            )
        if keep_traces:
            summary.outcomes.append(out)
    return summary
