import random

import pytest
from hypothesis import HealthCheck, settings

from lumigather.configuration import Configuration, Frame, Snapshot
from lumigather.geometry import Point, pt
from lumigather.rational import Rat

settings.register_profile(
    "ci", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("ci")


def make_snap(entries, own, light):
    """Snapshot from ((x, y), color) pairs; (num, den) tuples are rationals."""
    cfg = Configuration([(pt(*p), c) for p, c in entries])
    return Snapshot(cfg, pt(*own), light)


def make_config(entries):
    return Configuration([(pt(*p), c) for p, c in entries])


_TRIPLES = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (20, 21, 29), (7, 24, 25)]


def random_frame(rng):
    a, b, c = _TRIPLES[rng.randrange(len(_TRIPLES))]
    if rng.random() < 0.5:
        a, b = b, a
    if rng.random() < 0.5:
        b = -b
    scale = Rat(rng.randint(1, 12), rng.randint(1, 5))
    tx = Rat(rng.randint(-40, 40), rng.randint(1, 4))
    ty = Rat(rng.randint(-40, 40), rng.randint(1, 4))
    return Frame(Rat(a, c), Rat(b, c), scale, Point(tx, ty))


@pytest.fixture
def rng():
    return random.Random(20240817)
