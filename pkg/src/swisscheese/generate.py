"""Seeded random cheeses with positive discrepancy.

Radii are drawn first and scaled so their sum is a random fraction in
[0.5, 0.95] of ``outer_r - delta_min``. Each disc is then placed by one of
the rules below, chosen independently per disc; 80% are uniform in the
outer disc and the rest stress the inclusive collision predicate.
"""

from __future__ import annotations

import math
import random

from .cheese import SwissCheese
from .geometry import ClosedDisc, OpenDisc, Point

PLACEMENT_PROBABILITIES = {
    "duplicate": 0.05,  # exact copy of an earlier disc
    "tangent": 0.05,  # externally tangent to an earlier disc
    "rim": 0.05,  # internally tangent to the outer circle
    "crossing": 0.05,  # straddles the outer circle
    "uniform": 0.80,
}


def _pick(rng: random.Random, k: int) -> str:
    u = rng.random()
    for kind, p in PLACEMENT_PROBABILITIES.items():
        if u < p:
            break
        u -= p
    else:
        kind = "uniform"
    if k == 0 and kind in ("duplicate", "tangent"):
        return "uniform"
    return kind


def _polar(c: Point, dist: float, theta: float) -> Point:
    return Point(c.x + dist * math.cos(theta), c.y + dist * math.sin(theta))


def random_cheese(
    seed: int,
    n_discs: int,
    delta_min: float,
    outer_r: float = 3.0,
    center: tuple[float, float] = (0.0, 0.0),
) -> SwissCheese:
    if n_discs < 0:
        raise ValueError(f"n_discs must be non-negative, got {n_discs}")
    if not (0 < delta_min < outer_r):
        raise ValueError(f"need 0 < delta_min < outer_r, got {delta_min} and {outer_r}")
    rng = random.Random(seed)
    outer = ClosedDisc(Point(*map(float, center)), float(outer_r))

    kinds = [_pick(rng, k) for k in range(n_discs)]
    sources = [rng.randrange(k) if k else 0 for k in range(n_discs)]
    weights: list[float] = []
    for k, kind in enumerate(kinds):
        weights.append(weights[sources[k]] if kind == "duplicate" else rng.uniform(0.2, 1.0))
    if not weights:
        return SwissCheese(outer, ())
    scale = (outer_r - delta_min) * rng.uniform(0.5, 0.95) / math.fsum(weights)
    radii = [w * scale for w in weights]

    discs: list[OpenDisc] = []
    for k, (kind, r) in enumerate(zip(kinds, radii)):
        theta = rng.uniform(0.0, 2 * math.pi)
        if kind == "duplicate":
            disc = discs[sources[k]]
        elif kind == "tangent":
            src = discs[sources[k]]
            disc = OpenDisc(_polar(src.center, src.radius + r, theta), r)
        elif kind == "rim":
            disc = OpenDisc(_polar(outer.center, outer_r - r, theta), r)
        elif kind == "crossing":
            disc = OpenDisc(_polar(outer.center, outer_r + rng.uniform(-r, r), theta), r)
        else:
            while True:
                x, y = rng.uniform(-outer_r, outer_r), rng.uniform(-outer_r, outer_r)
                if math.hypot(x, y) < outer_r:
                    break
            disc = OpenDisc(Point(outer.center.x + x, outer.center.y + y), r)
        discs.append(disc)
    return SwissCheese(outer, tuple(discs))
