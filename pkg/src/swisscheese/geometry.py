"""Plane disc primitives.

Discs are immutable values. Predicates compare exactly, with no epsilon, so
that the classicalisation loop and the classicality test agree on every
input; verification code passes an explicit ``tol`` where it needs slack.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple, Union


class GeometryError(ValueError):
    pass


class NotCollidingError(GeometryError):
    """The closures of two discs are disjoint."""


class FeinsteinHeathError(GeometryError):
    """A disc is too large to be cut away from the outer disc."""


class ChainError(GeometryError):
    """A nested chain is malformed or has no disc as its limit."""


class Point(NamedTuple):
    x: float
    y: float


def _check_disc(center: Point, radius: float) -> None:
    if not (math.isfinite(center.x) and math.isfinite(center.y)):
        raise GeometryError(f"non-finite center {center!r}")
    if not (math.isfinite(radius) and radius > 0):
        raise GeometryError(f"radius must be finite and positive, got {radius!r}")


@dataclass(frozen=True)
class OpenDisc:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", Point(*self.center))
        _check_disc(self.center, self.radius)


@dataclass(frozen=True)
class ClosedDisc:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", Point(*self.center))
        _check_disc(self.center, self.radius)


@dataclass(frozen=True)
class Complement:
    """The complement of a closed disc: an unbounded open set."""

    disc: ClosedDisc

    @property
    def center(self) -> Point:
        return self.disc.center

    @property
    def radius(self) -> float:
        return self.disc.radius


GeneralizedDisc = Union[OpenDisc, Complement]


def open_disc(x: float, y: float, r: float) -> OpenDisc:
    return OpenDisc(Point(float(x), float(y)), float(r))


def closed_disc(x: float, y: float, r: float) -> ClosedDisc:
    return ClosedDisc(Point(float(x), float(y)), float(r))


def complement(x: float, y: float, r: float) -> Complement:
    return Complement(closed_disc(x, y, r))


def distance(p: Point, q: Point) -> float:
    return math.hypot(q.x - p.x, q.y - p.y)


def point_in(g: GeneralizedDisc, z: Point) -> bool:
    d = distance(g.center, z)
    if isinstance(g, Complement):
        return d > g.radius
    return d < g.radius


def closures_intersect(a: GeneralizedDisc, b: GeneralizedDisc) -> bool:
    """Whether the closures of ``a`` and ``b`` share a point (tangency counts)."""
    a_comp = isinstance(a, Complement)
    b_comp = isinstance(b, Complement)
    if a_comp and b_comp:
        raise GeometryError("two complements of closed discs cannot be paired")
    d = distance(a.center, b.center)
    if a_comp:
        return d + b.radius >= a.radius
    if b_comp:
        return d + a.radius >= b.radius
    return d <= a.radius + b.radius


def disc_contains(outer: GeneralizedDisc, inner: GeneralizedDisc, tol: float = 0.0) -> bool:
    """Set inclusion ``inner ⊆ outer`` for two discs of the same kind.

    Complements compare by reversed inclusion of their closed discs.
    """
    if isinstance(outer, Complement) != isinstance(inner, Complement):
        raise GeometryError("disc_contains needs two discs of the same kind")
    d = distance(outer.center, inner.center)
    if isinstance(outer, Complement):
        return d + outer.radius <= inner.radius + tol
    return d + inner.radius <= outer.radius + tol


def closed_disc_contains(outer: ClosedDisc, inner: ClosedDisc, tol: float = 0.0) -> bool:
    return distance(outer.center, inner.center) + inner.radius <= outer.radius + tol


def merge_open_discs(d1: OpenDisc, d2: OpenDisc) -> OpenDisc:
    """Smallest open disc containing two open discs whose closures meet.

    The radius never exceeds ``r1 + r2``.
    """
    if not closures_intersect(d1, d2):
        raise NotCollidingError(f"not colliding: {d1!r}, {d2!r}")
    r1, r2 = d1.radius, d2.radius
    d = distance(d1.center, d2.center)
    if d + r2 <= r1:
        return d1
    if d + r1 <= r2:
        return d2
    rho = (r1 + r2 + d) / 2
    t = (d + r2 - r1) / 2 / d
    c1, c2 = d1.center, d2.center
    return OpenDisc(Point(c1.x + t * (c2.x - c1.x), c1.y + t * (c2.y - c1.y)), rho)


def avoid_disc(outer: ClosedDisc, d: OpenDisc) -> ClosedDisc:
    """Largest closed disc inside ``outer`` that misses ``d``.

    The result is internally tangent to ``outer`` and externally tangent to
    ``d``, with radius at least ``r(outer) - r(d)``. When ``d`` already misses
    ``outer`` the outer disc comes back unchanged.
    """
    big_r, r = outer.radius, d.radius
    if r >= big_r:
        raise FeinsteinHeathError(
            f"positive discrepancy violated: r(d)={r!r} >= r(outer)={big_r!r}"
        )
    dist = distance(d.center, outer.center)
    if dist >= big_r + r:
        return outer
    if dist + r < big_r:
        raise NotCollidingError(f"disc {d!r} lies inside the interior of {outer!r}")
    new_r = (big_r + dist - r) / 2
    t = (r + new_r) / dist
    a, c = d.center, outer.center
    return ClosedDisc(Point(a.x + t * (c.x - a.x), a.y + t * (c.y - a.y)), new_r)


# Nested chain limits

def _richardson(xs: Sequence[float]) -> float:
    # values at term counts k/4, k/2, k; exact for errors a/k + b/k**2
    x4, x2, x1 = xs
    return (8 * x1 - 6 * x2 + x4) / 3


class _LimitTracker:
    """Running limit estimate of a chain sampled at term counts 1, 2, 4, ..."""

    def __init__(self):
        self.checkpoints: list[tuple[float, float, float]] = []
        self.estimates: list[tuple[float, float, float]] = []

    def add(self, disc) -> None:
        self.checkpoints.append((disc.center.x, disc.center.y, disc.radius))
        if len(self.checkpoints) >= 3:
            last3 = self.checkpoints[-3:]
            self.estimates.append(tuple(_richardson(col) for col in zip(*last3)))

    def last_change(self, back: int = 1) -> float:
        if len(self.estimates) < back + 1:
            return math.inf
        a, b = self.estimates[-1 - back], self.estimates[-back]
        return max(abs(u - v) for u, v in zip(a, b))

    def diverging(self) -> bool:
        if len(self.estimates) < 3:
            return False
        latest, previous = self.last_change(1), self.last_change(2)
        noise = 1e-12 * (1 + max(abs(v) for v in self.estimates[-1]))
        # convergent chains shrink the change by a fixed ratio per doubling
        return latest > noise and latest > 0.9 * previous


def _chain_limit(chain, tolerance, max_terms, nested, bound, kind):
    if isinstance(chain, Sequence):
        if not chain:
            raise ChainError("empty chain")
        for prev, cur in zip(chain, chain[1:]):
            if not nested(prev, cur):
                raise ChainError(f"chain not nested at {prev!r} -> {cur!r}")
        return chain[-1]

    tracker = _LimitTracker()
    prev = None
    count = 0
    for cur in itertools.islice(chain, max_terms):
        count += 1
        if prev is not None and not nested(prev, cur):
            raise ChainError(f"chain not nested at term {count}: {prev!r} -> {cur!r}")
        prev = cur
        if count & (count - 1) == 0:
            tracker.add(cur)
            if tracker.last_change() < tolerance:
                break
    else:
        if prev is None:
            raise ChainError("empty chain")
        if count < max_terms or not tracker.estimates:
            # iterator ran out: a finite chain, its last element is the limit
            return prev
        if tracker.diverging():
            raise ChainError(f"{kind} chain radii do not converge within {max_terms} terms")
    x, y, r = tracker.estimates[-1]
    return bound(prev, x, y, r)


def limit_of_nested_open_chain(
    chain: Iterable[OpenDisc], tolerance: float = 1e-6, max_terms: int = 10**6
) -> OpenDisc:
    """Union of an increasing chain of open discs.

    A sequence (list, tuple) is a finite chain and its last element is
    returned as is. Any other iterable is read as a prefix of an infinite
    chain: terms are consumed until the limit estimate, extrapolated from
    the terms at counts 1, 2, 4, 8, ..., moves by less than ``tolerance``
    between doublings, or ``max_terms`` is reached.
    """

    def nested(a, b):
        return disc_contains(b, a, tol=1e-9)

    def bound(last, x, y, r):
        return OpenDisc(Point(x, y), max(r, last.radius))

    return _chain_limit(chain, tolerance, max_terms, nested, bound, "open")


def limit_of_nested_closed_chain(
    chain: Iterable[ClosedDisc], tolerance: float = 1e-6, max_terms: int = 10**6
) -> ClosedDisc:
    """Intersection of a decreasing chain of closed discs.

    Same reading of ``chain`` as :func:`limit_of_nested_open_chain`.
    """

    def nested(a, b):
        return closed_disc_contains(a, b, tol=1e-9)

    def bound(last, x, y, r):
        r = min(r, last.radius)
        if r <= max(tolerance, 1e-12 * last.radius):
            raise ChainError(f"inf not positive: closed chain radii tend to {r!r}")
        return ClosedDisc(Point(x, y), r)

    return _chain_limit(chain, tolerance, max_terms, nested, bound, "closed")
