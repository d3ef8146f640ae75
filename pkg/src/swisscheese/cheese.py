"""Swiss cheeses and disc assignment functions.

A :class:`SwissCheese` is an outer closed disc with a list of open discs
deleted from it. A :class:`DiscAssignment` presents the same data as a map
from natural-number indices to generalized discs, with index 0 holding the
complement of the outer disc.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .geometry import (
    ClosedDisc,
    Complement,
    GeneralizedDisc,
    OpenDisc,
    Point,
    closures_intersect,
    point_in,
)


@dataclass(frozen=True)
class SwissCheese:
    outer: ClosedDisc
    discs: tuple[OpenDisc, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "discs", tuple(self.discs))


class DiscAssignment(Mapping):
    """Immutable finite map ``index -> GeneralizedDisc``.

    Index 0 must be present and hold a :class:`Complement`; every other index
    holds an :class:`OpenDisc`. Iteration is in increasing index order.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[int, GeneralizedDisc] | Iterable[tuple[int, GeneralizedDisc]]):
        items = dict(entries)
        if 0 not in items:
            raise ValueError("a disc assignment needs index 0")
        for i, g in items.items():
            if not isinstance(i, int) or isinstance(i, bool) or i < 0:
                raise ValueError(f"index must be a natural number, got {i!r}")
            if i == 0 and not isinstance(g, Complement):
                raise ValueError("index 0 must hold the complement of a closed disc")
            if i != 0 and not isinstance(g, OpenDisc):
                raise ValueError(f"index {i} must hold an open disc, got {g!r}")
        self._entries = {i: items[i] for i in sorted(items)}

    def __getitem__(self, i: int) -> GeneralizedDisc:
        return self._entries[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"DiscAssignment({self._entries!r})"

    @property
    def outer(self) -> ClosedDisc:
        return self._entries[0].disc

    def disc_indices(self) -> list[int]:
        return [i for i in self._entries if i != 0]

    def replace(self, i: int, g: GeneralizedDisc) -> DiscAssignment:
        entries = dict(self._entries)
        entries[i] = g
        return DiscAssignment(entries)

    def without(self, i: int) -> DiscAssignment:
        if i == 0:
            raise ValueError("index 0 cannot be removed")
        entries = dict(self._entries)
        del entries[i]
        return DiscAssignment(entries)


class DeltaReport(NamedTuple):
    outer_radius: float
    disc_radius_sum: float
    delta: float


def _report(outer_radius: float, radii: Iterable[float]) -> DeltaReport:
    total = math.fsum(radii)
    return DeltaReport(outer_radius, total, outer_radius - total)


def delta_of_cheese(c: SwissCheese) -> DeltaReport:
    """Slack of a cheese. The disc collection is a set: repeats count once."""
    return _report(c.outer.radius, (d.radius for d in dict.fromkeys(c.discs)))


def delta_of_assignment(d: DiscAssignment) -> DeltaReport:
    """Slack of an assignment, counting repeated discs once per index."""
    return _report(d.outer.radius, (d[i].radius for i in d.disc_indices()))


def has_fh_condition(d: DiscAssignment) -> bool:
    return delta_of_assignment(d).delta > 0


def is_injective(d: DiscAssignment) -> bool:
    discs = [d[i] for i in d.disc_indices()]
    return len(set(discs)) == len(discs)


def is_classical(d: DiscAssignment) -> bool:
    idx = list(d)
    for a, i in enumerate(idx):
        gi = d[i]
        for j in idx[a + 1:]:
            if closures_intersect(gi, d[j]):
                return False
    return True


def assignment_from_cheese(c: SwissCheese) -> DiscAssignment:
    entries: dict[int, GeneralizedDisc] = {0: Complement(c.outer)}
    for k, disc in enumerate(c.discs, start=1):
        entries[k] = disc
    return DiscAssignment(entries)


def cheese_from_assignment(d: DiscAssignment) -> SwissCheese:
    return SwissCheese(d.outer, tuple(d[i] for i in d.disc_indices()))


def in_cheese_set(d: DiscAssignment, z: Point) -> bool:
    return not any(point_in(g, z) for g in d.values())


def _disc_gap(a, b) -> float:
    return max(abs(a.center.x - b.center.x), abs(a.center.y - b.center.y), abs(a.radius - b.radius))


def cheeses_equal(a: SwissCheese, b: SwissCheese, eps: float = 1e-9) -> bool:
    """Equality up to ``eps`` with the disc collections compared as sets."""
    if _disc_gap(a.outer, b.outer) > eps:
        return False
    da, db = list(dict.fromkeys(a.discs)), list(dict.fromkeys(b.discs))
    if len(da) != len(db):
        return False
    if not da:
        return True
    cost = np.array([[_disc_gap(p, q) for q in db] for p in da])
    rows, cols = linear_sum_assignment(cost)
    return bool(cost[rows, cols].max() <= eps)
