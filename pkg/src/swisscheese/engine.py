"""Classicalisation: repeated merge-or-shrink at the least colliding pair."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .cheese import DiscAssignment, delta_of_assignment, has_fh_condition, is_classical
from .geometry import (
    Complement,
    FeinsteinHeathError,
    GeneralizedDisc,
    avoid_disc,
    closures_intersect,
    merge_open_discs,
)


class Case(enum.Enum):
    MERGE = "merge"
    SHRINK = "shrink"


class CollisionPair(NamedTuple):
    n: int
    m: int


@dataclass(frozen=True)
class StepRecord:
    pair: CollisionPair
    case_tag: Case
    removed_index: int
    before_n: GeneralizedDisc
    before_m: GeneralizedDisc
    after_n: GeneralizedDisc
    delta_before: float
    delta_after: float


@dataclass(frozen=True)
class ClassicalisationResult:
    final: DiscAssignment
    trace: tuple[StepRecord, ...]
    steps: int
    stabilised: bool


def _first_collision(d: DiscAssignment, start_row: int = 0) -> Optional[CollisionPair]:
    idx = list(d)
    for a, i in enumerate(idx):
        if i < start_row:
            continue
        gi = d[i]
        for j in idx[a + 1:]:
            if closures_intersect(gi, d[j]):
                return CollisionPair(i, j)
    return None


def min_collision(d: DiscAssignment) -> Optional[CollisionPair]:
    """Lexicographically least pair ``(n, m)``, ``n < m``, whose closures meet."""
    return _first_collision(d)


def _apply(d: DiscAssignment, pair: CollisionPair) -> tuple[DiscAssignment, StepRecord]:
    n, m = pair
    before_n, before_m = d[n], d[m]
    if n == 0:
        case = Case.SHRINK
        after_n = Complement(avoid_disc(before_n.disc, before_m))
    else:
        case = Case.MERGE
        after_n = merge_open_discs(before_n, before_m)
    after = d.without(m).replace(n, after_n)
    rec = StepRecord(
        pair=pair,
        case_tag=case,
        removed_index=m,
        before_n=before_n,
        before_m=before_m,
        after_n=after_n,
        delta_before=delta_of_assignment(d).delta,
        delta_after=delta_of_assignment(after).delta,
    )
    return after, rec


def _require_fh(d: DiscAssignment) -> None:
    if not has_fh_condition(d):
        raise FeinsteinHeathError(
            f"positive discrepancy violated: delta = {delta_of_assignment(d).delta!r}"
        )


def step_f(d: DiscAssignment) -> tuple[DiscAssignment, Optional[StepRecord]]:
    """One application of the classicalising map.

    Classical input comes back unchanged with no record. Otherwise the
    least colliding pair ``(n, m)`` is resolved: disc ``m`` is removed and
    entry ``n`` grows to cover it, by merging two open discs (``n > 0``) or
    by shrinking the outer disc away from disc ``m`` (``n == 0``).
    """
    _require_fh(d)
    pair = min_collision(d)
    if pair is None:
        return d, None
    return _apply(d, pair)


def classicalise(d: DiscAssignment, budget: Optional[int] = None) -> ClassicalisationResult:
    _require_fh(d)
    limit = len(d) if budget is None else budget
    trace: list[StepRecord] = []
    cur = d
    stabilised = False
    row = 0
    while True:
        # pairs in rows before the last merge target cannot collide except
        # against the grown entry, so recheck that column first
        pair = None
        if row:
            pair = next(
                (CollisionPair(i, row) for i in cur if i < row and closures_intersect(cur[i], cur[row])),
                None,
            )
        if pair is None:
            pair = _first_collision(cur, row)
        if pair is None:
            stabilised = True
            break
        if len(trace) >= limit:
            break
        cur, rec = _apply(cur, pair)
        trace.append(rec)
        row = pair.n
    if budget is None and not stabilised:
        raise AssertionError("classicalisation did not stabilise within |S| steps")
    return ClassicalisationResult(cur, tuple(trace), len(trace), stabilised)


def stabilised_iff_classical(r: ClassicalisationResult) -> bool:
    return r.stabilised == is_classical(r.final)
