"""Index-level allocation maps between disc assignments.

An allocation map sends every index of a source assignment to an index of
a target assignment. It is valid when

* A1: each source region lies inside the region it is sent to,
* A2: the discs sent to the outer complement have total radius at least
  the loss in outer radius,
* A3: each target disc is paid for by the radii of its preimage.

Sums run over indices, so repeated discs count with multiplicity.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Optional

from .cheese import DiscAssignment
from .engine import StepRecord
from .geometry import Complement, GeneralizedDisc, disc_contains, distance

EPS = 1e-9


class AllocationError(ValueError):
    pass


@dataclass(frozen=True)
class AllocationMap:
    source: DiscAssignment
    target: DiscAssignment
    mapping: Mapping[int, int]

    def __post_init__(self):
        mapping = dict(self.mapping)
        if set(mapping) != set(self.source):
            raise AllocationError("mapping must be total on the source indices")
        bad = sorted(v for v in mapping.values() if v not in self.target)
        if bad:
            raise AllocationError(f"mapping hits indices missing from the target: {bad}")
        object.__setattr__(self, "mapping", mapping)


@dataclass
class AllocationReport:
    a1: bool
    a2: bool
    a3: bool
    a1_failures: list[int] = field(default_factory=list)
    a2_slack: float = 0.0
    a3_slacks: dict[int, float] = field(default_factory=dict)
    grounded: tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return self.a1 and self.a2 and self.a3


def region_contains(outer: GeneralizedDisc, inner: GeneralizedDisc, tol: float = 0.0) -> bool:
    """``inner ⊆ outer`` for any two generalized discs."""
    if isinstance(outer, Complement) == isinstance(inner, Complement):
        return disc_contains(outer, inner, tol=tol)
    if isinstance(inner, Complement):
        # an unbounded set never fits in a disc
        return False
    return distance(outer.center, inner.center) >= outer.radius + inner.radius - tol


def verify_allocation(a: AllocationMap, tol: float = EPS) -> AllocationReport:
    src, tgt, f = a.source, a.target, a.mapping
    a1_failures = [i for i in src if not region_contains(tgt[f[i]], src[i], tol=tol)]
    if f[0] != 0 and 0 not in a1_failures:
        a1_failures.insert(0, 0)

    grounded = tuple(i for i in src.disc_indices() if f[i] == 0)
    a2_slack = math.fsum(src[i].radius for i in grounded) - (src.outer.radius - tgt.outer.radius)

    preimage: dict[int, list[float]] = {e: [] for e in tgt.disc_indices()}
    for i in src.disc_indices():
        if f[i] != 0:
            preimage[f[i]].append(src[i].radius)
    a3_slacks = {e: math.fsum(rs) - tgt[e].radius for e, rs in preimage.items()}

    return AllocationReport(
        a1=not a1_failures,
        a2=a2_slack >= -tol,
        a3=all(s >= -tol for s in a3_slacks.values()),
        a1_failures=a1_failures,
        a2_slack=a2_slack,
        a3_slacks=a3_slacks,
        grounded=grounded,
    )


def identity_allocation(d: DiscAssignment) -> AllocationMap:
    return AllocationMap(d, d, {i: i for i in d})


def step_allocation(before: DiscAssignment, rec: Optional[StepRecord]) -> AllocationMap:
    """The map induced by one classicalisation step: ``m -> n``, rest fixed.

    ``rec`` is None for a classical input, giving the identity.
    """
    if rec is None:
        return identity_allocation(before)
    n, m = rec.pair
    if m != rec.removed_index or n >= m:
        raise AllocationError(f"malformed step record for pair {rec.pair}")
    if n not in before or m not in before:
        raise AllocationError(f"pair {rec.pair} not in the source indices")
    if before[n] != rec.before_n or before[m] != rec.before_m:
        raise AllocationError(f"step record does not match the source at pair {rec.pair}")
    target = before.without(m).replace(n, rec.after_n)
    mapping = {i: i for i in before}
    mapping[m] = n
    return AllocationMap(before, target, mapping)


def compose_allocations(outer: AllocationMap, inner: AllocationMap) -> AllocationMap:
    """``outer ∘ inner``; needs ``inner.target == outer.source``."""
    if inner.target != outer.source:
        raise AllocationError("inner target and outer source differ")
    mapping = {i: outer.mapping[j] for i, j in inner.mapping.items()}
    return AllocationMap(inner.source, outer.target, mapping)


def trace_allocation(initial: DiscAssignment, trace) -> AllocationMap:
    """Compose the step maps of a whole trace, starting at ``initial``."""
    total = identity_allocation(initial)
    cur = initial
    for rec in trace:
        step = step_allocation(cur, rec)
        total = compose_allocations(step, total)
        cur = step.target
    return total
