"""Classicalisation of Swiss cheeses by repeated disc merging."""

from .allocation import (
    AllocationMap,
    AllocationReport,
    compose_allocations,
    step_allocation,
    trace_allocation,
    verify_allocation,
)
from .cheese import (
    DeltaReport,
    DiscAssignment,
    SwissCheese,
    assignment_from_cheese,
    cheese_from_assignment,
    delta_of_assignment,
    delta_of_cheese,
    has_fh_condition,
    in_cheese_set,
    is_classical,
)
from .engine import (
    Case,
    ClassicalisationResult,
    CollisionPair,
    StepRecord,
    classicalise,
    min_collision,
    stabilised_iff_classical,
    step_f,
)
from .geometry import (
    ClosedDisc,
    Complement,
    OpenDisc,
    Point,
    avoid_disc,
    closed_disc,
    closures_intersect,
    complement,
    disc_contains,
    limit_of_nested_closed_chain,
    limit_of_nested_open_chain,
    merge_open_discs,
    open_disc,
    point_in,
)
from .oracle import VerificationReport, sample_containment, verify_run, verify_step

__version__ = "0.1.0"
