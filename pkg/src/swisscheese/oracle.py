"""Independent checks of classicalisation results.

Nothing here calls the engine. Every quantity is recomputed with numpy from
the raw centers and radii stored in assignments and step records, so a bug
in the producing code shows up as a named failure with a witness.
Comparisons carry a tolerance of ``EPS``; collision tests accept pairs that
sit within ``EPS`` of tangency either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .cheese import DiscAssignment
from .engine import Case, ClassicalisationResult, StepRecord
from .geometry import Complement, OpenDisc

EPS = 1e-9


@dataclass
class Failure:
    check: str
    witness: dict[str, Any]


@dataclass
class VerificationReport:
    checks_run: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, name: str, ok: bool, **witness) -> bool:
        self.checks_run += 1
        if not ok:
            self.failures.append(Failure(name, witness))
        return ok

    def extend(self, other: VerificationReport) -> None:
        self.checks_run += other.checks_run
        self.failures.extend(other.failures)

    def failure_names(self) -> set[str]:
        return {f.check for f in self.failures}

    def format(self) -> str:
        lines = [
            f"checks_run: {self.checks_run}",
            f"failures: {len(self.failures)}",
            f"passed: {str(self.passed).lower()}",
        ]
        for f in self.failures:
            detail = ", ".join(f"{k}={v!r}" for k, v in f.witness.items())
            lines.append(f"  - {f.check}: {detail}")
        return "\n".join(lines)


def _raw(g) -> tuple[float, float, float]:
    return (g.center.x, g.center.y, g.radius)


def _arrays(d: DiscAssignment):
    idx = np.array(list(d), dtype=np.int64)
    data = np.array([_raw(d[i]) for i in idx], dtype=float)
    return idx, data[:, :2], data[:, 2]


def _delta(d: DiscAssignment) -> float:
    return d[0].radius - math.fsum(d[i].radius for i in d if i != 0)


def _members(d: DiscAssignment, pts: np.ndarray) -> np.ndarray:
    """Mask of points lying in the cheese set of ``d``."""
    _, centers, radii = _arrays(d)
    dist = np.hypot(pts[:, None, 0] - centers[None, :, 0], pts[:, None, 1] - centers[None, :, 1])
    inside_outer = dist[:, 0] <= radii[0]
    outside_holes = np.all(dist[:, 1:] >= radii[None, 1:], axis=1)
    return inside_outer & outside_holes


def _gaps(d: DiscAssignment):
    """Pairwise separation: negative when closures overlap."""
    idx, centers, radii = _arrays(d)
    diff = centers[:, None, :] - centers[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    gaps = dist - radii[:, None] - radii[None, :]
    # row/column 0 is a complement: its closure meets disc j when dist + r_j >= R
    gaps[0, :] = radii[0] - dist[0, :] - radii
    gaps[:, 0] = gaps[0, :]
    return idx, gaps


def _contains(outer, inner, tol: float) -> bool:
    ox, oy, orad = _raw(outer)
    ix, iy, irad = _raw(inner)
    dist = math.hypot(ox - ix, oy - iy)
    o_comp, i_comp = isinstance(outer, Complement), isinstance(inner, Complement)
    if o_comp and i_comp:
        return dist + orad <= irad + tol
    if not o_comp and not i_comp:
        return dist + irad <= orad + tol
    if i_comp:
        return False
    return dist >= orad + irad - tol


def sample_containment(
    inner: DiscAssignment, outer_assignment: DiscAssignment, n_points: int = 10_000, seed: int = 0
) -> VerificationReport:
    """Refute ``X_inner ⊆ X_outer`` by sampling the box around inner's outer disc."""
    rng = np.random.default_rng(seed)
    cx, cy, r = _raw(inner[0])
    pts = rng.uniform((cx - r, cy - r), (cx + r, cy + r), size=(n_points, 2))
    bad = _members(inner, pts) & ~_members(outer_assignment, pts)
    report = VerificationReport()
    report.checks_run = n_points
    if bad.any():
        report.failures.append(
            Failure(
                "set-containment",
                {
                    "violations": int(bad.sum()),
                    "points": [tuple(map(float, p)) for p in pts[bad][:5]],
                    "seed": seed,
                },
            )
        )
    return report


def _pair_is_minimal(before: DiscAssignment, n: int, m: int, tol: float):
    idx, gaps = _gaps(before)
    pos = {int(i): k for k, i in enumerate(idx)}
    if gaps[pos[n], pos[m]] > tol:
        return False, {"pair": (n, m), "gap": float(gaps[pos[n], pos[m]])}
    for a, i in enumerate(idx):
        if i > n:
            break
        for b in range(a + 1, len(idx)):
            j = idx[b]
            if i == n and j >= m:
                break
            if gaps[a, b] < -tol:
                return False, {"pair": (n, m), "earlier": (int(i), int(j)), "gap": float(gaps[a, b])}
    return True, {}


def verify_step(
    before: DiscAssignment, after: DiscAssignment, rec: StepRecord, tol: float = EPS
) -> VerificationReport:
    report = VerificationReport()
    n, m = rec.pair
    if not report.check(
        "record-mismatch",
        n in before and m in before and n < m and rec.removed_index == m and n in after,
        pair=(n, m),
        removed_index=rec.removed_index,
    ):
        return report
    report.check(
        "record-mismatch",
        before[n] == rec.before_n and before[m] == rec.before_m and after[n] == rec.after_n
        and rec.case_tag == (Case.SHRINK if n == 0 else Case.MERGE),
        pair=(n, m),
        case=rec.case_tag.value,
    )
    report.check(
        "index-set",
        m != 0 and set(after) == set(before) - {m},
        before=sorted(before),
        after=sorted(after),
        removed=m,
    )
    ok, witness = _pair_is_minimal(before, n, m, tol)
    report.check("pair-minimal", ok, **witness)
    report.check(
        "kind-stability",
        isinstance(after[0], Complement) and all(isinstance(after[i], OpenDisc) for i in after if i != 0),
    )

    d_before, d_after = _delta(before), _delta(after)
    report.check("fh-preserved", d_after > 0, delta_after=d_after)
    report.check(
        "delta-monotone",
        d_after >= d_before - tol and rec.delta_after >= rec.delta_before - tol,
        delta_before=d_before,
        delta_after=d_after,
        recorded=(rec.delta_before, rec.delta_after),
    )
    report.check(
        "record-delta",
        abs(rec.delta_before - d_before) <= tol and abs(rec.delta_after - d_after) <= tol,
        recorded=(rec.delta_before, rec.delta_after),
        recomputed=(d_before, d_after),
    )
    for i in after:
        report.check(
            "pointwise-containment",
            _contains(after[i], before[i], tol),
            index=i,
            before=_raw(before[i]),
            after=_raw(after[i]),
        )
    report.check(
        "absorption",
        _contains(after[n], before[m], tol),
        pair=(n, m),
        absorbed=_raw(before[m]),
        into=_raw(after[n]),
    )
    return report


def _replay(cur: DiscAssignment, rec: StepRecord) -> Optional[DiscAssignment]:
    n, m = rec.pair
    if n not in cur or m not in cur or n == m or m == 0:
        return None
    if cur[n] != rec.before_n or cur[m] != rec.before_m:
        return None
    entries = {i: cur[i] for i in cur if i != m}
    entries[n] = rec.after_n
    try:
        return DiscAssignment(entries)
    except ValueError:
        return None


def verify_run(
    r: ClassicalisationResult,
    initial: DiscAssignment,
    n_points: int = 10_000,
    seed: int = 0,
    tol: float = EPS,
) -> VerificationReport:
    """Replay a trace from ``initial`` and certify every step and the outcome."""
    report = VerificationReport()
    report.check("fh-initial", _delta(initial) > 0, delta=_delta(initial))
    report.check("step-count", r.steps == len(r.trace), steps=r.steps, trace_length=len(r.trace))

    cur = initial
    replayed = True
    for k, rec in enumerate(r.trace):
        nxt = _replay(cur, rec)
        if nxt is None:
            report.check("trace-replay-mismatch", False, step=k, pair=tuple(rec.pair))
            replayed = False
            break
        report.extend(verify_step(cur, nxt, rec, tol))
        cur = nxt
    if replayed:
        report.check(
            "trace-replay-mismatch",
            cur == r.final,
            step=len(r.trace),
            replayed=sorted(cur),
            final=sorted(r.final),
        )

    _, gaps = _gaps(r.final)
    np.fill_diagonal(gaps, np.inf)
    worst = float(gaps.min()) if len(r.final) > 1 else math.inf
    if r.stabilised:
        report.check("final-not-classical", worst >= -tol, worst_gap=worst)
    else:
        report.check("stabilisation-flag", worst <= tol, worst_gap=worst)

    d0, d1 = _delta(initial), _delta(r.final)
    report.check("delta-monotone", d1 >= d0 - tol, delta_initial=d0, delta_final=d1)
    report.extend(sample_containment(r.final, initial, n_points, seed))
    return report
