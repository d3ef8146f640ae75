"""JSON documents for cheeses and classicalisation traces.

Floats are written with ``repr`` precision, so every binary64 value reads
back bit for bit.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from .cheese import DiscAssignment, SwissCheese, assignment_from_cheese, delta_of_assignment
from .engine import Case, ClassicalisationResult, CollisionPair, StepRecord
from .geometry import ClosedDisc, Complement, GeneralizedDisc, GeometryError, OpenDisc, Point


class DocumentError(ValueError):
    pass


def _disc_doc(g) -> dict[str, float]:
    return {"cx": g.center.x, "cy": g.center.y, "r": g.radius}


def _number(doc: dict, key: str) -> float:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DocumentError(f"field {key!r} must be a number, got {v!r}")
    return float(v)


def _parse_disc(doc: Any, cls):
    if not isinstance(doc, dict):
        raise DocumentError(f"expected a disc object, got {doc!r}")
    try:
        return cls(Point(_number(doc, "cx"), _number(doc, "cy")), _number(doc, "r"))
    except KeyError as e:
        raise DocumentError(f"disc is missing field {e.args[0]!r}") from None
    except GeometryError as e:
        raise DocumentError(str(e)) from None


def cheese_to_doc(c: SwissCheese, metadata: Optional[dict] = None) -> dict:
    doc: dict[str, Any] = {"outer": _disc_doc(c.outer), "discs": [_disc_doc(d) for d in c.discs]}
    if metadata:
        doc["metadata"] = metadata
    return doc


def cheese_from_doc(doc: Any) -> SwissCheese:
    if not isinstance(doc, dict) or "outer" not in doc:
        raise DocumentError("a cheese document needs an 'outer' disc")
    discs = doc.get("discs", [])
    if not isinstance(discs, list):
        raise DocumentError("'discs' must be a list")
    return SwissCheese(
        _parse_disc(doc["outer"], ClosedDisc),
        tuple(_parse_disc(d, OpenDisc) for d in discs),
    )


def assignment_to_doc(d: DiscAssignment) -> dict:
    """Cheese document plus the surviving index of every disc."""
    doc = {"outer": _disc_doc(d.outer), "discs": [_disc_doc(d[i]) for i in d.disc_indices()]}
    doc["indices"] = d.disc_indices()
    return doc


def assignment_from_doc(doc: Any) -> DiscAssignment:
    c = cheese_from_doc(doc)
    indices = doc.get("indices", list(range(1, len(c.discs) + 1)))
    if (
        not isinstance(indices, list)
        or len(indices) != len(c.discs)
        or not all(isinstance(i, int) and not isinstance(i, bool) and i > 0 for i in indices)
        or len(set(indices)) != len(indices)
    ):
        raise DocumentError("'indices' must list one distinct positive index per disc")
    entries: dict[int, GeneralizedDisc] = {0: Complement(c.outer)}
    entries.update(zip(indices, c.discs))
    return DiscAssignment(entries)


def _gdisc_doc(g: GeneralizedDisc) -> dict:
    kind = "complement" if isinstance(g, Complement) else "open"
    return {"kind": kind, **_disc_doc(g)}


def _parse_gdisc(doc: Any) -> GeneralizedDisc:
    if not isinstance(doc, dict):
        raise DocumentError(f"expected a disc object, got {doc!r}")
    kind = doc.get("kind")
    if kind == "open":
        return _parse_disc(doc, OpenDisc)
    if kind == "complement":
        return Complement(_parse_disc(doc, ClosedDisc))
    raise DocumentError(f"unknown disc kind {kind!r}")


def step_to_doc(rec: StepRecord) -> dict:
    return {
        "n": rec.pair.n,
        "m": rec.pair.m,
        "case": rec.case_tag.value,
        "removed_index": rec.removed_index,
        "before_n": _gdisc_doc(rec.before_n),
        "before_m": _gdisc_doc(rec.before_m),
        "after_n": _gdisc_doc(rec.after_n),
        "delta_before": rec.delta_before,
        "delta_after": rec.delta_after,
    }


def step_from_doc(doc: Any) -> StepRecord:
    if not isinstance(doc, dict):
        raise DocumentError(f"expected a step object, got {doc!r}")
    try:
        n, m, removed = doc["n"], doc["m"], doc["removed_index"]
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (n, m, removed)):
            raise DocumentError("step indices must be integers")
        return StepRecord(
            pair=CollisionPair(n, m),
            case_tag=Case(doc["case"]),
            removed_index=removed,
            before_n=_parse_gdisc(doc["before_n"]),
            before_m=_parse_gdisc(doc["before_m"]),
            after_n=_parse_gdisc(doc["after_n"]),
            delta_before=_number(doc, "delta_before"),
            delta_after=_number(doc, "delta_after"),
        )
    except KeyError as e:
        raise DocumentError(f"step is missing field {e.args[0]!r}") from None


def trace_to_doc(initial: SwissCheese, result: ClassicalisationResult) -> dict:
    start = assignment_from_cheese(initial)
    return {
        "initial": cheese_to_doc(initial),
        "steps": [step_to_doc(rec) for rec in result.trace],
        "final": assignment_to_doc(result.final),
        "deltas": {
            "initial": delta_of_assignment(start).delta,
            "final": delta_of_assignment(result.final).delta,
        },
        "stabilised": result.stabilised,
    }


def trace_from_doc(doc: Any) -> tuple[SwissCheese, ClassicalisationResult]:
    if not isinstance(doc, dict):
        raise DocumentError("a trace document must be an object")
    try:
        initial = cheese_from_doc(doc["initial"])
        steps = doc["steps"]
        if not isinstance(steps, list):
            raise DocumentError("'steps' must be a list")
        trace = tuple(step_from_doc(s) for s in steps)
        final = assignment_from_doc(doc["final"])
    except KeyError as e:
        raise DocumentError(f"trace is missing field {e.args[0]!r}") from None
    stabilised = doc.get("stabilised", True)
    if not isinstance(stabilised, bool):
        raise DocumentError("'stabilised' must be a boolean")
    return initial, ClassicalisationResult(final, trace, len(trace), stabilised)


def is_trace_doc(doc: Any) -> bool:
    return isinstance(doc, dict) and "steps" in doc and "initial" in doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def load(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path}: invalid JSON: {e}") from None


def save(doc: dict, path) -> None:
    Path(path).write_text(dumps(doc))
