"""JSON documents describing blow-up schedules.

A schedule document is a plain JSON object:

    {
      "n": 4,
      "initial_type": "I",
      "steps": [
        {"kind": "smooth", "component": "G"},
        {"kind": "node", "components": ["F", "G"]},
        {"kind": "infinitely_near", "over_pair": 1, "on_strict_transform": "G"},
        {"kind": "infinitely_near", "over_pair": 1, "on_strict_transform": null}
      ],
      "torsion": {"kind": "finite", "order": 2}
    }

``n`` must equal the number of steps.  ``torsion`` is optional on input
(it is required downstream only when the realized cycle is nef) and is
``{"kind": "finite", "order": k}`` or ``{"kind": "infinite"}`` (alias
``"non_torsion"``).  ``"smooth_anticanonical": true`` selects the
smooth-elliptic anticanonical member instead of a cycle; such a document
carries an empty step list and ``n`` only sizes the lattice.

Parsing is strict: unknown fields anywhere are rejected, as are
missing required fields and wrongly typed values.  ``canonical_json``
fixes a byte-stable serialization and ``document_digest`` a short stable
identifier used by the enumeration tooling.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .cycles import TorsionSpec
from .errors import ScheduleError
from .lattice import BlowupSchedule, BlowupStep

__all__ = [
    "ParsedDocument",
    "parse_document",
    "parse_torsion",
    "document_for",
    "torsion_document",
    "canonical_json",
    "document_digest",
    "loads_document",
    "load_document",
]

_DOCUMENT_KEYS = frozenset(
    {"n", "initial_type", "steps", "torsion", "smooth_anticanonical"}
)
_INITIAL_TYPES = ("I", "II", "III")


@dataclass(frozen=True)
class ParsedDocument:
    """Validated document: either a schedule or the smooth variant."""

    n: int
    schedule: BlowupSchedule | None
    torsion: TorsionSpec | None
    smooth_anticanonical: bool


def _require_object(value, what):
    if not isinstance(value, dict):
        raise ScheduleError(f"{what} must be a JSON object, got {_kind(value)}")


def _kind(value):
    return type(value).__name__ if value is not None else "null"


def _check_fields(obj, allowed, required, what):
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ScheduleError(f"unknown field(s) {unknown} in {what}")
    missing = sorted(set(required) - set(obj))
    if missing:
        raise ScheduleError(f"missing field(s) {missing} in {what}")


def _plain_int(value, what, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScheduleError(f"{what} must be an integer, got {_kind(value)}")
    if minimum is not None and value < minimum:
        raise ScheduleError(f"{what} must be >= {minimum}, got {value}")
    return value


def _plain_str(value, what):
    if not isinstance(value, str):
        raise ScheduleError(f"{what} must be a string, got {_kind(value)}")
    return value


def parse_torsion(obj) -> TorsionSpec:
    """Parse a torsion record; accepts "infinite" or the alias "non_torsion"."""
    _require_object(obj, "torsion")
    kind = obj.get("kind")
    if kind == "finite":
        _check_fields(obj, ("kind", "order"), ("kind", "order"), "torsion")
        order = _plain_int(obj["order"], "torsion order", minimum=1)
        return TorsionSpec.finite(order)
    if kind in ("infinite", "non_torsion"):
        _check_fields(obj, ("kind",), ("kind",), "torsion")
        return TorsionSpec.non_torsion()
    raise ScheduleError(
        f"torsion kind must be 'finite' or 'infinite', got {kind!r}"
    )


def _parse_step(obj, position) -> BlowupStep:
    what = f"step {position}"
    _require_object(obj, what)
    kind = obj.get("kind")
    if kind == "smooth":
        _check_fields(obj, ("kind", "component"), ("kind", "component"), what)
        return BlowupStep.smooth(_plain_str(obj["component"], f"{what} component"))
    if kind == "node":
        _check_fields(obj, ("kind", "components"), ("kind", "components"), what)
        comps = obj["components"]
        if not isinstance(comps, list) or len(comps) != 2:
            raise ScheduleError(f"{what} components must be a list of two ids")
        a = _plain_str(comps[0], f"{what} component")
        b = _plain_str(comps[1], f"{what} component")
        return BlowupStep.node((a, b))
    if kind == "infinitely_near":
        _check_fields(
            obj,
            ("kind", "over_pair", "on_strict_transform"),
            ("kind", "over_pair"),
            what,
        )
        over = _plain_int(obj["over_pair"], f"{what} over_pair", minimum=1)
        target = obj.get("on_strict_transform")
        if target is not None:
            target = _plain_str(target, f"{what} on_strict_transform")
        return BlowupStep.infinitely_near(over, target)
    raise ScheduleError(
        f"{what} kind must be 'smooth', 'node' or 'infinitely_near', "
        f"got {kind!r}"
    )


def parse_document(obj) -> ParsedDocument:
    _require_object(obj, "document")
    _check_fields(obj, _DOCUMENT_KEYS, ("n", "initial_type", "steps"), "document")
    n = _plain_int(obj["n"], "n", minimum=0)
    initial_type = obj["initial_type"]
    if initial_type not in _INITIAL_TYPES:
        raise ScheduleError(
            f"initial_type must be one of {_INITIAL_TYPES}, got {initial_type!r}"
        )
    steps_raw = obj["steps"]
    if not isinstance(steps_raw, list):
        raise ScheduleError("steps must be a list")
    smooth = obj.get("smooth_anticanonical", False)
    if not isinstance(smooth, bool):
        raise ScheduleError("smooth_anticanonical must be a boolean")
    torsion = parse_torsion(obj["torsion"]) if "torsion" in obj else None
    if smooth:
        if steps_raw:
            raise ScheduleError(
                "a smooth_anticanonical document carries no steps; "
                "n alone sizes the lattice"
            )
        return ParsedDocument(n, None, torsion, True)
    if len(steps_raw) != n:
        raise ScheduleError(
            f"n={n} but the document lists {len(steps_raw)} steps; "
            "they must agree"
        )
    steps = tuple(
        _parse_step(step, position) for position, step in enumerate(steps_raw, 1)
    )
    schedule = BlowupSchedule(initial_type, steps)
    return ParsedDocument(n, schedule, torsion, False)


def _step_document(step: BlowupStep) -> dict:
    if step.kind == "smooth":
        return {"kind": "smooth", "component": step.component}
    if step.kind == "node":
        return {"kind": "node", "components": list(step.components)}
    return {
        "kind": "infinitely_near",
        "over_pair": step.over_pair,
        "on_strict_transform": step.on_strict_transform,
    }


def torsion_document(spec: TorsionSpec) -> dict:
    if spec.kind == "finite":
        return {"kind": "finite", "order": spec.order}
    return {"kind": "infinite"}


def document_for(
    schedule: BlowupSchedule | None = None,
    *,
    n: int | None = None,
    initial_type: str = "I",
    torsion: TorsionSpec | None = None,
    smooth_anticanonical: bool = False,
) -> dict:
    """Build the document dict for a schedule (or the smooth variant)."""
    if smooth_anticanonical:
        if schedule is not None:
            raise ValueError("smooth variant takes n, not a schedule")
        if n is None:
            raise ValueError("smooth variant needs n")
        doc = {
            "n": n,
            "initial_type": initial_type,
            "steps": [],
            "smooth_anticanonical": True,
        }
    else:
        if schedule is None:
            raise ValueError("a schedule is required unless smooth_anticanonical")
        doc = {
            "n": schedule.pairs,
            "initial_type": schedule.initial_type,
            "steps": [_step_document(s) for s in schedule.steps],
        }
    if torsion is not None:
        doc["torsion"] = torsion_document(torsion)
    return doc


def canonical_json(obj) -> str:
    """Byte-stable serialization: sorted keys, no whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def document_digest(doc: dict) -> str:
    """Short stable identifier: sha256 of the canonical JSON, 12 hex chars."""
    return hashlib.sha256(canonical_json(doc).encode("utf-8")).hexdigest()[:12]


def loads_document(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScheduleError(f"invalid JSON: {exc}") from exc
    return obj


def load_document(path) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return loads_document(handle.read())
