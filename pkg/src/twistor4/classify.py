"""Algebraic dimension of the twistor space from the anticanonical cycle.

For n = 4 the half-anticanonical ("fundamental") system |F| on the twistor
space Z is governed by the real anticanonical cycle C on the blown-up
surface S.  The degree of a cycle component C_i means deg(F|_{C_i}) =
C_i.(-K_S), and the classification is a trichotomy on the negative-degree
components:

  NEF            no negative component; the outcome then depends on the
                 torsion order tau of a normal sheaf on C (an input here):
                 tau = 1 gives a free pencil, finite tau > 1 a pencil with
                 base curve C, infinite tau drops the algebraic dimension
                 to 1 with a(Z) = 1.
  REAL_MINUS_2   one real component of degree -2 ("case a"): dim|F| = 2
                 with base curve C0, a(Z) = 3.
  PAIR_MINUS_2   a disjoint conjugate pair of degree -2 components
                 ("case b"): dim|F| = 3, base A + Abar, a(Z) = 3; these are
                 the LeBrun spaces.
  PAIRS_MINUS_1  one to three conjugate pairs of degree -1 components
                 ("case c"): dim|F| = 1 with base curve C, a(Z) = 3; here
                 dim |-2K_S| = h0(2F|_C) is reported along with the
                 dimension of the anticanonical system of Z itself.

Anything else is not realizable by a conjugate-pair blow-up schedule and
raises ``RealizabilityError``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from . import schema
from .cohomology import ChernData, chern_numbers
from .cycles import CycleLineBundle, TorsionSpec, cyclic_arcs, h0_formula, torsion_tau
from .errors import RealizabilityError, ScheduleError, TorsionRequiredError
from .lattice import (
    AnticanonicalCycle,
    BlowupSchedule,
    BlowupStep,
    _realize_prefix,
    elementary_transform,
    realize_cycle,
    smooth_anticanonical_cycle,
)

__all__ = [
    "CASE_NEF",
    "CASE_REAL_MINUS_2",
    "CASE_PAIR_MINUS_2",
    "CASE_PAIRS_MINUS_1",
    "anticanonical_degrees",
    "is_nef",
    "negative_curves",
    "ClassificationReport",
    "check_report",
    "TwistorModel",
    "model_from_schedule",
    "model_from_document",
    "classify",
    "h0_pluri_fundamental",
    "EnumeratedEntry",
    "EnumerationResult",
    "enumerate_configurations",
]

CASE_NEF = "NEF"
CASE_REAL_MINUS_2 = "REAL_MINUS_2"
CASE_PAIR_MINUS_2 = "PAIR_MINUS_2"
CASE_PAIRS_MINUS_1 = "PAIRS_MINUS_1"

_CASE_LETTER = {
    CASE_REAL_MINUS_2: "a",
    CASE_PAIR_MINUS_2: "b",
    CASE_PAIRS_MINUS_1: "c",
}


def anticanonical_degrees(cycle: AnticanonicalCycle) -> tuple[int, ...]:
    """deg(F|_{C_i}) = C_i.(-K) per component, in cycle order."""
    degrees = cycle.degrees()
    assert sum(degrees) == 8 - 2 * cycle.lattice.pairs
    return degrees


def is_nef(cycle: AnticanonicalCycle) -> bool:
    return all(d >= 0 for d in anticanonical_degrees(cycle))


def negative_curves(cycle: AnticanonicalCycle) -> tuple[tuple[str, int], ...]:
    """Negative-degree components as (id, degree), validated against the
    three realizable patterns.

    Degrees below -2 cannot occur on a surface with an anticanonical
    cycle of this kind; a single real -2, one conjugate -2 pair, or up to
    three conjugate -1 pairs are the only other options.
    """
    degrees = anticanonical_degrees(cycle)
    negatives = [
        (name, d) for name, d in zip(cycle.order, degrees) if d < 0
    ]
    for name, d in negatives:
        if d <= -3:
            raise RealizabilityError(
                "degree-below-minus-2",
                f"component {name} has degree {d}; no component of degree "
                "below -2 can appear on an anticanonical cycle here",
            )
    if not negatives:
        return ()
    names = [name for name, _ in negatives]
    degs = [d for _, d in negatives]
    conj_closed = {cycle.conjugate_names[name] for name in names} == set(names)
    any_real = any(cycle.is_real(name) for name in names)
    if len(negatives) == 1 and degs == [-2] and cycle.is_real(names[0]):
        return tuple(negatives)
    if (
        len(negatives) == 2
        and degs == [-2, -2]
        and not any_real
        and cycle.conjugate_names[names[0]] == names[1]
    ):
        return tuple(negatives)
    if (
        len(negatives) in (2, 4, 6)
        and all(d == -1 for d in degs)
        and not any_real
        and conj_closed
    ):
        return tuple(negatives)
    raise RealizabilityError(
        "negative-pattern",
        f"negative components {negatives} match none of the realizable "
        "patterns (one real -2, a conjugate -2 pair, or 1-3 conjugate "
        "-1 pairs)",
    )


@dataclass(frozen=True)
class ClassificationReport:
    """Everything the classification determines for one configuration."""

    case: str
    nef: bool
    nef_and_big: bool
    negative_curves: tuple[tuple[str, int], ...]
    cycle_length: int
    smooth_anticanonical: bool
    h0_fundamental: int
    dim_fundamental_system: int
    base_locus: str
    degree_one_count: int | float
    algebraic_dimension: int
    lebrun: bool
    tau: int | float | None
    dim_minus2KS: int | None
    dim_antican_Z: int | None

    @property
    def case_letter(self) -> str | None:
        return _CASE_LETTER.get(self.case)

    def as_dict(self) -> dict:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if value == math.inf:
                value = "infinite"
            elif isinstance(value, tuple):
                value = [list(item) if isinstance(item, tuple) else item
                         for item in value]
            out[f.name] = value
        return out


def check_report(report: ClassificationReport) -> ClassificationReport:
    """Consistency oracle run on every report before it is returned."""
    a = report.algebraic_dimension
    dim = report.dim_fundamental_system
    assert report.h0_fundamental == dim + 1
    assert a >= dim, "a(Z) bounds dim|F| from above"
    has_negative = bool(report.negative_curves)
    assert report.nef == (not has_negative)
    assert (a == 3) == has_negative, "a(Z)=3 exactly when F is not nef"
    assert report.lebrun == (dim == 3) == (report.case == CASE_PAIR_MINUS_2)
    if dim >= 2:
        assert (a == 2) == report.nef == (report.base_locus == "free")
    if report.base_locus == "free":
        assert a == 2
    assert not report.nef_and_big, "F is never nef and big when n = 4"
    if report.case == CASE_NEF:
        assert report.tau is not None
        assert report.h0_fundamental == (3 if report.tau == 1 else 2)
        assert a == (1 if report.tau == math.inf else 2)
    else:
        assert report.tau is None
    if report.case == CASE_PAIRS_MINUS_1:
        assert len(report.negative_curves) in (2, 4, 6)
        assert 4 <= report.cycle_length <= 12
        assert report.degree_one_count == report.cycle_length
        assert report.dim_minus2KS is not None and report.dim_minus2KS >= 2
        assert report.dim_antican_Z == 2 + report.dim_minus2KS
    else:
        assert report.dim_minus2KS is None
        assert report.dim_antican_Z is None
    return report


@dataclass
class TwistorModel:
    """A realized configuration: schedule (if any), cycle, Chern numbers."""

    schedule: BlowupSchedule | None
    cycle: AnticanonicalCycle
    chern: ChernData | None

    @property
    def torsion(self) -> TorsionSpec | None:
        return self.cycle.torsion


def model_from_schedule(
    schedule: BlowupSchedule, torsion: TorsionSpec | None = None
) -> TwistorModel:
    """Realize a schedule, routing the nodes-first two-component form
    through the elementary transform to its four-component equivalent."""
    realized_from = schedule
    if (
        schedule.initial_type == "III"
        and schedule.steps
        and schedule.steps[0].kind == "node"
    ):
        realized_from = elementary_transform(schedule)
    cycle = realize_cycle(realized_from).with_torsion(torsion)
    chern = chern_numbers(schedule.pairs) if schedule.pairs >= 1 else None
    return TwistorModel(schedule, cycle, chern)


def model_from_document(doc: dict) -> TwistorModel:
    parsed = schema.parse_document(doc)
    if parsed.smooth_anticanonical:
        cycle = smooth_anticanonical_cycle(parsed.n, parsed.torsion)
        chern = chern_numbers(parsed.n) if parsed.n >= 1 else None
        return TwistorModel(None, cycle, chern)
    return model_from_schedule(parsed.schedule, parsed.torsion)


def classify(model: TwistorModel) -> ClassificationReport:
    """The full classification for n = 4 (eight blown-up points)."""
    cycle = model.cycle
    if cycle.lattice.pairs != 4:
        raise ScheduleError(
            f"classification requires n = 4 conjugate pairs, "
            f"got n = {cycle.lattice.pairs}"
        )
    degrees = anticanonical_degrees(cycle)
    negatives = negative_curves(cycle)
    m = cycle.m
    nef = not negatives
    tau = None
    dim_minus2ks = None
    dim_antican_z = None
    if nef:
        if cycle.torsion is None:
            raise TorsionRequiredError(
                "the fundamental system is nef, so its dimension depends "
                "on the torsion order tau of the normal sheaf on the "
                "cycle; supply a torsion record"
            )
        tau = torsion_tau(cycle.torsion)
        case = CASE_NEF
        h0 = 3 if tau == 1 else 2
        base = "free" if tau == 1 else "C"
        a = 1 if tau == math.inf else 2
        deg1 = 0 if (tau == 1 or cycle.smooth_variant) else m
        lebrun = False
    elif len(negatives) == 1:
        case = CASE_REAL_MINUS_2
        h0, base, a, deg1, lebrun = 3, "C0", 3, 0, False
    elif len(negatives) == 2 and negatives[0][1] == -2:
        first, second = negatives[0][0], negatives[1][0]
        if cycle.classes[first].dot(cycle.classes[second]) != 0:
            raise RealizabilityError(
                "pair-not-disjoint",
                f"the degree -2 conjugate pair {first}, {second} must be "
                "disjoint",
            )
        case = CASE_PAIR_MINUS_2
        h0, base, a, deg1, lebrun = 4, "A+Abar", 3, math.inf, True
    else:
        case = CASE_PAIRS_MINUS_1
        positive_idx = [i for i, d in enumerate(degrees) if d > 0]
        positive = [cycle.order[i] for i in positive_idx]
        for i, p in enumerate(positive):
            for q in positive[i + 1:]:
                if cycle.classes[p].dot(cycle.classes[q]) != 0:
                    raise RealizabilityError(
                        "case-c-structure",
                        f"positive components must be pairwise disjoint; "
                        f"{p}.{q} != 0",
                    )
        negative_names = {name for name, _ in negatives}
        for arc in cyclic_arcs(m, set(positive_idx)):
            in_arc = sum(1 for i in arc if cycle.order[i] in negative_names)
            if in_arc != 1:
                raise RealizabilityError(
                    "case-c-structure",
                    "between consecutive positive components the cycle must "
                    f"carry exactly one negative component, found {in_arc}",
                )
        doubled = CycleLineBundle(tuple(2 * d for d in degrees))
        dim_minus2ks = h0_formula(doubled)
        assert dim_minus2ks == len(positive)
        dim_antican_z = 2 + dim_minus2ks
        h0, base, a, deg1, lebrun = 2, "C", 3, m, False
    chern = model.chern if model.chern is not None else chern_numbers(4)
    report = ClassificationReport(
        case=case,
        nef=nef,
        nef_and_big=nef and chern.c1_cubed > 0,
        negative_curves=negatives,
        cycle_length=m,
        smooth_anticanonical=cycle.smooth_variant,
        h0_fundamental=h0,
        dim_fundamental_system=h0 - 1,
        base_locus=base,
        degree_one_count=deg1,
        algebraic_dimension=a,
        lebrun=lebrun,
        tau=tau,
        dim_minus2KS=dim_minus2ks,
        dim_antican_Z=dim_antican_z,
    )
    return check_report(report)


def h0_pluri_fundamental(m: int, h1: int = 0) -> int:
    """h0(F^m) = chi + h1 = (m + 1) + h1 on the n = 4 twistor space."""
    if m < 1:
        raise ValueError("the power m must be positive")
    if h1 < 0:
        raise ValueError("h1 is non-negative")
    return m + 1 + h1


# -- enumeration ------------------------------------------------------------


@dataclass(frozen=True)
class EnumeratedEntry:
    """One representative configuration discovered by the enumerator."""

    schedule: BlowupSchedule
    document: dict
    digest: str
    shape: tuple
    report: ClassificationReport | None
    error: str | None


@dataclass(frozen=True)
class EnumerationResult:
    entries: tuple[EnumeratedEntry, ...]
    visited: int
    exhausted: bool


def _shape_key(cycle: AnticanonicalCycle) -> tuple:
    return tuple(
        sorted(
            (cycle.classes[name].self_intersection, cycle.is_real(name))
            for name in cycle.order
        )
    )


def _candidate_steps(state) -> list[BlowupStep]:
    """All step locations available on the current cycle, one per
    conjugation orbit."""
    initial = state.schedule.initial_type
    out = []
    for name in state.order:
        if initial == "II" and name == "F":
            continue
        if state.conj[name] < name:
            continue
        out.append(BlowupStep.smooth(name))
    m = len(state.order)
    if m == 2:
        out.append(BlowupStep.node(tuple(state.order)))
    else:
        seen = set()
        for i in range(m):
            c, d = state.order[i], state.order[(i + 1) % m]
            edge = tuple(sorted((c, d)))
            if edge in seen:
                continue
            seen.add(edge)
            mirror = tuple(sorted((state.conj[c], state.conj[d])))
            if mirror == edge or mirror < edge:
                continue
            out.append(BlowupStep.node(edge))
    for j in sorted(state.hosts):
        host = state.hosts[j]
        if host is None:  # node step: its exceptional is itself a component
            continue
        if j in state.consumed:
            continue
        out.append(BlowupStep.infinitely_near(j, host))
    return out


def _schedules(initial_type: str, depth: int, prefix=()):
    """DFS over all schedules of the given depth starting from a prefix."""
    def rec(steps):
        if len(steps) == depth:
            yield BlowupSchedule(initial_type, tuple(steps))
            return
        state = _realize_prefix(initial_type, steps)
        for candidate in _candidate_steps(state):
            yield from rec(steps + [candidate])

    yield from rec(list(prefix))


def _classify_schedule(schedule: BlowupSchedule) -> EnumeratedEntry:
    cycle = realize_cycle(schedule)
    shape = _shape_key(cycle)
    # a nef configuration needs a torsion choice; tau = 1 is the generic
    # free-pencil representative and keeps emitted documents classifiable
    torsion = TorsionSpec.finite(1) if is_nef(cycle) else None
    model = TwistorModel(
        schedule, cycle.with_torsion(torsion), chern_numbers(schedule.pairs)
    )
    try:
        report = classify(model)
        error = None
    except RealizabilityError as exc:
        report = None
        error = exc.tag
    doc = schema.document_for(schedule=schedule, torsion=torsion)
    return EnumeratedEntry(
        schedule=schedule,
        document=doc,
        digest=schema.document_digest(doc),
        shape=shape,
        report=report,
        error=error,
    )


_CASE_ORDER = {
    CASE_NEF: 0,
    CASE_REAL_MINUS_2: 1,
    CASE_PAIR_MINUS_2: 2,
    CASE_PAIRS_MINUS_1: 3,
}


def _entry_sort_key(entry: EnumeratedEntry):
    rank = _CASE_ORDER.get(entry.report.case, 5) if entry.report else 6
    return (
        rank,
        entry.error or "",
        entry.shape,
        entry.schedule.initial_type,
        entry.digest,
    )


def enumerate_configurations(
    max_reports: int | None = None,
    initial_types: tuple[str, ...] = ("I", "II"),
    depth: int = 4,
) -> EnumerationResult:
    """Walk every schedule of the given depth over the two stable initial
    cycles, classify each, and keep one representative per distinct
    (initial type, weighted-shape, case) key.

    The two-conjugate-(1,1)-curves initial cycle is omitted by default:
    blowing its nodes first is the elementary transform of a type I
    schedule, and never blowing them realizes configurations already
    covered.  ``max_reports`` caps the number of kept entries; the result
    records whether the walk exhausted the space.
    """
    if max_reports is not None and max_reports < 1:
        raise ValueError("max_reports must be positive when given")
    found: dict[tuple, EnumeratedEntry] = {}
    visited = 0
    exhausted = True
    for initial in initial_types:
        for schedule in _schedules(initial, depth):
            if max_reports is not None and len(found) >= max_reports:
                exhausted = False
                break
            visited += 1
            entry = _classify_schedule(schedule)
            case = entry.report.case if entry.report else f"error:{entry.error}"
            key = (initial, entry.shape, case)
            if key not in found:
                found[key] = entry
        else:
            continue
        break
    entries = tuple(sorted(found.values(), key=_entry_sort_key))
    return EnumerationResult(entries=entries, visited=visited, exhausted=exhausted)
