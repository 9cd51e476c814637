"""Algebraic-dimension classification and the configuration enumerator."""

import dataclasses
import math

import pytest

from twistor4 import schema
from twistor4.classify import (
    CASE_NEF,
    CASE_PAIR_MINUS_2,
    CASE_PAIRS_MINUS_1,
    CASE_REAL_MINUS_2,
    anticanonical_degrees,
    check_report,
    classify,
    enumerate_configurations,
    h0_pluri_fundamental,
    is_nef,
    model_from_document,
    model_from_schedule,
    negative_curves,
)
from twistor4.cycles import TorsionSpec
from twistor4.errors import (
    RealizabilityError,
    ScheduleError,
    TorsionRequiredError,
)
from twistor4.lattice import (
    AnticanonicalCycle,
    BlowupSchedule,
    BlowupStep,
    SurfaceLattice,
    realize_cycle,
)

S, N, INF = BlowupStep.smooth, BlowupStep.node, BlowupStep.infinitely_near


def _schedule_case_a():
    return BlowupSchedule("II", (S("C0"),) * 4)


def _schedule_case_b():
    return BlowupSchedule("I", (S("G"),) * 4)


def _schedule_case_c():
    return BlowupSchedule("I", (N(("F", "G")), N(("F", "E1")), S("G"), S("G")))


def _schedule_nef():
    return BlowupSchedule("I", (S("F"), S("F"), S("G"), S("G")))


# -- the golden configurations ------------------------------------------------

def test_case_a_report():
    report = classify(model_from_schedule(_schedule_case_a()))
    assert report.case == CASE_REAL_MINUS_2
    assert report.case_letter == "a"
    assert report.negative_curves == (("C0", -2),)
    assert not report.nef
    assert report.h0_fundamental == 3
    assert report.dim_fundamental_system == 2
    assert report.base_locus == "C0"
    assert report.algebraic_dimension == 3
    assert report.degree_one_count == 0
    assert not report.lebrun
    assert report.tau is None
    assert report.dim_minus2KS is None and report.dim_antican_Z is None


def test_case_b_report():
    report = classify(model_from_schedule(_schedule_case_b()))
    assert report.case == CASE_PAIR_MINUS_2
    assert report.case_letter == "b"
    assert report.negative_curves == (("G", -2), ("Gbar", -2))
    assert report.h0_fundamental == 4
    assert report.dim_fundamental_system == 3
    assert report.base_locus == "A+Abar"
    assert report.algebraic_dimension == 3
    assert report.degree_one_count == math.inf
    assert report.lebrun
    assert report.as_dict()["degree_one_count"] == "infinite"


def test_case_c_report():
    report = classify(model_from_schedule(_schedule_case_c()))
    assert report.case == CASE_PAIRS_MINUS_1
    assert report.case_letter == "c"
    assert report.negative_curves == (("G", -1), ("Gbar", -1))
    assert report.cycle_length == 8
    assert report.h0_fundamental == 2
    assert report.dim_fundamental_system == 1
    assert report.base_locus == "C"
    assert report.algebraic_dimension == 3
    assert report.degree_one_count == 8
    assert report.dim_minus2KS == 2
    assert report.dim_antican_Z == 4
    assert not report.lebrun


@pytest.mark.parametrize(
    "torsion,h0,base,a,deg1",
    [
        (TorsionSpec.finite(1), 3, "free", 2, 0),
        (TorsionSpec.finite(2), 2, "C", 2, 4),
        (TorsionSpec.finite(5), 2, "C", 2, 4),
        (TorsionSpec.non_torsion(), 2, "C", 1, 4),
    ],
)
def test_nef_reports_by_torsion(torsion, h0, base, a, deg1):
    report = classify(model_from_schedule(_schedule_nef(), torsion=torsion))
    assert report.case == CASE_NEF
    assert report.case_letter is None
    assert report.nef and not report.nef_and_big
    assert report.negative_curves == ()
    assert report.h0_fundamental == h0
    assert report.base_locus == base
    assert report.algebraic_dimension == a
    assert report.degree_one_count == deg1
    assert report.tau == torsion.tau


def test_nef_without_torsion_is_refused():
    with pytest.raises(TorsionRequiredError):
        classify(model_from_schedule(_schedule_nef()))


def test_smooth_anticanonical_documents_classify_as_nef():
    doc = schema.document_for(
        n=4,
        smooth_anticanonical=True,
        torsion=TorsionSpec.finite(2),
    )
    report = classify(model_from_document(doc))
    assert report.case == CASE_NEF
    assert report.smooth_anticanonical
    assert report.cycle_length == 1
    # the smooth member has no cycle components of positive degree to count
    assert report.degree_one_count == 0
    assert report.tau == 2


def test_classification_requires_four_pairs():
    model = model_from_schedule(BlowupSchedule("I", (S("G"),)))
    with pytest.raises(ScheduleError):
        classify(model)
    model = model_from_schedule(BlowupSchedule("I", (S("G"),) * 5))
    with pytest.raises(ScheduleError):
        classify(model)


# -- degree helpers ------------------------------------------------------------

def test_anticanonical_degrees_and_nef():
    nef_cycle = realize_cycle(_schedule_nef())
    assert anticanonical_degrees(nef_cycle) == (0, 0, 0, 0)
    assert is_nef(nef_cycle)
    case_a = realize_cycle(_schedule_case_a())
    assert anticanonical_degrees(case_a) == (2, -2)
    assert not is_nef(case_a)


def test_negative_curves_on_goldens():
    assert negative_curves(realize_cycle(_schedule_nef())) == ()
    assert negative_curves(realize_cycle(_schedule_case_a())) == (("C0", -2),)
    assert negative_curves(realize_cycle(_schedule_case_b())) == (
        ("G", -2),
        ("Gbar", -2),
    )
    assert negative_curves(realize_cycle(_schedule_case_c())) == (
        ("G", -1),
        ("Gbar", -1),
    )


# -- realizability rejections ---------------------------------------------------

def test_degree_below_minus_two_rejected():
    schedule = BlowupSchedule(
        "II", (S("C0"), N(("F", "C0")), N(("E3", "F")), N(("E5", "F"))),
    )
    cycle = realize_cycle(schedule)
    assert min(cycle.degrees()) == -4
    with pytest.raises(RealizabilityError) as info:
        classify(model_from_schedule(schedule))
    assert info.value.tag == "degree-below-minus-2"
    with pytest.raises(RealizabilityError):
        negative_curves(cycle)


def test_unrealizable_negative_pattern_rejected():
    schedule = BlowupSchedule(
        "II", (S("C0"), N(("F", "C0")), S("E3"), N(("E3", "F"))),
    )
    assert realize_cycle(schedule).degrees() == (-2, 1, -1, 2, -1, 1)
    with pytest.raises(RealizabilityError) as info:
        classify(model_from_schedule(schedule))
    assert info.value.tag == "negative-pattern"


def test_broken_case_c_structure_rejected():
    schedule = BlowupSchedule("II", (S("C0"), N(("F", "C0")), S("E3"), S("E3")))
    assert realize_cycle(schedule).degrees() == (0, -1, 2, -1)
    with pytest.raises(RealizabilityError) as info:
        classify(model_from_schedule(schedule))
    assert info.value.tag == "case-c-structure"


def test_meeting_minus_two_pair_rejected():
    # no blow-up schedule produces a meeting conjugate -2 pair, so build the
    # configuration synthetically: classify must still refuse it
    lattice = SurfaceLattice(4)
    f = lattice.fibre()
    g = lattice.divisor(1, 0, (-1, -1, -1, 0, 0, 0, -1, 0))
    gbar = lattice.divisor(1, 0, (-1, -1, 0, -1, 0, 0, 0, -1))
    assert g.dot(gbar) == -2
    cycle = AnticanonicalCycle(
        lattice=lattice,
        order=("F", "G", "Fbar", "Gbar"),
        classes={"F": f, "G": g, "Fbar": f, "Gbar": gbar},
        conjugate_names={"F": "Fbar", "Fbar": "F", "G": "Gbar", "Gbar": "G"},
    )
    assert sum(cycle.degrees()) == 0
    model = model_from_schedule(_schedule_case_b())
    model.cycle = cycle
    with pytest.raises(RealizabilityError) as info:
        classify(model)
    assert info.value.tag == "pair-not-disjoint"


# -- report consistency ---------------------------------------------------------

def test_check_report_rejects_inconsistent_reports():
    good = classify(model_from_schedule(_schedule_case_a()))
    assert check_report(good) is good
    with pytest.raises(AssertionError):
        check_report(dataclasses.replace(good, algebraic_dimension=2))
    with pytest.raises(AssertionError):
        check_report(dataclasses.replace(good, nef=True))
    with pytest.raises(AssertionError):
        check_report(dataclasses.replace(good, h0_fundamental=5))
    with pytest.raises(AssertionError):
        check_report(dataclasses.replace(good, nef_and_big=True))


def test_report_as_dict_round_trips_fields():
    report = classify(model_from_schedule(_schedule_case_c()))
    data = report.as_dict()
    assert data["case"] == CASE_PAIRS_MINUS_1
    assert data["negative_curves"] == [["G", -1], ["Gbar", -1]]
    assert data["dim_minus2KS"] == 2
    assert set(data) == {f.name for f in dataclasses.fields(report)}


def test_h0_pluri_fundamental():
    assert [h0_pluri_fundamental(m) for m in (1, 2, 3, 10)] == [2, 3, 4, 11]
    assert h0_pluri_fundamental(3, h1=2) == 6
    with pytest.raises(ValueError):
        h0_pluri_fundamental(0)
    with pytest.raises(ValueError):
        h0_pluri_fundamental(2, h1=-1)


# -- the nodes-first route through the elementary transform ---------------------

def test_nodes_first_schedule_routes_through_the_transform():
    schedule = BlowupSchedule("III", (N(("A", "Abar")), S("A"), S("A"), S("A")))
    model = model_from_schedule(schedule)
    # the realized cycle is the four-component form, not the direct one
    assert set(model.cycle.order) == {"F", "G", "Fbar", "Gbar"}
    report = classify(model)
    assert report.case == CASE_PAIRS_MINUS_1
    assert report.cycle_length == 4
    assert report.dim_minus2KS == 2


def test_type_iii_without_node_realizes_directly():
    schedule = BlowupSchedule("III", (S("A"),) * 4)
    model = model_from_schedule(schedule, torsion=TorsionSpec.finite(1))
    assert set(model.cycle.order) == {"A", "Abar"}
    report = classify(model)
    assert report.case == CASE_NEF
    assert report.h0_fundamental == 3


# -- enumeration -----------------------------------------------------------------

@pytest.fixture(scope="module")
def enumeration():
    return enumerate_configurations()


def test_enumeration_exhausts_the_depth_four_space(enumeration):
    assert enumeration.exhausted
    assert enumeration.visited == 1480
    assert len(enumeration.entries) == 58


def test_enumeration_case_census(enumeration):
    by_case = {}
    for entry in enumeration.entries:
        key = entry.report.case if entry.report else f"error:{entry.error}"
        by_case[key] = by_case.get(key, 0) + 1
    assert by_case == {
        CASE_NEF: 6,
        CASE_REAL_MINUS_2: 6,
        CASE_PAIR_MINUS_2: 9,
        CASE_PAIRS_MINUS_1: 8,
        "error:case-c-structure": 9,
        "error:degree-below-minus-2": 7,
        "error:negative-pattern": 13,
    }


def test_enumeration_is_deterministic(enumeration):
    again = enumerate_configurations()
    assert [e.digest for e in again.entries] == [
        e.digest for e in enumeration.entries
    ]
    assert [e.document for e in again.entries] == [
        e.document for e in enumeration.entries
    ]


def test_enumeration_entries_are_sorted_and_digested(enumeration):
    ranks = []
    order = {CASE_NEF: 0, CASE_REAL_MINUS_2: 1, CASE_PAIR_MINUS_2: 2,
             CASE_PAIRS_MINUS_1: 3}
    for entry in enumeration.entries:
        ranks.append(order[entry.report.case] if entry.report else 6)
        assert entry.digest == schema.document_digest(entry.document)
    assert ranks == sorted(ranks)


def test_enumeration_documents_reclassify_identically(enumeration):
    for entry in enumeration.entries:
        if entry.report is None:
            with pytest.raises(RealizabilityError) as info:
                classify(model_from_document(entry.document))
            assert info.value.tag == entry.error
        else:
            assert classify(model_from_document(entry.document)) == entry.report


def test_enumeration_reports_pass_the_consistency_oracle(enumeration):
    checked = 0
    for entry in enumeration.entries:
        if entry.report is not None:
            check_report(entry.report)
            checked += 1
    assert checked == 29


def test_enumeration_cap(enumeration):
    capped = enumerate_configurations(max_reports=10)
    assert not capped.exhausted
    assert len(capped.entries) == 10
    assert capped.visited < enumeration.visited
    with pytest.raises(ValueError):
        enumerate_configurations(max_reports=0)


def test_enumeration_distinct_degree_one_counts(enumeration):
    counts = sorted(
        entry.report.degree_one_count
        for entry in enumeration.entries
        if entry.report and entry.report.case == CASE_PAIRS_MINUS_1
    )
    # every even cycle length from 4 to 12 occurs among the kept shapes
    assert set(counts) == {4, 6, 8, 10, 12}
