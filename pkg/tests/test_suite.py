"""Tests for the end-to-end verification suite.

Covers the default full run (every item certified), the report schema and
its byte-for-byte determinism, the recorded table-entry discrepancy, note
plumbing, sensitivity to injected wrong references, and the two degraded
modes: max_depth = 0 (inconclusive, never falsely failed) and a widened
region (failed, with concrete witnesses).
"""

import json
from fractions import Fraction as F

from tiltcert.certify import Region, default_region, SIDE_LEFT, SIDE_RIGHT
from tiltcert.kernel import BivariatePoly, RationalInterval, poly_eval
from tiltcert.suite import (
    ORIENTATION_SAMPLE,
    REFERENCE_MU,
    REFERENCE_NU,
    REFERENCE_TABLE_IM,
    REFERENCE_TWISTED,
    REFERENCE_Z,
    Report,
    ReportItem,
    verify_all,
    verify_half_plane,
    verify_lemma_computation,
    verify_skyscraper_condition,
)

A = BivariatePoly.alpha()
B = BivariatePoly.beta()


def C(x):
    return BivariatePoly.constant(F(x))


EXPECTED_NAMES = [
    "resolution alternating sum",
    "spinor sequence sum",
    "twisted-ch O(-1)",
    "twisted-ch O",
    "twisted-ch O(1)",
    "twisted-ch S(-1)",
    "mu O(-1)",
    "nu O(-1)",
    "mu O",
    "nu O",
    "mu O(1)",
    "nu O(1)",
    "mu S(-1)",
    "nu S(-1)",
    "Z O(-1) real part",
    "Z O(-1) imaginary part",
    "Z O real part",
    "Z O imaginary part",
    "Z O(1) real part",
    "Z O(1) imaginary part",
    "Z S(-1) real part",
    "Z S(-1) imaginary part",
    "half-plane A re O(1)",
    "half-plane A re O[1]",
    "half-plane A re S(-1)[2]",
    "half-plane A re O(-1)[3]",
    "half-plane B cross O(1)",
    "half-plane B cross O[1]",
    "half-plane B cross S(-1)[2]",
    "half-plane B cross O(-1)[3]",
    "half-plane B orientation",
    "im sign S(-1)[2]",
    "im sign O[1] alpha<=-beta",
    "im sign O[1] alpha>=-beta",
    "skyscraper base (0,2,4,1)",
    "skyscraper base (0,1,0,1)",
    "skyscraper table (0,2,4,1)",
    "skyscraper table (0,1,0,1)",
    "skyscraper derivation coverage",
    "skyscraper direct (0,0,0,1)",
    "skyscraper direct (0,0,1,1)",
    "skyscraper direct (0,0,2,1)",
    "skyscraper direct (0,0,3,1)",
    "skyscraper direct (0,0,4,1)",
    "skyscraper direct (0,1,0,1)",
    "skyscraper direct (0,1,1,1)",
    "skyscraper direct (0,1,2,1)",
    "skyscraper direct (0,1,3,1)",
    "skyscraper direct (0,1,4,1)",
    "skyscraper direct (0,2,4,1)",
    "mu sign S(-1)",
    "mu sign O",
    "mu sign O(-1)",
    "mu sign O(1)",
    "bg line-bundle equality",
]


def _by_name(report):
    return {item.name: item for item in report.items}


def test_default_run_everything_certified():
    report = verify_all()
    assert report.status == "certified"
    assert [item.name for item in report.items] == EXPECTED_NAMES
    assert all(item.status == "certified" for item in report.items)
    # on the honest region, no item ever needs a witness
    assert all(item.witness is None for item in report.items)


def test_layer_reports_standalone():
    lemma = verify_lemma_computation()
    assert lemma.status == "certified" and len(lemma.items) == 20
    half = verify_half_plane()
    assert half.status == "certified" and len(half.items) == 9
    sky = verify_skyscraper_condition()
    assert sky.status == "certified" and len(sky.items) == 19


def test_report_json_schema():
    report = verify_all()
    payload = json.loads(report.to_json())
    assert set(payload) == {"status", "items"}
    assert payload["status"] == "certified"
    assert len(payload["items"]) == 55
    for entry in payload["items"]:
        assert set(entry) == {
            "name",
            "status",
            "factors",
            "witness",
            "boxes",
            "depth",
            "notes",
        }
        assert entry["witness"] is None
        assert isinstance(entry["boxes"], int) and isinstance(entry["depth"], int)


def test_report_json_deterministic():
    first = verify_all().to_json()
    second = verify_all().to_json()
    assert first == second


def test_table_discrepancy_recorded_not_failed():
    # the quoted Im entry for (0,1,0,1) disagrees with the additivity result;
    # the run stays certified but the difference is written into the notes.
    items = _by_name(verify_all())
    table = items["skyscraper table (0,1,0,1)"]
    assert table.status == "certified"
    assert table.notes == [
        "quoted table entry 3*a^3 - 3*a*b^2 + a differs from additivity "
        "result -3*a^3 + 3*a*b^2 + a; both are positive on the region"
    ]
    base = items["skyscraper base (0,1,0,1)"]
    assert base.notes == [
        "Im form derived by additivity, not the quoted table entry"
    ]
    # the quoted and additive forms really differ yet share their sign at a
    # sample point, exactly as the note claims
    quoted = REFERENCE_TABLE_IM[(0, 1, 0, 1)]
    additive = A * (C(1) + 3 * (B**2 - A**2))
    a0, b0 = F(1, 8), F(-1, 4)
    assert poly_eval(quoted, a0, b0) != poly_eval(additive, a0, b0)
    assert poly_eval(quoted, a0, b0) > 0 and poly_eval(additive, a0, b0) > 0
    # the matching entry carries no such note
    assert items["skyscraper table (0,2,4,1)"].notes == []


def test_orientation_note_reports_sample_values():
    item = _by_name(verify_all())["half-plane B orientation"]
    assert item.status == "certified"
    alpha, beta = ORIENTATION_SAMPLE
    assert (alpha, beta) == (F(1, 8), F(-3, 8))
    assert item.notes[0] == (
        "sample (alpha, beta) = (1/8, -3/8): cross O[1] x O(1) = -5/512; "
        "cross O[1] x O[1] = 0; cross O[1] x S(-1)[2] = -1/512; "
        "cross O[1] x O(-1)[3] = -1/512"
    )
    assert item.notes[1] == (
        "all cross products <= 0: generators lie clockwise of Z(O[1])"
    )


def test_mu_sign_and_bg_notes():
    items = _by_name(verify_all())
    assert (
        "mu(O) = -beta/alpha is nonnegative on beta <= 0"
        in items["mu sign O"].notes
    )
    assert items["bg line-bundle equality"].notes == [
        "350 grid points, margin exactly 0 at each"
    ]


def test_derivation_coverage_notes_all_eleven():
    item = _by_name(verify_all())["skyscraper derivation coverage"]
    assert item.status == "certified"
    assert len(item.notes) == 11
    prefixes = sorted(note.split(":")[0] for note in item.notes)
    assert prefixes == sorted(
        [
            "(0,0,0,1)",
            "(0,0,1,1)",
            "(0,0,2,1)",
            "(0,0,3,1)",
            "(0,0,4,1)",
            "(0,1,0,1)",
            "(0,1,1,1)",
            "(0,1,2,1)",
            "(0,1,3,1)",
            "(0,1,4,1)",
            "(0,2,4,1)",
        ]
    )
    assert "(0,1,0,1): base" in item.notes
    assert "(0,2,4,1): base" in item.notes
    assert (
        "(0,0,4,1): (0,2,4,1) [remove 2 x S(-1)[2]] on full" in item.notes
    )


def test_wrong_z_reference_fails_named_item():
    reference = {
        "twisted": REFERENCE_TWISTED,
        "mu": REFERENCE_MU,
        "nu": REFERENCE_NU,
        "z": dict(REFERENCE_Z),
    }
    re_ref, im_ref = reference["z"]["S(-1)"]
    reference["z"]["S(-1)"] = (re_ref + C(F(1, 7)), im_ref)
    report = verify_all(reference=reference)
    assert report.status == "failed"
    items = _by_name(report)
    assert items["Z S(-1) real part"].status == "failed"
    assert items["Z S(-1) imaginary part"].status == "certified"
    untouched = [
        item
        for item in report.items
        if item.name != "Z S(-1) real part"
    ]
    assert all(item.status == "certified" for item in untouched)


def test_wrong_twisted_reference_names_component():
    reference = {
        "twisted": dict(REFERENCE_TWISTED),
        "mu": REFERENCE_MU,
        "nu": REFERENCE_NU,
        "z": REFERENCE_Z,
    }
    t0, t1, t2, t3 = reference["twisted"]["O"]
    reference["twisted"]["O"] = (t0, t1, t2 + C(F(1, 5)), t3)
    items = _by_name(verify_lemma_computation(reference=reference))
    bad = items["twisted-ch O"]
    assert bad.status == "failed"
    assert bad.notes == ["component ch2 differs"]
    assert items["twisted-ch S(-1)"].status == "certified"


def test_wrong_table_reference_fails_table_item():
    table = dict(REFERENCE_TABLE_IM)
    table[(0, 2, 4, 1)] = table[(0, 2, 4, 1)] + A
    report = verify_skyscraper_condition(reference_table=table)
    items = _by_name(report)
    assert items["skyscraper table (0,2,4,1)"].status == "failed"
    assert report.status == "failed"


def test_max_depth_zero_inconclusive_never_failed():
    report = verify_all(max_depth=0)
    assert report.status == "inconclusive"
    statuses = {item.status for item in report.items}
    assert "failed" not in statuses
    items = _by_name(report)
    coverage = items["skyscraper derivation coverage"]
    assert coverage.status == "inconclusive"
    assert any(
        note.startswith("sign fact not established:") for note in coverage.notes
    )
    # subdivision-dependent items report why they could not finish
    sliced = items["im sign S(-1)[2]"]
    assert sliced.status == "inconclusive"
    assert any("subdivision disabled" in note for note in sliced.notes)


def _widened_region():
    return Region(
        beta=RationalInterval(F(-1, 2), F(1, 2)),
        alpha=RationalInterval(F(0), F(1, 3)),
        beta_open=(False, False),
        alpha_open=(True, True),
    )


def test_widened_region_fails_with_witnesses():
    report = verify_all(region=_widened_region())
    assert report.status == "failed"
    failed = [item for item in report.items if item.status == "failed"]
    assert failed
    for item in failed:
        if item.name == "skyscraper derivation coverage":
            # derived, not pointwise: fails because a sign fact fails
            continue
        assert item.witness is not None
        alpha, beta = item.witness
        assert _widened_region().contains(alpha, beta)
    by_name = _by_name(report)
    assert by_name["half-plane A re O[1]"].status == "failed"
    # the witness round-trips through JSON as exact strings
    payload = json.loads(report.to_json())
    entry = next(
        e for e in payload["items"] if e["name"] == "half-plane A re O[1]"
    )
    assert set(entry["witness"]) == {"alpha", "beta"}
    assert F(entry["witness"]["alpha"]) > 0


def test_report_structures_round_trip():
    item = ReportItem(
        name="example",
        status="failed",
        factors=[],
        witness=(F(1, 6), F(-1, 4)),
        boxes=3,
        depth=2,
        notes=["note"],
    )
    payload = item.to_json_dict()
    assert payload["witness"] == {"alpha": "1/6", "beta": "-1/4"}
    report = Report("failed", [item])
    decoded = json.loads(report.to_json())
    assert decoded["status"] == "failed"
    assert decoded["items"][0]["boxes"] == 3
