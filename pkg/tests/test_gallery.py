import math

import pytest

from banachlab.builders import l1_group_algebra
from banachlab.exceptions import ClaimFailed, NotInF
from banachlab.gallery import CASES, Claim, _run_claim, failed_claims, raise_for_failures, run_gallery, select_cases

CLAIM_COUNTS = {
    "ex1": 5,
    "ex1-extra": 2,
    "ex2": 4,
    "ex2-extra": 3,
    "ex2-weighted": 2,
    "ex3": 2,
    "ex7": 3,
    "lemmas": 6,
    "lifts": 4,
}


def test_case_layout():
    assert {case_id: len(case.claims) for case_id, case in CASES.items()} == CLAIM_COUNTS
    assert CASES["ex3"].notes
    assert CASES["ex7"].notes


@pytest.mark.parametrize(
    "filter, expected",
    [
        ("ex1", ["ex1", "ex1-extra"]),
        ("ex2", ["ex2", "ex2-extra", "ex2-weighted"]),
        ("ex2-weighted", ["ex2-weighted"]),
        ("lifts", ["lifts"]),
    ],
)
def test_select_cases(filter, expected):
    assert [case.id for case in select_cases(filter)] == expected


def test_select_all_cases():
    assert len(select_cases()) == len(CASES)
    assert len(select_cases("all")) == len(CASES)


def test_unknown_filter():
    with pytest.raises(ValueError, match="no gallery case"):
        select_cases("ex9")


def test_filtered_run_is_deterministic():
    first = run_gallery("ex2-weighted", seed=3)
    second = run_gallery("ex2-weighted", seed=3)
    assert first == second
    assert first["seed"] == 3
    assert first["passed"]
    assert [case["id"] for case in first["cases"]] == ["ex2-weighted"]


def test_ex7_counterexamples_hold():
    report = run_gallery("ex7")
    assert report["passed"], list(failed_claims(report))


def test_error_inside_a_check_fails_the_claim(z2, rng):
    def check(algebra, rng):
        raise NotInF("outside")

    result = _run_claim(Claim("raises", check, 1e-9), z2, rng)
    assert not result.passed
    assert result.margin == -math.inf
    assert result.detail.startswith("NotInF")


def test_margin_must_clear_ten_tolerances(rng):
    algebra = l1_group_algebra(2)
    assert not _run_claim(Claim("thin", lambda a, r: (5e-9, ""), 1e-9), algebra, rng).passed
    assert _run_claim(Claim("wide", lambda a, r: (2e-8, ""), 1e-9), algebra, rng).passed


def test_raise_for_failures():
    report = {
        "cases": [
            {"id": "ex1", "claims": [{"description": "fine", "passed": True, "margin": 1.0}]},
            {"id": "ex2", "claims": [{"description": "broken", "passed": False, "margin": -0.5}]},
        ]
    }
    assert list(failed_claims(report)) == [("ex2", "broken", -0.5)]
    with pytest.raises(ClaimFailed):
        raise_for_failures(report)


@pytest.mark.slow
def test_full_gallery_passes():
    report = run_gallery()
    assert report["passed"], list(failed_claims(report))
    assert sum(len(case["claims"]) for case in report["cases"]) == sum(CLAIM_COUNTS.values())
