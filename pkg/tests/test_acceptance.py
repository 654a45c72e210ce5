"""Acceptance gate: one test and one printed status line per criterion.

The heavy lifting lives in cstre.verification; each test here runs one check,
prints its verdict outside pytest's capture, and fails if the check failed.
"""

from cstre.verification import (
    CHECKS,
    check_large_q_stability,
    check_limits_and_conventions,
    check_ppt_oracle,
    check_q2_crossings,
    check_sandwich_spectrum,
    check_threshold_law,
    check_von_neumann_bound,
)

TOTAL = len(CHECKS)


def report(index, result, capsys):
    status = "PASS" if result.passed else "FAIL"
    with capsys.disabled():
        print(
            "ACCEPTANCE %d/%d %s: %s (%s)"
            % (index, TOTAL, result.name, status, result.detail),
            flush=True,
        )
    assert result.passed, "%s: %s" % (result.name, result.detail)


def test_criterion_1_threshold_law(capsys):
    report(1, check_threshold_law(), capsys)


def test_criterion_2_q2_crossings(capsys):
    report(2, check_q2_crossings(), capsys)


def test_criterion_3_von_neumann_bound(capsys):
    report(3, check_von_neumann_bound(), capsys)


def test_criterion_4_sandwich_spectrum(capsys):
    report(4, check_sandwich_spectrum(), capsys)


def test_criterion_5_ppt_oracle(capsys):
    report(5, check_ppt_oracle(), capsys)


def test_criterion_6_limits_and_conventions(capsys):
    report(6, check_limits_and_conventions(), capsys)


def test_criterion_7_large_q_stability(capsys):
    report(7, check_large_q_stability(), capsys)


def test_check_registry_is_complete():
    names = [name for name, _ in CHECKS]
    assert names == [
        "threshold-law",
        "q2-crossings",
        "von-neumann-bound",
        "sandwich-spectrum",
        "ppt-oracle",
        "limits-and-conventions",
        "large-q-stability",
    ]
