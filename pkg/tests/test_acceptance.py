"""Acceptance suite: one test per criterion, each printing its verdict.

Run with ``pytest tests/test_acceptance.py -v`` (add ``-s`` to see the
pass lines as they happen).  Every tolerance and time budget is pinned here;
all mathematical comparisons are exact unless a criterion states a decimal
tolerance.
"""

import json
import math
import time
from fractions import Fraction

from bmtk import Method, closed_form_row, l_operator, recu1_row, recu4_residual, rows
from bmtk.boundcheck import (
    check_endpoint_ratios,
    check_growth_lower_bound,
    check_growth_upper_bound,
    check_predecessor_bound,
    check_reflected_ratio_gap,
    check_strict_growth_bound,
    check_successor_ratio_bound,
)
from bmtk.cli import main
from bmtk.polyident import run_identity_suite
from bmtk.quadoracle import quartic_integral
from bmtk.seqprops import is_log_concave, is_spiral
from bmtk.scanner import scan

from known_values import LEVEL1_8, ROW_8, dyadics


def _report(num: int, message: str) -> None:
    print(f"criterion {num:02d} PASS: {message}")


def test_criterion_01_row8_reproduction(capsys):
    start = time.perf_counter()
    code = main(["gen", "--m", "8", "--format", "json"])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    assert code == 0
    obj = json.loads(out)
    assert obj["coeffs"] == [f"{num}/2^{exp}" for num, exp in ROW_8]
    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    with capsys.disabled():
        _report(1, f"gen --m 8 reproduces all nine coefficients exactly ({elapsed:.3f}s)")


def test_criterion_02_level_one_iterate():
    start = time.perf_counter()
    level1 = l_operator(closed_form_row(8).coeffs)
    elapsed = time.perf_counter() - start
    assert level1 == dyadics(LEVEL1_8)
    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    _report(2, f"first iterate of the m=8 row matches all nine reference values ({elapsed:.3f}s)")


def test_criterion_03_tightness_ratio_at_100():
    start = time.perf_counter()
    row = closed_form_row(100)
    report = check_growth_lower_bound(row, recu1_row(row))
    elapsed = time.perf_counter() - start
    assert report.all_hold
    # six-decimal rounding of the exact minimum ratio, tolerance 5e-7
    assert abs(report.min_ratio - Fraction(998348, 10**6)) < Fraction(5, 10**7)
    assert elapsed < 5.0, f"took {elapsed:.3f}s"
    _report(3, f"minimum growth ratio at m=100 rounds to 0.998348 ({elapsed:.3f}s)")


def test_criterion_04_scan_replay(tmp_path, capsys):
    ledger = tmp_path / "replay.jsonl"
    start = time.perf_counter()
    code = main(
        ["scan", "--from", "2", "--to", "100", "--depth", "2", "--strict",
         "--ledger", str(ledger), "--format", "json"]
    )
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["all_verified"] is True
    verdicts = {cell["m"]: cell["verdict"] for cell in payload["cells"]}
    assert sorted(verdicts) == list(range(2, 101))
    assert set(verdicts.values()) == {"verified"}
    assert elapsed < 60.0, f"took {elapsed:.3f}s"
    with capsys.disabled():
        _report(4, f"depth-2 strict scan verified for every 2 <= m <= 100 ({elapsed:.3f}s)")


def test_criterion_05_cross_method_equality_to_200():
    start = time.perf_counter()
    reference = rows(Method.CLOSED_FORM, 200)
    for method in (Method.RECU1, Method.RECU2, Method.RECU3):
        for ref, got in zip(reference, rows(method, 200)):
            assert got.coeffs == ref.coeffs, f"{method.value} differs at m={ref.m}"
    for row in reference:
        for i in range(row.m + 2):
            assert recu4_residual(row, i) == 0, f"residual at m={row.m}, i={i}"
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"took {elapsed:.3f}s"
    _report(5, f"four generation routes identical and residual relation zero for m <= 200 ({elapsed:.1f}s)")


def test_criterion_06_boundary_identities_to_500():
    start = time.perf_counter()
    row = closed_form_row(0)
    for m in range(501):
        top = row.coeffs[m]
        assert top.as_fraction() == Fraction(math.comb(2 * m, m), 2**m), f"top at m={m}"
        nxt = recu1_row(row)
        assert nxt.coeffs[0].as_fraction() == (
            Fraction(4 * m + 3, 2 * (m + 1)) * row.coeffs[0].as_fraction()
        ), f"constant-term growth at m={m}"
        row = nxt
    elapsed = time.perf_counter() - start
    _report(6, f"both boundary identities hold exactly for m <= 500 ({elapsed:.1f}s)")


def test_criterion_07_inequality_suite_to_200():
    start = time.perf_counter()
    chain = rows(Method.RECU1, 201)
    for m in range(2, 201):
        row, nxt = chain[m], chain[m + 1]
        for report in (
            check_strict_growth_bound(row, nxt),
            check_successor_ratio_bound(row),
            check_growth_upper_bound(row, nxt),
            check_predecessor_bound(row),
            check_reflected_ratio_gap(m),
            check_endpoint_ratios(row),
        ):
            assert report.all_hold, f"{report.bound_id} fails at m={m}"
    elapsed = time.perf_counter() - start
    _report(7, f"inequality suite all_hold for 2 <= m <= 200 ({elapsed:.1f}s)")


def test_criterion_08_identity_suite():
    start = time.perf_counter()
    suite = run_identity_suite(grid_bound=50)
    elapsed = time.perf_counter() - start
    assert len(suite) == 6
    for item in suite:
        assert item["equal"], f"{item['identity']} not equal"
        assert item["grid_ok"] in (None, True), f"{item['identity']} grid failed"
    assert elapsed < 10.0, f"took {elapsed:.3f}s"
    _report(8, f"all six identities equal, lattice evidence clean to 50 ({elapsed:.2f}s)")


def test_criterion_09_counterexample_fidelity():
    spiral_not_lc = (2, 10, 3, 1)
    lc_not_spiral = (3, 5, 4, 2, 1)
    assert is_spiral(spiral_not_lc).holds
    assert not is_log_concave(spiral_not_lc).holds
    assert is_log_concave(lc_not_spiral).holds
    assert not is_spiral(lc_not_spiral).holds
    _report(9, "both separating examples get exactly the expected verdict pairs")


def test_criterion_10_quadrature_identity():
    start = time.perf_counter()
    for m in range(6):
        for a in (-0.5, 0.0, 0.5, 1.0, 2.0, 10.0):
            result = quartic_integral(m, a, tol=1e-10)
            assert result.relative_deviation < 1e-8, (m, a)
    anchor0 = quartic_integral(0, 1.0, tol=1e-10)
    assert abs(anchor0.integral_estimate - math.pi / 4) < 1e-8
    anchor1 = quartic_integral(1, 1.0, tol=1e-10)
    assert abs(anchor1.integral_estimate - 5 * math.pi / 32) < 1e-8
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"took {elapsed:.3f}s"
    _report(10, f"integral identity within 1e-8 on the grid incl. both analytic anchors ({elapsed:.2f}s)")
