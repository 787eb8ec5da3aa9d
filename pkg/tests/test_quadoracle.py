"""Tests for the floating-point quadrature cross-check."""

import math

import pytest

from bmtk.quadoracle import (
    QuadratureConvergenceError,
    identity_sweep,
    quartic_integral,
)

A_GRID = (-0.5, 0.0, 0.5, 1.0, 2.0, 10.0)


def test_analytic_anchor_m0():
    result = quartic_integral(0, 1.0, tol=1e-10)
    assert abs(result.integral_estimate - math.pi / 4) < 1e-9
    assert abs(result.rhs_value - math.pi / 4) < 1e-12
    assert result.relative_deviation < 1e-8


def test_analytic_anchor_m1():
    result = quartic_integral(1, 1.0, tol=1e-10)
    assert abs(result.integral_estimate - 5 * math.pi / 32) < 1e-9
    assert abs(result.rhs_value - 5 * math.pi / 32) < 1e-12
    assert result.relative_deviation < 1e-8


def test_mid_range_instance():
    result = quartic_integral(8, 0.5, tol=1e-10)
    assert result.relative_deviation < 1e-8


def test_near_boundary_instance():
    result = quartic_integral(0, -0.9, tol=1e-10)
    expected = math.pi / (2.0 * math.sqrt(2.0 * 0.1))
    assert abs(result.rhs_value - expected) < 1e-10
    assert result.relative_deviation < 1e-8


def test_grid_agreement():
    for m in range(6):
        for a in A_GRID:
            result = quartic_integral(m, a, tol=1e-10)
            assert result.relative_deviation < 1e-8, (m, a)


def test_domain_errors():
    with pytest.raises(ValueError):
        quartic_integral(0, -1.0)
    with pytest.raises(ValueError):
        quartic_integral(0, -2.0)
    with pytest.raises(ValueError):
        quartic_integral(-1, 0.5)
    with pytest.raises(ValueError):
        quartic_integral(0, 0.5, tol=0.0)


def test_convergence_error_carries_best_estimate():
    with pytest.raises(QuadratureConvergenceError) as excinfo:
        quartic_integral(3, 0.3, tol=1e-30, max_splits=8)
    result = excinfo.value.result
    assert result.integral_estimate > 0
    assert result.abs_error_estimate > 1e-30
    # the partial answer is still in the right ballpark
    assert result.relative_deviation < 1e-3


def _error_with_budget(splits):
    try:
        return quartic_integral(3, 0.7, tol=1e-30, max_splits=splits).abs_error_estimate
    except QuadratureConvergenceError as exc:
        return exc.result.abs_error_estimate


def test_doubling_budget_never_increases_error_estimate():
    errors = [_error_with_budget(2**k) for k in range(3, 9)]
    for coarse, fine in zip(errors, errors[1:]):
        assert fine <= coarse


def test_deviation_definition():
    result = quartic_integral(2, 0.25, tol=1e-10)
    expected = abs(result.integral_estimate - result.rhs_value) / abs(result.rhs_value)
    assert result.relative_deviation == expected


def test_identity_sweep_passes():
    cells = identity_sweep(3, [-0.9, 0.0, 0.5, 1.0, 2.0], tol=1e-10)
    assert len(cells) == 20
    assert all(cell.result is not None for cell in cells)
    assert not any(cell.flagged for cell in cells)


def test_identity_sweep_empty():
    assert identity_sweep(3, []) == []


def test_identity_sweep_records_cell_failures():
    cells = identity_sweep(2, [0.5], tol=1e-12, max_splits=2)
    assert len(cells) == 3
    assert all(cell.error is not None and cell.flagged for cell in cells)
    assert all(cell.result is not None for cell in cells)  # best estimates kept


def test_quad_result_json_shape():
    result = quartic_integral(1, 1.0, tol=1e-10)
    assert list(result.to_json()) == [
        "m",
        "a",
        "integral_estimate",
        "rhs_value",
        "abs_error_estimate",
        "relative_deviation",
    ]
