import math

import numpy as np
import pytest

from wigslits import (
    AnalysisError,
    Grid1D,
    Grid2D,
    MarginalCurve,
    common_projection_interval,
    find_fringe_maxima,
    fringe_period,
    fringe_shift,
    momentum_marginal,
    normalized_params,
    position_marginal_propagated,
    single_slit_field,
)

P_AXIS = Grid1D(min=-4.0, max=4.0, n=512)
X_AXIS = Grid1D(min=-12.0, max=12.0, n=512)


def _p_curve(delta, grid=P_AXIS):
    values = momentum_marginal(normalized_params(delta=delta), grid.points())
    return MarginalCurve(axis_label="momentum", grid=grid, values=values)


def _x_curve(delta, alpha=6.0, grid=X_AXIS):
    values = position_marginal_propagated(normalized_params(alpha=alpha, delta=delta), grid.points())
    return MarginalCurve(axis_label="position", grid=grid, values=values)


# ---------------------------------------------------------------- maxima

# Raw maxima of the momentum density at delta = 0, frozen from the argmax of
# the closed form on a 4e7-point grid. The Gaussian envelope pulls each peak
# toward the center, so these sit visibly inside the bare comb at k*pi/5.
RAW_P_MAXIMA = [-1.8153032, -1.209181, -0.6042646, 0.0, 0.6042646, 1.209181, 1.8153032]


def test_find_fringe_maxima_matches_refined_argmax():
    curve = _p_curve(0.0, grid=Grid1D(min=-4.0, max=4.0, n=2001))
    found = find_fringe_maxima(curve, 0.01)
    assert len(found) == len(RAW_P_MAXIMA)
    for got, want in zip(found, RAW_P_MAXIMA):
        assert got == pytest.approx(want, abs=1e-3)


def test_find_fringe_maxima_prominence_filters_outer_fringes():
    curve = _p_curve(0.0)
    # outermost comb teeth carry ~3.3% prominence; a 5% floor drops them
    assert len(find_fringe_maxima(curve, 0.05)) == 5
    assert len(find_fringe_maxima(curve, 0.01)) == 7


def test_find_fringe_maxima_flat_curve():
    grid = Grid1D(min=0.0, max=1.0, n=64)
    flat = MarginalCurve(axis_label="position", grid=grid, values=np.ones(64))
    assert find_fringe_maxima(flat, 0.0) == []


def test_find_fringe_maxima_single_gaussian():
    grid = Grid1D(min=-4.0, max=4.0, n=257)  # center lands on the lattice
    values = np.exp(-(grid.points() ** 2) / 0.5)
    curve = MarginalCurve(axis_label="position", grid=grid, values=values)
    found = find_fringe_maxima(curve, 0.1)
    assert len(found) == 1
    assert found[0] == pytest.approx(0.0, abs=1e-6)


def test_find_fringe_maxima_rejects_negative_prominence():
    with pytest.raises(ValueError):
        find_fringe_maxima(_p_curve(0.0), -0.1)


def test_find_fringe_maxima_ascending():
    found = find_fringe_maxima(_p_curve(4.0), 0.02)
    assert found == sorted(found)


# ---------------------------------------------------------------- period


def test_fringe_period_momentum():
    # comb frequency 2 d / hbar, period pi hbar / d
    assert fringe_period(_p_curve(0.0)) == pytest.approx(math.pi / 5, abs=1e-3)
    assert fringe_period(_p_curve(4.0)) == pytest.approx(math.pi / 5, abs=1e-3)


def test_fringe_period_position_after_flight():
    # comb frequency 2 alpha d hbar / (x0^2 Delta^2) = 60/37
    assert fringe_period(_x_curve(0.0)) == pytest.approx(37 * math.pi / 30, abs=2e-2)


def test_fringe_period_needs_three_maxima():
    grid = Grid1D(min=-6.0, max=6.0, n=301)
    x = grid.points()
    two_bumps = np.exp(-((x - 2.0) ** 2)) + np.exp(-((x + 2.0) ** 2))
    curve = MarginalCurve(axis_label="position", grid=grid, values=two_bumps)
    with pytest.raises(AnalysisError):
        fringe_period(curve)


# ---------------------------------------------------------------- shift


def test_fringe_shift_self_is_zero():
    curve = _p_curve(4.0)
    assert abs(fringe_shift(curve, curve)) <= 1e-9


def test_fringe_shift_momentum_comb():
    # the comb moves by delta * hbar / (2 d)
    shift = fringe_shift(_p_curve(4.0), _p_curve(0.0))
    assert shift == pytest.approx(0.4, abs=2e-3)


def test_fringe_shift_position_comb_after_flight():
    # the comb moves by delta * x0^2 Delta^2 / (2 alpha d hbar)
    shift = fringe_shift(_x_curve(4.0), _x_curve(0.0))
    assert shift == pytest.approx(4 * 37 / 60, abs=2e-2)


def test_fringe_shift_linear_in_delta():
    ref = _p_curve(0.0)
    for delta in np.linspace(0.0, math.pi, 5):
        shift = fringe_shift(_p_curve(delta), ref)
        assert shift == pytest.approx(delta / 10, abs=2e-3)


def test_fringe_shift_periodicity():
    assert abs(fringe_shift(_p_curve(2 * math.pi), _p_curve(0.0))) <= 1e-6
    assert abs(fringe_shift(_p_curve(2 * math.pi + 4.0), _p_curve(4.0))) <= 1e-6


def test_fringe_shift_requires_matching_grids():
    other = Grid1D(min=-4.0, max=4.0, n=256)
    with pytest.raises(ValueError):
        fringe_shift(_p_curve(4.0), _p_curve(0.0, grid=other))


def test_fringe_shift_needs_peaks():
    grid = Grid1D(min=0.0, max=1.0, n=64)
    flat = MarginalCurve(axis_label="momentum", grid=grid, values=np.ones(64))
    with pytest.raises(AnalysisError):
        fringe_shift(flat, flat)


def test_fringe_shift_single_peak_fallback():
    # too few fringes for a period: fall back to displacement of the
    # central maxima themselves
    grid = Grid1D(min=-8.0, max=8.0, n=1601)
    x = grid.points()
    ref = MarginalCurve(axis_label="position", grid=grid, values=np.exp(-(x**2)))
    cur = MarginalCurve(axis_label="position", grid=grid, values=np.exp(-((x - 1.5) ** 2)))
    assert fringe_shift(cur, ref) == pytest.approx(1.5, abs=1e-6)
    assert fringe_shift(ref, cur) == pytest.approx(-1.5, abs=1e-6)


# ---------------------------------------------------------------- pattern interval

GRID_2D = Grid2D(X_AXIS, P_AXIS)
E_MINUS_9 = math.exp(-9)


def _slit_fields(alpha=0.0, delta=0.0):
    params = normalized_params(alpha=alpha, delta=delta)
    return (single_slit_field(params, GRID_2D, 1), single_slit_field(params, GRID_2D, -1))


def test_pattern_interval_position_empty_before_flight():
    # slit supports e^{-(x -+ 5)^2} >= e^-9 are [2, 8] and [-8, -2]: disjoint
    f1, f2 = _slit_fields(alpha=0.0)
    assert common_projection_interval(f1, f2, "position", E_MINUS_9) is None


def test_pattern_interval_momentum_is_shared():
    # both slits project to e^{-p^2} >= e^-9 on |p| <= 3
    f1, f2 = _slit_fields(alpha=0.0)
    lo, hi = common_projection_interval(f1, f2, "momentum", E_MINUS_9)
    step = P_AXIS.spacing
    assert lo == pytest.approx(-3.0, abs=step)
    assert hi == pytest.approx(3.0, abs=step)


def test_pattern_interval_opens_along_x_after_flight():
    f1, f2 = _slit_fields(alpha=6.0)
    interval = common_projection_interval(f1, f2, "position", E_MINUS_9)
    assert interval is not None
    lo, hi = interval
    assert lo < 0 < hi


def test_pattern_interval_self_is_own_support():
    f1, _ = _slit_fields(alpha=0.0)
    lo, hi = common_projection_interval(f1, f1, "position", E_MINUS_9)
    assert lo == pytest.approx(2.0, abs=X_AXIS.spacing)
    assert hi == pytest.approx(8.0, abs=X_AXIS.spacing)


def test_pattern_interval_is_phase_independent():
    # slit fields carry no interference term, so the phase cannot matter
    a = common_projection_interval(*_slit_fields(alpha=0.0, delta=0.0), "momentum", E_MINUS_9)
    b = common_projection_interval(*_slit_fields(alpha=0.0, delta=4.0), "momentum", E_MINUS_9)
    assert a == b


def test_pattern_interval_validation():
    f1, f2 = _slit_fields()
    with pytest.raises(ValueError):
        common_projection_interval(f1, f2, "diagonal", 0.5)
    with pytest.raises(ValueError):
        common_projection_interval(f1, f2, "position", 0.0)
    with pytest.raises(ValueError):
        common_projection_interval(f1, f2, "position", 1.0)
    other = Grid2D(Grid1D(min=-1.0, max=1.0, n=512), P_AXIS)
    mismatched = single_slit_field(normalized_params(), other, 1)
    with pytest.raises(ValueError):
        common_projection_interval(f1, mismatched, "position", 0.5)
