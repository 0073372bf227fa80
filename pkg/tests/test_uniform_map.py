"""
Test uniform map, flip bifurcation and bifurcation scans
"""

import math

import numpy as np
import pytest

from models import ScalarMapParams
from services.uniform_map_service import UniformMapService
from utils.exceptions import DomainError, NoFixedPointError, SingularParameterError

E_SQUARED = math.exp(2.0)


def test_uniform_map_examples():
    params = ScalarMapParams(4.0, 0.6)
    assert UniformMapService.uniform_map(0.0, params) == 0.0
    x0 = math.log(4.0) / 0.4
    assert UniformMapService.uniform_map(x0, params) == pytest.approx(3.46574, abs=1e-5)
    assert UniformMapService.uniform_map(1.0, params) == pytest.approx(2.68128, abs=1e-5)


@pytest.mark.parametrize('x', [-1.0, float('inf'), float('nan')])
def test_uniform_map_rejects_bad_state(x):
    with pytest.raises(DomainError):
        UniformMapService.uniform_map(x, ScalarMapParams(4.0, 0.6))


def test_to_generic_examples():
    assert UniformMapService.to_generic(5.0, ScalarMapParams(4.0, 0.6)) == pytest.approx(2.0)
    assert UniformMapService.to_generic(3.7, ScalarMapParams(4.0, 0.0)) == 3.7
    with pytest.raises(SingularParameterError):
        UniformMapService.to_generic(1.0, ScalarMapParams(4.0, 1.0))


@pytest.mark.parametrize('r, a', [(4.0, 0.6), (8.0, 0.92), (3.0, 1.7), (12.0, 0.0)])
def test_change_of_variable_conjugacy(r, a):
    params = ScalarMapParams(r, a)
    for x in (0.1, 1.0, 2.5, 10.0):
        lhs = UniformMapService.to_generic(UniformMapService.uniform_map(x, params), params)
        rhs = UniformMapService.generic_map(UniformMapService.to_generic(x, params), r)
        assert lhs == pytest.approx(rhs, rel=1e-12)


@pytest.mark.parametrize('r, a', [(4.0, 0.6), (2.0, 0.6), (2.0, 0.0)])
def test_change_of_variable_conjugacy_along_trajectory(r, a):
    params = ScalarMapParams(r, a)
    trajectory = UniformMapService.iterate(1.0, params, 1_000)

    y = UniformMapService.to_generic(trajectory[0], params)
    generic = [y]
    for _ in range(1_000):
        y = UniformMapService.generic_map(y, r)
        generic.append(y)

    mapped = [UniformMapService.to_generic(x, params) for x in trajectory]
    np.testing.assert_allclose(mapped, generic, rtol=1e-12)


def test_fixed_point_examples():
    assert UniformMapService.fixed_point(ScalarMapParams(4.0, 0.6)) == pytest.approx(3.46574, abs=1e-5)
    assert UniformMapService.fixed_point(ScalarMapParams(8.0, 0.92)) == pytest.approx(25.9930, abs=1e-4)
    with pytest.raises(NoFixedPointError):
        UniformMapService.fixed_point(ScalarMapParams(1.0, 0.5))
    with pytest.raises(SingularParameterError):
        UniformMapService.fixed_point(ScalarMapParams(4.0, 1.0))


def test_multiplier_examples():
    assert UniformMapService.multiplier(ScalarMapParams(E_SQUARED, 0.3)) == pytest.approx(-1.0, abs=1e-12)
    assert UniformMapService.multiplier(ScalarMapParams(math.e, 0.0)) == pytest.approx(0.0, abs=1e-12)
    assert UniformMapService.multiplier(ScalarMapParams(4.0, 0.6)) == pytest.approx(-0.38629, abs=1e-5)


@pytest.mark.parametrize('r, a', [(2.0, 0.0), (4.0, 0.6), (6.5, 0.92), (9.0, 1.5)])
def test_multiplier_matches_finite_difference(r, a):
    params = ScalarMapParams(r, a)
    x0 = UniformMapService.fixed_point(params)
    h = 1e-6 * x0
    derivative = (UniformMapService.uniform_map(x0 + h, params)
                  - UniformMapService.uniform_map(x0 - h, params)) / (2 * h)
    assert derivative == pytest.approx(UniformMapService.multiplier(params), abs=1e-6)


def test_locate_flip_finds_e_squared():
    assert abs(UniformMapService.locate_flip() - E_SQUARED) < 1e-6
    assert abs(UniformMapService.locate_flip(a=0.6) - E_SQUARED) < 1e-6


def test_locate_flip_rejects_bad_bracket():
    with pytest.raises(DomainError):
        UniformMapService.locate_flip(lo=8.0, hi=10.0)


def test_iterate_length_and_start():
    trajectory = UniformMapService.iterate(1.0, ScalarMapParams(4.0, 0.6), 5)
    assert len(trajectory) == 6
    assert trajectory[0] == 1.0
    assert trajectory[1] == UniformMapService.uniform_map(1.0, ScalarMapParams(4.0, 0.6))


def test_scan_collapses_below_unit_growth():
    orbits = UniformMapService.bifurcation_scan([0.5], 0.0)
    assert np.all(orbits[0].samples < 1e-6)

    for orbit in UniformMapService.bifurcation_scan(np.arange(0.2, 0.95, 0.1), 0.0):
        assert np.all(orbit.samples < 1e-6)


def test_scan_stable_fixed_point():
    orbit = UniformMapService.bifurcation_scan([4.0], 0.0)[0]
    assert np.all(np.abs(orbit.samples - math.log(4.0)) < 1e-6)
    assert UniformMapService.detect_period(orbit.samples) == 1


def test_scan_period_two_past_flip():
    orbit = UniformMapService.bifurcation_scan([8.0], 0.0)[0]
    samples = orbit.samples
    assert UniformMapService.detect_period(samples) == 2
    assert samples[0] != pytest.approx(samples[1], rel=1e-3)
    np.testing.assert_allclose(samples[::2], samples[0], rtol=1e-9)


def test_scan_matches_scalar_iteration():
    r_values = [0.5, 2.0, 5.0, 8.0, 11.0]
    orbits = UniformMapService.bifurcation_scan(r_values, 0.3, transient=50, kept=20)
    for r, orbit in zip(r_values, orbits):
        params = ScalarMapParams(r, 0.3)
        x_init = UniformMapService.default_x_init(params)
        expected = UniformMapService.iterate(x_init, params, 70)[51:]
        np.testing.assert_allclose(orbit.samples, expected, rtol=1e-9)


def test_scan_is_reproducible():
    first = UniformMapService.bifurcation_scan(np.linspace(1.5, 15.0, 40), 0.2, transient=300, kept=64)
    second = UniformMapService.bifurcation_scan(np.linspace(1.5, 15.0, 40), 0.2, transient=300, kept=64)
    for a, b in zip(first, second):
        assert np.array_equal(a.samples, b.samples)


def test_scan_period_one_then_two_across_flip():
    below = np.arange(1.05, E_SQUARED - 0.05, 0.1)
    above = np.arange(E_SQUARED + 0.05, 10.0, 0.1)

    for r, period in UniformMapService.orbit_periods(
            UniformMapService.bifurcation_scan(below, 0.0, transient=10_000, kept=64)):
        assert period == 1, f"r={r}"

    for r, period in UniformMapService.orbit_periods(
            UniformMapService.bifurcation_scan(above, 0.0, transient=10_000, kept=64)):
        assert period == 2, f"r={r}"


def test_scan_rejects_singular_pressure():
    with pytest.raises(SingularParameterError):
        UniformMapService.bifurcation_scan([4.0], 1.0)


def test_detect_period_aperiodic_and_collapsed():
    assert UniformMapService.detect_period(np.arange(1.0, 200.0), max_period=16) is None
    assert UniformMapService.detect_period(np.tile([1.0, 2.0, 3.0], 20)) == 3
    assert UniformMapService.detect_period(np.zeros(10)) == 1
