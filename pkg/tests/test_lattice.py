"""
Test lattice dynamics
"""

import math

import numpy as np
import pytest

from models import LatticeState, ModelParams, ScalarMapParams
from services.lattice_service import LatticeService
from services.uniform_map_service import UniformMapService
from utils.exceptions import DomainError


def test_local_field_examples():
    state = LatticeState([1.0, 2.0, 3.0])
    assert LatticeService.local_field(state, 1) == 2.0
    assert LatticeService.local_field(state, 0) == 2.5
    assert LatticeService.local_field(LatticeState([4.0] * 5), 3) == 4.0


def test_local_field_rejects_bad_index():
    with pytest.raises(DomainError):
        LatticeService.local_field(LatticeState([1.0, 2.0, 3.0]), 3)


def test_local_fields_match_single_site():
    wealth = np.array([0.5, 3.0, 1.25, 7.0, 2.0])
    fields = LatticeService.local_fields(wealth)
    state = LatticeState(wealth)
    for i in range(wealth.size):
        assert fields[i] == LatticeService.local_field(state, i)


def test_step_two_site_ring():
    state = LatticeState([1.0, 2.0])
    result = LatticeService.step(state, ModelParams(r=2.0, a=1.0))
    assert result.time == 1
    assert result.wealth[0] == pytest.approx(2 * math.exp(-1), rel=1e-14)
    assert result.wealth[1] == pytest.approx(4 * math.exp(-1), rel=1e-14)
    assert np.allclose(result.wealth, [0.73576, 1.47152], atol=1e-5)


def test_step_keeps_uniform_fixed_point():
    x0 = math.log(4.0) / 0.4
    result = LatticeService.step(LatticeService.uniform_state(8, x0), ModelParams(r=4.0, a=0.6))
    np.testing.assert_allclose(result.wealth, x0, rtol=1e-12)


def test_step_zero_site_stays_zero():
    state = LatticeState([0.0, 5.0, 2.0, 9.0])
    result = LatticeService.step(state, ModelParams(r=3.0, a=0.4))
    assert result.wealth[0] == 0.0


def test_step_is_synchronous():
    """Site 1 must see site 0's old value, not the freshly updated one"""
    state = LatticeState([1.0, 2.0, 3.0])
    params = ModelParams(r=2.0, a=0.5)
    result = LatticeService.step(state, params)
    psi = (1.0 + 3.0) / 2
    assert result.wealth[1] == pytest.approx(2.0 * 2.0 * math.exp(-abs(2.0 - 0.5 * psi)), rel=1e-14)


def test_step_rejects_non_finite_input():
    with pytest.raises(DomainError):
        LatticeState([1.0, float('nan'), 2.0])


def test_step_per_site_parameters():
    state = LatticeState([1.0, 2.0, 3.0, 4.0])
    r = np.array([2.0, 3.0, 4.0, 5.0])
    a = np.array([0.1, 0.2, 0.3, 0.4])
    result = LatticeService.step(state, ModelParams(r=r, a=a))
    x = state.wealth
    for i in range(4):
        psi = 0.5 * (x[i - 1] + x[(i + 1) % 4])
        expected = r[i] * x[i] * math.exp(-abs(x[i] - a[i] * psi))
        assert result.wealth[i] == pytest.approx(expected, rel=1e-14)


def test_step_rejects_wrong_parameter_length():
    with pytest.raises(DomainError):
        LatticeService.step(LatticeState([1.0, 2.0, 3.0]), ModelParams(r=[2.0, 2.0], a=0.5))


def test_rotation_and_mirror_equivariance(rng):
    wealth = rng.uniform(1.0, 100.0, size=101)
    params = ModelParams(r=6.0, a=0.8)
    stepped = LatticeService.step(LatticeState(wealth), params).wealth

    for shift in (1, 17, 100):
        rotated = LatticeService.step(LatticeState(np.roll(wealth, shift)), params).wealth
        assert np.array_equal(rotated, np.roll(stepped, shift))

    mirrored = LatticeService.step(LatticeState(wealth[::-1]), params).wealth
    assert np.array_equal(mirrored, stepped[::-1])


def test_run_zero_steps_is_identity():
    state = LatticeState([1.0, 2.0, 3.0])
    assert LatticeService.run(state, ModelParams(r=4.0, a=0.6), 0) is state


def test_run_matches_composed_steps(rng):
    state = LatticeState(rng.uniform(1.0, 100.0, size=50))
    params = ModelParams(r=8.0, a=0.92)

    composed = state
    for _ in range(25):
        composed = LatticeService.step(composed, params)

    assert np.array_equal(LatticeService.run(state, params, 2).wealth,
                          LatticeService.step(LatticeService.step(state, params), params).wealth)
    result = LatticeService.run(state, params, 25)
    assert np.array_equal(result.wealth, composed.wealth)
    assert result.time == 25


def test_run_rejects_negative_steps():
    with pytest.raises(DomainError):
        LatticeService.run(LatticeState([1.0, 2.0]), ModelParams(r=2.0, a=0.5), -1)


def test_uniform_lattice_reduces_to_uniform_map():
    params = ModelParams(r=4.0, a=0.6)
    trajectory = UniformMapService.iterate(1.0, ScalarMapParams(4.0, 0.6), 100)

    state = LatticeService.uniform_state(16, 1.0)
    for t in range(1, 101):
        state = LatticeService.step(state, params)
        assert np.all(state.wealth == state.wealth[0])
        assert state.wealth[0] == pytest.approx(trajectory[t], rel=1e-12)


def test_collapse_below_unit_growth():
    state = LatticeService.init_random(1_000, 1.0, 100.0, 5)
    result = LatticeService.run(state, ModelParams(r=0.5, a=0.6), 1_000)
    assert result.wealth.max() < 1e-6
    assert LatticeService.is_collapsed(result)


def test_init_random_bounds_and_determinism():
    first = LatticeService.init_random(100_000, 1.0, 100.0, 42)
    second = LatticeService.init_random(100_000, 1.0, 100.0, 42)
    assert np.all((first.wealth > 1.0) & (first.wealth < 100.0))
    assert np.array_equal(first.wealth, second.wealth)
    assert first.time == 0


def test_init_random_narrow_range():
    eps = 1e-9
    state = LatticeService.init_random(4, 5.0, 5.0 + eps, 3)
    assert np.all(np.abs(state.wealth - 5.0) <= eps)


@pytest.mark.parametrize('lo, hi', [(5.0, 5.0), (10.0, 1.0), (-1.0, 2.0)])
def test_init_random_rejects_bad_bounds(lo, hi):
    with pytest.raises(DomainError):
        LatticeService.init_random(10, lo, hi, 1)


def test_perturb_and_uniformity_deviation():
    state = LatticeService.uniform_state(100, 2.0)
    assert LatticeService.uniformity_deviation(state) == 0.0

    perturbed = LatticeService.perturb(state, 0.01, 8)
    deviation = LatticeService.uniformity_deviation(perturbed)
    assert 0.0 < deviation < 0.011
    assert LatticeService.uniformity_deviation(LatticeService.uniform_state(4, 0.0)) == 0.0


def test_trajectory_observes_every_step():
    state = LatticeState([1.0, 2.0, 3.0])
    params = ModelParams(r=3.0, a=0.5)
    times = LatticeService.trajectory(state, params, 4, lambda s: s.time)
    assert times == [1, 2, 3, 4]
