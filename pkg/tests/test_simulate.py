"""Tests for stepping, rollout, noise sampling and fixed points."""

import math

import numpy as np
import pytest
from conftest import random_stable_model
from pydantic import ValidationError

from llds.core import ControlSequence, LogLinearModel
from llds.errors import (
    DimensionMismatchError,
    MissingControlError,
    SingularMatrixError,
    StateOverflowError,
)
from llds.simulate import NoiseSpec, fixed_point, sample_noise, simulate, step, step_log


def test_step_zero_exponents_is_constant():
    model = LogLinearModel(A=np.zeros((2, 2)), c=[3.0, 5.0])
    np.testing.assert_allclose(step(model, [17.0, 0.01]), [3.0, 5.0], rtol=1e-15)


def test_step_identity_dynamics():
    model = LogLinearModel(A=np.eye(2), c=[1.0, 1.0])
    np.testing.assert_allclose(step(model, [2.0, 7.0]), [2.0, 7.0], rtol=1e-15)


def test_step_scalar_monomial():
    model = LogLinearModel(A=[[0.5]], c=[2.0])
    np.testing.assert_allclose(step(model, [16.0]), [8.0], rtol=1e-15)


def test_step_controlled_requires_input():
    model = LogLinearModel(A=np.eye(1), c=[1.0], B=[[1.0]])
    with pytest.raises(MissingControlError):
        step(model, [1.0])
    np.testing.assert_allclose(step(model, [2.0], [3.0]), [6.0])


def test_step_dimension_mismatch():
    model = LogLinearModel(A=np.eye(2), c=[1.0, 1.0])
    with pytest.raises(DimensionMismatchError):
        step(model, [1.0, 2.0, 3.0])
    with pytest.raises(DimensionMismatchError):
        step(model, [1.0, 2.0], [1.0])


def test_step_overflow():
    model = LogLinearModel(A=[[2.0]], c=[1.0])
    with pytest.raises(StateOverflowError):
        step(model, [math.exp(400.0)])


def test_simulate_single_state():
    model = LogLinearModel(A=[[0.5]], c=[2.0])
    x = simulate(model, [16.0], 1)
    np.testing.assert_array_equal(x.states, [[16.0]])


def test_simulate_scalar_recurrence():
    model = LogLinearModel(A=[[0.5]], c=[2.0])
    x = simulate(model, [16.0], 4)
    np.testing.assert_allclose(x.states[:, 0], [16.0, 8.0, 5.656854, 4.756828], rtol=1e-6)


def test_simulate_controlled_with_noise(rng):
    model = random_stable_model(rng, 2, 1)
    controls = ControlSequence(inputs=np.exp(rng.standard_normal((9, 1))))
    noise = NoiseSpec(sigma=0.1, seed=3)
    x = simulate(model, [1.0, 2.0], 10, controls=controls, noise=noise)

    z_hat = sample_noise(noise, 2, 9)
    log_x = np.log(x.states)
    for t in range(9):
        expected = step_log(model, log_x[t], np.log(controls[t]), z_hat[t])
        np.testing.assert_allclose(log_x[t + 1], expected, atol=1e-12)


def test_simulate_control_checks():
    model = LogLinearModel(A=np.eye(1), c=[1.0], B=[[1.0]])
    with pytest.raises(MissingControlError):
        simulate(model, [1.0], 3)
    with pytest.raises(DimensionMismatchError):
        simulate(model, [1.0], 3, controls=ControlSequence(inputs=np.ones((3, 1))))


def test_simulate_is_reproducible():
    model = LogLinearModel(A=[[0.5, 0.1], [0.0, 0.3]], c=[1.0, 2.0])
    noise = NoiseSpec(sigma=0.2, seed=7)
    first = simulate(model, [1.0, 1.0], 50, noise=noise)
    second = simulate(model, [1.0, 1.0], 50, noise=noise)
    np.testing.assert_array_equal(first.states, second.states)


def test_sample_noise_zero_sigma():
    np.testing.assert_array_equal(sample_noise(NoiseSpec(sigma=0.0, seed=1), 3, 4), np.zeros((4, 3)))


def test_sample_noise_statistics():
    z = sample_noise(NoiseSpec(sigma=1.0, seed=12345), 1, 100_000)
    assert abs(z.mean()) <= 0.02
    assert 0.99 <= z.std() <= 1.01


def test_noise_spec_validation():
    with pytest.raises(ValidationError):
        NoiseSpec(sigma=-0.1)
    with pytest.raises(ValidationError):
        NoiseSpec(sigma=0.1, seed=-1)


def test_fixed_point_examples():
    np.testing.assert_allclose(fixed_point(LogLinearModel(A=np.zeros((2, 2)), c=[3.0, 5.0])), [3.0, 5.0])
    np.testing.assert_allclose(fixed_point(LogLinearModel(A=[[0.5]], c=[2.0])), [4.0], rtol=1e-14)
    with pytest.raises(SingularMatrixError):
        fixed_point(LogLinearModel(A=np.eye(2), c=[1.0, 2.0]))


def test_fixed_point_controlled():
    model = LogLinearModel(A=[[0.5]], c=[2.0], B=[[1.0]])
    with pytest.raises(MissingControlError):
        fixed_point(model)
    # x̂* = (log 2 + log 3) / 0.5
    np.testing.assert_allclose(fixed_point(model, [3.0]), [36.0], rtol=1e-13)
