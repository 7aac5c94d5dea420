import math

import numpy as np
import pytest

from chainedswitch import (
    InvalidArgumentError,
    InvalidStepError,
    Plan,
    PlanningProblem,
    SimConfig,
    compare,
    oracle_trajectory,
    simulate,
    simulate_batch,
    synthesize,
)
from chainedswitch.simulator import Trajectory

REF_START = np.array([3, 0.5, 1, 0, 0, 0], dtype=float)


@pytest.fixture(scope="module")
def rk4(reference_plan_4):
    return simulate(reference_plan_4, REF_START, SimConfig(1e-3))


@pytest.fixture(scope="module")
def oracle(reference_plan_4):
    return oracle_trajectory(reference_plan_4, REF_START, 1e-3)


def test_reference_plan_reaches_origin(rk4):
    assert np.max(np.abs(rk4.final)) <= 1e-6


def test_grid_layout(rk4, reference_plan_4):
    assert len(rk4) == 4001
    assert rk4.t[0] == 0.0 and rk4.t[-1] == 4.0
    assert rk4.phase_boundaries == (0, 1000, 2000, 3000, 4000)
    np.testing.assert_allclose(np.diff(rk4.t), 1e-3, rtol=1e-9)
    # boundary samples sit exactly on the switch times
    np.testing.assert_array_equal(rk4.t[list(rk4.phase_boundaries)], [0, 1, 2, 3, 4])
    assert list(rk4.phase_index[[0, 999, 1000, 3999, 4000]]) == [0, 0, 1, 3, 3]


def test_recorded_inputs_use_step_start_time(rk4, reference_plan_4):
    a1 = reference_plan_4.phases[0].amplitude
    w = 2 * math.pi
    assert rk4.inputs[250, 1] == pytest.approx(a1 * w * w * math.sin(w * 0.25), rel=1e-12)
    assert rk4.inputs[250, 0] == 0.0
    assert np.all(rk4.inputs[1000:2000, 1] == 0.0)
    assert np.all(rk4.inputs[1001:2000, 0] != 0.0)


def test_default_step_is_quarter_millisecond_per_unit(reference_plan):
    traj = simulate(reference_plan, REF_START)
    assert traj.dt == pytest.approx(5.0 / 4000)
    assert len(traj) == 4001


def test_empty_plan_single_sample():
    start = [1.0, 2.0, 3.0, 0, 0, 0]
    traj = simulate(Plan((), [start]), start)
    assert len(traj) == 1
    np.testing.assert_array_equal(traj.final, start)
    assert traj.phase_boundaries == (0,)


def test_phase_one_subplan(reference_plan):
    sub = Plan(reference_plan.phases[:1], reference_plan.waypoints[:2])
    final = simulate(sub, REF_START, SimConfig(1e-3)).final
    np.testing.assert_allclose(final, [3, 1, 1, 0, 0, 0], rtol=0, atol=1e-9)


def test_start_must_be_equilibrium(reference_plan):
    with pytest.raises(InvalidArgumentError):
        simulate(reference_plan, [3, 0.5, 1, 1e-6, 0, 0])
    with pytest.raises(InvalidArgumentError):
        oracle_trajectory(reference_plan, [3, 0.5, 1, 1e-6, 0, 0], 1e-3)


@pytest.mark.parametrize("dt", [0.3, 0.0, -1e-3, math.inf])
def test_misaligned_step_rejected(reference_plan, dt):
    with pytest.raises(InvalidStepError):
        simulate(reference_plan, REF_START, SimConfig(dt))


def test_record_inputs_off(reference_plan_4):
    traj = simulate(reference_plan_4, REF_START, SimConfig(1e-2, record_inputs=False))
    assert traj.inputs is None


def test_oracle_examples(oracle):
    assert np.max(np.abs(oracle.final)) <= 1e-12
    np.testing.assert_array_equal(oracle.states[0], REF_START)
    np.testing.assert_allclose(oracle.state_at(1.0), [3, 1, 1, 0, 0, 0], atol=1e-12)


def test_state_at_off_grid(oracle):
    with pytest.raises(InvalidArgumentError):
        oracle.state_at(5.0)


def test_compare_self_is_zero(rk4):
    assert compare(rk4, rk4) == 0.0


def test_rk4_close_to_oracle(rk4, oracle):
    assert compare(rk4, oracle) <= 1e-8


def test_compare_grid_mismatch(rk4, reference_plan_4):
    coarse = simulate(reference_plan_4, REF_START, SimConfig(2e-3))
    with pytest.raises(InvalidArgumentError):
        compare(rk4, coarse)


def test_convergence_order(reference_plan_4, rk4, oracle):
    e1 = compare(rk4, oracle)
    fine = simulate(reference_plan_4, REF_START, SimConfig(5e-4))
    e2 = compare(fine, oracle_trajectory(reference_plan_4, REF_START, 5e-4))
    # 16 expected for a 4th-order method
    assert 8 <= e1 / e2 <= 32


def test_velocities_vanish_at_every_boundary(rk4):
    assert np.max(np.abs(rk4.states[list(rk4.phase_boundaries), 3:])) <= 1e-9


def test_unequal_phase_durations_stay_aligned():
    problem = PlanningProblem((1, -1, 2), (0, 0.5, -1), 0.5, 2 * math.pi / 0.5)
    plan = synthesize(problem)
    traj = simulate(plan, plan.start, SimConfig(0.5 / 500))
    assert traj.phase_boundaries == tuple(range(0, 2501, 500))
    np.testing.assert_allclose(traj.final, [0, 0.5, -1, 0, 0, 0], atol=1e-9)


def test_batch_matches_single(reference_plan):
    other = synthesize(PlanningProblem((-1, 2, 0.3), (4, -4, 1)))
    plans = [reference_plan, other]
    out = simulate_batch(plans, [p.start for p in plans], 1e-3)
    assert out.shape == (2, 6, 6)
    for plan, rows in zip(plans, out):
        traj = simulate(plan, plan.start, SimConfig(1e-3))
        np.testing.assert_allclose(rows, traj.states[list(traj.phase_boundaries)], rtol=0, atol=1e-13)


def test_batch_rejects_mixed_layouts(reference_plan, reference_plan_4):
    with pytest.raises(InvalidArgumentError):
        simulate_batch([reference_plan, reference_plan_4], [REF_START, REF_START], 1e-3)


def test_trajectory_validates_timestamps():
    with pytest.raises(InvalidArgumentError):
        Trajectory(np.array([0.0, 0.0]), np.zeros((2, 6)), None, np.zeros(2, int), 1.0, (0, 1))
