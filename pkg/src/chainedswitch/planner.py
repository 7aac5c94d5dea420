"""State-switching maneuver synthesis between equilibria.

The maneuver has five single-channel phases:

1. U2: move z2 to 1, which makes the z3 subsystem a copy of the z1 one;
2. U1: move z3 to its goal (z1 follows by the same amount);
3. U2: move z2 to 0, decoupling z3 from u1;
4. U1: move z1 to its goal with z3 frozen;
5. U2: move z2 to its goal.

Every phase is one rest-to-rest sinusoid, so each phase boundary is an
equilibrium and the phase amplitudes follow from simple displacement
bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import EQUILIBRIUM_TOL, EquilibriumPoint, as_state, is_equilibrium
from .errors import InvalidArgumentError
from .steering import (
    Channel,
    Phase,
    Sinusoid,
    amplitude_for_displacement,
    default_omega,
    periods,
    rest_to_rest_closed_form,
)

# z2 levels that switch the z3 subsystem on and off; fixed by construction.
COUPLED = 1.0
DECOUPLED = 0.0

STEP_CHANNELS = (Channel.U2, Channel.U1, Channel.U2, Channel.U1, Channel.U2)


@dataclass(frozen=True)
class PlanningProblem:
    start: EquilibriumPoint
    goal: EquilibriumPoint
    duration: float = 1.0
    omega: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "start", EquilibriumPoint(*map(float, self.start)))
        object.__setattr__(self, "goal", EquilibriumPoint(*map(float, self.goal)))
        for p in (*self.start, *self.goal):
            if not math.isfinite(p):
                raise InvalidArgumentError("start and goal positions must be finite")
        if self.omega is None:
            if not (self.duration > 0 and math.isfinite(self.duration)):
                raise InvalidArgumentError(f"duration must be positive, got {self.duration}")
            object.__setattr__(self, "omega", default_omega(self.duration))
        periods(self.omega, self.duration)

    @classmethod
    def from_states(cls, start, goal, duration: float = 1.0, omega: float | None = None):
        """Build a problem from full states; non-equilibrium states are rejected."""
        return cls(
            EquilibriumPoint.from_state(start),
            EquilibriumPoint.from_state(goal),
            duration,
            omega,
        )


@dataclass(frozen=True, eq=False)
class Plan:
    """Ordered phases plus the predicted equilibrium at every phase boundary.

    ``waypoints[0]`` is the start state and ``waypoints[i]`` the state after
    phase ``i``.
    """

    phases: tuple[Phase, ...]
    waypoints: np.ndarray

    def __post_init__(self):
        phases = tuple(self.phases)
        wp = np.array(self.waypoints, dtype=float).reshape(-1, 6)
        if len(wp) != len(phases) + 1:
            raise InvalidArgumentError(
                f"plan with {len(phases)} phases needs {len(phases) + 1} waypoints, got {len(wp)}"
            )
        for i, w in enumerate(wp):
            if not is_equilibrium(as_state(w), EQUILIBRIUM_TOL):
                raise InvalidArgumentError(f"waypoint {i} is not an equilibrium: {w.tolist()}")
        wp.setflags(write=False)
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "waypoints", wp)

    @property
    def total_duration(self) -> float:
        return math.fsum(p.duration for p in self.phases)

    @property
    def start(self) -> np.ndarray:
        return self.waypoints[0]

    @property
    def amplitudes(self) -> tuple[float, ...]:
        return tuple(p.amplitude for p in self.phases)

    def phase_start_times(self) -> list[float]:
        times = [0.0]
        for p in self.phases:
            times.append(times[-1] + p.duration)
        return times

    def __len__(self):
        return len(self.phases)

    def __eq__(self, other):
        if not isinstance(other, Plan):
            return NotImplemented
        return self.phases == other.phases and np.array_equal(self.waypoints, other.waypoints)


def phase_solution(z0: np.ndarray, phase: Phase, t):
    """Exact state(s) at local time(s) ``t`` of a phase entered at state ``z0``.

    During a U1 phase the z3 subsystem sees the gain ``z2`` at phase entry;
    this is exact whenever z5 is zero at entry, which holds at every waypoint.
    Returns shape (6,) for scalar ``t`` and (len(t), 6) otherwise.
    """
    t_arr = t if np.ndim(t) == 0 else np.asarray(t, dtype=float)
    sig = phase.signal
    idle = Sinusoid(0.0, sig.omega, sig.duration)
    z1, z2, z3, z4, z5, z6 = z0
    if phase.channel is Channel.U2:
        p2 = rest_to_rest_closed_form(z2, z5, sig, 1.0, t_arr)
        p1 = rest_to_rest_closed_form(z1, z4, idle, 1.0, t_arr)
        p3 = rest_to_rest_closed_form(z3, z6, idle, 1.0, t_arr)
    else:
        p1 = rest_to_rest_closed_form(z1, z4, sig, 1.0, t_arr)
        p3 = rest_to_rest_closed_form(z3, z6, sig, z2, t_arr)
        p2 = rest_to_rest_closed_form(z2, z5, idle, 1.0, t_arr)
    if np.ndim(t_arr) == 0:
        return np.array([p1[0], p2[0], p3[0], p1[1], p2[1], p3[1]])
    out = np.stack(np.broadcast_arrays(p1[0], p2[0], p3[0], p1[1], p2[1], p3[1]), axis=-1)
    return out.astype(float)


def _propagate(start: np.ndarray, phases) -> np.ndarray:
    states = [np.asarray(start, dtype=float)]
    for phase in phases:
        states.append(phase_solution(states[-1], phase, phase.duration))
    return np.array(states)


def synthesize(problem: PlanningProblem) -> Plan:
    """Five-phase state-switching plan from ``problem.start`` to ``problem.goal``."""
    s, g = problem.start, problem.goal
    w, T = problem.omega, problem.duration
    deltas = (
        COUPLED - s.z2_star,
        g.z3_star - s.z3_star,
        DECOUPLED - COUPLED,
        # z1 already moved by the z3 correction in step 2.
        g.z1_star - (s.z1_star + (g.z3_star - s.z3_star)),
        g.z2_star - DECOUPLED,
    )
    phases = tuple(
        Phase(ch, Sinusoid(amplitude_for_displacement(d, w, T), w, T), f"Step {i}")
        for i, (ch, d) in enumerate(zip(STEP_CHANNELS, deltas), start=1)
    )
    return Plan(phases, _propagate(s.state(), phases))


def compress(plan: Plan, tol: float = 0.0) -> Plan:
    """Drop phases whose amplitude magnitude is at most ``tol``."""
    kept = tuple(p for p in plan.phases if abs(p.amplitude) > tol)
    if len(kept) == len(plan.phases):
        return plan
    return Plan(kept, _propagate(plan.start, kept))


def predict_final_state(plan: Plan, start) -> np.ndarray:
    z = as_state(start)
    if not is_equilibrium(z):
        raise InvalidArgumentError(f"start {z.tolist()} is not an equilibrium")
    return _propagate(z, plan.phases)[-1]
