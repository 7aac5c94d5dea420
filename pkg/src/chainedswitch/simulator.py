"""Fixed-step RK4 execution of plans and the matching closed-form oracle.

Both the integrator and the oracle sample the same grid: every phase is cut
into an integer number of equal steps so that no step straddles a phase
switch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import EQUILIBRIUM_TOL, as_state, is_equilibrium, rhs
from .errors import InvalidArgumentError, InvalidStepError
from .planner import Plan, phase_solution
from .steering import Channel

STEP_RTOL = 1e-9
DEFAULT_STEPS = 4000


@dataclass(frozen=True)
class SimConfig:
    dt: float | None = None
    record_inputs: bool = True

    def resolve_dt(self, plan: Plan) -> float:
        if self.dt is not None:
            return self.dt
        total = plan.total_duration
        return total / DEFAULT_STEPS if total > 0 else 1.0


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Uniformly sampled states and inputs.

    ``phase_boundaries[i]`` is the sample index where phase ``i`` starts; the
    last entry is the final sample index.  ``phase_index[k]`` is the phase
    whose input is applied from sample ``k`` onward (``-1`` for an empty plan).
    """

    t: np.ndarray
    states: np.ndarray
    inputs: np.ndarray | None
    phase_index: np.ndarray
    dt: float
    phase_boundaries: tuple[int, ...]

    def __post_init__(self):
        for name in ("t", "states", "inputs", "phase_index"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.asarray(arr)
                arr.setflags(write=False)
                object.__setattr__(self, name, arr)
        n = len(self.t)
        if self.states.shape != (n, 6):
            raise InvalidArgumentError(f"states must have shape ({n}, 6), got {self.states.shape}")
        if self.inputs is not None and self.inputs.shape != (n, 2):
            raise InvalidArgumentError(f"inputs must have shape ({n}, 2), got {self.inputs.shape}")
        if n > 1 and np.any(np.diff(self.t) <= 0):
            raise InvalidArgumentError("timestamps must be strictly increasing")
        b = tuple(int(i) for i in self.phase_boundaries)
        if any(j <= i for i, j in zip(b, b[1:])):
            raise InvalidArgumentError("phase boundaries must be strictly increasing")
        object.__setattr__(self, "phase_boundaries", b)

    def __len__(self):
        return len(self.t)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    @property
    def n_phases(self) -> int:
        return max(len(self.phase_boundaries) - 1, 0)

    def phase(self, i: int) -> "Trajectory":
        """Samples of phase ``i``, both boundary samples included."""
        lo, hi = self.phase_boundaries[i], self.phase_boundaries[i + 1]
        sl = slice(lo, hi + 1)
        return Trajectory(
            self.t[sl],
            self.states[sl],
            None if self.inputs is None else self.inputs[sl],
            self.phase_index[sl],
            self.dt,
            (0, hi - lo),
        )

    def index_at(self, time: float) -> int:
        k = int(np.argmin(np.abs(self.t - time)))
        if abs(self.t[k] - time) > self.dt / 2:
            raise InvalidArgumentError(f"t={time} is not on the sample grid")
        return k

    def state_at(self, time: float) -> np.ndarray:
        return self.states[self.index_at(time)]


def rk4_step(f: Callable, t: float, y: np.ndarray, h: float) -> np.ndarray:
    k1 = f(t, y)
    k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def phase_steps(plan: Plan, dt: float) -> list[int]:
    """Steps per phase; raises unless ``dt`` tiles every phase duration."""
    if not (dt > 0 and math.isfinite(dt)):
        raise InvalidStepError(f"dt must be positive and finite, got {dt}")
    steps = []
    for i, phase in enumerate(plan.phases):
        n = round(phase.duration / dt)
        if n < 1 or abs(n * dt - phase.duration) > STEP_RTOL * phase.duration:
            raise InvalidStepError(
                f"dt={dt} does not divide duration {phase.duration} of phase {i}"
            )
        steps.append(n)
    return steps


def _grid(plan: Plan, dt: float):
    steps = phase_steps(plan, dt)
    starts = plan.phase_start_times()
    local = [np.linspace(0.0, p.duration, n + 1) for p, n in zip(plan.phases, steps)]
    t = [np.zeros(1)] + [s + lt[1:] for s, lt in zip(starts, local)]
    bounds = np.concatenate([[0], np.cumsum(steps)]).astype(int)
    phase_index = np.full(int(bounds[-1]) + 1, -1, dtype=int)
    for i in range(len(steps)):
        phase_index[bounds[i] : bounds[i + 1] + 1] = i
    return steps, local, np.concatenate(t), tuple(bounds.tolist()), phase_index


def _recorded_inputs(plan: Plan, local, phase_index) -> np.ndarray:
    u = np.zeros((len(phase_index), 2))
    k = 0
    for i, (phase, lt) in enumerate(zip(plan.phases, local)):
        # each phase owns its start sample; the last phase also owns the final one
        lt = lt if i == len(plan.phases) - 1 else lt[:-1]
        col = 0 if phase.channel is Channel.U1 else 1
        u[k : k + len(lt), col] = phase.signal(lt)
        k += len(lt)
    return u


def _check_start(start) -> np.ndarray:
    z = as_state(start)
    if not is_equilibrium(z, EQUILIBRIUM_TOL):
        raise InvalidArgumentError(f"start {z.tolist()} is not an equilibrium")
    return z


def _integrate_phase(z, channel: Channel, amplitude, signal, n: int, out=None):
    """Advance ``z`` (shape (..., 6)) through one phase; optionally store every step."""
    h = signal.duration / n
    w = signal.omega
    gain = np.asarray(amplitude) * w * w

    if channel is Channel.U1:
        def f(t, y):
            return rhs(y, gain * math.sin(w * t), 0.0)
    else:
        def f(t, y):
            return rhs(y, 0.0, gain * math.sin(w * t))

    for j in range(n):
        z = rk4_step(f, j * h, z, h)
        if out is not None:
            out[j] = z
    return z


def simulate(plan: Plan, start, config: SimConfig | None = None) -> Trajectory:
    """Integrate the full nonlinear dynamics under the plan's inputs with RK4."""
    config = config or SimConfig()
    z = _check_start(start)
    dt = config.resolve_dt(plan)
    steps, local, t, bounds, phase_index = _grid(plan, dt)
    states = np.empty((len(t), 6))
    states[0] = z
    for i, (phase, n) in enumerate(zip(plan.phases, steps)):
        lo = bounds[i]
        z = _integrate_phase(z, phase.channel, phase.amplitude, phase.signal, n,
                             out=states[lo + 1 : lo + n + 1])
    inputs = _recorded_inputs(plan, local, phase_index) if config.record_inputs else None
    return Trajectory(t, states, inputs, phase_index, dt, bounds)


def oracle_trajectory(plan: Plan, start, dt: float | None = None) -> Trajectory:
    """Exact analytic solution sampled on the same grid as :func:`simulate`."""
    z = _check_start(start)
    dt = SimConfig(dt).resolve_dt(plan)
    steps, local, t, bounds, phase_index = _grid(plan, dt)
    states = np.empty((len(t), 6))
    states[0] = z
    for i, (phase, lt) in enumerate(zip(plan.phases, local)):
        seg = phase_solution(z, phase, lt)
        states[bounds[i] + 1 : bounds[i + 1] + 1] = seg[1:]
        z = seg[-1]
    inputs = _recorded_inputs(plan, local, phase_index)
    return Trajectory(t, states, inputs, phase_index, dt, bounds)


def simulate_batch(plans: Sequence[Plan], starts, dt: float) -> np.ndarray:
    """RK4 over many plans sharing one phase layout, advanced in lockstep.

    Returns the state at every phase boundary, shape (len(plans), n_phases + 1, 6).
    """
    if not plans:
        return np.empty((0, 1, 6))
    ref = plans[0]
    for p in plans[1:]:
        if len(p) != len(ref) or any(
            a.channel is not b.channel or a.signal.duration != b.signal.duration
            or a.signal.omega != b.signal.omega
            for a, b in zip(p.phases, ref.phases)
        ):
            raise InvalidArgumentError("batched plans must share channels, durations and frequencies")
    z = np.array([_check_start(s) for s in starts])
    if len(z) != len(plans):
        raise InvalidArgumentError("need one start state per plan")
    steps = phase_steps(ref, dt)
    out = [z]
    for i, (phase, n) in enumerate(zip(ref.phases, steps)):
        amps = np.array([p.phases[i].amplitude for p in plans])
        z = _integrate_phase(z, phase.channel, amps, phase.signal, n)
        out.append(z)
    return np.stack(out, axis=1)


def compare(a: Trajectory, b: Trajectory) -> float:
    """Largest absolute state difference over all samples and components."""
    if len(a) != len(b) or not math.isclose(a.dt, b.dt, rel_tol=1e-12):
        raise InvalidArgumentError(
            f"grid mismatch: {len(a)} samples at dt={a.dt} vs {len(b)} at dt={b.dt}"
        )
    if not np.allclose(a.t, b.t, rtol=0.0, atol=1e-9 * a.dt):
        raise InvalidArgumentError("grid mismatch: sample times differ")
    if len(a) == 0:
        return 0.0
    return float(np.max(np.abs(a.states - b.states)))
