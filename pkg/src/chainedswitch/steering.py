"""Rest-to-rest steering of a double integrator with one sinusoid.

A double integrator driven by ``u(t) = a * omega**2 * sin(omega * t)`` over
``[0, T]`` with ``omega * T = 2*pi*k`` returns to its initial velocity and is
displaced by ``a * omega * T``.  Amplitudes are signed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import Input2
from .errors import InvalidArgumentError, InvalidFrequencyError, OutOfRangeError

PERIOD_RTOL = 1e-9


class Channel(str, Enum):
    U1 = "U1"
    U2 = "U2"


def periods(omega: float, duration: float) -> int:
    """Number of whole sinusoid periods in a phase; raises if not integral."""
    if not (omega > 0 and math.isfinite(omega)):
        raise InvalidFrequencyError(f"angular frequency must be positive and finite, got {omega}")
    if not (duration > 0 and math.isfinite(duration)):
        raise InvalidArgumentError(f"duration must be positive and finite, got {duration}")
    k = omega * duration / (2.0 * math.pi)
    n = round(k)
    if n < 1 or abs(k - n) > PERIOD_RTOL * k:
        raise InvalidFrequencyError(
            f"omega*T = {omega * duration!r} is not a multiple of 2*pi (ratio {k!r})"
        )
    return n


def default_omega(duration: float) -> float:
    return 2.0 * math.pi / duration


@dataclass(frozen=True)
class Sinusoid:
    amplitude: float
    omega: float
    duration: float

    def __post_init__(self):
        if not math.isfinite(self.amplitude):
            raise InvalidArgumentError(f"amplitude must be finite, got {self.amplitude}")
        periods(self.omega, self.duration)

    @property
    def displacement(self) -> float:
        return self.amplitude * self.omega * self.duration

    def __call__(self, t):
        """Unchecked signal value; ``t`` may be an array."""
        return self.amplitude * self.omega**2 * np.sin(self.omega * t)


@dataclass(frozen=True)
class Phase:
    channel: Channel
    signal: Sinusoid
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "channel", Channel(self.channel))

    @property
    def duration(self) -> float:
        return self.signal.duration

    @property
    def amplitude(self) -> float:
        return self.signal.amplitude


def amplitude_for_displacement(delta: float, omega: float, duration: float) -> float:
    """Signed amplitude that moves a resting double integrator by ``delta``."""
    periods(omega, duration)
    return delta / (omega * duration)


def input_at(phase: Phase, t: float) -> Input2:
    """Input pair at local time ``t`` in ``[0, T]``; the idle channel is zero."""
    if not 0.0 <= t <= phase.duration:
        raise OutOfRangeError(f"t={t} outside phase interval [0, {phase.duration}]")
    value = float(phase.signal(t))
    if phase.channel is Channel.U1:
        return Input2(value, 0.0)
    return Input2(0.0, value)


def rest_to_rest_closed_form(x0, v0, signal: Sinusoid, gain, t):
    """Exact solution of ``x'' = gain * a * omega**2 * sin(omega * t)``.

    Returns ``(x, v)`` at local time ``t``.  Arguments broadcast, so ``t`` can
    be a grid of sample times.
    """
    a, w = signal.amplitude, signal.omega
    if np.ndim(t) == 0:
        t = float(t)
        if not 0.0 <= t <= signal.duration:
            raise OutOfRangeError(f"t={t} outside phase interval [0, {signal.duration}]")
        wt = w * t
        v = v0 + gain * a * w * (1.0 - math.cos(wt))
        x = x0 + v0 * t + gain * a * (wt - math.sin(wt))
        return float(x), float(v)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0) or np.any(t > signal.duration):
        raise OutOfRangeError(f"t outside phase interval [0, {signal.duration}]")
    wt = w * t
    v = v0 + gain * a * w * (1.0 - np.cos(wt))
    x = x0 + v0 * t + gain * a * (wt - np.sin(wt))
    return x, v
