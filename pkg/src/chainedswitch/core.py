"""State space and dynamics of the second-order chained form.

The system is

    xi1'' = u1,    xi2'' = u2,    xi3'' = xi2 * u1

written in first-order form with z = [xi1, xi2, xi3, xi1', xi2', xi3'].
States are plain float arrays of shape (6,); batched helpers accept any
leading shape (..., 6).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import InvalidArgumentError

EQUILIBRIUM_TOL = 1e-9


class Input2(NamedTuple):
    u1: float
    u2: float


class EquilibriumPoint(NamedTuple):
    """Rest configuration (z1*, z2*, z3*); velocities are implicitly zero."""

    z1_star: float
    z2_star: float
    z3_star: float

    def state(self) -> np.ndarray:
        return as_state([self.z1_star, self.z2_star, self.z3_star, 0.0, 0.0, 0.0])

    @classmethod
    def from_state(cls, state, tol: float = EQUILIBRIUM_TOL) -> "EquilibriumPoint":
        z = as_state(state)
        if not is_equilibrium(z, tol):
            raise InvalidArgumentError(f"state {z.tolist()} is not an equilibrium (tol={tol})")
        return cls(float(z[0]), float(z[1]), float(z[2]))


def as_state(z) -> np.ndarray:
    """Validate and copy ``z`` into a finite float array of shape (6,)."""
    arr = np.array(z, dtype=float)
    if arr.shape != (6,):
        raise InvalidArgumentError(f"state must have 6 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"state has non-finite components: {arr.tolist()}")
    return arr


def rhs(z: np.ndarray, u1, u2) -> np.ndarray:
    """Unchecked vector field, broadcasting over leading dimensions of ``z``."""
    out = np.empty_like(z)
    out[..., 0:3] = z[..., 3:6]
    out[..., 3] = u1
    out[..., 4] = u2
    out[..., 5] = z[..., 1] * u1
    return out


def dynamics(state, u) -> np.ndarray:
    """Time derivative ``[z4, z5, z6, u1, u2, z2*u1]`` of the state."""
    z = as_state(state)
    try:
        u1, u2 = (float(c) for c in u)
    except (TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"input must be a pair of reals, got {u!r}") from exc
    if not (np.isfinite(u1) and np.isfinite(u2)):
        raise InvalidArgumentError(f"input has non-finite components: {(u1, u2)}")
    return rhs(z, u1, u2)


def is_equilibrium(state, tol: float = EQUILIBRIUM_TOL) -> bool:
    """True iff every velocity component is within ``tol`` of zero."""
    if tol < 0:
        raise InvalidArgumentError("tol must be non-negative")
    z = np.asarray(state, dtype=float)
    return bool(np.max(np.abs(z[3:6])) <= tol)
