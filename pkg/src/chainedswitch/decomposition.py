"""Three-subsystem view of the chained form.

The system splits into two double integrators, (z2, z5) driven by u2 and
(z1, z4) driven by u1, plus (z3, z6) driven by ``z2 * u1``.  With z2 held at
1 the last pair moves exactly like (z1, z4); with z2 held at 0 it is frozen.
The checkers below test these facts pointwise on sampled trajectories.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import InvalidArgumentError

DEFAULT_TOL = 1e-9


class SubsystemId(str, Enum):
    Z2Z5 = "Z2Z5"
    Z1Z4 = "Z1Z4"
    Z3Z6 = "Z3Z6"


_COLUMNS = {
    SubsystemId.Z2Z5: (1, 4),
    SubsystemId.Z1Z4: (0, 3),
    SubsystemId.Z3Z6: (2, 5),
}


def project(state, which: SubsystemId) -> tuple[float, float]:
    i, j = _COLUMNS[SubsystemId(which)]
    return float(state[i]), float(state[j])


def coupling_gain(state) -> float:
    """Gain multiplying u1 in the (z3, z6) subsystem, i.e. z2."""
    return float(state[1])


def _states(trajectory) -> np.ndarray:
    states = np.asarray(getattr(trajectory, "states", trajectory), dtype=float)
    if states.ndim != 2 or states.shape[1] != 6 or len(states) == 0:
        raise InvalidArgumentError("trajectory must be a non-empty sequence of 6-states")
    return states


def frozen_deviation(trajectory, which: SubsystemId) -> float:
    cols = list(_COLUMNS[SubsystemId(which)])
    pair = _states(trajectory)[:, cols]
    return float(np.max(np.abs(pair - pair[0])))


def check_frozen(trajectory, which: SubsystemId, tol: float = DEFAULT_TOL) -> bool:
    """True iff the subsystem stays within ``tol`` of its initial value at every sample."""
    return frozen_deviation(trajectory, which) <= tol


def coupling_deviation(trajectory) -> float:
    """Worst mismatch between the increments of (z3, z6) and (z1, z4)."""
    z = _states(trajectory)
    d = z - z[0]
    return float(max(np.max(np.abs(d[:, 2] - d[:, 0])), np.max(np.abs(d[:, 5] - d[:, 3]))))


def check_coupled(trajectory, tol: float = DEFAULT_TOL) -> bool:
    """Increment identity expected while z2 is held at 1."""
    return coupling_deviation(trajectory) <= tol
