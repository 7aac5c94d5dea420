"""Planning and simulation of state-switching maneuvers for the second-order chained form."""

from .core import EquilibriumPoint, Input2, as_state, dynamics, is_equilibrium
from .decomposition import SubsystemId, check_coupled, check_frozen, coupling_gain, project
from .errors import (
    ChainedFormError,
    InvalidArgumentError,
    InvalidFrequencyError,
    InvalidStepError,
    OutOfRangeError,
)
from .planner import Plan, PlanningProblem, compress, predict_final_state, synthesize
from .simulator import SimConfig, Trajectory, compare, oracle_trajectory, simulate, simulate_batch
from .steering import (
    Channel,
    Phase,
    Sinusoid,
    amplitude_for_displacement,
    input_at,
    rest_to_rest_closed_form,
)

__version__ = "0.1.0"
