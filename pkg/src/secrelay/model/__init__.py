"""This package defines the secrecy model and its optimizers."""

from .channel import ChannelDiagnostics
from .channel import a2g_gain
from .channel import compute_link_gains
from .channel import eaves_capacity
from .channel import g2g_gain
from .channel import legit_capacity
from .channel import objective_p1
from .channel import objective_p2
from .channel import slot_taus
from .channel import slot_worst_eavesdroppers
from .channel import tau
from .channel import worst_eavesdropper
from .exceptions import ConstraintError
from .exceptions import ModelError
from .exceptions import OracleCostError
from .exceptions import ScenarioError
from .oracle import grid_search_joint
from .oracle import grid_search_position
from .position_opt import build_surrogate
from .position_opt import check_clearance
from .position_opt import optimize_trajectory
from .position_opt import solve_position_subproblem
from .power_opt import optimize_powers
from .power_opt import power_given_rho
from .power_opt import solve_rho
from .scenario import dump_scenario
from .scenario import generate_scenario
from .scenario import load_scenario
from .scenario import save_scenario
from .scenario import scenario_id
from .scenario import validate_scenario
from .solver import compare_strategies
from .solver import run_alternating_optimization
from .solver import run_baseline
from .solver import zero_negative_slots
from .types import ChannelParams
from .types import DiskConstraint
from .types import DualSolve
from .types import GridSpec
from .types import LinkGains
from .types import PowerConstraints
from .types import PowerPolicy
from .types import Scenario
from .types import ScenarioConfig
from .types import SolverConfig
from .types import SolveResult
from .types import Strategy
from .types import SurrogateCoefficients
from .types import UavTrajectory
from .types import Vec3

__all__ = (
    'ChannelDiagnostics',
    'ChannelParams',
    'ConstraintError',
    'DiskConstraint',
    'DualSolve',
    'GridSpec',
    'LinkGains',
    'ModelError',
    'OracleCostError',
    'PowerConstraints',
    'PowerPolicy',
    'Scenario',
    'ScenarioConfig',
    'ScenarioError',
    'SolveResult',
    'SolverConfig',
    'Strategy',
    'SurrogateCoefficients',
    'UavTrajectory',
    'Vec3',
    'a2g_gain',
    'build_surrogate',
    'check_clearance',
    'compare_strategies',
    'compute_link_gains',
    'dump_scenario',
    'eaves_capacity',
    'g2g_gain',
    'generate_scenario',
    'grid_search_joint',
    'grid_search_position',
    'legit_capacity',
    'load_scenario',
    'objective_p1',
    'objective_p2',
    'optimize_powers',
    'optimize_trajectory',
    'power_given_rho',
    'run_alternating_optimization',
    'run_baseline',
    'save_scenario',
    'scenario_id',
    'slot_taus',
    'slot_worst_eavesdroppers',
    'solve_position_subproblem',
    'solve_rho',
    'tau',
    'validate_scenario',
    'worst_eavesdropper',
    'zero_negative_slots',
)
