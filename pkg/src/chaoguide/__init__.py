"""Chaos-driven variable-target retargeting of a ballistic vehicle.

The public API re-exports the main types and operations of each module.
"""

from .analysis import DivergenceReport, PipReport, divergence_study, pip_predict
from .ballistics import (
    G,
    Infeasible,
    KinState,
    RetargetConstraints,
    RetargetSolution,
    Vec3,
    ballistic_solve,
    impact_time,
    optimal_retarget,
    propagate,
)
from .chaos_core import (
    Box2,
    MapKind,
    MapParams,
    Orbit,
    ScanReport,
    Vec2,
    attractor_bbox,
    iterate,
    lyapunov_max,
    lyapunov_two_trajectory,
    scan_robustness,
    step,
)
from .errors import *  # noqa: F401,F403
from .guidance import RetargetEvent, Scenario, SensorSpec, SimResult, plan, sensor_to_param, simulate
from .kernels import BACKEND
from .targeting import GroundMap, TargetSpec, VariableTargets, build_ground_map, variable_targets

__version__ = "0.1.0"
