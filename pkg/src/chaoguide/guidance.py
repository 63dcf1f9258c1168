"""Sensor-seeded chaotic target selection and the retargeting flight simulation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .ballistics import (
    KinState,
    RetargetConstraints,
    RetargetOutcome,
    RetargetSolution,
    Vec3,
    ballistic_solve,
    impact_time,
    optimal_retarget,
    propagate,
    propagate_many,
)
from .chaos_core import (
    DEFAULT_SEED,
    DEFAULT_TRANSIENT,
    ROBUST_WINDOW,
    Box2,
    MapKind,
    MapParams,
    Vec2,
    attractor_bbox,
    iterate,
)
from .errors import PreconditionViolation, ReadingOutOfRange
from .targeting import (
    DEFAULT_FILL_FRAC,
    DEFAULT_STRIDE,
    TargetSpec,
    VariableTargets,
    build_ground_map,
    variable_targets,
)

BBOX_MARGIN = 0.05
# post-transient states used to size the attractor box
BBOX_SAMPLES = 10_000
# floor on attractor box sides (map units) so collapsed orbits still map sanely
MIN_BOX_EXTENT = 1e-3


@dataclass(frozen=True)
class SensorSpec:
    reading: float
    s_min: float = 0.0
    s_max: float = 50.0
    a_min: float = ROBUST_WINDOW[0][0]
    a_max: float = ROBUST_WINDOW[0][1]

    def __post_init__(self):
        if not self.s_min < self.s_max:
            raise PreconditionViolation(f"sensor range [{self.s_min}, {self.s_max}] is empty")
        if not self.a_min < self.a_max:
            raise PreconditionViolation(f"parameter range [{self.a_min}, {self.a_max}] is empty")
        if not (self.s_min <= self.reading <= self.s_max):
            raise ReadingOutOfRange(
                f"reading {self.reading} outside sensor range [{self.s_min}, {self.s_max}]"
            )


def sensor_to_param(s: SensorSpec) -> float:
    """Affine, strictly increasing map of the sensor range onto the parameter range."""
    if not (s.s_min <= s.reading <= s.s_max):
        raise ReadingOutOfRange(f"reading {s.reading} outside [{s.s_min}, {s.s_max}]")
    if s.reading == s.s_max:
        return s.a_max
    return s.a_min + (s.reading - s.s_min) * (s.a_max - s.a_min) / (s.s_max - s.s_min)


@dataclass(frozen=True)
class Scenario:
    launch: Vec3 = Vec3(0.0, 0.0, 0.0)
    target: TargetSpec = TargetSpec(Vec2(6000.0, 2500.0), 50.0)
    nominal_tof: float = 90.0
    n: int = 8
    rho: float = 0.6
    constraints: RetargetConstraints = RetargetConstraints(500.0, math.pi / 2, 0.5)
    sensor: SensorSpec = SensorSpec(25.0)
    b_fixed: float = 0.5
    seed: Vec2 = Vec2(*DEFAULT_SEED)
    transient: int = DEFAULT_TRANSIENT
    stride: int = DEFAULT_STRIDE
    fill_frac: float = DEFAULT_FILL_FRAC
    sample_dt: float = 0.1

    def __post_init__(self):
        object.__setattr__(self, "launch", Vec3(*map(float, self.launch)))
        object.__setattr__(self, "seed", Vec2(*map(float, self.seed)))
        if not all(math.isfinite(c) for c in self.launch) or self.launch.z < 0:
            raise PreconditionViolation("launch must be finite and not below ground")
        if self.n < 0:
            raise PreconditionViolation("n must be >= 0")
        if not self.nominal_tof > 0:
            raise PreconditionViolation("nominal_tof must be positive")
        if not 0.0 < self.rho < 1.0:
            raise PreconditionViolation("rho must lie strictly between 0 and 1")
        if self.transient < 0 or self.stride < 1:
            raise PreconditionViolation("need transient >= 0 and stride >= 1")
        if not 0.0 < self.fill_frac <= 1.0:
            raise PreconditionViolation("fill_frac must lie in (0, 1]")
        if not self.sample_dt > 0:
            raise PreconditionViolation("sample_dt must be positive")

    def with_reading(self, reading: float) -> "Scenario":
        return replace(self, sensor=replace(self.sensor, reading=reading))


@dataclass(frozen=True)
class RetargetEvent:
    index: int
    time: float
    state_before: KinState
    target: Vec2
    solution: RetargetOutcome

    @property
    def adopted(self) -> bool:
        return isinstance(self.solution, RetargetSolution)


@dataclass(frozen=True)
class SimResult:
    """Trajectory samples (rows ``t, px, py, pz, vx, vy, vz``), event log and impact record."""

    samples: np.ndarray
    events: tuple[RetargetEvent, ...]
    impact: Vec2
    impact_time: float
    miss_from_A: float
    hit_neighborhood: bool
    committed_target: Vec2
    targets: VariableTargets
    map_a: float
    target: TargetSpec = field(repr=False, default=None)

    def state_at(self, i: int) -> KinState:
        t, px, py, pz, vx, vy, vz = self.samples[i].tolist()
        return KinState(Vec3(px, py, pz), Vec3(vx, vy, vz), t)


def map_params(sc: Scenario) -> MapParams:
    return MapParams(MapKind.LOZI, sensor_to_param(sc.sensor), sc.b_fixed)


def plan(sc: Scenario) -> VariableTargets:
    """Variable target points for a scenario: sensor -> map parameter -> orbit -> ground."""
    if sc.n == 0:
        return VariableTargets((), ())
    p = map_params(sc)
    keep = max(BBOX_SAMPLES, sc.n * sc.stride + 1)
    orbit = iterate(sc.seed, p, sc.transient, keep)
    box = _padded(attractor_bbox(orbit, BBOX_MARGIN))
    g = build_ground_map(box, sc.target, sc.fill_frac)
    return variable_targets(orbit, g, sc.n, sc.stride)


def _padded(box: Box2) -> Box2:
    hx = 0.5 * max(box.width, MIN_BOX_EXTENT)
    hy = 0.5 * max(box.height, MIN_BOX_EXTENT)
    c = box.center
    if box.width >= MIN_BOX_EXTENT and box.height >= MIN_BOX_EXTENT:
        return box
    return Box2(Vec2(c.x - hx, c.y - hy), Vec2(c.x + hx, c.y + hy))


def _segment_samples(start: KinState, t_end: float, dt: float) -> np.ndarray:
    """Samples on the global ``k * dt`` grid strictly inside ``(start.t, t_end)``."""
    k0 = math.floor(start.t / dt) + 1
    k1 = math.ceil(t_end / dt) - 1
    if k1 < k0:
        return np.empty((0, 7))
    ts = np.arange(k0, k1 + 1) * dt
    ts = ts[(ts > start.t) & (ts < t_end)]
    return propagate_many(start, ts - start.t)


def _row(s: KinState) -> np.ndarray:
    return np.array([[s.t, *s.p, *s.v]])


def simulate(sc: Scenario) -> SimResult:
    """Fly the scenario.

    The vehicle launches on the ballistic arc to the target center. Event
    ``i`` fires after ``rho`` of the current time-to-impact has elapsed and
    re-aims at the ``i``-th variable target when the maneuver is within
    limits; otherwise it keeps its current aim. The final segment is pure
    ballistic flight to the last adopted aim point.
    """
    targets = plan(sc)
    a = sensor_to_param(sc.sensor)
    center = sc.target.center
    v0 = ballistic_solve(sc.launch, center, sc.nominal_tof)
    seg = KinState(sc.launch, v0, 0.0)
    committed = center
    chunks = [_row(seg)]
    events = []
    for i, tgt in enumerate(targets, start=1):
        t_event = seg.t + sc.rho * impact_time(seg)
        chunks.append(_segment_samples(seg, t_event, sc.sample_dt))
        before = propagate(seg, t_event - seg.t)
        outcome = optimal_retarget(before, tgt, sc.constraints)
        if isinstance(outcome, RetargetSolution):
            seg = KinState(before.p, outcome.v_new, before.t)
            committed = tgt
        else:
            seg = before
        events.append(RetargetEvent(i, before.t, before, tgt, outcome))
        chunks.append(_row(seg))
    end = propagate(seg, impact_time(seg))
    chunks.append(_segment_samples(seg, end.t, sc.sample_dt))
    # pin the landing row to the ground plane; the residual is rounding only
    end = KinState(Vec3(end.p.x, end.p.y, 0.0), end.v, end.t)
    chunks.append(_row(end))
    impact = Vec2(end.p.x, end.p.y)
    miss = sc.target.distance(impact)
    return SimResult(
        samples=np.concatenate(chunks),
        events=tuple(events),
        impact=impact,
        impact_time=end.t,
        miss_from_A=miss,
        hit_neighborhood=miss <= sc.target.radius,
        committed_target=Vec2(*committed),
        targets=targets,
        map_a=a,
        target=sc.target,
    )
