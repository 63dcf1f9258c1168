"""Closed-form projectile kinematics over flat ground under uniform gravity.

Ground is the plane ``z = 0`` and gravity points along ``-z``. No drag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .errors import BelowGround, NeverImpacts, NonpositiveTof, PreconditionViolation

G = 9.80665

GRID_POINTS = 256
TMAX_FACTOR = 10.0
# Golden-section stops once the bracket is this small relative to the tof.
# Finer than 1 us because dv(tof) has a V-shaped minimum near zero.
TOF_REL_TOL = 1e-12
TOF_ABS_TOL = 1e-6
ZERO_SPEED = 1e-9

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Vec3(NamedTuple):
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class KinState:
    p: Vec3
    v: Vec3
    t: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "p", Vec3(*map(float, self.p)))
        object.__setattr__(self, "v", Vec3(*map(float, self.v)))
        if not all(math.isfinite(c) for c in (*self.p, *self.v, self.t)):
            raise PreconditionViolation("kinematic state must be finite")
        if self.t < 0:
            raise PreconditionViolation("state time must be >= 0")


@dataclass(frozen=True)
class RetargetConstraints:
    dv_max: float
    theta_max: float
    t_min: float

    def __post_init__(self):
        for name in ("dv_max", "theta_max", "t_min"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise PreconditionViolation(f"{name} must be positive and finite, got {v}")


@dataclass(frozen=True)
class RetargetSolution:
    v_new: Vec3
    tof: float
    dv: float
    dtheta: float


@dataclass(frozen=True)
class Infeasible:
    """The cheapest maneuver found, which breaks at least one limit."""

    reason: str
    best: RetargetSolution


RetargetOutcome = Union[RetargetSolution, Infeasible]


def propagate(s: KinState, dt: float) -> KinState:
    if dt < 0:
        raise PreconditionViolation(f"dt must be >= 0, got {dt}")
    (px, py, pz), (vx, vy, vz) = s.p, s.v
    return KinState(
        Vec3(px + vx * dt, py + vy * dt, pz + vz * dt - 0.5 * G * dt * dt),
        Vec3(vx, vy, vz - G * dt),
        s.t + dt,
    )


def propagate_many(s: KinState, dts: np.ndarray) -> np.ndarray:
    """Vectorised :func:`propagate`; rows are ``t, px, py, pz, vx, vy, vz``."""
    dts = np.asarray(dts, dtype=float)
    (px, py, pz), (vx, vy, vz) = s.p, s.v
    out = np.empty((len(dts), 7))
    out[:, 0] = s.t + dts
    out[:, 1] = px + vx * dts
    out[:, 2] = py + vy * dts
    out[:, 3] = pz + vz * dts - 0.5 * G * dts * dts
    out[:, 4] = vx
    out[:, 5] = vy
    out[:, 6] = vz - G * dts
    return out


def impact_time(s: KinState) -> float:
    """Time until the state reaches ``z = 0``, measured from ``s.t``."""
    z, vz = s.p.z, s.v.z
    if z < 0.0 or (z == 0.0 and vz <= 0.0):
        raise NeverImpacts(f"state at z={z} with vz={vz} never comes down to the ground")
    if z == 0.0:
        return 2.0 * vz / G
    root = math.sqrt(vz * vz + 2.0 * G * z)
    # avoid cancellation on the descending branch
    if vz >= 0.0:
        return (vz + root) / G
    return 2.0 * z / (root - vz)


def impact_point(s: KinState) -> tuple[float, float]:
    end = propagate(s, impact_time(s))
    return end.p.x, end.p.y


def ballistic_solve(origin, to_ground, tof: float) -> Vec3:
    """Velocity that carries a body from ``origin`` to ``(to_ground, 0)`` in exactly ``tof`` seconds."""
    if not tof > 0:
        raise NonpositiveTof(f"time of flight must be positive, got {tof}")
    if origin[2] < 0:
        raise PreconditionViolation("origin must not be below ground")
    return Vec3(
        (to_ground[0] - origin[0]) / tof,
        (to_ground[1] - origin[1]) / tof,
        (0.5 * G * tof * tof - origin[2]) / tof,
    )


def _angle(u, w) -> float:
    if math.sqrt(u[0] ** 2 + u[1] ** 2 + u[2] ** 2) < ZERO_SPEED:
        return 0.0
    cx = u[1] * w[2] - u[2] * w[1]
    cy = u[2] * w[0] - u[0] * w[2]
    cz = u[0] * w[1] - u[1] * w[0]
    dot = u[0] * w[0] + u[1] * w[1] + u[2] * w[2]
    return math.atan2(math.sqrt(cx * cx + cy * cy + cz * cz), dot)


def retarget_dv(s: KinState, to_ground, tofs) -> np.ndarray:
    """Delta-v magnitude of the ballistic solution for each candidate time of flight."""
    t = np.asarray(tofs, dtype=float)
    (px, py, pz), (vx, vy, vz) = s.p, s.v
    dx = (to_ground[0] - px) / t - vx
    dy = (to_ground[1] - py) / t - vy
    dz = (0.5 * G * t * t - pz) / t - vz
    return np.sqrt(dx * dx + dy * dy + dz * dz)


def _dv_scalar(s: KinState, to_ground, t: float) -> float:
    (px, py, pz), (vx, vy, vz) = s.p, s.v
    dx = (to_ground[0] - px) / t - vx
    dy = (to_ground[1] - py) / t - vy
    dz = (0.5 * G * t * t - pz) / t - vz
    return math.sqrt(dx * dx + dy * dy + dz * dz)


def golden_section(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Minimise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        if c >= d:  # bracket collapsed below float resolution
            break
    return (c, fc) if fc < fd else (d, fd)


def tof_window(s: KinState, c: RetargetConstraints) -> tuple[float, float]:
    """Search interval for the retarget time of flight."""
    t_hi = TMAX_FACTOR * impact_time(s)
    return c.t_min, max(t_hi, c.t_min)


def optimal_retarget(s: KinState, to_ground, c: RetargetConstraints) -> RetargetOutcome:
    """Cheapest ballistic re-aim of ``s`` onto ``to_ground``.

    Minimises ``|v_new - s.v|`` over the time of flight on
    ``[t_min, 10 * impact_time(s)]`` with a 256-point log grid followed by
    golden-section refinement around the best grid point. Returns
    :class:`Infeasible` when the minimiser exceeds ``dv_max`` or turns the
    velocity by more than ``theta_max``.
    """
    if s.p.z <= 0.0:
        raise BelowGround(f"cannot retarget at z={s.p.z}")
    t_lo, t_hi = tof_window(s, c)
    if t_hi > t_lo:
        grid = np.geomspace(t_lo, t_hi, GRID_POINTS)
        dvs = retarget_dv(s, to_ground, grid)
        k = int(np.argmin(dvs))
        lo = float(grid[max(k - 1, 0)])
        hi = float(grid[min(k + 1, GRID_POINTS - 1)])
        tol = min(TOF_ABS_TOL, TOF_REL_TOL * hi)
        tof, dv = golden_section(lambda t: _dv_scalar(s, to_ground, t), lo, hi, tol)
        if dvs[k] <= dv:
            tof, dv = float(grid[k]), float(dvs[k])
    else:
        tof = t_lo
        dv = _dv_scalar(s, to_ground, tof)
    tof, dv = float(tof), float(dv)
    v_new = ballistic_solve(s.p, to_ground, tof)
    sol = RetargetSolution(v_new=v_new, tof=tof, dv=dv, dtheta=_angle(s.v, v_new))
    if sol.dv > c.dv_max:
        return Infeasible(f"dv {sol.dv:.6g} m/s exceeds limit {c.dv_max:.6g} m/s", sol)
    if sol.dtheta > c.theta_max:
        return Infeasible(f"turn {sol.dtheta:.6g} rad exceeds limit {c.theta_max:.6g} rad", sol)
    return sol
