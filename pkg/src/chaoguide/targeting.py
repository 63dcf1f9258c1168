"""Mapping attractor space onto the ground neighbourhood and picking variable targets."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chaos_core import Box2, Orbit, Vec2
from .errors import DegenerateBox, OrbitTooShort, PreconditionViolation

DEFAULT_FILL_FRAC = 0.9
DEFAULT_STRIDE = 7


@dataclass(frozen=True)
class TargetSpec:
    """Closed disc of ``radius`` metres about ``center`` (ground coordinates)."""

    center: Vec2
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", Vec2(float(self.center[0]), float(self.center[1])))
        if not all(math.isfinite(v) for v in self.center):
            raise PreconditionViolation("target center must be finite")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise PreconditionViolation(f"target radius must be positive, got {self.radius}")

    def distance(self, p) -> float:
        return math.hypot(p[0] - self.center.x, p[1] - self.center.y)


@dataclass(frozen=True)
class GroundMap:
    """Affine map ``g(p) = center + scale * (p - box.center)``.

    The scale is chosen so the whole box lands in the disc of radius
    ``fill_frac * radius``.
    """

    box: Box2
    center: Vec2
    radius: float
    fill_frac: float

    @property
    def scale(self) -> float:
        half_diag = 0.5 * math.hypot(self.box.width, self.box.height)
        return self.fill_frac * self.radius / half_diag

    def __call__(self, p):
        c = self.box.center
        s = self.scale
        arr = np.asarray(p, dtype=float)
        if arr.ndim == 1:
            return Vec2(self.center.x + s * (arr[0] - c.x), self.center.y + s * (arr[1] - c.y))
        out = np.empty_like(arr)
        out[:, 0] = self.center.x + s * (arr[:, 0] - c.x)
        out[:, 1] = self.center.y + s * (arr[:, 1] - c.y)
        return out


@dataclass(frozen=True)
class VariableTargets:
    points: tuple[Vec2, ...]
    source_indices: tuple[int, ...]

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __iter__(self):
        return iter(self.points)


def build_ground_map(box: Box2, target: TargetSpec, fill_frac: float = DEFAULT_FILL_FRAC) -> GroundMap:
    if not (0.0 < fill_frac <= 1.0):
        raise PreconditionViolation(f"fill_frac must lie in (0, 1], got {fill_frac}")
    if box.width <= 0.0 or box.height <= 0.0:
        raise DegenerateBox(f"box has zero extent: width={box.width}, height={box.height}")
    return GroundMap(box=box, center=target.center, radius=target.radius, fill_frac=fill_frac)


def variable_targets(o: Orbit, g: GroundMap, n: int, stride: int = DEFAULT_STRIDE) -> VariableTargets:
    """Take ``n`` orbit states, ``stride`` apart after the transient, and map them to the ground.

    Point ``i`` is ``g(states[transient_len + (i + 1) * stride])``; order
    follows the orbit and repeated points are kept.
    """
    if n < 0 or stride < 1:
        raise PreconditionViolation(f"need n >= 0 and stride >= 1, got n={n}, stride={stride}")
    idx = [o.transient_len + (i + 1) * stride for i in range(n)]
    if idx and idx[-1] >= len(o.states):
        raise OrbitTooShort(
            f"orbit of {len(o.states)} states cannot supply index {idx[-1]} "
            f"(n={n}, stride={stride}, transient={o.transient_len})"
        )
    pts = g(o.states[idx]) if idx else np.empty((0, 2))
    return VariableTargets(
        points=tuple(Vec2(float(x), float(y)) for x, y in pts),
        source_indices=tuple(idx),
    )
