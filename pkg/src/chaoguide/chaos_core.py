"""Two-dimensional chaotic maps, orbits, attractor boxes and Lyapunov exponents.

Two map families are provided:

* Lozi: ``x' = 1 - a|x| + y``, ``y' = b x`` (robustly chaotic, the default)
* Henon: ``x' = 1 - a x^2 + y``, ``y' = b x`` (kept as a non-robust control)

Orbit iteration and the Jacobian (Benettin) Lyapunov estimate run in the
compiled kernel when available; :func:`step` and
:func:`lyapunov_two_trajectory` are deliberately plain Python so they can
serve as independent checks of the kernel path.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import (
    DegenerateTangent,
    DivergedState,
    EmptyOrbit,
    PreconditionViolation,
)
from .parallel import thread_count

ESCAPE_BOUND = 1e6
DEFAULT_TRANSIENT = 1000
DEFAULT_SEED = (0.1, 0.1)


class Vec2(NamedTuple):
    x: float
    y: float


class MapKind(enum.Enum):
    LOZI = "lozi"
    HENON = "henon"

    @property
    def code(self) -> int:
        return kernels.LOZI if self is MapKind.LOZI else kernels.HENON


# Parameter windows accepted by MapParams; wide enough for negative controls
# and attracting-fixed-point checks, narrow enough to reject nonsense.
ADMISSIBLE = {
    MapKind.LOZI: ((0.0, 2.0), (-1.0, 1.0)),
    MapKind.HENON: ((0.0, 2.0), (-1.0, 1.0)),
}

# Lozi parameter window used for sensor-driven parameter selection.
ROBUST_WINDOW = ((1.55, 1.75), (0.45, 0.55))


@dataclass(frozen=True)
class MapParams:
    kind: MapKind
    a: float
    b: float

    def __post_init__(self):
        if not isinstance(self.kind, MapKind):
            object.__setattr__(self, "kind", MapKind(self.kind))
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise PreconditionViolation(f"map parameters must be finite: a={self.a}, b={self.b}")
        (alo, ahi), (blo, bhi) = ADMISSIBLE[self.kind]
        if not (alo <= self.a <= ahi and blo <= self.b <= bhi):
            raise PreconditionViolation(
                f"{self.kind.value} parameters (a={self.a}, b={self.b}) outside admissible "
                f"window a in [{alo}, {ahi}], b in [{blo}, {bhi}]"
            )


@dataclass(frozen=True)
class Orbit:
    """A finite orbit. ``states[0]`` is the seed; the first ``transient_len`` states are transient."""

    states: np.ndarray
    transient_len: int
    params: MapParams
    seed: Vec2

    @property
    def post_transient(self) -> np.ndarray:
        return self.states[self.transient_len:]

    def __len__(self):
        return len(self.states)


@dataclass(frozen=True)
class Box2:
    min: Vec2
    max: Vec2

    def __post_init__(self):
        vals = (*self.min, *self.max)
        if not all(math.isfinite(v) for v in vals):
            raise PreconditionViolation("box corners must be finite")
        if self.min.x > self.max.x or self.min.y > self.max.y:
            raise PreconditionViolation(f"inverted box {self.min} .. {self.max}")

    @property
    def width(self) -> float:
        return self.max.x - self.min.x

    @property
    def height(self) -> float:
        return self.max.y - self.min.y

    @property
    def center(self) -> Vec2:
        return Vec2(0.5 * (self.min.x + self.max.x), 0.5 * (self.min.y + self.max.y))

    def corners(self) -> list[Vec2]:
        return [
            Vec2(self.min.x, self.min.y),
            Vec2(self.max.x, self.min.y),
            Vec2(self.max.x, self.max.y),
            Vec2(self.min.x, self.max.y),
        ]

    def contains(self, pts) -> np.ndarray | bool:
        """Closed-box membership for a point or an ``(N, 2)`` array."""
        p = np.asarray(pts, dtype=float)
        inside = (
            (p[..., 0] >= self.min.x)
            & (p[..., 0] <= self.max.x)
            & (p[..., 1] >= self.min.y)
            & (p[..., 1] <= self.max.y)
        )
        return bool(inside) if inside.ndim == 0 else inside


@dataclass(frozen=True)
class ScanEntry:
    params: MapParams
    lle: float
    diverged: bool
    failure: str = ""


@dataclass(frozen=True)
class ScanReport:
    entries: list[ScanEntry] = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def fraction_above(self, threshold: float) -> float:
        """Fraction of non-diverged entries whose LLE exceeds ``threshold``."""
        ok = [e for e in self.entries if not e.diverged]
        if not ok:
            return 0.0
        return sum(e.lle > threshold for e in ok) / len(ok)


def _as_vec2(s) -> Vec2:
    x, y = s
    return Vec2(float(x), float(y))


def step(s, p: MapParams) -> Vec2:
    """Apply one iteration of the map ``p.kind`` to ``s``."""
    x, y = float(s[0]), float(s[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise PreconditionViolation(f"state must be finite, got {s!r}")
    if p.kind is MapKind.LOZI:
        xn = 1.0 - p.a * abs(x) + y
    else:
        xn = 1.0 - p.a * x * x + y
    yn = p.b * x
    if not (abs(xn) <= ESCAPE_BOUND and abs(yn) <= ESCAPE_BOUND):
        raise DivergedState(1, f"step escaped the bound: ({xn}, {yn})")
    return Vec2(xn, yn)


def lozi_fixed_point(a: float, b: float) -> Vec2:
    """Fixed point of the Lozi map in the half-plane x > 0."""
    x = 1.0 / (1.0 + a - b)
    return Vec2(x, b * x)


def iterate(seed, p: MapParams, transient: int = DEFAULT_TRANSIENT, keep: int = 1) -> Orbit:
    """Iterate the map from ``seed`` and return an orbit of ``transient + keep`` states.

    Raises:
        DivergedState: with ``index`` set to the first escaped iterate.
    """
    if transient < 0 or keep < 1:
        raise PreconditionViolation(f"need transient >= 0 and keep >= 1, got {transient}, {keep}")
    seed = _as_vec2(seed)
    if not (math.isfinite(seed.x) and math.isfinite(seed.y)):
        raise PreconditionViolation("seed must be finite")
    states, bad = kernels.iterate_orbit(p.kind.code, p.a, p.b, seed.x, seed.y, transient + keep)
    if bad >= 0:
        raise DivergedState(bad)
    states.setflags(write=False)
    return Orbit(states=states, transient_len=transient, params=p, seed=seed)


def attractor_bbox(o: Orbit, margin_frac: float = 0.0) -> Box2:
    """Axis-aligned box of the post-transient states, each side inflated by ``margin_frac`` of its length."""
    if margin_frac < 0:
        raise PreconditionViolation("margin_frac must be >= 0")
    pts = o.post_transient
    if len(pts) == 0:
        raise EmptyOrbit("orbit has no post-transient states")
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    pad = margin_frac * (hi - lo)
    return Box2(Vec2(*(lo - pad).tolist()), Vec2(*(hi + pad).tolist()))


def lyapunov_max(p: MapParams, seed=DEFAULT_SEED, iters: int = 100_000,
                 transient: int = DEFAULT_TRANSIENT) -> float:
    """Largest Lyapunov exponent from Jacobian-propagated tangent vectors.

    The tangent vector is renormalised every step and the log growth
    factors averaged. For Lozi the Jacobian is ``[[-a sign(x), 1], [b, 0]]``
    with ``sign(0) = +1``.
    """
    if iters < 1000:
        raise PreconditionViolation(f"iters must be >= 1000, got {iters}")
    seed = _as_vec2(seed)
    lle, status, where = kernels.lyapunov_jacobian(
        p.kind.code, p.a, p.b, seed.x, seed.y, iters, transient
    )
    if status == 1:
        raise DivergedState(where)
    if status == 2:
        raise DegenerateTangent(f"tangent norm underflowed at iterate {where}")
    return lle


def lyapunov_two_trajectory(p: MapParams, seed=DEFAULT_SEED, iters: int = 100_000,
                            transient: int = DEFAULT_TRANSIENT, d0: float = 1e-9,
                            window: int = 5) -> float:
    """Largest Lyapunov exponent from the separation of two nearby trajectories.

    A companion trajectory starts ``d0`` away from the reference; every
    ``window`` steps the log of the separation growth is accumulated and the
    companion is pulled back to distance ``d0`` along the current
    separation direction. Uses no derivative information.
    """
    if iters < window:
        raise PreconditionViolation("iters must cover at least one window")
    x = _as_vec2(seed)
    for _ in range(transient):
        x = step(x, p)
    ref = x
    other = Vec2(ref.x + d0 / math.sqrt(2.0), ref.y + d0 / math.sqrt(2.0))
    acc = 0.0
    done = 0
    while done + window <= iters:
        for _ in range(window):
            ref = step(ref, p)
            other = step(other, p)
        dx, dy = other.x - ref.x, other.y - ref.y
        d = math.hypot(dx, dy)
        if d == 0.0:
            raise DegenerateTangent("trajectories collapsed onto each other")
        acc += math.log(d / d0)
        other = Vec2(ref.x + dx * d0 / d, ref.y + dy * d0 / d)
        done += window
    return acc / done


def _axis(lo_hi, count) -> np.ndarray:
    lo, hi = float(lo_hi[0]), float(lo_hi[1])
    if count < 1:
        raise PreconditionViolation("grid counts must be positive")
    if count == 1:
        if lo != hi:
            raise PreconditionViolation(
                "a single grid count is only allowed for a degenerate (point) interval"
            )
        return np.array([lo])
    if lo == hi:
        raise PreconditionViolation("a degenerate interval needs a grid count of 1")
    return np.linspace(lo, hi, count)


def _scan_point(p: MapParams, seed, iters, transient) -> ScanEntry:
    try:
        return ScanEntry(p, lyapunov_max(p, seed, iters, transient), False)
    except DivergedState as exc:
        return ScanEntry(p, float("nan"), True, f"diverged at iterate {exc.index}")
    except DegenerateTangent as exc:
        return ScanEntry(p, float("nan"), True, str(exc))


def scan_robustness(kind: MapKind, a_range: Sequence[float], b_range: Sequence[float],
                    grid: Sequence[int] = (20, 20), iters: int = 100_000,
                    seed=DEFAULT_SEED, transient: int = DEFAULT_TRANSIENT,
                    threads: int | None = None) -> ScanReport:
    """Evaluate :func:`lyapunov_max` on the Cartesian ``a`` x ``b`` grid.

    An axis may have a count of 1 only when its interval is a single point,
    and the grid must hold at least two points. Entries are ordered
    a-major; divergent points are flagged rather than raised.
    """
    kind = MapKind(kind)
    na, nb = grid
    a_vals = _axis(a_range, na)
    b_vals = _axis(b_range, nb)
    if len(a_vals) * len(b_vals) < 2:
        raise PreconditionViolation("scan grid must contain at least two points")
    params = [MapParams(kind, float(a), float(b)) for a in a_vals for b in b_vals]
    workers = thread_count(threads)
    if workers == 1:
        entries = [_scan_point(p, seed, iters, transient) for p in params]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(lambda q: _scan_point(q, seed, iters, transient), params))
    return ScanReport(entries)
