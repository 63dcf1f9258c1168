"""Impact-point divergence under sensor perturbation and ballistic impact-point prediction."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ballistics import impact_point
from .chaos_core import Vec2
from .errors import ObserveAfterImpact, PreconditionViolation
from .guidance import Scenario, SimResult, simulate
from .parallel import thread_count


@dataclass(frozen=True)
class DivergenceReport:
    epsilons: tuple[float, ...]
    spreads: tuple[float, ...]
    n_retargets: int


@dataclass(frozen=True)
class PipReport:
    observe_time: float
    predicted: Vec2
    actual: Vec2
    error: float


def divergence_study(base: Scenario, epsilons: Sequence[float],
                     threads: int | None = None) -> DivergenceReport:
    """Impact-point distance between the base run and runs with ``reading + eps``."""
    perturbed = [base.with_reading(base.sensor.reading + float(e)) for e in epsilons]
    ref = simulate(base)
    workers = thread_count(threads)
    if workers == 1 or len(perturbed) < 2:
        runs = [simulate(sc) for sc in perturbed]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(simulate, perturbed))
    spreads = tuple(
        math.hypot(r.impact.x - ref.impact.x, r.impact.y - ref.impact.y) for r in runs
    )
    return DivergenceReport(tuple(float(e) for e in epsilons), spreads, base.n)


def pip_predict(result: SimResult, observe_time: float) -> PipReport:
    """Extrapolate the last sample at or before ``observe_time`` as pure ballistic flight."""
    if observe_time < 0:
        raise PreconditionViolation("observe_time must be >= 0")
    if observe_time >= result.impact_time:
        raise ObserveAfterImpact(
            f"observation at {observe_time} s is not before impact at {result.impact_time} s"
        )
    i = int(np.searchsorted(result.samples[:, 0], observe_time, side="right")) - 1
    px, py = impact_point(result.state_at(i))
    err = math.hypot(px - result.impact.x, py - result.impact.y)
    return PipReport(float(observe_time), Vec2(px, py), result.impact, err)
