import math

import numpy as np
import pytest

from chaoguide.analysis import divergence_study, pip_predict
from chaoguide.errors import ObserveAfterImpact, PreconditionViolation, ReadingOutOfRange
from chaoguide.guidance import Scenario, simulate


def test_divergence_zero_eps_is_exact():
    rep = divergence_study(Scenario(), [0.0])
    assert rep.spreads == (0.0,)
    assert rep.n_retargets == 8


def test_divergence_without_retargets():
    rep = divergence_study(Scenario(n=0), [0.0, 1e-3, 5.0, -7.0])
    assert all(s <= 2e-6 for s in rep.spreads)


def test_divergence_default_study():
    sc = Scenario()
    eps = 1e-6 * (sc.sensor.s_max - sc.sensor.s_min)
    rep = divergence_study(sc, [0.0, eps, -eps], threads=2)
    assert rep.spreads[0] == 0.0
    assert rep.spreads[1] > 1e-3 * sc.target.radius
    assert rep.spreads[2] > 1e-3 * sc.target.radius
    assert len(rep.epsilons) == len(rep.spreads) == 3


def test_divergence_out_of_range():
    with pytest.raises(ReadingOutOfRange):
        divergence_study(Scenario(), [100.0])


def test_pip_exact_without_retargets():
    res = simulate(Scenario(n=0))
    for t in np.linspace(0.0, res.impact_time, 50, endpoint=False):
        rep = pip_predict(res, float(t))
        assert rep.error <= 1e-6
        assert rep.error == pytest.approx(math.dist(rep.predicted, rep.actual))


def test_pip_before_first_event():
    sc = Scenario()
    res = simulate(sc)
    rep = pip_predict(res, 0.5 * res.events[0].time)
    assert rep.error > 0.1 * sc.target.radius


def test_pip_after_final_event():
    res = simulate(Scenario())
    last = res.events[-1].time
    for t in np.linspace(last, res.impact_time, 20, endpoint=False):
        assert pip_predict(res, float(t)).error <= 1e-6


def test_pip_at_event_times_reveals_current_aim():
    # at every adopted event the observer sees exactly how far that event's
    # aim point lies from the final impact; from the last adopted event on the
    # prediction is exact
    res = simulate(Scenario())
    adopted = [e for e in res.events if e.adopted]
    for e in adopted:
        rep = pip_predict(res, e.time)
        assert rep.error == pytest.approx(math.dist(e.target, res.impact), abs=1e-6)
    assert pip_predict(res, adopted[-1].time).error <= 1e-6


def test_pip_time_bounds():
    res = simulate(Scenario(n=2))
    with pytest.raises(ObserveAfterImpact):
        pip_predict(res, res.impact_time)
    with pytest.raises(ObserveAfterImpact):
        pip_predict(res, res.impact_time + 10)
    with pytest.raises(PreconditionViolation):
        pip_predict(res, -1.0)
