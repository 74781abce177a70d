import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lrcbench.asymptotic import (SERIES, CurvePoint, RoptProvider, achievable_rate,
                                 converse_rate, delta_grid, entropy_q, gv_parity_rate,
                                 inv_entropy_q, list_converse_rate, ropt_eval, sample_curves)
from lrcbench.errors import ValidationError

MRRW, GV, PLOT, SING = (RoptProvider(v) for v in ("mrrw2", "gv", "plotkin", "singleton"))
GRID = delta_grid(0.0, 0.5, 0.005)


def test_entropy_examples():
    assert entropy_q(0.5, 2) == pytest.approx(1.0)
    assert entropy_q(0.75, 4) == pytest.approx(1.0)
    assert entropy_q(0.11, 2) == pytest.approx(0.4999160, abs=1e-7)
    assert entropy_q(0.0, 3) == 0.0
    with pytest.raises(ValidationError):
        entropy_q(1.2, 2)
    arr = entropy_q(np.array([0.0, 0.5]), 2)
    assert arr.shape == (2,) and arr[1] == pytest.approx(1.0)


def test_inverse_entropy_examples():
    assert inv_entropy_q(1, 2) == 0.5
    assert inv_entropy_q(0, 5) == 0
    assert inv_entropy_q(2 / 3, 2) == pytest.approx(0.1740, abs=5e-4)
    with pytest.raises(ValidationError):
        inv_entropy_q(1.5, 2)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 4, 8]), st.floats(0, 1))
def test_entropy_inverse_round_trip(q, u):
    theta = 1 - 1 / q
    assert entropy_q(inv_entropy_q(u, q), q) == pytest.approx(u, abs=1e-12)
    # away from the flat maximum the inverse recovers x itself
    x = u * (theta - 1e-4)
    assert inv_entropy_q(entropy_q(x, q), q) == pytest.approx(x, abs=1e-9)


def test_ropt_examples():
    assert ropt_eval(MRRW, 0.0, 2) == pytest.approx(1.0)
    assert ropt_eval(MRRW, 0.5, 2) == 0.0
    assert ropt_eval(GV, 0.11, 2) == pytest.approx(0.500084, abs=1e-6)
    with pytest.raises(ValidationError):
        ropt_eval(MRRW, 0.1, 3)
    with pytest.raises(ValidationError):
        RoptProvider("nope")
    custom = RoptProvider("custom", lambda d: 1 - 2 * d)
    assert ropt_eval(custom, 0.25, 2) == pytest.approx(0.5)


@pytest.mark.parametrize("provider", [MRRW, GV, PLOT])
def test_ropt_range_and_endpoints(provider):
    vals = ropt_eval(provider, np.linspace(0, 1, 201), 2)
    assert (vals >= 0).all() and (vals <= 1).all()
    assert ropt_eval(provider, 0.0, 2) == pytest.approx(1.0)
    assert ropt_eval(provider, 0.5, 2) == 0 and ropt_eval(provider, 0.8, 2) == 0


def test_converse_examples():
    for provider in (MRRW, GV, PLOT, SING):
        assert converse_rate(0.0, 2, 2, provider) == pytest.approx(2 / 3, abs=1e-6)
    for provider in (MRRW, GV, PLOT):
        assert converse_rate(0.5, 2, 2, provider) == pytest.approx(0.0, abs=1e-9)
        assert converse_rate(0.7, 3, 2, provider) == pytest.approx(0.0, abs=1e-9)
    assert converse_rate(0.2, 2, 2, SING) == pytest.approx(0.533333, abs=1e-6)
    for d in (0.05, 0.3, 0.6):
        assert converse_rate(d, 3, 2, SING) == pytest.approx(0.75 * (1 - d), abs=1e-6)


@pytest.mark.parametrize("provider,q", [(MRRW, 2), (GV, 2), (PLOT, 2), (GV, 3), (PLOT, 4)])
def test_converse_below_its_endpoints(provider, q):
    for r in (1, 2, 4):
        for d in GRID:
            c = converse_rate(d, r, q, provider)
            assert c <= ropt_eval(provider, d, q) + 1e-9
            assert c <= r / (r + 1) * (1 - d) + 1e-9


def test_achievable_examples():
    assert achievable_rate(0.0, 2, 2) == pytest.approx(2 / 3, abs=1e-6)
    assert achievable_rate(0.5, 2, 2) == pytest.approx(0.0, abs=1e-6)
    assert achievable_rate(0.11, 2, 2, "substitute") == pytest.approx(0.3133, abs=5e-4)
    for q, r in [(3, 1), (4, 3)]:
        assert achievable_rate(0.0, r, q) == pytest.approx(r / (r + 1), abs=1e-6)
        assert achievable_rate(1 - 1 / q, r, q) == pytest.approx(0.0, abs=1e-6)
        assert achievable_rate(0.0, r, q, "substitute") == pytest.approx(r / (r + 1), abs=1e-6)
    with pytest.raises(ValidationError):
        achievable_rate(0.1, 2, 2, "best")


@pytest.mark.parametrize("q,r", [(2, 1), (2, 2), (2, 4), (3, 2), (4, 1)])
def test_achievable_orderings(q, r):
    theta = 1 - 1 / q
    for d in delta_grid(0.0, theta, 0.01):
        opt = achievable_rate(d, r, q)
        sub = achievable_rate(d, r, q, "substitute")
        assert sub <= opt + 1e-9
        for provider in (SING, PLOT):
            assert opt <= converse_rate(d, r, q, provider) + 1e-9


def test_gv_parity():
    assert gv_parity_rate(0.0, 2, 2) == pytest.approx(2 / 3)
    zero = inv_entropy_q(2 / 3, 2)
    assert gv_parity_rate(zero - 1e-4, 2, 2) > 0
    assert gv_parity_rate(zero + 1e-4, 2, 2) == 0
    assert gv_parity_rate(0.1, 10**6, 2) == pytest.approx(1 - entropy_q(0.1, 2), abs=1e-5)


def test_list_converse():
    assert list_converse_rate(0.0, 2, 2) == pytest.approx(2 / 3, abs=1e-6)
    assert list_converse_rate(0.5, 2, 2) == pytest.approx(0.0, abs=1e-6)
    assert list_converse_rate(2 / 3, 1, 3) == pytest.approx(0.0, abs=1e-6)
    for s in (0.05, 0.2):
        assert list_converse_rate(s, 2000, 2) == pytest.approx(1 - entropy_q(s, 2), abs=2e-3)


def test_curve_points_and_sampling():
    pts = sample_curves(["converse-mrrw", "eq1-singleton"], 2, 2, [0.0, 0.25])
    assert [p.series for p in pts] == ["converse-mrrw"] * 2 + ["eq1-singleton"] * 2
    assert pts[0].rate == pytest.approx(2 / 3, abs=1e-6)
    with pytest.raises(ValidationError):
        sample_curves(["nope"], 2, 2, [0.1])
    with pytest.raises(ValidationError):
        CurvePoint(0.1, math.nan, "x")
    with pytest.raises(ValidationError):
        CurvePoint(0.1, 0.2, "")
    assert delta_grid(0, 0.5, 0.1) == [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]


def test_series_vanish_past_half_for_binary():
    # the two Singleton-type lines are r/(r+1)(1-delta) and do not vanish at 1/2
    skip = {"eq1-singleton", "converse-singleton"}
    for name in SERIES:
        for d in (0.5, 0.6, 0.9):
            v = SERIES[name](d, 2, 2)
            assert (v > 0) if name in skip else v == pytest.approx(0.0, abs=1e-9), (name, d)


def test_curve_ordering_on_grid():
    for d in GRID:
        ach = achievable_rate(d, 2, 2)
        conv = converse_rate(d, 2, 2, MRRW)
        assert ach <= conv + 1e-6
        assert conv <= min(2 / 3 * (1 - d), ropt_eval(MRRW, d, 2)) + 1e-6


def test_optimizers_are_deterministic():
    a = [converse_rate(d, 2, 2, MRRW) for d in (0.1, 0.2, 0.3)]
    b = [converse_rate(d, 2, 2, MRRW) for d in (0.1, 0.2, 0.3)]
    assert a == b
    assert achievable_rate(0.13, 3, 2) == achievable_rate(0.13, 3, 2)
