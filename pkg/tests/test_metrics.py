import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simul_latency import generators, metrics
from simul_latency.core import HardSchedule, ScheduleError, SoftSchedule

import oracles

TOL = 1e-9


def hs(g, src_len):
    return HardSchedule.from_g(g, src_len)


@pytest.mark.parametrize(
    "g, src_len, expected",
    [
        ((1, 2), 2, 0.75),
        ((4, 4, 4, 4), 4, 1.0),
        ((3, 4, 4, 4), 4, 0.9375),
    ],
)
def test_average_proportion(g, src_len, expected):
    assert float(oracles.ap(g, src_len)) == expected
    assert metrics.average_proportion(hs(g, src_len)) == pytest.approx(expected, abs=TOL)


@pytest.mark.parametrize(
    "g, expected",
    [
        ((3, 4, 4, 4), (3, 1, 0, 0)),
        ((1, 2, 3, 4), (1, 1, 1, 1)),
        ((4, 4, 4, 4, 5), (4, 0, 0, 0, 1)),
    ],
)
def test_consecutive_wait(g, expected):
    assert metrics.consecutive_wait(hs(g, max(g))) == expected


@pytest.mark.parametrize(
    "g, src_len, expected",
    [((3, 4, 4, 4), 4, 2.0), ((1, 2, 3, 4), 4, 1.0), ((0, 0, 0), 3, 0.0)],
)
def test_mean_consecutive_wait(g, src_len, expected):
    assert metrics.mean_consecutive_wait(hs(g, src_len)) == expected


@pytest.mark.parametrize(
    "g, src_len, al, tau",
    [
        ((3, 4, 4, 4), 4, 3.0, 2),
        ((4, 4, 4, 4, 5), 5, 2.2, 5),
        ((1, 1, 2, 2, 3, 3), 3, 0.8, 5),
        ((1, 2, 3), 6, 0.0, 3),
        ((4, 4, 4, 4), 4, 4.0, 1),
    ],
)
def test_average_lagging(g, src_len, al, tau):
    got, got_tau = metrics.average_lagging(hs(g, src_len))
    assert got == pytest.approx(al, abs=TOL)
    assert got_tau == tau
    assert oracles.al(g, src_len) == (Fraction(al).limit_denominator(100), tau)


@pytest.mark.parametrize(
    "g, src_len, expected",
    [((1, 2, 3, 4), 4, 1.0), ((3, 4, 4, 4), 4, 2.25), ((4, 4, 4, 4), 4, 2.5)],
)
def test_average_lagging_simple(g, src_len, expected):
    assert metrics.average_lagging_simple(hs(g, src_len)) == pytest.approx(expected, abs=TOL)


@pytest.mark.parametrize("fn", [metrics.delay_with_cost, metrics.delay_with_cost_closed])
@pytest.mark.parametrize(
    "g, src_len, d, expected",
    [
        ((3, 4, 4, 4), 4, 1, (3, 4, 5, 6)),
        ((1, 2, 3), 6, 2, (1, 3, 5)),
        ((4, 4, 4, 4, 5), 5, 1, (4, 5, 6, 7, 8)),
        ((1, 2, 3, 3, 3, 3), 3, 0.5, (1, 2, 3, 3.5, 4, 4.5)),
        ((0, 0, 0), 3, 0.75, (0, 0.75, 1.5)),
    ],
)
def test_delay_with_cost(fn, g, src_len, d, expected):
    assert fn(hs(g, src_len), d) == list(expected)


@pytest.mark.parametrize("fn", [metrics.delay_with_cost, metrics.delay_with_cost_closed])
def test_zero_cost_is_running_max(fn):
    s = SoftSchedule(5, 5, (2.0, 1.0, 3.5, 0.5, 4.0))
    assert fn(s, 0) == [2.0, 2.0, 3.5, 3.5, 4.0]


@pytest.mark.parametrize("bad", [-1.0, float("inf"), float("nan")])
def test_delay_with_cost_rejects_bad_d(bad):
    with pytest.raises(ScheduleError):
        metrics.delay_with_cost(hs((1, 2), 2), bad)


@pytest.mark.parametrize(
    "g, src_len, expected",
    [
        ((3, 4, 4, 4), 4, 3.0),
        ((4, 4, 4, 4, 5), 5, 4.0),
        ((4, 5, 5, 5, 5), 5, 4.0),
        ((1, 2, 3, 3, 3, 3), 3, 1.75),
        ((1, 1, 2, 2, 3, 3), 3, 1.0),
        ((1, 2, 3), 6, 1.0),
        ((4, 4, 4, 4), 4, 4.0),
    ],
)
def test_dal(g, src_len, expected):
    assert oracles.dal(g, src_len) == Fraction(expected)
    assert metrics.dal(hs(g, src_len)) == pytest.approx(expected, abs=TOL)


@pytest.mark.parametrize("d", [0, -0.5])
def test_dal_rejects_non_positive_d(d):
    with pytest.raises(ScheduleError):
        metrics.dal(hs((1, 2), 2), d)


def test_dal_rejects_invalid_schedule():
    with pytest.raises(ScheduleError, match="g\\(2\\)=1 < g\\(1\\)=2"):
        metrics.dal(hs((2, 1), 2))


@pytest.mark.parametrize(
    "g, expected",
    [
        ((1, 3, 5), (1 / 3, 1 / 3, 1 / 3)),
        ((3, 4, 4, 4), (1, 0, 0, 0)),
        ((4, 4, 4, 4, 5), (1, 0, 0, 0, 0)),
    ],
)
def test_dal_gradient(g, expected):
    s = SoftSchedule.from_g([float(v) for v in g], max(g))
    got = metrics.dal_gradient(s, 1.0)
    assert got == pytest.approx(expected, abs=1e-15)
    assert math.fsum(got) == pytest.approx(1.0, abs=1e-12)


def test_gradient_check_tie_free():
    report = metrics.gradient_check(SoftSchedule(5, 3, (1.0, 3.0, 5.0)), 1.0, 1e-5)
    assert not report.tie_positions
    assert report.max_abs_diff <= 1e-6
    assert report.ok


def test_gradient_check_flat_schedule():
    report = metrics.gradient_check(SoftSchedule(3, 3, (3.0, 3.0, 3.0)), 1.0)
    assert 1 not in report.tie_positions
    assert report.analytic == (1.0, 0.0, 0.0)
    assert report.numeric[0] == pytest.approx(1.0, abs=1e-6)


def test_gradient_check_flags_ties():
    # over-budget values (3, 3, 2, 1): indices 1 and 2 tie for every prefix from t=2
    report = metrics.gradient_check(SoftSchedule(4, 4, (3.0, 4.0, 4.0, 4.0)), 1.0)
    assert report.tie_positions == {1, 2}
    assert report.max_abs_diff <= 1e-6


def test_gradient_check_random_tie_free(rng):
    checked = 0
    while checked < 50:
        s = generators.random_schedule(rng, rng.randint(1, 20), rng.randint(1, 20), soft=True)
        report = metrics.gradient_check(s)
        if report.tie_positions:
            continue
        checked += 1
        assert report.max_abs_diff <= 1e-6


def test_evaluate_reports():
    r = metrics.evaluate(hs((1, 2, 3, 4), 4))
    assert (r.ap, r.al, r.al_simple, r.dal) == pytest.approx((0.625, 1, 1, 1), abs=TOL)
    assert r.cw == (1, 1, 1, 1) and r.tau == 4 and r.gamma == 1.0

    r = metrics.evaluate(hs((4, 5, 5, 5, 5), 5))
    assert (r.al, r.dal) == pytest.approx((4, 4), abs=TOL)

    r = metrics.evaluate(hs((1, 1, 2, 2, 3, 3), 3))
    assert (r.al, r.dal, r.d_used, r.gamma) == pytest.approx((0.8, 1, 0.5, 2), abs=TOL)
    assert r.g_prime == (1, 1.5, 2, 2.5, 3, 3.5)


def test_evaluate_fixed_d():
    r = metrics.evaluate(hs((1, 2, 3), 6), d=1.0)
    assert r.d_used == 1.0
    assert r.g_prime == (1, 2, 3)
    assert r.dal == pytest.approx(1.0)


# ---------------------------------------------------------------- properties
@st.composite
def schedules(draw, max_len=30):
    src_len = draw(st.integers(1, max_len))
    tgt_len = draw(st.integers(1, max_len))
    g = sorted(draw(st.lists(st.integers(0, src_len), min_size=tgt_len, max_size=tgt_len)))
    return HardSchedule(src_len, tgt_len, tuple(g))


@given(schedules(), st.sampled_from([0, 0.5, 1, 2, None]))
def test_recurrent_equals_closed(s, d):
    a = metrics.delay_with_cost(s, d)
    b = metrics.delay_with_cost_closed(s, d)
    if d is None:
        assert a == pytest.approx(b, abs=1e-12)
    else:
        assert a == b


@given(schedules())
def test_matches_exact_oracle(s):
    g, n = list(s.g), s.src_len
    al, tau = metrics.average_lagging(s)
    want_al, want_tau = oracles.al(g, n)
    assert tau == want_tau
    assert al == pytest.approx(float(want_al), abs=TOL)
    assert metrics.average_lagging_simple(s) == pytest.approx(float(oracles.al_simple(g, n)), abs=TOL)
    assert metrics.dal(s) == pytest.approx(float(oracles.dal(g, n)), abs=TOL)
    assert metrics.average_proportion(s) == pytest.approx(float(oracles.ap(g, n)), abs=TOL)


@given(schedules(), st.sampled_from([0, 0.5, 1, 2]))
def test_cost_delay_lower_bounds(s, d):
    gp = metrics.delay_with_cost(s, d)
    for t, (x, v) in enumerate(zip(gp, s.g)):
        assert x >= v and x >= t * d
        if t:
            assert x - gp[t - 1] >= d


@given(schedules())
def test_dal_bounds(s):
    assert metrics.dal(s) >= 0
    assert metrics.dal(s) >= metrics.average_lagging(s)[0] - 1e-12


@given(schedules())
def test_cw_telescopes(s):
    assert sum(metrics.consecutive_wait(s)) == s.g[-1]


@given(schedules())
def test_gradient_support_is_prefix_argmax(s):
    d = metrics.default_write_cost(s)
    over = [v - i * d for i, v in enumerate(s.g)]
    support = {
        max(range(t + 1), key=lambda j: (over[j], -j)) for t in range(len(over))
    }
    grad = metrics.dal_gradient(s)
    assert {i for i, x in enumerate(grad) if x} == support
    assert math.fsum(grad) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=50)
@given(st.integers(1, 60), st.data())
def test_wait_k_identity(n, data):
    k = data.draw(st.integers(1, n))
    s = generators.wait_k(k, n, n)
    assert metrics.average_lagging(s)[0] == k
    assert metrics.dal(s) == k


def test_ap_wait1_limit():
    for n in (2, 10, 1000):
        s = generators.wait_k(1, n, n)
        assert metrics.average_proportion(s) == pytest.approx((n + 1) / (2 * n), abs=1e-12)


def test_monotone_in_g(rng):
    for _ in range(300):
        n, m = rng.randint(1, 30), rng.randint(1, 30)
        lo = generators.random_schedule(rng, n, m)
        bumped = [min(n, v + rng.randint(0, 2)) for v in lo.g]
        hi = HardSchedule(n, m, tuple(max(bumped[: t + 1]) for t in range(m)))
        assert metrics.average_proportion(lo) <= metrics.average_proportion(hi)
        assert metrics.dal(lo) <= metrics.dal(hi)
