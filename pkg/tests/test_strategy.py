from hypothesis import given
from hypothesis import strategies as st

import pytest

from newsent.strategy import SignalKind, StrategyConfig, decide, decision_to_record, make_decision

from conftest import utc

BUY, SELL, HOLD = SignalKind.BUY, SignalKind.SELL, SignalKind.HOLD


@pytest.mark.parametrize(
    "score, theta, kind",
    [(3, 0, BUY), (0, 0, HOLD), (-2, 1, SELL), (1, 1, HOLD), (-1, 1, HOLD), (2, 1, BUY), (-1, 0, SELL)],
)
def test_decide(score, theta, kind):
    assert decide(score, StrategyConfig(theta)) is kind


def test_negative_threshold_rejected():
    with pytest.raises(ValueError):
        StrategyConfig(-1)


scores = st.integers(-50, 50)
thetas = st.integers(0, 20)


@given(scores, thetas)
def test_antisymmetry(s, t):
    k, mirrored = decide(s, StrategyConfig(t)), decide(-s, StrategyConfig(t))
    assert {k, mirrored} in ({BUY, SELL}, {HOLD})


@given(scores, thetas, st.integers(0, 20))
def test_raising_threshold_keeps_hold(s, t, extra):
    if decide(s, StrategyConfig(t)) is HOLD:
        assert decide(s, StrategyConfig(t + extra)) is HOLD


@given(scores, thetas)
def test_total(s, t):
    assert decide(s, StrategyConfig(t)) in (BUY, SELL, HOLD)


def test_decision_record():
    d = make_decision("a1", "ALKEM", utc(2018, 4, 11, 4, 3), -3)
    assert decision_to_record(d) == {
        "id": "a1", "ticker": "ALKEM", "published_at": "2018-04-11T04:03:00Z", "score": -3, "signal": "sell",
    }
    assert d.threshold_used == 0
