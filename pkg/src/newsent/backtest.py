"""Score trading decisions against intraday bars.

Each decision is entered at the open of the first bar starting within the
entry window after publication and marked against the close of the last
bar on that bar's calendar date.  A buy is correct when the move exceeds
``trade_threshold_pct``, a sell when it falls by more than that, and a
hold when the absolute move stays within ``hold_threshold_pct``.
"""

from __future__ import annotations

import bisect
import csv
import decimal
import io
import json
from dataclasses import dataclass, field
from datetime import timedelta
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterable, Mapping

from .corpus import PriceBar, PriceSeries, format_utc
from .strategy import Decision, SignalKind

__all__ = [
    "EVALUATED",
    "SKIPPED_NO_PRICES",
    "SKIPPED_NO_ENTRY_BAR",
    "SKIPPED_NO_CLOSE",
    "STATUSES",
    "EvaluationConfig",
    "TradeEvaluation",
    "BacktestReport",
    "entry_bar_for",
    "day_close_for",
    "evaluate_trade",
    "run_backtest",
    "format_accuracy",
]

EVALUATED = "evaluated"
SKIPPED_NO_PRICES = "skipped_no_prices"
SKIPPED_NO_ENTRY_BAR = "skipped_no_entry_bar"
SKIPPED_NO_CLOSE = "skipped_no_close"
STATUSES = (EVALUATED, SKIPPED_NO_PRICES, SKIPPED_NO_ENTRY_BAR, SKIPPED_NO_CLOSE)

_CTX = decimal.Context(prec=28, rounding=decimal.ROUND_HALF_EVEN)
_RETURN_DP = Decimal("0.000001")


@dataclass(frozen=True)
class EvaluationConfig:
    entry_window_minutes: int = 30
    trade_threshold_pct: Decimal = Decimal("0.5")
    hold_threshold_pct: Decimal = Decimal("1.0")

    def __post_init__(self) -> None:
        object.__setattr__(self, "trade_threshold_pct", Decimal(str(self.trade_threshold_pct)))
        object.__setattr__(self, "hold_threshold_pct", Decimal(str(self.hold_threshold_pct)))
        if self.entry_window_minutes <= 0:
            raise ValueError("entry_window_minutes must be positive")
        if self.trade_threshold_pct <= 0 or self.hold_threshold_pct <= 0:
            raise ValueError("thresholds must be positive")

    def to_dict(self) -> dict:
        return {
            "entry_window_minutes": self.entry_window_minutes,
            "trade_threshold_pct": float(self.trade_threshold_pct),
            "hold_threshold_pct": float(self.hold_threshold_pct),
        }


@dataclass(frozen=True)
class TradeEvaluation:
    decision: Decision
    status: str
    entry_bar: PriceBar | None = None
    close_bar: PriceBar | None = None
    return_pct: Decimal | None = None
    correct: bool | None = None
    note: str | None = None

    @property
    def entry_price(self) -> Decimal | None:
        return self.entry_bar.open if self.entry_bar else None

    @property
    def close_price(self) -> Decimal | None:
        return self.close_bar.close if self.close_bar else None

    def to_dict(self) -> dict:
        d = self.decision
        return {
            "id": d.article_id,
            "ticker": d.ticker,
            "published_at": format_utc(d.published_at),
            "score": d.score,
            "signal": d.kind.value,
            "status": self.status,
            "entry_time": format_utc(self.entry_bar.start) if self.entry_bar else None,
            "entry_price": _num(self.entry_price),
            "close_time": format_utc(self.close_bar.start) if self.close_bar else None,
            "close_price": _num(self.close_price),
            "return_pct": _num(_round_return(self.return_pct)),
            "correct": self.correct,
            "index_move_pct": None,
        }


def _num(d: Decimal | None) -> float | None:
    return None if d is None else float(d)


def _round_return(r: Decimal | None) -> Decimal | None:
    return None if r is None else r.quantize(_RETURN_DP, rounding=ROUND_HALF_UP)


def entry_bar_for(decision: Decision, series: PriceSeries,
                  config: EvaluationConfig = EvaluationConfig()) -> PriceBar | None:
    """First bar with ``0 <= start - published_at <= entry window``."""
    starts = [b.start for b in series.bars]
    i = bisect.bisect_left(starts, decision.published_at)
    if i == len(starts):
        return None
    bar = series.bars[i]
    if bar.start - decision.published_at > timedelta(minutes=config.entry_window_minutes):
        return None
    return bar


def day_close_for(decision: Decision, series: PriceSeries,
                  config: EvaluationConfig = EvaluationConfig()) -> PriceBar | None:
    """Last bar on the entry bar's date, or None when there is no entry."""
    entry = entry_bar_for(decision, series, config)
    if entry is None:
        return None
    day_bars = series.bars_on(entry.day)
    return day_bars[-1] if day_bars else None


def evaluate_trade(kind: SignalKind, entry: Decimal, close: Decimal,
                   config: EvaluationConfig = EvaluationConfig()) -> tuple[Decimal, bool]:
    """Percentage move from ``entry`` to ``close`` and whether ``kind`` called it."""
    entry, close = Decimal(str(entry)), Decimal(str(close))
    if entry <= 0:
        raise ValueError(f"entry price must be positive, got {entry}")
    r = _CTX.divide(_CTX.multiply(Decimal(100), _CTX.subtract(close, entry)), entry)
    if kind is SignalKind.BUY:
        ok = r > config.trade_threshold_pct
    elif kind is SignalKind.SELL:
        ok = r < -config.trade_threshold_pct
    else:
        ok = abs(r) <= config.hold_threshold_pct
    return r, ok


def format_accuracy(correct: int, evaluated: int) -> Decimal | None:
    """``100 * correct / evaluated`` rounded half-up to 2 places; None if nothing was evaluated."""
    if evaluated == 0:
        return None
    return _CTX.divide(Decimal(100 * correct), Decimal(evaluated)).quantize(
        Decimal("0.01"), rounding=ROUND_HALF_UP
    )


def _session_end(series: PriceSeries):
    """Latest time of day at which any day's final bar starts."""
    finals = [series.bars_on(d)[-1].start.time() for d in series.days]
    return max(finals) if finals else None


def _evaluate_one(d: Decision, series: PriceSeries | None, config: EvaluationConfig,
                  session_end) -> TradeEvaluation:
    if series is None:
        return TradeEvaluation(d, SKIPPED_NO_PRICES, note=f"no price data for {d.ticker}")
    entry = entry_bar_for(d, series, config)
    if entry is None:
        return TradeEvaluation(d, SKIPPED_NO_ENTRY_BAR)
    close = day_close_for(d, series, config)
    if close is None:
        return TradeEvaluation(d, SKIPPED_NO_CLOSE, entry_bar=entry)
    r, ok = evaluate_trade(d.kind, entry.open, close.close, config)
    note = None
    if session_end is not None and close.start.time() < session_end:
        note = (
            f"{d.ticker} {close.day.isoformat()}: day close taken from the "
            f"{close.start.strftime('%H:%M')} bar; session data incomplete"
        )
    return TradeEvaluation(d, EVALUATED, entry, close, r, ok, note)


def _tally() -> dict:
    return {"correct": 0, "incorrect": 0, "skipped": 0}


@dataclass(frozen=True)
class BacktestReport:
    trades: tuple[TradeEvaluation, ...]
    config: EvaluationConfig
    by_signal: Mapping[str, Mapping[str, int]] = field(init=False)
    by_ticker: Mapping[str, Mapping[str, int]] = field(init=False)
    skipped: Mapping[str, int] = field(init=False)

    def __post_init__(self) -> None:
        by_signal = {k.value: _tally() for k in SignalKind}
        by_ticker: dict[str, dict] = {}
        skipped = {s: 0 for s in STATUSES if s != EVALUATED}
        for t in self.trades:
            bucket = "skipped" if t.status != EVALUATED else ("correct" if t.correct else "incorrect")
            by_signal[t.decision.kind.value][bucket] += 1
            by_ticker.setdefault(t.decision.ticker, _tally())[bucket] += 1
            if t.status != EVALUATED:
                skipped[t.status] += 1
        object.__setattr__(self, "by_signal", by_signal)
        object.__setattr__(self, "by_ticker", dict(sorted(by_ticker.items())))
        object.__setattr__(self, "skipped", skipped)

    @property
    def total(self) -> int:
        return len(self.trades)

    @property
    def evaluated(self) -> int:
        return sum(1 for t in self.trades if t.status == EVALUATED)

    @property
    def correct(self) -> int:
        return sum(1 for t in self.trades if t.correct)

    @property
    def skipped_total(self) -> int:
        return self.total - self.evaluated

    @property
    def accuracy_pct(self) -> Decimal | None:
        return format_accuracy(self.correct, self.evaluated)

    @property
    def notes(self) -> list[str]:
        return sorted({t.note for t in self.trades if t.note and t.status == EVALUATED})

    def accuracy_line(self) -> str:
        acc = self.accuracy_pct
        shown = "n/a" if acc is None else f"{acc}%"
        if acc is None:
            return f"accuracy={shown} (0/0, skipped={self.skipped_total})"
        return f"accuracy={shown} ({self.correct}/{self.evaluated}, skipped={self.skipped_total})"

    def to_dict(self) -> dict:
        acc = self.accuracy_pct
        return {
            "total_decisions": self.total,
            "evaluated": self.evaluated,
            "correct": self.correct,
            "incorrect": self.evaluated - self.correct,
            "skipped_total": self.skipped_total,
            "skipped": dict(self.skipped),
            "accuracy_pct": None if acc is None else float(acc),
            "accuracy": "n/a" if acc is None else f"{acc}%",
            "by_signal": {k: dict(v) for k, v in self.by_signal.items()},
            "by_ticker": {
                k: {**v, "accuracy_pct": _ticker_acc(v)} for k, v in self.by_ticker.items()
            },
            "config": self.config.to_dict(),
            "notes": self.notes,
            "trades": [t.to_dict() for t in self.trades],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["published_at", "ticker", "signal", "score", "entry_price",
                    "close_price", "return_pct", "correct"])
        for t in self.trades:
            r = _round_return(t.return_pct)
            w.writerow([
                format_utc(t.decision.published_at), t.decision.ticker, t.decision.kind.value,
                t.decision.score,
                "" if t.entry_price is None else t.entry_price,
                "" if t.close_price is None else t.close_price,
                "" if r is None else r,
                "" if t.correct is None else str(t.correct).lower(),
            ])
        return buf.getvalue()

    def write(self, out_dir: str | Path, stem: str = "report") -> tuple[Path, Path]:
        out_dir = Path(out_dir)
        jpath, cpath = out_dir / f"{stem}.json", out_dir / f"{stem}.csv"
        jpath.write_text(self.to_json(), encoding="utf-8")
        cpath.write_text(self.to_csv(), encoding="utf-8")
        return jpath, cpath


def _ticker_acc(tally: Mapping[str, int]) -> float | None:
    acc = format_accuracy(tally["correct"], tally["correct"] + tally["incorrect"])
    return None if acc is None else float(acc)


def run_backtest(decisions: Iterable[Decision], prices: Mapping[str, PriceSeries],
                 config: EvaluationConfig = EvaluationConfig()) -> BacktestReport:
    """Evaluate every decision (ordered by publication time, then id)."""
    ordered = sorted(decisions, key=lambda d: (d.published_at, d.article_id))
    ends = {t: _session_end(s) for t, s in prices.items()}
    trades = tuple(
        _evaluate_one(d, prices.get(d.ticker), config, ends.get(d.ticker)) for d in ordered
    )
    return BacktestReport(trades, config)
