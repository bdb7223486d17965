"""Buy / sell / hold decisions from integer sentiment scores."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Iterable

from .corpus import DataError, format_utc, parse_utc

__all__ = [
    "SignalKind",
    "StrategyConfig",
    "Decision",
    "decide",
    "make_decision",
    "decision_to_record",
    "write_signals",
    "load_scores",
]


class SignalKind(str, enum.Enum):
    BUY = "buy"
    SELL = "sell"
    HOLD = "hold"


@dataclass(frozen=True)
class StrategyConfig:
    score_threshold: int = 0

    def __post_init__(self) -> None:
        if self.score_threshold < 0:
            raise ValueError("score_threshold must be >= 0")


@dataclass(frozen=True)
class Decision:
    article_id: str
    ticker: str
    published_at: datetime
    score: int
    kind: SignalKind
    threshold_used: int


def decide(score: int, config: StrategyConfig = StrategyConfig()) -> SignalKind:
    """Buy above the threshold, sell below its negation, otherwise hold."""
    if score > config.score_threshold:
        return SignalKind.BUY
    if score < -config.score_threshold:
        return SignalKind.SELL
    return SignalKind.HOLD


def make_decision(article_id: str, ticker: str, published_at: datetime, score: int,
                  config: StrategyConfig = StrategyConfig()) -> Decision:
    return Decision(article_id, ticker, published_at, score, decide(score, config),
                    config.score_threshold)


def decision_to_record(d: Decision) -> dict:
    return {
        "id": d.article_id,
        "ticker": d.ticker,
        "published_at": format_utc(d.published_at),
        "score": d.score,
        "signal": d.kind.value,
    }


def write_signals(decisions: Iterable[Decision], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for d in decisions:
            fh.write(json.dumps(decision_to_record(d)) + "\n")


def load_scores(path: str | Path) -> list[tuple[str, str, datetime, int]]:
    """Read a scores file back as ``(id, ticker, published_at, score)`` rows."""
    rows = []
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                score = rec["score"]
                if isinstance(score, bool) or not isinstance(score, int):
                    raise DataError(f"line {lineno}: score must be an integer")
                rows.append((str(rec["id"]), str(rec["ticker"]), parse_utc(rec["published_at"]), score))
            except json.JSONDecodeError as exc:
                raise DataError(f"line {lineno}: invalid JSON ({exc.msg})") from None
            except KeyError as exc:
                raise DataError(f"line {lineno}: missing field {exc.args[0]}") from None
            except ValueError as exc:
                if isinstance(exc, DataError):
                    raise
                raise DataError(f"line {lineno}: {exc}") from None
    return rows
