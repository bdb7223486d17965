"""Loading, validating, filtering and deduplicating news and price data.

News files are line-delimited JSON; price files are CSV.  Loaders are
strict: a single malformed record raises :class:`DataError` with its line
or row number instead of being skipped, because a silently shrunken corpus
skews every accuracy figure computed downstream.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta, timezone
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Iterable, Sequence

from .textprep import normalize_text

__all__ = [
    "DataError",
    "NewsArticle",
    "PriceBar",
    "PriceSeries",
    "DEFAULT_KEYWORDS",
    "BAR_MINUTES",
    "parse_utc",
    "format_utc",
    "load_news",
    "write_news",
    "article_to_record",
    "load_prices",
    "write_prices",
    "filter_by_keywords",
    "filter_since",
    "dedupe_articles",
]

DEFAULT_KEYWORDS = frozenset({"US", "USA", "USFDA", "Q1", "Q2", "Q3", "Q4"})
BAR_MINUTES = 30
DEDUP_WINDOW = timedelta(hours=24)

NEWS_KEYS = ("id", "ticker", "published_at", "headline", "body", "source_url")
PRICE_COLUMNS = ("ticker", "start", "open", "high", "low", "close")


class DataError(ValueError):
    """Input file content violates its documented format."""


def parse_utc(text: str) -> datetime:
    """Parse an ISO-8601 timestamp into an aware UTC datetime.

    A trailing ``Z`` or an explicit offset are both accepted; naive values
    are rejected since the file formats require UTC.
    """
    if not isinstance(text, str):
        raise ValueError(f"timestamp must be a string, got {type(text).__name__}")
    s = text.strip()
    if s.endswith(("Z", "z")):
        s = s[:-1] + "+00:00"
    dt = datetime.fromisoformat(s)
    if dt.tzinfo is None:
        raise ValueError(f"timestamp {text!r} has no UTC designator")
    return dt.astimezone(timezone.utc)


def format_utc(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class NewsArticle:
    id: str
    ticker: str
    published_at: datetime
    headline: str
    body: str = ""
    source_url: str | None = None

    def __post_init__(self) -> None:
        if not self.headline.strip():
            raise ValueError(f"article {self.id!r}: headline is empty")
        if self.published_at.tzinfo is None:
            raise ValueError(f"article {self.id!r}: published_at must be timezone-aware")


@dataclass(frozen=True)
class PriceBar:
    ticker: str
    start: datetime
    open: Decimal
    high: Decimal
    low: Decimal
    close: Decimal
    interval_minutes: int = BAR_MINUTES

    def __post_init__(self) -> None:
        if self.open <= 0 or self.close <= 0:
            raise ValueError("open and close must be positive")
        if not self.low <= self.high:
            raise ValueError(f"low {self.low} exceeds high {self.high}")
        if not (self.low <= self.open <= self.high and self.low <= self.close <= self.high):
            raise ValueError("open and close must lie within [low, high]")

    @property
    def day(self) -> date:
        return self.start.date()

    def scaled(self, k: Decimal) -> "PriceBar":
        return PriceBar(
            self.ticker, self.start,
            self.open * k, self.high * k, self.low * k, self.close * k,
            self.interval_minutes,
        )


@dataclass(frozen=True)
class PriceSeries:
    """Bars of one ticker, strictly increasing by start time."""

    ticker: str
    bars: tuple[PriceBar, ...]
    _by_day: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        bars = tuple(sorted(self.bars, key=lambda b: b.start))
        for prev, cur in zip(bars, bars[1:]):
            if prev.start == cur.start:
                raise ValueError(f"{self.ticker}: duplicate bar at {format_utc(cur.start)}")
        for b in bars:
            if b.ticker != self.ticker:
                raise ValueError(f"bar for {b.ticker} placed in {self.ticker} series")
        by_day: dict[date, list[PriceBar]] = {}
        for b in bars:
            by_day.setdefault(b.day, []).append(b)
        object.__setattr__(self, "bars", bars)
        object.__setattr__(self, "_by_day", {d: tuple(v) for d, v in by_day.items()})

    def __len__(self) -> int:
        return len(self.bars)

    @property
    def days(self) -> list[date]:
        return list(self._by_day)

    def bars_on(self, day: date) -> tuple[PriceBar, ...]:
        return self._by_day.get(day, ())

    def scaled(self, k) -> "PriceSeries":
        k = Decimal(k)
        return PriceSeries(self.ticker, tuple(b.scaled(k) for b in self.bars))


# -- news -------------------------------------------------------------------


def _article_from_record(rec: object, lineno: int) -> NewsArticle:
    if not isinstance(rec, dict):
        raise DataError(f"line {lineno}: expected a JSON object")
    missing = [k for k in NEWS_KEYS if k not in rec and k != "source_url"]
    if missing:
        raise DataError(f"line {lineno}: missing field(s) {', '.join(missing)}")
    for k in ("id", "ticker", "headline", "body"):
        if not isinstance(rec[k], str):
            raise DataError(f"line {lineno}: field {k} must be a string")
    url = rec.get("source_url")
    if url is not None and not isinstance(url, str):
        raise DataError(f"line {lineno}: field source_url must be a string or null")
    try:
        published = parse_utc(rec["published_at"])
    except ValueError as exc:
        raise DataError(f"line {lineno}: bad published_at: {exc}") from None
    try:
        return NewsArticle(rec["id"], rec["ticker"], published, rec["headline"], rec["body"], url)
    except ValueError as exc:
        raise DataError(f"line {lineno}: {exc}") from None


def load_news(path: str | Path, format: str = "jsonl") -> list[NewsArticle]:
    """Read every article of a line-delimited JSON news file, in file order.

    Blank lines are ignored.  Duplicate ids, unparseable JSON or missing
    fields raise :class:`DataError` naming the 1-based line number.
    """
    if format != "jsonl":
        raise ValueError(f"unsupported news format {format!r}")
    path = Path(path)
    articles: list[NewsArticle] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"line {lineno}: invalid JSON ({exc.msg})") from None
            art = _article_from_record(rec, lineno)
            if art.id in seen:
                raise DataError(f"line {lineno}: duplicate article id {art.id!r}")
            seen.add(art.id)
            articles.append(art)
    return articles


def article_to_record(article: NewsArticle) -> dict:
    return {
        "id": article.id,
        "ticker": article.ticker,
        "published_at": format_utc(article.published_at),
        "headline": article.headline,
        "body": article.body,
        "source_url": article.source_url,
    }


def write_news(articles: Iterable[NewsArticle], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for a in articles:
            fh.write(json.dumps(article_to_record(a), ensure_ascii=False) + "\n")


# -- prices -----------------------------------------------------------------


def _parse_price(value: str, column: str, rowno: int) -> Decimal:
    try:
        d = Decimal(value.strip())
    except (InvalidOperation, AttributeError):
        raise DataError(f"row {rowno}: {column} {value!r} is not a decimal") from None
    if not d.is_finite():
        raise DataError(f"row {rowno}: {column} {value!r} is not finite")
    return d


def load_prices(path: str | Path) -> dict[str, PriceSeries]:
    """Read a bar CSV into per-ticker :class:`PriceSeries`, sorted by start.

    Row numbers in errors count the header as row 1, so the first bar is
    row 2 (the line number a text editor shows).
    """
    path = Path(path)
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return {}
        header = [h.strip() for h in reader.fieldnames]
        if header != list(PRICE_COLUMNS):
            raise DataError(f"row 1: expected header {','.join(PRICE_COLUMNS)}, got {','.join(header)}")
        per_ticker: dict[str, list[PriceBar]] = {}
        seen: dict[tuple[str, datetime], int] = {}
        for rowno, row in enumerate(reader, start=2):
            if None in row or any(row[c] is None for c in PRICE_COLUMNS):
                raise DataError(f"row {rowno}: expected {len(PRICE_COLUMNS)} columns")
            ticker = row["ticker"].strip()
            try:
                start = parse_utc(row["start"])
            except ValueError as exc:
                raise DataError(f"row {rowno}: bad start: {exc}") from None
            o, h, l, c = (_parse_price(row[k], k, rowno) for k in ("open", "high", "low", "close"))
            try:
                bar = PriceBar(ticker, start, o, h, l, c)
            except ValueError as exc:
                raise DataError(f"row {rowno}: {exc}") from None
            key = (ticker, start)
            if key in seen:
                raise DataError(
                    f"row {rowno}: duplicate bar {ticker} {format_utc(start)} (first at row {seen[key]})"
                )
            seen[key] = rowno
            per_ticker.setdefault(ticker, []).append(bar)
    return {t: PriceSeries(t, tuple(bars)) for t, bars in sorted(per_ticker.items())}


def write_prices(series: dict[str, PriceSeries] | Sequence[PriceSeries], path: str | Path) -> None:
    if isinstance(series, dict):
        series = list(series.values())
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PRICE_COLUMNS)
    for s in sorted(series, key=lambda s: s.ticker):
        for b in s.bars:
            w.writerow([b.ticker, format_utc(b.start), b.open, b.high, b.low, b.close])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


# -- filtering --------------------------------------------------------------


def filter_by_keywords(articles: Iterable[NewsArticle], keywords: Iterable[str]) -> list[NewsArticle]:
    """Keep articles whose headline contains one of ``keywords`` as a whole token.

    Matching is case-insensitive and happens on normalized, unstemmed
    tokens, so ``US`` matches "US FDA nod" but not "Unusual volumes".
    """
    wanted = {normalize_text(k) for k in keywords}
    wanted.discard("")
    if not wanted:
        raise ValueError("keyword set must be non-empty")
    return [a for a in articles if not wanted.isdisjoint(normalize_text(a.headline).split())]


def filter_since(articles: Iterable[NewsArticle], since: datetime) -> list[NewsArticle]:
    if since.tzinfo is None:
        since = since.replace(tzinfo=timezone.utc)
    return [a for a in articles if a.published_at >= since]


def dedupe_articles(articles: Iterable[NewsArticle]) -> list[NewsArticle]:
    """Drop reposts: same ticker, same normalized headline, within 24 hours.

    The first occurrence in input order is kept.  An article counts as a
    duplicate when some already-kept article shares its key and lies
    within 24 hours of it (inclusive), so kept articles with equal keys are
    always more than a day apart and the operation is idempotent.
    """
    kept: list[NewsArticle] = []
    times_by_key: dict[tuple[str, str], list[datetime]] = {}
    for a in articles:
        key = (a.ticker, normalize_text(a.headline))
        times = times_by_key.setdefault(key, [])
        if any(abs(a.published_at - t) <= DEDUP_WINDOW for t in times):
            continue
        times.append(a.published_at)
        kept.append(a)
    return kept
