"""``newsent`` command line: ingest -> score -> backtest over flat files.

Settings resolve in this order, later wins: built-in defaults, the JSON
file given by ``--config``, explicit flags.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, fields, replace
from datetime import datetime, timezone
from decimal import Decimal, InvalidOperation
from pathlib import Path

from . import corpus
from .backtest import EvaluationConfig, run_backtest
from .corpus import DataError
from .lexicon import default_lexicon_path, load_lexicon
from .sentiment import score_article, score_to_record, write_scores
from .strategy import StrategyConfig, load_scores, make_decision, write_signals

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2

CORPUS_FILE = "corpus.jsonl"
SCORES_FILE = "scores.jsonl"
SIGNALS_FILE = "signals.jsonl"
REPORT_STEM = "report"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    news: Path | None = None
    prices: Path | None = None
    lexicon: Path | None = None
    scores: Path | None = None
    out_dir: Path = Path(".")
    keywords: frozenset[str] = corpus.DEFAULT_KEYWORDS
    dedup: bool = True
    since: datetime | None = None
    score_threshold: int = 0
    trade_threshold_pct: Decimal = Decimal("0.5")
    hold_threshold_pct: Decimal = Decimal("1.0")
    entry_window_min: int = 30
    format: str = "text"

    def strategy(self) -> StrategyConfig:
        return StrategyConfig(self.score_threshold)

    def evaluation(self) -> EvaluationConfig:
        return EvaluationConfig(self.entry_window_min, self.trade_threshold_pct,
                                self.hold_threshold_pct)

    def lexicon_path(self) -> Path:
        return self.lexicon or default_lexicon_path()

    def scores_path(self) -> Path:
        return self.scores or self.out_dir / SCORES_FILE


_PATH_KEYS = {"news", "prices", "lexicon", "scores", "out_dir"}


def _coerce(key: str, value):
    """Convert a raw config/flag value to the RunConfig field type."""
    if value is None:
        return None
    try:
        if key in _PATH_KEYS:
            return Path(value)
        if key == "keywords":
            items = value.split(",") if isinstance(value, str) else list(value)
            kws = frozenset(k.strip() for k in items if str(k).strip())
            if not kws:
                raise UsageError("keywords must not be empty")
            return kws
        if key == "since":
            return _parse_since(value)
        if key in ("score_threshold", "entry_window_min"):
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError(value)
            return int(value)
        if key in ("trade_threshold_pct", "hold_threshold_pct"):
            return Decimal(str(value))
        if key == "dedup":
            if not isinstance(value, bool):
                raise ValueError(value)
            return value
        if key == "format":
            if value not in ("json", "csv", "text"):
                raise ValueError(value)
            return value
    except (ValueError, TypeError, InvalidOperation):
        raise UsageError(f"invalid value for {key}: {value!r}") from None
    raise UsageError(f"unknown setting {key!r}")


def _parse_since(value: str) -> datetime:
    try:
        return corpus.parse_utc(value)
    except ValueError:
        d = datetime.fromisoformat(value)
        return d.replace(tzinfo=timezone.utc) if d.tzinfo is None else d


def build_config(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    settable = {f.name for f in fields(RunConfig)}
    if ns.config is not None:
        try:
            raw = json.loads(Path(ns.config).read_text(encoding="utf-8"))
        except OSError as exc:
            raise DataError(f"cannot read config {ns.config}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise DataError(f"config {ns.config}: invalid JSON ({exc.msg})") from None
        if not isinstance(raw, dict):
            raise UsageError("config file must hold a JSON object")
        for key, value in raw.items():
            if key not in settable:
                raise UsageError(f"unknown config key {key!r}")
            cfg = replace(cfg, **{key: _coerce(key, value)})
    for key in settable:
        value = getattr(ns, key, None)
        if value is not None:
            cfg = replace(cfg, **{key: _coerce(key, value)})
    if cfg.score_threshold < 0:
        raise UsageError("score threshold must be >= 0")
    if cfg.entry_window_min <= 0 or cfg.trade_threshold_pct <= 0 or cfg.hold_threshold_pct <= 0:
        raise UsageError("entry window and thresholds must be positive")
    return cfg


def _require(cfg: RunConfig, *names: str) -> None:
    for name in names:
        path = getattr(cfg, name)
        if path is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")
        if not Path(path).exists():
            raise DataError(f"{name} file not found: {path}")


def _emit(cfg: RunConfig, text_line: str, payload: dict, csv_text: str | None = None) -> None:
    if cfg.format == "json":
        print(json.dumps(payload, indent=2))
    elif cfg.format == "csv" and csv_text is not None:
        sys.stdout.write(csv_text)
    elif cfg.format == "csv":
        print(",".join(payload))
        print(",".join(str(v) for v in payload.values()))
    else:
        print(text_line)


SCORE_COLUMNS = ("id", "ticker", "published_at", "pos_count", "neg_count", "neutral_count", "score")


def _records_csv(records: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    w.writerows(records)
    return buf.getvalue()


def cmd_ingest(cfg: RunConfig) -> int:
    _require(cfg, "news")
    articles = corpus.load_news(cfg.news)
    read = len(articles)
    if cfg.since is not None:
        articles = corpus.filter_since(articles, cfg.since)
    articles = corpus.filter_by_keywords(articles, cfg.keywords)
    kept = len(articles)
    if cfg.dedup:
        articles = corpus.dedupe_articles(articles)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    out = cfg.out_dir / CORPUS_FILE
    corpus.write_news(articles, out)
    _emit(cfg, f"read={read} kept={kept} deduped={len(articles)}",
          {"read": read, "kept": kept, "deduped": len(articles), "output": str(out)})
    return EXIT_OK


def cmd_score(cfg: RunConfig) -> int:
    if cfg.news is None and (cfg.out_dir / CORPUS_FILE).exists():
        cfg = replace(cfg, news=cfg.out_dir / CORPUS_FILE)
    _require(cfg, "news")
    lex = load_lexicon(cfg.lexicon_path())
    articles = corpus.load_news(cfg.news)
    pairs = [(a, score_article(a, lex)) for a in articles]
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    out = cfg.scores_path()
    write_scores(pairs, out)
    scores = [s.score for _, s in pairs]
    records = [score_to_record(a, s) for a, s in pairs]
    _emit(
        cfg,
        f"scored={len(pairs)} positive={sum(s > 0 for s in scores)} "
        f"negative={sum(s < 0 for s in scores)} zero={sum(s == 0 for s in scores)}",
        {"scored": len(pairs), "output": str(out), "scores": records},
        _records_csv(records, SCORE_COLUMNS),
    )
    return EXIT_OK


def cmd_backtest(cfg: RunConfig) -> int:
    _require(cfg, "prices")
    scores_path = cfg.scores_path()
    if not scores_path.exists():
        raise DataError(f"scores file not found: {scores_path}")
    prices = corpus.load_prices(cfg.prices)
    strat = cfg.strategy()
    decisions = [make_decision(i, t, p, s, strat) for i, t, p, s in load_scores(scores_path)]
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    write_signals(decisions, cfg.out_dir / SIGNALS_FILE)
    report = run_backtest(decisions, prices, cfg.evaluation())
    report.write(cfg.out_dir, REPORT_STEM)
    _emit(cfg, report.accuracy_line(), report.to_dict(), report.to_csv())
    return EXIT_OK


def cmd_run(cfg: RunConfig) -> int:
    """All three stages; intermediate files land in the output directory."""
    _require(cfg, "news", "prices")
    staged = replace(cfg, format="text") if cfg.format != "text" else cfg
    cmd_ingest(staged)
    corpus_cfg = replace(staged, news=cfg.out_dir / CORPUS_FILE)
    cmd_score(corpus_cfg)
    return cmd_backtest(replace(cfg, news=corpus_cfg.news))


COMMANDS = {"ingest": cmd_ingest, "score": cmd_score, "backtest": cmd_backtest, "run": cmd_run}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of settings; flags override it")
    common.add_argument("--news", help="line-delimited JSON news file")
    common.add_argument("--prices", help="CSV of 30-minute bars")
    common.add_argument("--lexicon", help="word,sentiment CSV (default: bundled lexicon)")
    common.add_argument("--scores", help="scores file (default: OUT_DIR/scores.jsonl)")
    common.add_argument("--out-dir", dest="out_dir")
    common.add_argument("--keywords", help="comma-separated headline keywords")
    common.add_argument("--since", help="drop news published before this ISO date/time")
    common.add_argument("--dedup", action=argparse.BooleanOptionalAction, default=None)
    common.add_argument("--score-threshold", dest="score_threshold", type=int)
    common.add_argument("--trade-threshold-pct", dest="trade_threshold_pct")
    common.add_argument("--hold-threshold-pct", dest="hold_threshold_pct")
    common.add_argument("--entry-window-min", dest="entry_window_min", type=int)
    common.add_argument("--format", choices=("json", "csv", "text"))

    parser = argparse.ArgumentParser(prog="newsent", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("ingest", parents=[common], help="filter and deduplicate a news file")
    sub.add_parser("score", parents=[common], help="score articles against a lexicon")
    sub.add_parser("backtest", parents=[common], help="turn scores into signals and evaluate them")
    sub.add_parser("run", parents=[common], help="ingest, score and backtest in one go")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = build_config(ns)
        return COMMANDS[ns.command](cfg)
    except UsageError as exc:
        parser.error(str(exc))
    except (DataError, OSError) as exc:
        print(f"newsent: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK  # unreachable, parser.error exits


if __name__ == "__main__":
    sys.exit(main())
