"""Exit criteria for the package, one test per criterion."""

import json
import random
import time
from decimal import Decimal

import pytest

from newsent.backtest import SKIPPED_NO_ENTRY_BAR, EvaluationConfig, evaluate_trade, run_backtest
from newsent.cli import main
from newsent.corpus import (
    DEFAULT_KEYWORDS,
    NewsArticle,
    PriceBar,
    PriceSeries,
    dedupe_articles,
    filter_by_keywords,
    load_news,
    load_prices,
)
from newsent.lexicon import Lexicon, LexiconEntry, default_lexicon_path, load_lexicon, match_tokens
from newsent.sentiment import score_article
from newsent.strategy import Decision, SignalKind, make_decision
from newsent.textprep import Token, ngrams

from conftest import FIXTURES, SAMPLE, utc
from oracles import regex_scan

criterion = pytest.mark.criterion


@criterion("12 correct of 17 evaluated prints accuracy=70.59% (half-up), < 1 s")
def test_accuracy_vector(tmp_path, capsys):
    start = time.perf_counter()
    rc = main(["run", "--news", str(SAMPLE / "news.jsonl"), "--prices", str(SAMPLE / "prices.csv"),
               "--out-dir", str(tmp_path)])
    elapsed = time.perf_counter() - start
    assert rc == 0
    assert capsys.readouterr().out.splitlines()[-1] == "accuracy=70.59% (12/17, skipped=1)"
    assert elapsed < 1.0


@criterion("greedy longest-match equals brute-force regex scan on 200 random instances, < 5 s")
def test_matcher_oracle_equivalence():
    rng = random.Random(20181105)
    vocab = ["cost", "declin", "gain", "loss", "us", "plung"]
    start = time.perf_counter()
    sizes = set()
    for _ in range(200):
        lex = {}
        for _ in range(rng.randint(1, 10)):
            n = rng.randint(1, 3)
            sizes.add(n)
            lex.setdefault(tuple(rng.choice(vocab) for _ in range(n)), rng.choice([-1, 0, 1]))
        stems = [rng.choice(vocab) for _ in range(rng.randint(0, 30))]
        got = match_tokens([Token(s, s) for s in stems],
                           Lexicon({k: LexiconEntry(k, v) for k, v in lex.items()})).matches
        assert [(m.position, m.entry.phrase_stems) for m in got] == regex_scan(stems, lex)
    assert sizes == {1, 2, 3}
    assert time.perf_counter() - start < 5.0


def _all_fixture_articles():
    return load_news(SAMPLE / "news.jsonl") + load_news(FIXTURES / "corpus_small.jsonl")


@criterion("score = pos - neg on every fixture article; 5 added neutral entries leave scores unchanged")
def test_scoring_identities():
    for lex_path in (default_lexicon_path(), FIXTURES / "mini_lexicon.csv"):
        lex = load_lexicon(lex_path)
        # neutral terms whose stems appear in no existing entry, so they
        # cannot capture tokens belonging to a polar phrase
        used = {s for key in lex.entries for s in key}
        extra = [("the", 0), ("after", 0), ("health regulator", 0), ("as much as", 0), ("percent", 0)]
        extended = dict(lex.entries)
        for term, pol in extra:
            e = Lexicon.from_terms([(term, pol)])
            (key,) = e.entries
            assert not set(key) & used
            extended[key] = LexiconEntry(key, pol)
        extended = Lexicon(extended)
        neutral_hits = 0
        for a in _all_fixture_articles():
            s, s2 = score_article(a, lex), score_article(a, extended)
            assert s.score == s.pos_count - s.neg_count
            assert s2.score == s2.pos_count - s2.neg_count
            assert s2.score == s.score and (s2.pos_count, s2.neg_count) == (s.pos_count, s.neg_count)
            neutral_hits += s2.neutral_count - s.neutral_count
        assert neutral_hits > 0  # the added entries really matched something


@criterion("|ngrams(T, n)| = max(0, |T| - n + 1) for random token lists, n in {1,2,3}")
def test_ngram_counting():
    rng = random.Random(3)
    for _ in range(500):
        toks = [Token(w, w) for w in (rng.choice("abc") for _ in range(rng.randint(0, 25)))]
        for n in (1, 2, 3):
            assert len(ngrams(toks, n)) == max(0, len(toks) - n + 1)


@criterion("'costs declined' with {costs declined:+, decline:-} scores exactly +1")
def test_costs_declined():
    lex = Lexicon.from_terms([("costs declined", "positive"), ("decline", "negative")])
    a = NewsArticle("c", "ALKEM", utc(2018, 4, 11), "costs declined", "")
    s = score_article(a, lex)
    assert s.score == 1
    assert (s.pos_count, s.neg_count) == (1, 0)


@criterion("buy at r=+0.5% incorrect; hold at |r|=1.0% correct; sell at r=-0.6% correct")
def test_threshold_boundaries():
    cfg = EvaluationConfig()
    assert evaluate_trade(SignalKind.BUY, Decimal("100"), Decimal("100.5"), cfg) == (Decimal("0.5"), False)
    assert evaluate_trade(SignalKind.HOLD, Decimal("100"), Decimal("101"), cfg) == (Decimal("1"), True)
    assert evaluate_trade(SignalKind.HOLD, Decimal("100"), Decimal("99"), cfg) == (Decimal("-1"), True)
    assert evaluate_trade(SignalKind.SELL, Decimal("100"), Decimal("99.4"), cfg) == (Decimal("-0.6"), True)


@criterion("news 31 min before the only later bar is skipped_no_entry_bar; news at a bar start enters it")
def test_entry_timing():
    b = PriceBar("X", utc(2018, 4, 11, 5, 0), Decimal(100), Decimal(101), Decimal(99), Decimal(100))
    prices = {"X": PriceSeries("X", (b,))}
    late = Decision("late", "X", utc(2018, 4, 11, 4, 29), 1, SignalKind.BUY, 0)
    exact = Decision("exact", "X", utc(2018, 4, 11, 5, 0), 1, SignalKind.BUY, 0)
    r = run_backtest([late, exact], prices)
    by_id = {t.decision.article_id: t for t in r.trades}
    assert by_id["late"].status == SKIPPED_NO_ENTRY_BAR
    assert by_id["exact"].status == "evaluated" and by_id["exact"].entry_bar is b


_PRICE_FIELDS = {"entry_price", "close_price"}


@criterion("x1000 price scaling leaves the report identical apart from absolute price fields")
def test_scale_invariance():
    prices = load_prices(SAMPLE / "prices.csv")
    lex = load_lexicon(default_lexicon_path())
    corpus = dedupe_articles(filter_by_keywords(load_news(SAMPLE / "news.jsonl"), DEFAULT_KEYWORDS))
    scored = [make_decision(a.id, a.ticker, a.published_at, score_article(a, lex).score) for a in corpus]
    base = run_backtest(scored, prices).to_dict()
    scaled = run_backtest(scored, {t: s.scaled(1000) for t, s in prices.items()}).to_dict()
    for tb, ts in zip(base.pop("trades"), scaled.pop("trades")):
        for k in tb:
            if k in _PRICE_FIELDS and tb[k] is not None:
                assert Decimal(str(ts[k])) == Decimal(str(tb[k])) * 1000
            else:
                assert tb[k] == ts[k], k
    assert base == scaled
    assert base["accuracy_pct"] == 70.59


def _run_pipeline(out):
    main(["run", "--news", str(SAMPLE / "news.jsonl"), "--prices", str(SAMPLE / "prices.csv"),
          "--out-dir", str(out)])
    return {n: (out / n).read_bytes() for n in ("scores.jsonl", "signals.jsonl", "report.json", "report.csv")}


@criterion("two full pipeline runs on the shipped fixture corpus give byte-identical outputs, < 2 s")
def test_end_to_end_determinism(tmp_path, capsys):
    news = load_news(SAMPLE / "news.jsonl")
    prices = load_prices(SAMPLE / "prices.csv")
    assert len(news) >= 20
    assert set(prices) == {a.ticker for a in news} and len(prices) == 2
    assert all(len(s.days) == 2 for s in prices.values())
    assert all(b.interval_minutes == 30 for s in prices.values() for b in s.bars)
    start = time.perf_counter()
    first = _run_pipeline(tmp_path / "one")
    second = _run_pipeline(tmp_path / "two")
    elapsed = time.perf_counter() - start
    assert first == second
    assert all(first.values())
    json.loads(first["report.json"])
    assert elapsed < 2.0
