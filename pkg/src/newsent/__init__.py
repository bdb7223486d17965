"""Dictionary-based news sentiment scoring and intraday signal backtesting."""

from .backtest import BacktestReport, EvaluationConfig, TradeEvaluation, run_backtest
from .corpus import (
    DataError,
    NewsArticle,
    PriceBar,
    PriceSeries,
    dedupe_articles,
    filter_by_keywords,
    load_news,
    load_prices,
)
from .lexicon import Lexicon, LexiconEntry, load_lexicon, match_tokens
from .sentiment import SentimentScore, score_article, score_matches
from .strategy import Decision, SignalKind, StrategyConfig, decide
from .textprep import ngrams, normalize_text, stem_token, tokenize

__version__ = "0.1.0"

__all__ = [
    "BacktestReport", "EvaluationConfig", "TradeEvaluation", "run_backtest",
    "DataError", "NewsArticle", "PriceBar", "PriceSeries", "dedupe_articles",
    "filter_by_keywords", "load_news", "load_prices",
    "Lexicon", "LexiconEntry", "load_lexicon", "match_tokens",
    "SentimentScore", "score_article", "score_matches",
    "Decision", "SignalKind", "StrategyConfig", "decide",
    "ngrams", "normalize_text", "stem_token", "tokenize",
]
