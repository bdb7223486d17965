"""Article sentiment as a signed count of lexicon hits."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .corpus import NewsArticle, format_utc
from .lexicon import Lexicon, MatchResult, match_tokens
from .textprep import text_to_tokens

__all__ = ["SentimentScore", "score_matches", "score_article", "score_to_record", "write_scores"]


@dataclass(frozen=True)
class SentimentScore:
    article_id: str | None
    pos_count: int
    neg_count: int
    neutral_count: int

    @property
    def score(self) -> int:
        return self.pos_count - self.neg_count


def score_matches(result: MatchResult) -> SentimentScore:
    """Count matches by polarity.  Neutral hits are counted but never scored."""
    pos = sum(1 for m in result.matches if m.entry.polarity > 0)
    neg = sum(1 for m in result.matches if m.entry.polarity < 0)
    return SentimentScore(result.article_id, pos, neg, len(result.matches) - pos - neg)


def article_text(article: NewsArticle) -> str:
    return f"{article.headline} {article.body}"


def score_article(article: NewsArticle, lexicon: Lexicon) -> SentimentScore:
    tokens = text_to_tokens(article_text(article))
    return score_matches(match_tokens(tokens, lexicon, article.id))


def score_to_record(article: NewsArticle, s: SentimentScore) -> dict:
    return {
        "id": article.id,
        "ticker": article.ticker,
        "published_at": format_utc(article.published_at),
        "pos_count": s.pos_count,
        "neg_count": s.neg_count,
        "neutral_count": s.neutral_count,
        "score": s.score,
    }


def write_scores(pairs: Iterable[tuple[NewsArticle, SentimentScore]], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for article, s in pairs:
            fh.write(json.dumps(score_to_record(article, s)) + "\n")
