"""
Scoring articles against a lexicon
==================================

Lexicon terms of one to three words are canonicalized with the same
pipeline as article text.  Matching is greedy and longest-first, and a
matched phrase consumes its tokens: a positive "costs declined" is not
also counted as a negative "decline".
"""

from collections import Counter
from datetime import datetime, timezone
from importlib import resources

from newsent.corpus import NewsArticle, load_news
from newsent.lexicon import Lexicon, default_lexicon_path, load_lexicon, match_tokens
from newsent.sentiment import score_article, score_matches
from newsent.strategy import decide
from newsent.textprep import text_to_tokens

lexicon = load_lexicon(default_lexicon_path())
print(f"{len(lexicon)} entries:", {"positive": lexicon.counts[1], "negative": lexicon.counts[-1],
                                   "neutral": lexicon.counts[0]})

###############################################################################
# Phrase precedence

two = Lexicon.from_terms([("costs declined", "positive"), ("decline", "negative")])
for text in ["costs declined", "revenue declined", "costs declined but revenue declined"]:
    result = match_tokens(text_to_tokens(text), two)
    print(f"{text!r:40} score={score_matches(result).score:+d}",
          [(m.position, " ".join(m.entry.phrase_stems)) for m in result.matches])

###############################################################################
# A single article, match by match

article = NewsArticle(
    "demo", "ALKEM", datetime(2018, 4, 11, 4, 3, tzinfo=timezone.utc),
    "USFDA issues 13 observations on Alkem plant",
    "Shares plunged after the inspection, though analysts expect the warning letter risk is low.",
)
result = match_tokens(text_to_tokens(f"{article.headline} {article.body}"), lexicon)
for m in result.matches:
    print(f"  token {m.position:2d}: {' '.join(m.entry.phrase_stems):<16} {m.entry.polarity:+d}")
s = score_article(article, lexicon)
print(f"pos={s.pos_count} neg={s.neg_count} neutral={s.neutral_count} score={s.score:+d} -> {decide(s.score).value}")

###############################################################################
# The bundled sample corpus

sample = resources.files("newsent") / "data" / "sample" / "news.jsonl"
scores = {a.id: score_article(a, lexicon).score for a in load_news(sample)}
print(Counter(decide(v).value for v in scores.values()))
