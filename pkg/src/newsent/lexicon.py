"""Sentiment dictionary loading and phrase matching over token streams."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import DataError
from .textprep import Token, text_to_tokens

__all__ = [
    "POLARITY_LABELS",
    "LexiconEntry",
    "Lexicon",
    "Match",
    "MatchResult",
    "load_lexicon",
    "default_lexicon_path",
    "match_tokens",
    "MAX_PHRASE",
]

POLARITY_LABELS = {"positive": 1, "negative": -1, "neutral": 0}
MAX_PHRASE = 3


@dataclass(frozen=True)
class LexiconEntry:
    phrase_stems: tuple[str, ...]
    polarity: int

    def __post_init__(self) -> None:
        if not 1 <= len(self.phrase_stems) <= MAX_PHRASE:
            raise ValueError(f"phrase must have 1-{MAX_PHRASE} tokens: {self.phrase_stems!r}")
        if self.polarity not in (-1, 0, 1):
            raise ValueError(f"polarity must be -1, 0 or +1, got {self.polarity!r}")


@dataclass(frozen=True)
class Lexicon:
    entries: Mapping[tuple[str, ...], LexiconEntry]
    counts: Mapping[int, int] = field(init=False)

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("lexicon has no entries")
        counts = {1: 0, -1: 0, 0: 0}
        for e in self.entries.values():
            counts[e.polarity] += 1
        object.__setattr__(self, "entries", dict(self.entries))
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[str, int | str]]) -> "Lexicon":
        """Build a lexicon from ``(term, polarity)`` pairs of raw text.

        Terms are canonicalized exactly like article text.  Polarity may be
        an int or one of the CSV labels.
        """
        entries: dict[tuple[str, ...], LexiconEntry] = {}
        for term, pol in terms:
            _add(entries, term, pol, where=repr(term))
        return cls(entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, stems: tuple[str, ...]) -> bool:
        return stems in self.entries

    def get(self, stems: tuple[str, ...]) -> LexiconEntry | None:
        return self.entries.get(stems)


def _add(entries: dict, term: str, pol: int | str, where: str) -> None:
    if isinstance(pol, str):
        label = pol.strip().lower()
        if label not in POLARITY_LABELS:
            raise DataError(f"{where}: unknown polarity {pol!r}")
        pol = POLARITY_LABELS[label]
    stems = tuple(t.stem for t in text_to_tokens(term))
    if not stems:
        raise DataError(f"{where}: term {term!r} is empty after normalization")
    if len(stems) > MAX_PHRASE:
        raise DataError(f"{where}: term {term!r} has {len(stems)} tokens (max {MAX_PHRASE})")
    old = entries.get(stems)
    if old is not None and old.polarity != pol:
        raise DataError(
            f"{where}: term {term!r} conflicts with an earlier entry for {' '.join(stems)!r}"
        )
    entries[stems] = LexiconEntry(stems, pol)


def load_lexicon(path: str | Path) -> Lexicon:
    """Load a ``word,sentiment`` CSV.  Errors name the 1-based file row."""
    path = Path(path)
    entries: dict[tuple[str, ...], LexiconEntry] = {}
    with path.open(encoding="utf-8-sig", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError(f"{path}: empty lexicon file")
        if [h.strip().lower() for h in header] != ["word", "sentiment"]:
            raise DataError(f"row 1: expected header word,sentiment, got {','.join(header)}")
        for rowno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise DataError(f"row {rowno}: expected 2 columns, got {len(row)}")
            _add(entries, row[0], row[1], where=f"row {rowno}")
    if not entries:
        raise DataError(f"{path}: lexicon has no entries")
    return Lexicon(entries)


def default_lexicon_path() -> Path:
    return Path(str(resources.files("newsent") / "data" / "pharma_lexicon.csv"))


@dataclass(frozen=True)
class Match:
    position: int
    entry: LexiconEntry

    @property
    def end(self) -> int:
        return self.position + len(self.entry.phrase_stems)


@dataclass(frozen=True)
class MatchResult:
    article_id: str | None
    matches: tuple[Match, ...]


def match_tokens(tokens: Sequence[Token], lexicon: Lexicon, article_id: str | None = None) -> MatchResult:
    """Greedy left-to-right longest-match over token stems.

    At each position the trigram is tried first, then the bigram, then the
    unigram.  A hit consumes its tokens, so "costs declined" matched as a
    phrase is not matched again as "declined".
    """
    stems = [t.stem for t in tokens]
    found: list[Match] = []
    i, n = 0, len(stems)
    while i < n:
        for width in range(min(MAX_PHRASE, n - i), 0, -1):
            entry = lexicon.entries.get(tuple(stems[i : i + width]))
            if entry is not None:
                found.append(Match(i, entry))
                i += width
                break
        else:
            i += 1
    return MatchResult(article_id, tuple(found))
