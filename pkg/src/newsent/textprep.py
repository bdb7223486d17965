"""Text normalization, tokenization, Porter stemming and n-gram windows.

Every piece of text that takes part in matching (article headlines and
bodies, lexicon terms, headline keyword filters) goes through the same
:func:`normalize_text` / :func:`tokenize` path so that both sides of a
comparison agree on casing, punctuation and inflection.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "Token",
    "NGram",
    "normalize_text",
    "tokenize",
    "stem_token",
    "ngrams",
    "text_to_tokens",
]


@dataclass(frozen=True)
class Token:
    surface: str
    stem: str

    def __post_init__(self) -> None:
        if not self.surface or not self.stem:
            raise ValueError("token surface and stem must be non-empty")
        if any(not c.isalnum() for c in self.surface):
            raise ValueError(f"token surface {self.surface!r} contains non-alphanumerics")


@dataclass(frozen=True)
class NGram:
    stems: tuple[str, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.stems) <= 3:
            raise ValueError(f"n-gram must have 1-3 stems, got {len(self.stems)}")

    @property
    def n(self) -> int:
        return len(self.stems)


def normalize_text(raw: str) -> str:
    """Lowercase, blank out everything but letters/digits, collapse whitespace.

    >>> normalize_text("Alkem's Q2 results!")
    'alkem s q2 results'
    """
    lowered = raw.lower()
    blanked = "".join(c if c.isalnum() else " " for c in lowered)
    return " ".join(blanked.split())


# -- Porter stemmer ---------------------------------------------------------
#
# Classic 1980 rule set, following the reference implementation's behaviour
# of leaving words of one or two characters untouched.  Non-letters are
# treated as consonants.

_VOWELS = frozenset("aeiou")


def _is_consonant(word: str, i: int) -> bool:
    c = word[i]
    if c in _VOWELS:
        return False
    if c == "y":
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of VC sequences in ``[C](VC)^m[V]``."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        vowel = not _is_consonant(stem, i)
        if prev_vowel and not vowel:
            m += 1
        prev_vowel = vowel
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(word: str) -> bool:
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and _is_consonant(word, len(word) - 1)
    )


def _ends_cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    i = len(word) - 1
    return (
        _is_consonant(word, i - 2)
        and not _is_consonant(word, i - 1)
        and _is_consonant(word, i)
        and word[i] not in "wxy"
    )


def _step1a(w: str) -> str:
    if w.endswith("sses"):
        return w[:-2]
    if w.endswith("ies"):
        return w[:-2]
    if w.endswith("ss"):
        return w
    if w.endswith("s"):
        return w[:-1]
    return w


def _step1b(w: str) -> str:
    if w.endswith("eed"):
        if _measure(w[:-3]) > 0:
            return w[:-1]
        return w
    for suffix in ("ed", "ing"):
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if not _has_vowel(stem):
                return w
            return _step1b_cleanup(stem)
    return w


def _step1b_cleanup(w: str) -> str:
    if w.endswith(("at", "bl", "iz")):
        return w + "e"
    if _ends_double_consonant(w) and w[-1] not in "lsz":
        return w[:-1]
    if _measure(w) == 1 and _ends_cvc(w):
        return w + "e"
    return w


def _step1c(w: str) -> str:
    if w.endswith("y") and _has_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


# Order matters only where one suffix ends another; the longest is listed first.
_STEP2 = (
    ("ational", "ate"),
    ("tional", "tion"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("izer", "ize"),
    ("abli", "able"),
    ("alli", "al"),
    ("entli", "ent"),
    ("eli", "e"),
    ("ousli", "ous"),
    ("ization", "ize"),
    ("ation", "ate"),
    ("ator", "ate"),
    ("alism", "al"),
    ("iveness", "ive"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("aliti", "al"),
    ("iviti", "ive"),
    ("biliti", "ble"),
)

_STEP3 = (
    ("icate", "ic"),
    ("ative", ""),
    ("alize", "al"),
    ("iciti", "ic"),
    ("ical", "ic"),
    ("ful", ""),
    ("ness", ""),
)

_STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


def _longest_suffix(w: str, suffixes) -> str | None:
    best = None
    for s in suffixes:
        if w.endswith(s) and (best is None or len(s) > len(best)):
            best = s
    return best


def _replace_rule(w: str, rules: tuple[tuple[str, str], ...]) -> str:
    # Only the longest matching suffix is considered; if its condition
    # fails, no shorter suffix is tried.
    suffix = _longest_suffix(w, (s for s, _ in rules))
    if suffix is None:
        return w
    stem = w[: -len(suffix)]
    if _measure(stem) > 0:
        return stem + dict(rules)[suffix]
    return w


def _step4(w: str) -> str:
    suffix = _longest_suffix(w, _STEP4)
    if suffix is None:
        return w
    stem = w[: -len(suffix)]
    if _measure(stem) <= 1:
        return w
    if suffix == "ion" and not stem.endswith(("s", "t")):
        return w
    return stem


def _step5(w: str) -> str:
    if w.endswith("e"):
        stem = w[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            w = stem
    if w.endswith("ll") and _measure(w) > 1:
        w = w[:-1]
    return w


@lru_cache(maxsize=65536)
def stem_token(surface: str) -> str:
    """Porter stem of a lowercased, punctuation-free word.

    >>> stem_token("declining"), stem_token("issued"), stem_token("us")
    ('declin', 'issu', 'us')
    """
    if len(surface) <= 2:
        return surface
    w = _step1a(surface)
    w = _step1b(w)
    w = _step1c(w)
    w = _replace_rule(w, _STEP2)
    w = _replace_rule(w, _STEP3)
    w = _step4(w)
    w = _step5(w)
    return w


# ---------------------------------------------------------------------------


def tokenize(normalized: str) -> list[Token]:
    """Split normalized text on whitespace and attach Porter stems."""
    return [Token(s, stem_token(s)) for s in normalized.split()]


def text_to_tokens(raw: str) -> list[Token]:
    """Shorthand for ``tokenize(normalize_text(raw))``."""
    return tokenize(normalize_text(raw))


def ngrams(tokens: list[Token], n: int) -> list[NGram]:
    """Sliding window of ``n`` consecutive stems (n in 1, 2, 3)."""
    if n not in (1, 2, 3):
        raise ValueError(f"n must be 1, 2 or 3, got {n!r}")
    stems = [t.stem for t in tokens]
    return [NGram(tuple(stems[i : i + n])) for i in range(len(stems) - n + 1)]
