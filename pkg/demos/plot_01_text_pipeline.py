"""
From headline to n-grams
========================

Every piece of text is lowercased, stripped of punctuation, split on
whitespace and Porter-stemmed before it is compared with the lexicon.
"""

from newsent.textprep import ngrams, normalize_text, stem_token, tokenize

sentence = ("Alkem Laboratories share price plunged as much as 11 percent in "
            "afternoon Wednesday after the US health regulator issued 13 observations.")

normalized = normalize_text(sentence)
print(normalized)

tokens = tokenize(normalized)
for i, tok in enumerate(tokens[:8]):
    print(f"{i:2d}  {tok.surface:<12} -> {tok.stem}")

# Stemming collapses inflections, so "declining", "declined" and "decline"
# all meet the same lexicon entry.
print({w: stem_token(w) for w in ["declining", "declined", "decline", "costs", "us"]})

###############################################################################
# Bigrams and trigrams are sliding windows over the stems.

bigrams = ngrams(tokens, 2)
print(len(tokens), "tokens ->", len(bigrams), "bigrams")
for g in bigrams[:5]:
    print(g.stems)

print([g.stems for g in ngrams(tokens, 3)[:3]])
