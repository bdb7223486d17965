"""Regenerate the bundled synthetic sample corpus and price bars.

Two tickers, two trading days of 30-minute bars (03:45-09:45 UTC bar
starts, i.e. the NSE session), 23 raw articles.  After ingest (keyword
filter + dedup) 18 articles remain; one of them is published after the
close and finds no entry bar.  Bar opens are solved so that each article's
entry-to-close return lands where its intended outcome says it should,
giving 12 correct calls out of 17 evaluated.

    python scripts/make_sample_data.py
"""

from __future__ import annotations

import json
from datetime import datetime, timedelta, timezone
from decimal import Decimal
from pathlib import Path

from newsent.lexicon import default_lexicon_path, load_lexicon, match_tokens
from newsent.sentiment import score_matches
from newsent.strategy import decide
from newsent.textprep import text_to_tokens

OUT = Path(__file__).resolve().parents[1] / "src" / "newsent" / "data" / "sample"
DAYS = ("2018-04-11", "2018-04-12")
N_BARS = 13
FIRST_BAR = (3, 45)

# Return (in %) realised for each intended (signal, correct) outcome.
RETURNS = {
    ("buy", True): "1.2", ("buy", False): "0.3",
    ("sell", True): "-1.1", ("sell", False): "0.4",
    ("hold", True): "0.4", ("hold", False): "1.6",
}

# (id, ticker, day, bar index or None, minutes before bar start, headline, body, signal, correct)
ARTICLES = [
    ("a01", "ALKEM", 0, 1, 12, "USFDA issues 13 observations on Alkem plant",
     "Alkem Laboratories share price plunged as much as 11 percent after the US health regulator issued 13 observations.",
     "sell", True),
    ("a02", "ALKEM", 0, 3, 5, "Alkem gets USFDA nod for generic drug",
     "The company received final approval for the product, a strong addition to its US portfolio.",
     "buy", True),
    ("a03", "ALKEM", 0, 6, 20, "Alkem Q4 preview: pricing pressure in US business",
     "Analysts expect price erosion and a weak quarter on generic competition.",
     "sell", True),
    ("a04", "ALKEM", 0, 9, 0, "Alkem Q4 results inline with expectations",
     "Results were in line. Costs declined and margins were stable for the quarter.",
     "buy", False),
    ("a05", "ALKEM", 1, 0, 25, "Alkem US unit faces import alert",
     "An import alert on one facility could trigger a revenue dip, brokers warned of a target cut.",
     "sell", False),
    ("a06", "ALKEM", 1, 4, 9, "USFDA inspection of Alkem site ends with zero observations",
     "The establishment inspection report cleared the plant with zero observations, an upbeat outcome.",
     "buy", True),
    ("a07", "ALKEM", 1, 7, 15, "Alkem Q4 guidance unchanged",
     "Management reiterated guidance; the filing was routine.",
     "hold", True),
    ("a08", "ALKEM", 1, 10, 3, "Alkem launches product in USA",
     "The new product gives the company a strong start and market share gain in the USA.",
     "buy", True),
    ("a09", "LUPIN", 0, 0, 10, "Lupin receives USFDA nod for inhaler",
     "Lupin receives nod for its inhaler, a robust growth driver with exclusivity.",
     "buy", True),
    ("a10", "LUPIN", 0, 2, 28, "Lupin Q4 net loss on US price erosion",
     "Net loss widened amid pricing pressure and a shortage of key inputs.",
     "sell", True),
    ("a11", "LUPIN", 0, 5, 1, "Lupin US plant audit scheduled",
     "An audit of the facility is scheduled for next quarter.",
     "hold", False),
    ("a12", "LUPIN", 0, 8, 17, "Lupin recalls batches in US market",
     "The recall follows contamination found at a plant, a delay in supplies is expected.",
     "sell", True),
    ("a13", "LUPIN", 0, 11, 6, "Lupin in partnership for US biosimilar",
     "The partnership brings capacity expansion and order win visibility.",
     "buy", False),
    ("a14", "LUPIN", 1, 1, 22, "Lupin Q4 profit rises beats estimates",
     "Profit rises on strong US sales; the company beats estimates on record revenue.",
     "buy", True),
    ("a15", "LUPIN", 1, 3, 8, "Lupin USFDA warning letter for Goa facility",
     "A warning letter and import alert hit the facility; analysts see a downgrade.",
     "sell", True),
    ("a16", "LUPIN", 1, 6, 14, "Lupin US filing update",
     "The dossier filing for the new drug application remains under review.",
     "hold", True),
    ("a17", "LUPIN", 1, 9, 4, "Lupin Q4 disappointing but stock steady",
     "Results were disappointing with a net loss, yet the plant remained in line otherwise.",
     "sell", False),
    # published after the last bar of the day: no entry bar
    ("a18", "LUPIN", 1, None, -35, "Lupin US settlement announced after market",
     "A settlement of the lawsuit was announced, a strong positive for the company.",
     "buy", None),
    # dropped by the headline keyword filter
    ("x01", "ALKEM", 0, None, 0, "Festival season boosts sales", "Sales surge on strong demand.", None, None),
    ("x02", "ALKEM", 1, None, 0, "Unusual volumes seen in Alkem counter", "Volumes jumped.", None, None),
    ("x03", "LUPIN", 0, None, 0, "Lupin board meets on dividend", "The board discussed guidance.", None, None),
]

# Reposts of kept articles: (new id, original id, minutes later, headline variant)
REPOSTS = [
    ("d01", "a01", 120, "USFDA issues 13 observations on Alkem plant!"),
    ("d02", "a14", 40, "Lupin Q4 profit rises, beats estimates"),
]


def bar_start(day: int, idx: int) -> datetime:
    d = datetime.fromisoformat(DAYS[day]).replace(tzinfo=timezone.utc)
    return d + timedelta(hours=FIRST_BAR[0], minutes=FIRST_BAR[1] + 30 * idx)


def published(day: int, idx: int | None, lead: int) -> datetime:
    if idx is None:
        # lead < 0: minutes after the last bar start; otherwise mid-session filler
        if lead < 0:
            return bar_start(day, N_BARS - 1) - timedelta(minutes=lead)
        return bar_start(day, 4) + timedelta(minutes=7)
    return bar_start(day, idx) - timedelta(minutes=lead)


def iso(dt: datetime) -> str:
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


def q(x: Decimal) -> Decimal:
    return x.quantize(Decimal("0.01"))


def build_prices() -> list[list]:
    base = {"ALKEM": Decimal("2400"), "LUPIN": Decimal("780")}
    rows = []
    for ticker in ("ALKEM", "LUPIN"):
        for day in range(2):
            close = base[ticker] * (Decimal(1) + Decimal(day) / 100)
            opens: list[Decimal | None] = [None] * N_BARS
            for a in ARTICLES:
                if a[1] == ticker and a[2] == day and a[3] is not None:
                    r = Decimal(RETURNS[(a[7], a[8])])
                    opens[a[3]] = q(close / (1 + r / 100))
            # unpinned bars: walk linearly between neighbours
            pinned = [i for i, o in enumerate(opens) if o is not None]
            for i in range(N_BARS):
                if opens[i] is None:
                    left = max((p for p in pinned if p < i), default=None)
                    right = min((p for p in pinned if p > i), default=None)
                    if left is None:
                        opens[i] = opens[right]
                    elif right is None:
                        opens[i] = q((opens[left] + close) / 2)
                    else:
                        w = Decimal(i - left) / (right - left)
                        opens[i] = q(opens[left] + (opens[right] - opens[left]) * w)
            for i in range(N_BARS):
                o = opens[i]
                c = close if i == N_BARS - 1 else opens[i + 1]
                hi, lo = q(max(o, c) * Decimal("1.001")), q(min(o, c) * Decimal("0.999"))
                rows.append([ticker, iso(bar_start(day, i)), o, hi, lo, c])
    return rows


def main() -> None:
    lex = load_lexicon(default_lexicon_path())
    by_id = {a[0]: a for a in ARTICLES}
    records = []
    for a in ARTICLES:
        aid, ticker, day, idx, lead, headline, body, signal, _ = a
        if signal is not None:
            score = score_matches(match_tokens(text_to_tokens(f"{headline} {body}"), lex)).score
            assert decide(score).value == signal, (aid, score, signal)
        records.append((published(day, idx, lead), aid, ticker, headline, body))
    for new_id, orig, later, headline in REPOSTS:
        o = by_id[orig]
        records.append((published(o[2], o[3], o[4]) + timedelta(minutes=later), new_id, o[1], headline, o[6]))
    records.sort()
    OUT.mkdir(parents=True, exist_ok=True)
    with (OUT / "news.jsonl").open("w", encoding="utf-8", newline="\n") as fh:
        for ts, aid, ticker, headline, body in records:
            fh.write(json.dumps({
                "id": aid, "ticker": ticker, "published_at": iso(ts), "headline": headline,
                "body": body, "source_url": f"https://news.example.com/{ticker.lower()}/{aid}",
            }) + "\n")
    with (OUT / "prices.csv").open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("ticker,start,open,high,low,close\n")
        for row in build_prices():
            fh.write(",".join(str(v) for v in row) + "\n")
    print(f"wrote {len(records)} articles and {2 * 2 * N_BARS} bars to {OUT}")


if __name__ == "__main__":
    main()
