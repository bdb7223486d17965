"""
Backtesting signals on 30-minute bars
=====================================

Each signal enters at the open of the first bar starting within 30
minutes of publication and is marked to that day's close.  Buys must gain
more than 0.5%, sells must fall more than 0.5%, holds must stay within 1%.
The plot recreates the arrow annotations used for buy/sell/hold charts.
"""

import csv
import tempfile
from importlib import resources
from pathlib import Path

from newsent.cli import main
from newsent.corpus import load_prices, parse_utc

sample = Path(str(resources.files("newsent") / "data" / "sample"))
out = Path(tempfile.mkdtemp(prefix="newsent-demo-"))
main(["run", "--news", str(sample / "news.jsonl"), "--prices", str(sample / "prices.csv"),
      "--out-dir", str(out)])

rows = list(csv.DictReader((out / "report.csv").open()))
for r in rows[:5]:
    print(r)

###############################################################################
# A stricter threshold trades less often

main(["backtest", "--prices", str(sample / "prices.csv"), "--out-dir", str(out),
      "--score-threshold", "3"])

###############################################################################
# Plot the closes with one arrow per evaluated signal

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    prices = load_prices(sample / "prices.csv")
    fig, axes = plt.subplots(len(prices), 1, figsize=(9, 6), sharex=False)
    style = {"buy": ("^", "green"), "sell": ("v", "red"), "hold": (">", "gold")}
    for ax, (ticker, series) in zip(axes, prices.items()):
        ax.plot([b.start for b in series.bars], [float(b.close) for b in series.bars], color="0.3")
        for r in rows:
            if r["ticker"] == ticker and r["entry_price"]:
                marker, colour = style[r["signal"]]
                edge = "black" if r["correct"] == "true" else "none"
                ax.scatter(parse_utc(r["published_at"]), float(r["entry_price"]),
                           marker=marker, color=colour, edgecolors=edge, s=80, zorder=3)
        ax.set_title(ticker)
    fig.tight_layout()
    fig.savefig(out / "signals.png", dpi=80)
    print("wrote", out / "signals.png")
