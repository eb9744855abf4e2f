"""Figure rendering for the stats report path."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_metric_figures(cmis: Sequence[float], spfs: Sequence[float], out_dir: str | Path) -> list[Path]:
    """Write per-sentence CMI and SPF histograms next to the delimited stats."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, values, label in (("cmi_hist.png", cmis, "CMI"), ("spf_hist.png", spfs, "SPF")):
        fig, ax = plt.subplots(figsize=(5, 3.2))
        ax.hist(values, bins=20, range=(0.0, 1.0), color="#3b6ea5", edgecolor="white")
        ax.set_xlabel(label)
        ax.set_ylabel("sentences")
        ax.set_title(f"{label} distribution (n={len(values)})")
        fig.tight_layout()
        path = out / name
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
