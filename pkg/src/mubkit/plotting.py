"""Figure rendering for scan output.

Each scan CSV gets a companion PNG with the criterion value (or threshold)
against the swept parameter and the relevant bound as a dashed line.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


_AXIS_LABELS = {
    "isotropic": ("noise weight alpha", "criterion value"),
    "aharonov": ("singlet weight alpha", "criterion value"),
    "cv": ("squeezing parameter r", "criterion value"),
}


def save_scan_figure(kind: str, mode: str, rows: list[dict], path) -> None:
    """Render one scan result to ``path``.

    Grid scans plot value vs parameter with the separable bound; threshold
    scans plot the detection threshold against the number of bases.
    """
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    if mode == "thresholds":
        ms = [row["m"] for row in rows]
        thresholds = [row["threshold"] for row in rows]
        ax.plot(ms, thresholds, "o-", color="tab:blue")
        ax.set_xlabel("number of bases m")
        ax.set_ylabel("detection threshold")
        ax.set_xticks(ms)
    else:
        xkey = "r" if kind == "cv" else "alpha"
        xs = [row[xkey] for row in rows]
        values = [row["value"] for row in rows]
        bounds = [row["bound"] for row in rows]
        ax.plot(xs, values, "-", color="tab:blue", label="criterion")
        ax.plot(xs, bounds, "--", color="tab:red", label="separable bound")
        xlabel, ylabel = _AXIS_LABELS[kind]
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.legend(loc="best", fontsize=9)
    ax.set_title(f"{kind} scan")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
