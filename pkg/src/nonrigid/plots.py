"""Optional figure rendering for degree sweeps.

Turns a list of sweep rows into small PNG summaries written next to the
CSV: one figure for the rank side (certified bound and exact rank vs
degree) and one for the distance side (disagreement count and deficit
bound vs degree).  Uses the Agg backend so it works headless.
"""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .rigidity import SweepRow


def render_sweep_figures(
    rows: Sequence[SweepRow],
    out_dir: str,
    N: int,
    prefix: str = "sweep",
) -> list[str]:
    """Write rank and distance summary figures; returns the file paths."""
    os.makedirs(out_dir, exist_ok=True)
    ds = [r.d for r in rows]
    written = []

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(ds, [r.rank_bound for r in rows], "o-", label="rank bound 2*m_{d/2}")
    known = [(r.d, r.exact_rank) for r in rows if r.exact_rank is not None]
    if known:
        ax.plot([d for d, _ in known], [rk for _, rk in known], "s--", label="exact rank")
    ax.axhline(N, color="gray", lw=0.8, ls=":", label=f"full rank N={N}")
    ax.set_xlabel("degree d")
    ax.set_ylabel("rank")
    ax.set_title("certified rank vs degree")
    ax.legend()
    path = os.path.join(out_dir, f"{prefix}_rank.png")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(ds, [r.bad_count for r in rows], "o-", label="bad_count")
    ax.plot(ds, [r.deficit for r in rows], "s--", label="deficit N - m_d")
    ax.set_xlabel("degree d")
    ax.set_ylabel("points")
    ax.set_title("disagreement vs degree")
    ax.legend()
    path = os.path.join(out_dir, f"{prefix}_distance.png")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    return written
