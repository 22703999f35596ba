"""Figures written next to the command-line reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .braid import format_braid  # noqa: E402
from .homology import HomologyTable  # noqa: E402


def plot_betti_table(t: HomologyTable, path: str | Path, *, psi=None, title: str | None = None) -> Path:
    """Draw the Betti table as an annotated grid and save it to ``path``.

    ``psi`` optionally marks one bidegree (the transverse class) with a ring.
    """
    path = Path(path)
    if t.dims:
        hs = [i for i, _ in t.dims]
        qs = [j for _, j in t.dims]
        h_lo, h_hi = min(hs), max(hs)
        q_lo, q_hi = min(qs), max(qs)
    else:
        h_lo = h_hi = q_lo = q_hi = 0
    if psi is not None:
        h_lo, h_hi = min(h_lo, psi[0]), max(h_hi, psi[0])
        q_lo, q_hi = min(q_lo, psi[1]), max(q_hi, psi[1])
    # Quantum degrees share the parity of the component count, so use step 2.
    q_vals = list(range(q_lo, q_hi + 1, 2)) if (q_hi - q_lo) % 2 == 0 else list(range(q_lo, q_hi + 1))
    h_vals = list(range(h_lo, h_hi + 1))
    grid = np.zeros((len(q_vals), len(h_vals)))
    for (i, j), d in t.dims.items():
        grid[q_vals.index(j), h_vals.index(i)] = d

    fig, ax = plt.subplots(figsize=(0.6 * len(h_vals) + 2.5, 0.45 * len(q_vals) + 2))
    ax.imshow(grid, origin="lower", cmap="Blues", aspect="auto",
              vmin=0, vmax=max(1, grid.max()))
    for (r, col), d in np.ndenumerate(grid):
        if d:
            ax.text(col, r, str(int(d)), ha="center", va="center",
                    color="white" if d > grid.max() / 2 else "black")
    if psi is not None and psi[1] in q_vals:
        ax.plot(h_vals.index(psi[0]), q_vals.index(psi[1]), "o", ms=22,
                mfc="none", mec="crimson", mew=1.5, label=r"$\psi$")
        ax.legend(loc="upper left", frameon=False)
    ax.set_xticks(range(len(h_vals)), [str(h) for h in h_vals])
    ax.set_yticks(range(len(q_vals)), [str(q) for q in q_vals])
    ax.set_xlabel("homological degree i")
    ax.set_ylabel("quantum degree j")
    ax.set_title(title or f"Kh over F2 of closure of [{format_braid(t.word)}]")
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
