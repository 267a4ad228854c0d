"""Matplotlib rendering of root clouds (PNG or any format matplotlib infers from the suffix)."""

from __future__ import annotations

from typing import Iterable

from .atlas import AtlasRecord, limit_curves


def render_png(records: Iterable[AtlasRecord], path: str, overlay_curves: bool = False,
               title: str | None = None, dpi: int = 150) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    pts = [complex(z) for rec in records for z in (rec.roots or [])]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.axhline(0, color="0.7", lw=0.5)
    ax.axvline(0, color="0.7", lw=0.5)
    if overlay_curves:
        for curve in limit_curves():
            ax.plot([w.real for w in curve], [w.imag for w in curve], color="tab:red", lw=0.8)
    ax.scatter([w.real for w in pts], [w.imag for w in pts], s=6, color="tab:blue", alpha=0.8)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi, metadata={"Software": None} if path.endswith(".png") else None)
    plt.close(fig)
