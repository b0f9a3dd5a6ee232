"""Figure rendering for the report paths.

Every CLI report that writes a delimited file also renders a small
matplotlib figure next to it (PNG, same stem) unless asked not to.
Figures are presentation aids only; the CSV/JSON stays the quantitative
interface.
"""

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analysis import ScanRResult, normalize
from .infinite import LineShape

__all__ = ["save_lineshape_figure", "save_scan_figure"]

_RC = {
    "figure.figsize": (4.8, 3.2),
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


def save_lineshape_figure(line: LineShape, path: str) -> None:
    """Plot normalized Re S (solid) and |S| (dashed) against detuning."""
    shown = line if line.normalized else normalize(line)
    dws = shown.delta_omegas
    values = shown.values
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ax.plot(dws, values.real, label="Re S (normalized)")
        ax.plot(dws, abs(values), "--", lw=0.9, label="|S|")
        ax.set_xlabel(r"detuning $\Delta\omega$")
        ax.set_ylabel("signal")
        geo = line.geometry
        radius = "inf" if math.isinf(geo.radius) else f"{geo.radius:g}"
        ax.set_title(f"dim={geo.dim}, R={radius}", fontsize=9)
        ax.legend(frameon=False, fontsize=8)
        fig.savefig(path)
        plt.close(fig)


def save_scan_figure(scan: ScanRResult, path: str) -> None:
    """Plot half-width against boundary radius with the R=inf reference."""
    widths = [r.hwhm for r in scan.results]
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ax.plot(scan.radii, widths, "o-", label="bounded")
        ax.axhline(scan.infinite.hwhm, color="k", ls="--", lw=0.9, label="R = inf")
        ax.set_xlabel("boundary radius R")
        ax.set_ylabel("half-width of Re S")
        ax.legend(frameon=False, fontsize=8)
        fig.savefig(path)
        plt.close(fig)
