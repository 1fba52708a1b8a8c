"""Dependency-free SVG heatmaps of |zeta|^2 with singular-set circles."""

from __future__ import annotations

import math

import numpy as np

from .config import TWO_PI

SIZE = 512

# viridis anchors, linearly interpolated
_STOPS = [
    (0.267, 0.005, 0.329), (0.283, 0.141, 0.458), (0.254, 0.265, 0.530),
    (0.207, 0.372, 0.553), (0.164, 0.471, 0.558), (0.128, 0.567, 0.551),
    (0.135, 0.659, 0.518), (0.267, 0.749, 0.441), (0.478, 0.821, 0.318),
    (0.741, 0.873, 0.150), (0.993, 0.906, 0.144),
]


def _color(t: float) -> str:
    t = min(max(t, 0.0), 1.0) * (len(_STOPS) - 1)
    k = min(int(t), len(_STOPS) - 2)
    f = t - k
    rgb = [(1 - f) * a + f * b for a, b in zip(_STOPS[k], _STOPS[k + 1])]
    return "#{:02x}{:02x}{:02x}".format(*(int(round(255 * c)) for c in rgb))


def write_heatmap_svg(path, density: np.ndarray, zeros, delta: float,
                      title: str = ""):
    """512x512 heatmap of a per-site density (sqrt color scale), with the
    delta-disks around the singular set drawn as circles (wrapped copies
    included).  Axis convention: x rightward, y downward."""
    density = np.asarray(density, float)
    n = density.shape[0]
    cell = SIZE / n
    peak = float(density.max()) or 1.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" '
        f'height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
    ]
    if title:
        parts.append(f"<title>{title}</title>")
    for ix in range(n):
        x = ix * cell
        for iy in range(n):
            col = _color(math.sqrt(density[ix, iy] / peak))
            parts.append(
                f'<rect x="{x:.2f}" y="{iy * cell:.2f}" '
                f'width="{cell + 0.5:.2f}" height="{cell + 0.5:.2f}" '
                f'fill="{col}"/>')
    scale = SIZE / TWO_PI
    radius = delta * scale
    for (zx, zy) in zeros:
        for ox in (-SIZE, 0, SIZE):
            for oy in (-SIZE, 0, SIZE):
                cx = zx * scale + ox
                cy = zy * scale + oy
                if (-radius <= cx <= SIZE + radius
                        and -radius <= cy <= SIZE + radius):
                    parts.append(
                        f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{radius:.2f}" '
                        'fill="none" stroke="#ff5050" stroke-width="2"/>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts))
