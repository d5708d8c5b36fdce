"""Hand-rolled SVG snapshots of planar periodic frameworks.

Renders the canonical realization of a placement: the unit-cell
parallelogram, the vertices of the central cell plus one ring of
translates, and every bar incident to those cells. Planar only.
"""

from __future__ import annotations

import itertools
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .config import DEFAULT_CONFIG, RunConfig
from .errors import DimensionMismatchError
from .graphs import PeriodicGraph
from .placements import PlacementParams, realize

_SCALE = 80.0
_MARGIN = 30.0


def _framework_geometry(g: PeriodicGraph, p: PlacementParams, config: RunConfig):
    raw = realize(p, config)
    basis = raw.basis
    T = p.full_t()
    cells = list(itertools.product((-1, 0, 1), repeat=2))
    points = []
    for gamma in cells:
        for i in range(g.n):
            xy = basis @ (T[i] + np.array(gamma, dtype=np.float64))
            points.append((xy[0], xy[1], gamma == (0, 0)))
    bars = []
    for gamma in cells:
        for e in g.edges:
            a = basis @ (T[e.tail] + np.array(gamma, dtype=np.float64))
            b = basis @ (T[e.head] + np.array(gamma, dtype=np.float64) + np.array(e.label, dtype=np.float64))
            bars.append((a[0], a[1], b[0], b[1], gamma == (0, 0)))
    cell = [
        (0.0, 0.0),
        (basis[0, 0], basis[1, 0]),
        (basis[0, 0] + basis[0, 1], basis[1, 0] + basis[1, 1]),
        (basis[0, 1], basis[1, 1]),
    ]
    return points, bars, cell


def _svg_group(points, bars, cell, offset_x: float) -> tuple:
    """Returns (svg fragment, min/max extents) with y flipped for screen."""
    xs = [x for x, _, _ in points] + [x for x, _, _, _, _ in bars] + [x for x, _ in cell]
    ys = [y for _, y, _ in points] + [y for _, y, _, _, _ in bars] + [y for _, y in cell]
    parts = []
    for x0, y0, x1, y1, central in bars:
        stroke = "#1a4f8b" if central else "#9db8d4"
        width = 2.2 if central else 1.2
        parts.append(
            f'<line x1="{offset_x + _SCALE * x0:.2f}" y1="{-_SCALE * y0:.2f}" '
            f'x2="{offset_x + _SCALE * x1:.2f}" y2="{-_SCALE * y1:.2f}" '
            f'stroke="{stroke}" stroke-width="{width}" />'
        )
    corners = " ".join(
        f"{offset_x + _SCALE * x:.2f},{-_SCALE * y:.2f}" for x, y in cell
    )
    parts.append(
        f'<polygon points="{corners}" fill="none" stroke="#c23b22" '
        'stroke-width="1.4" stroke-dasharray="6 3" />'
    )
    for x, y, central in points:
        fill = "#c23b22" if central else "#666666"
        radius = 4.0 if central else 2.5
        parts.append(
            f'<circle cx="{offset_x + _SCALE * x:.2f}" cy="{-_SCALE * y:.2f}" '
            f'r="{radius}" fill="{fill}" />'
        )
    return "\n".join(parts), (min(xs), max(xs), min(ys), max(ys))


def render_framework(
    g: PeriodicGraph, p: PlacementParams, config: RunConfig = DEFAULT_CONFIG
) -> str:
    """SVG document for one placement."""
    return render_snapshots(g, [p], config)


def render_snapshots(
    g: PeriodicGraph, placements: Sequence[PlacementParams], config: RunConfig = DEFAULT_CONFIG
) -> str:
    """SVG document with the given placements side by side."""
    if g.d != 2:
        raise DimensionMismatchError("snapshots are rendered for planar frameworks only")
    if not placements:
        raise DimensionMismatchError("need at least one placement to render")
    groups = []
    extents = []
    for p in placements:
        points, bars, cell = _framework_geometry(g, p, config)
        groups.append((points, bars, cell))
        xs = [x for x, _, _ in points]
        extents.append(max(xs) - min(xs))
    fragments = []
    offset = _MARGIN
    min_y = np.inf
    max_y = -np.inf
    max_x = 0.0
    for (points, bars, cell), width in zip(groups, extents):
        xs = [x for x, _, _ in points]
        shift = offset - _SCALE * min(xs)
        frag, (x0, x1, y0, y1) = _svg_group(points, bars, cell, shift)
        fragments.append(frag)
        min_y = min(min_y, -_SCALE * y1)
        max_y = max(max_y, -_SCALE * y0)
        max_x = shift + _SCALE * x1
        offset = max_x + 2 * _MARGIN
    view_w = max_x + _MARGIN
    view_y = min_y - _MARGIN
    view_h = (max_y - min_y) + 2 * _MARGIN
    body = "\n".join(fragments)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 {view_y:.2f} {view_w:.2f} {view_h:.2f}" '
        f'width="{view_w:.0f}" height="{view_h:.0f}">\n'
        f'<rect x="0" y="{view_y:.2f}" width="{view_w:.2f}" height="{view_h:.2f}" fill="#ffffff" />\n'
        f"{body}\n</svg>\n"
    )
