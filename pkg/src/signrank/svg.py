"""Static SVG rendering of planar configurations: points as labeled dots,
oriented lines clipped to a bounding box with mid-segment arrowheads."""

from __future__ import annotations

import math
from typing import Optional, Sequence

from .errors import DomainError
from .geometry import Configuration

_CANVAS = 640.0
_PAD = 0.15


def _auto_bbox(C: Configuration):
    xs = [float(x) for x, _ in C.points] or [0.0]
    ys = [float(y) for _, y in C.points] or [0.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1.0)
    pad = _PAD * span + 0.5
    return (x0 - pad, y0 - pad, x1 + pad, y1 + pad)


def _clip_line(c0: float, c1: float, c2: float, bbox):
    """Intersections of c0 + c1 x + c2 y = 0 with the bbox edges."""
    x0, y0, x1, y1 = bbox
    hits = []
    if abs(c2) > 1e-300:
        for x in (x0, x1):
            y = -(c0 + c1 * x) / c2
            if y0 - 1e-9 <= y <= y1 + 1e-9:
                hits.append((x, y))
    if abs(c1) > 1e-300:
        for y in (y0, y1):
            x = -(c0 + c2 * y) / c1
            if x0 - 1e-9 <= x <= x1 + 1e-9:
                hits.append((x, y))
    hits.sort()
    unique = []
    for p in hits:
        if not unique or abs(p[0] - unique[-1][0]) + abs(p[1] - unique[-1][1]) > 1e-9:
            unique.append(p)
    if len(unique) < 2:
        return None
    return unique[0], unique[-1]


def render_svg(C: Configuration, bbox: Optional[Sequence[float]] = None) -> str:
    """SVG 1.1 document for a planar configuration."""
    if C.dim != 2:
        raise DomainError("SVG rendering supports planar configurations only")
    box = tuple(float(v) for v in bbox) if bbox is not None else _auto_bbox(C)
    x0, y0, x1, y1 = box
    if x1 <= x0 or y1 <= y0:
        raise DomainError(f"degenerate bounding box {box}")
    scale = _CANVAS / max(x1 - x0, y1 - y0)
    width = (x1 - x0) * scale
    height = (y1 - y0) * scale

    def to_px(x, y):
        return ((x - x0) * scale, (y1 - y) * scale)  # flip y for screen coords

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]

    for j, h in enumerate(C.hyperplanes):
        c0, c1, c2 = (float(c) for c in h.coeffs)
        seg = _clip_line(c0, c1, c2, box)
        if seg is None:
            continue
        (ax, ay), (bx, by) = seg
        px_a, px_b = to_px(ax, ay), to_px(bx, by)
        parts.append(
            f'<line x1="{px_a[0]:.2f}" y1="{px_a[1]:.2f}" '
            f'x2="{px_b[0]:.2f}" y2="{px_b[1]:.2f}" stroke="#3465a4" stroke-width="1.5"/>'
        )
        # travel direction (c2, -c1) keeps the positive side on the left
        dx, dy = c2, -c1
        norm = math.hypot(dx, dy)
        if norm > 0:
            dx, dy = dx / norm, dy / norm
            mx, my = (ax + bx) / 2.0, (ay + by) / 2.0
            tip = to_px(mx + dx * 8 / scale, my + dy * 8 / scale)
            left = to_px(mx - dy * 3 / scale, my + dx * 3 / scale)
            right = to_px(mx + dy * 3 / scale, my - dx * 3 / scale)
            parts.append(
                f'<polygon points="{tip[0]:.2f},{tip[1]:.2f} {left[0]:.2f},{left[1]:.2f} '
                f'{right[0]:.2f},{right[1]:.2f}" fill="#3465a4"/>'
            )
        lx, ly = to_px(ax, ay)
        parts.append(
            f'<text x="{lx + 4:.2f}" y="{ly - 4:.2f}" font-size="13" '
            f'fill="#3465a4">l{j + 1}</text>'
        )

    for i, (x, y) in enumerate(C.points):
        px, py = to_px(float(x), float(y))
        parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3.5" fill="#cc0000"/>')
        parts.append(
            f'<text x="{px + 5:.2f}" y="{py - 5:.2f}" font-size="13" '
            f'fill="#cc0000">p{i + 1}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts)
