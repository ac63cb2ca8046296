"""Deterministic SVG figures of the ladder and of the fundamental domain.

Coordinates are emitted in surface (or half-plane) units with the y axis
pointing up; floats are printed with a fixed number of decimals so equal
inputs give byte-identical files.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cylinders import CylinderDecomposition
from .fuchsian import FundamentalDomain
from .surface import LadderSurface, accumulation_point, singular_segments

__all__ = ["Canvas", "svg_surface", "svg_cylinders", "svg_segments", "svg_domain"]

_FILLS = ("#d9d9d9", "#bcd4e6", "#f2d7b6", "#cfe3c6")


def _f(x: float) -> str:
    s = f"{x:.5f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class Canvas:
    def __init__(self, stroke: float = 0.01, pad: float = 0.1):
        self.stroke = stroke
        self.pad = pad
        self.items: list[str] = []
        self.xs: list[float] = []
        self.ys: list[float] = []

    def _see(self, *pts):
        for x, y in pts:
            self.xs.append(x)
            self.ys.append(y)

    def polyline(self, pts, cls="edge", closed=False, dash=None):
        pts = [(float(x), float(y)) for x, y in pts]
        self._see(*pts)
        tag = "polygon" if closed else "polyline"
        coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in pts)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<{tag} class="{cls}" points="{coords}"{extra}/>')

    def rect(self, x0, y0, x1, y1, fill, cls="cyl"):
        x0, y0, x1, y1 = map(float, (x0, y0, x1, y1))
        self._see((x0, y0), (x1, y1))
        self.items.append(
            f'<rect class="{cls}" x="{_f(x0)}" y="{_f(y0)}" width="{_f(x1 - x0)}" '
            f'height="{_f(y1 - y0)}" fill="{fill}"/>'
        )

    def dot(self, x, y, r=None, cls="vertex"):
        x, y = float(x), float(y)
        self._see((x, y))
        r = r if r is not None else 2.5 * self.stroke
        self.items.append(f'<circle class="{cls}" cx="{_f(x)}" cy="{_f(y)}" r="{_f(r)}"/>')

    def arc(self, cx, cy, r, start_deg, end_deg, cls="arc", dash=None):
        """Circular arc counter-clockwise (in y-up coordinates) from ``start_deg`` to ``end_deg``."""
        a0, a1 = math.radians(start_deg), math.radians(end_deg)
        p0 = (cx + r * math.cos(a0), cy + r * math.sin(a0))
        p1 = (cx + r * math.cos(a1), cy + r * math.sin(a1))
        self._see(p0, p1, (cx, cy + r))
        large = 1 if (end_deg - start_deg) % 360 > 180 else 0
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        # the group flips y, so counter-clockwise becomes sweep-flag 1
        self.items.append(
            f'<path class="{cls}" d="M {_f(p0[0])} {_f(p0[1])} A {_f(r)} {_f(r)} 0 {large} 1 '
            f'{_f(p1[0])} {_f(p1[1])}"{extra}/>'
        )

    def text(self, x, y, label, cls="label"):
        x, y = float(x), float(y)
        self._see((x, y))
        size = 12 * self.stroke
        self.items.append(
            f'<text class="{cls}" x="{_f(x)}" y="{_f(-y)}" font-size="{_f(size)}" '
            f'transform="scale(1,-1)">{label}</text>'
        )

    def to_svg(self, title: str) -> str:
        x0, x1 = min(self.xs) - self.pad, max(self.xs) + self.pad
        y0, y1 = min(self.ys) - self.pad, max(self.ys) + self.pad
        w, h = x1 - x0, y1 - y0
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_f(x0)} {_f(-y1)} {_f(w)} {_f(h)}" '
            f'width="{_f(200 * w)}" height="{_f(200 * h)}">\n'
            f"<title>{title}</title>\n"
            "<style>"
            f".edge,.arc,.seg{{fill:none;stroke:#000;stroke-width:{_f(self.stroke)}}}"
            f".free{{fill:none;stroke:#c00;stroke-width:{_f(3 * self.stroke)}}}"
            f".cyl{{stroke:#555;stroke-width:{_f(self.stroke / 2)}}}"
            ".vertex{fill:#000}.label{fill:#000;font-family:serif}"
            "</style>\n"
            '<g transform="scale(1,-1)">\n'
        )
        return head + "\n".join(self.items) + "\n</g>\n</svg>\n"


def _outline(canvas: Canvas, surface: LadderSurface):
    pts = [(p.x, p.y) for p in surface.boundary_polyline()]
    canvas.polyline(pts)
    for p in surface.vertices():
        if p.x < surface.c(surface.depth - 1) and p.y < surface.c(surface.depth - 1):
            canvas.dot(p.x, p.y)


def svg_surface(surface: LadderSurface, stroke: float = 0.01) -> str:
    canvas = Canvas(stroke)
    _outline(canvas, surface)
    return canvas.to_svg(f"ladder surface k={surface.params.k} l={surface.params.l}")


def svg_cylinders(surface: LadderSurface, dec: CylinderDecomposition, stroke: float = 0.01) -> str:
    """Horizontal cylinder strips shaded under the staircase outline."""
    canvas = Canvas(stroke)
    c = surface.c
    for cyl in dec.cylinders:
        n = cyl.index
        if n >= surface.depth - 1:
            break
        left = c(n - 2) if n >= 1 else 0
        canvas.rect(left, c(n - 1), c(n + 1), c(n), _FILLS[n % len(_FILLS)])
    _outline(canvas, surface)
    return canvas.to_svg(f"horizontal cylinders k={surface.params.k} l={surface.params.l}")


def svg_segments(surface: LadderSurface, slope=1, count: int | None = None, stroke: float = 0.01) -> str:
    """Unit segments of ``slope`` issuing from the singular corners and from S."""
    canvas = Canvas(stroke)
    _outline(canvas, surface)
    slope = Fraction(slope)
    count = surface.depth - 2 if count is None else count
    norm = math.hypot(1.0, float(slope))
    dx, dy = -1.0 / norm, -float(slope) / norm
    s = accumulation_point(surface.params)
    for start, ok in singular_segments(surface, slope, count):
        x, y = float(start.x), float(start.y)
        canvas.polyline([(x, y), (x + dx, y + dy)], cls="seg", dash=None if ok else "0.03")
    sx, sy = float(s.x), float(s.y)
    canvas.polyline([(sx, sy), (sx + dx, sy + dy)], cls="seg")
    canvas.dot(sx, sy)
    canvas.text(sx + 0.05, sy, "S")
    return canvas.to_svg(f"unit segments of slope {slope}")


def svg_domain(dom: FundamentalDomain, stroke: float = 0.01, top: float = 2.5) -> str:
    """The strip, the two unit arcs and the free side on the real axis."""
    canvas = Canvas(stroke)
    left, right = float(dom.strip_left), float(dom.strip_right)
    canvas.polyline([(left - 0.3, 0), (right + 0.3, 0)], cls="edge", dash="0.02")
    canvas.polyline([(left, 0), (left, top)])
    canvas.polyline([(right, 0), (right, top)])
    # |z + 1| = 1 from -2 up to w, |z| = 1 from w down to 1
    canvas.arc(-1.0, 0.0, 1.0, 60, 180)
    canvas.arc(0.0, 0.0, 1.0, 0, 120)
    canvas.arc(-1.0, 0.0, 1.0, 0, 60, dash="0.02")
    canvas.arc(0.0, 0.0, 1.0, 120, 180, dash="0.02")
    lo, hi = dom.free_side
    canvas.polyline([(lo, 0), (hi, 0)], cls="free")
    for x, label in ((left, "-2"), (-1, "-1"), (0, "0"), (1, "1"), (right, "k(1+lam)-2")):
        canvas.dot(x, 0)
        canvas.text(x, -0.15, label)
    canvas.dot(-0.5, math.sqrt(3) / 2, cls="vertex")
    return canvas.to_svg(f"fundamental domain k={dom.params.k} l={dom.params.l}")
