"""The ladder surface as an exact staircase region.

Write ``c(n) = 1 + lam + ... + lam**n`` (``c(-1) = 0``).  The polygon consists
of the points ``(x, y)`` with ``x, y >= 0``, ``x <= f(y)`` and ``y <= f(x)``
where ``f(t) = c(n+1)`` on ``[c(n-1), c(n))``.  Its reflex corners
``(c(n+1), c(n))`` and their mirrors are the (single, wild) singularity; they
accumulate at ``S = (1/(1-lam), 1/(1-lam))``.  Opposite parallel edges of equal
length are identified by translations.
"""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .numeric import LadderParams, QuadExt

__all__ = [
    "LadderSurface",
    "SurfacePoint",
    "Location",
    "TruncationExceeded",
    "build_surface",
    "contains",
    "horizontal_section",
    "area",
    "area_series",
    "accumulation_point",
    "corner_distance_sq",
    "singular_segments",
    "segment_in_region",
    "HexagonChart",
    "hexagon_chart",
    "check_rotation_symmetry",
]


class TruncationExceeded(ValueError):
    pass


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


class SurfacePoint(NamedTuple):
    x: QuadExt
    y: QuadExt

    def swapped(self) -> "SurfacePoint":
        return SurfacePoint(self.y, self.x)

    def __str__(self):
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class LadderSurface:
    params: LadderParams
    depth: int
    # sums[i] == c(i - 1) for i = 0 .. depth + 3
    sums: tuple[QuadExt, ...] = field(repr=False)

    @property
    def lam(self) -> QuadExt:
        return self.params.lam

    def c(self, n: int) -> QuadExt:
        if n < -1:
            return QuadExt(0)
        return self.sums[n + 1]

    def corner(self, n: int) -> SurfacePoint:
        """Reflex corner ``(c(n+1), c(n))`` of the right arm."""
        return SurfacePoint(self.c(n + 1), self.c(n))

    def vertices(self) -> list[SurfacePoint]:
        """Corners of the staircase, both arms, for ``n = -1 .. depth``."""
        out = []
        for n in range(-1, self.depth + 1):
            p = self.corner(n)
            out.extend([p, p.swapped()])
        return out

    def f(self, t: QuadExt) -> QuadExt:
        """Right-continuous step bound: ``c(n+1)`` on ``[c(n-1), c(n))``."""
        i = bisect.bisect_right(self.sums, t)
        return self.sums[i + 1]

    def f_left(self, t: QuadExt) -> QuadExt:
        """Left-continuous variant: ``c(n+1)`` on ``(c(n-1), c(n)]``, for ``t > 0``."""
        i = bisect.bisect_left(self.sums, t)
        return self.sums[i + 1]

    def boundary_polyline(self) -> list[SurfacePoint]:
        """Outline from the top of the left arm, via the origin, up the right arm."""
        zero = QuadExt(0)
        right = [SurfacePoint(zero, zero)]
        for n in range(-1, self.depth - 1):
            right.append(SurfacePoint(self.c(n + 1), self.c(n - 1)))
            right.append(SurfacePoint(self.c(n + 1), self.c(n)))
        left = [p.swapped() for p in reversed(right[1:])]
        return left + right


def build_surface(params: LadderParams, depth: int) -> LadderSurface:
    if depth < 2:
        raise ValueError("depth must be at least 2")
    lam = params.lam
    sums = [QuadExt(0)]
    power = QuadExt(1)
    for _ in range(depth + 3):
        sums.append(sums[-1] + power)
        power = power * lam
    return LadderSurface(params, depth, tuple(sums))


def contains(surface: LadderSurface, p: SurfacePoint) -> Location:
    x, y = p
    limit = surface.c(surface.depth)
    if x >= limit or y >= limit:
        raise TruncationExceeded(f"{p} lies beyond c({surface.depth})")
    if x < 0 or y < 0:
        return Location.EXTERIOR
    if x > surface.f(y) or y > surface.f(x):
        return Location.EXTERIOR
    if x > 0 and y > 0 and x < surface.f_left(y) and y < surface.f_left(x):
        return Location.INTERIOR
    return Location.BOUNDARY


def horizontal_section(surface: LadderSurface, y: QuadExt) -> tuple[QuadExt, QuadExt]:
    """``(left, right)`` ends of the horizontal cross-section at height ``y``."""
    right = surface.f(y)
    m = 0
    while surface.c(m + 1) < y:
        m += 1
    return surface.c(m - 1), right


def area(params: LadderParams) -> QuadExt:
    lam = params.lam
    return (1 + 2 * lam) / (1 - lam * lam)


def area_series(lam: float, terms: int) -> float:
    """Float partial sum of ``sum lam^(2j) + 2 sum lam^(2j+1)``."""
    return sum(lam ** (2 * j) + 2 * lam ** (2 * j + 1) for j in range(terms))


def accumulation_point(params: LadderParams) -> SurfacePoint:
    s = 1 / (1 - params.lam)
    return SurfacePoint(s, s)


def corner_distance_sq(surface: LadderSurface, n: int) -> QuadExt:
    """Squared distance from ``corner(n)`` to the accumulation point."""
    s = accumulation_point(surface.params).x
    p = surface.corner(n)
    return (s - p.x) ** 2 + (s - p.y) ** 2


def _reaches(gap: QuadExt, leg2: Fraction, slope2: Fraction) -> bool:
    # a unit segment of slope s moves 1/sqrt(1+s^2) in x and s/sqrt(1+s^2) in y;
    # gap < leg  <=>  gap^2 (1 + s^2) < leg^2  (gap >= 0)
    return gap * gap * (1 + slope2) < leg2


def _in_closed_region(surface: LadderSurface, p: SurfacePoint) -> bool:
    x, y = p
    return x >= 0 and y >= 0 and x <= surface.f(y) and y <= surface.f(x)


def segment_in_region(surface: LadderSurface, start: SurfacePoint, slope) -> bool:
    """Whether the unit segment from ``start`` going down-left with ``slope`` stays in the closed region.

    Only axis-parallel walls can be hit.  The segment meets the level
    ``y = c(j)`` at ``x = x0 - (y0 - c(j))/slope``, so each wall test is exact;
    whether a level is reached before the segment ends is decided on squared
    lengths, which avoids ``sqrt(1 + slope^2)``.
    """
    s = Fraction(slope)
    s2 = s * s
    x0, y0 = start
    limit = surface.c(surface.depth)
    if x0 >= limit or y0 >= limit:
        raise TruncationExceeded(f"{start} lies beyond c({surface.depth})")
    if not _in_closed_region(surface, start):
        return False
    for j in range(-1, surface.depth + 2):
        level = surface.c(j)
        # below y = c(j) the bound on x drops to c(j+1); below y = 0 nothing is left
        if level <= y0 and _reaches(y0 - level, s2, s2):
            if j == -1 or x0 - (y0 - level) / s > surface.c(j + 1):
                return False
        if level <= x0 and _reaches(x0 - level, Fraction(1), s2):
            if j == -1 or y0 - s * (x0 - level) > surface.c(j + 1):
                return False
    return True


def singular_segments(surface: LadderSurface, slope, count: int) -> list[tuple[SurfacePoint, bool]]:
    """Unit segments of the given slope issuing down-left from the singular corners.

    Returns ``(start, contained)`` for ``corner(n)`` and its mirror image, in
    that order, for ``n = 0 .. count - 1``.
    """
    slope = Fraction(slope)
    lam = surface.lam
    if not (lam < slope < 1 / lam):
        raise ValueError(f"slope {slope} is not in the open interval (lambda, 1/lambda)")
    if count > surface.depth:
        raise TruncationExceeded(f"count {count} exceeds depth {surface.depth}")
    out = []
    for n in range(count):
        p = surface.corner(n)
        for start in (p, p.swapped()):
            out.append((start, segment_in_region(surface, start, slope)))
    return out


# -- hexagon chart -------------------------------------------------------------

Edge = tuple[int, int]

_DIRECTIONS = {  # sign pattern of the ladder edge vector -> hexagon edge slot
    (1, 0): 0,
    (0, 1): 1,
    (-1, 1): 2,
    (-1, 0): 3,
    (0, -1): 4,
    (1, -1): 5,
}


@dataclass(frozen=True)
class HexagonChart:
    """Semi-regular hexagons cut from the ladder along the antidiagonals.

    Hexagon ``n`` is the piece between the cuts through ``corner(n-2)`` and
    ``corner(n-1)`` (hexagon 0 is the triangle at the origin).  Edge ``i`` has
    direction ``60*i`` degrees after the shear-scaling; its chart length is
    stored in ``lengths[n][i]``.  ``gluing`` maps each glued edge to its
    partner; zero-length edges of hexagon 0 are ``degenerate``.
    """

    params: LadderParams
    depth: int
    lengths: tuple[tuple[QuadExt, ...], ...]
    vertices: tuple[tuple[SurfacePoint, ...], ...] = field(repr=False)
    gluing: dict = field(repr=False)
    frontier: frozenset = frozenset()
    degenerate: frozenset = frozenset()

    def alternating(self, n: int) -> tuple[QuadExt, QuadExt]:
        row = self.lengths[n]
        return row[0], row[1]

    def edge_vector(self, e: Edge) -> tuple[QuadExt, QuadExt]:
        n, i = e
        p, q = self.vertices[n][i], self.vertices[n][(i + 1) % 6]
        return q.x - p.x, q.y - p.y


def _hexagon_vertices(surface: LadderSurface, n: int) -> tuple[SurfacePoint, ...]:
    c = surface.c
    if n == 0:
        o, e1, e2 = QuadExt(0), SurfacePoint(QuadExt(1), QuadExt(0)), SurfacePoint(QuadExt(0), QuadExt(1))
        origin = SurfacePoint(o, o)
        return (origin, e1, e1, e2, e2, origin)
    return (
        SurfacePoint(c(n - 1), c(n - 2)),
        SurfacePoint(c(n), c(n - 2)),
        SurfacePoint(c(n), c(n - 1)),
        SurfacePoint(c(n - 1), c(n)),
        SurfacePoint(c(n - 2), c(n)),
        SurfacePoint(c(n - 2), c(n - 1)),
    )


def _chart_length(slot: int, vec) -> QuadExt:
    dx, dy = vec
    sx, sy = dx.sign(), dy.sign()
    if sx == 0 and sy == 0:
        return QuadExt(0)
    if _DIRECTIONS.get((sx, sy)) != slot or (sx and sy and dx != -dy):
        raise AssertionError(f"edge {slot} has vector {vec}, not a hexagon direction")
    # the shear-scaling preserves lengths along (1,0), (0,1) and (-1,1)
    return abs(dx) if sx else abs(dy)


def hexagon_chart(params: LadderParams, depth: int) -> HexagonChart:
    """Hexagons ``0 .. depth-1`` with gluings derived from the ladder geometry."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    surface = build_surface(params, depth + 1)
    vertices = tuple(_hexagon_vertices(surface, n) for n in range(depth))
    lengths = []
    for n, poly in enumerate(vertices):
        row = []
        for i in range(6):
            p, q = poly[i], poly[(i + 1) % 6]
            row.append(_chart_length(i, (q.x - p.x, q.y - p.y)))
        lengths.append(tuple(row))

    segments = {}
    vectors = {}
    degenerate = set()
    for n, poly in enumerate(vertices):
        for i in range(6):
            if lengths[n][i] == 0:
                degenerate.add((n, i))
                continue
            p, q = poly[i], poly[(i + 1) % 6]
            segments[(p, q)] = (n, i)
            vectors.setdefault((q.x - p.x, q.y - p.y), []).append((n, i))

    gluing = {}
    for n, poly in enumerate(vertices):
        for i in range(6):
            if (n, i) in degenerate:
                continue
            p, q = poly[i], poly[(i + 1) % 6]
            if i in (2, 5):
                # antidiagonal cut: the neighbour traverses the same segment backwards
                partner = segments.get((q, p))
            else:
                # outer edge: translation identification with the opposite edge
                cands = vectors.get((p.x - q.x, p.y - q.y), [])
                cands = [e for e in cands if e[1] not in (2, 5)]
                assert len(cands) <= 1
                partner = cands[0] if cands else None
            if partner is not None:
                gluing[(n, i)] = partner
    frontier = frozenset(
        (n, i) for n in range(depth) for i in range(6)
        if (n, i) not in gluing and (n, i) not in degenerate
    )
    return HexagonChart(
        params, depth, tuple(lengths), vertices, gluing, frontier, frozenset(degenerate)
    )


def check_rotation_symmetry(chart: HexagonChart) -> bool:
    """Whether rotating each hexagon by 2pi/3 commutes with the gluing.

    Rotation by 2pi/3 shifts edge slots by two.  Lengths must be invariant and
    every glued pair away from the frontier must map to a glued pair.
    """
    g = chart.gluing
    for n, row in enumerate(chart.lengths):
        if any(row[i] != row[(i + 2) % 6] for i in range(6)):
            return False
    for (n, i), (m, j) in g.items():
        if g.get((m, j)) != (n, i):
            return False
        if (n, i) == (m, j):
            return False
        rot_src, rot_dst = (n, (i + 2) % 6), (m, (j + 2) % 6)
        if rot_src in chart.frontier or rot_dst in chart.frontier:
            continue
        if g.get(rot_src) != rot_dst:
            return False
    return True
