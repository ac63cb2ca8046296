"""Cylinder decompositions of the ladder and the multi-twists they produce."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .moebius import REFLECTION, MoebiusElement, conjugate
from .numeric import QuadExt, to_decimal
from .surface import LadderSurface, horizontal_section

__all__ = [
    "Direction",
    "Cylinder",
    "CylinderDecomposition",
    "Commensurability",
    "NotCommensurable",
    "NotCommensurableError",
    "NonIntegerTwist",
    "decompose",
    "commensurability",
    "synthesize_parabolic",
    "twist_counts",
    "widest_cylinder",
    "cylinder_area",
    "decomposition_json",
]

_R = (QuadExt(-1), QuadExt(-1), QuadExt(1), QuadExt(0))
_ID = (QuadExt(1), QuadExt(0), QuadExt(0), QuadExt(1))


class Direction(enum.Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    ANTIDIAGONAL = "antidiagonal"  # slope -1

    @property
    def conjugator(self):
        """Matrix carrying the horizontal decomposition to this one.

        Vertical uses the coordinate swap (determinant -1), antidiagonal the
        order-3 rotation ``R``.
        """
        return {
            Direction.HORIZONTAL: _ID,
            Direction.VERTICAL: REFLECTION,
            Direction.ANTIDIAGONAL: _R,
        }[self]


@dataclass(frozen=True)
class Cylinder:
    index: int
    height: QuadExt
    circumference: QuadExt
    direction: Direction

    def __post_init__(self):
        if self.height.sign() <= 0 or self.circumference.sign() <= 0:
            raise ValueError(f"cylinder {self.index} has non-positive dimensions")

    @property
    def modulus(self) -> QuadExt:
        return self.circumference / self.height

    @property
    def inverse_modulus(self) -> QuadExt:
        return self.height / self.circumference


@dataclass(frozen=True)
class CylinderDecomposition:
    direction: Direction
    cylinders: tuple[Cylinder, ...]
    lam: QuadExt | None = None

    def __len__(self):
        return len(self.cylinders)

    def __getitem__(self, i):
        return self.cylinders[i]


@dataclass(frozen=True)
class Commensurability:
    m: QuadExt
    multipliers: tuple[int, ...]


@dataclass(frozen=True)
class NotCommensurable:
    index: int
    ratio: QuadExt

    def __bool__(self):
        return False


class NotCommensurableError(ValueError):
    pass


class NonIntegerTwist(ValueError):
    def __init__(self, index: int, count: QuadExt):
        super().__init__(f"cylinder {index} would be twisted {count} times")
        self.index = index
        self.count = count


def _horizontal_data(surface: LadderSurface) -> list[tuple[QuadExt, QuadExt]]:
    lam = surface.lam
    data = [(QuadExt(1), 1 + lam)]
    wide = 1 + lam + lam * lam
    power = QuadExt(1)
    for n in range(1, surface.depth + 1):
        data.append((power * lam, power * wide))
        power = power * lam
    return data


def _validate_against_region(surface: LadderSurface, data) -> None:
    for n, (h, w) in enumerate(data):
        lo, hi = surface.c(n - 1), surface.c(n)
        assert hi - lo == h, f"height of cylinder {n}"
        left, right = horizontal_section(surface, (lo + hi) / 2)
        assert right - left == w, f"circumference of cylinder {n}"
    # beyond the truncation every cylinder is the previous one scaled by lambda
    lam = surface.lam
    for (h0, w0), (h1, w1) in zip(data[1:], data[2:]):
        assert h1 == lam * h0 and w1 == lam * w0


def decompose(surface: LadderSurface, direction: Direction) -> CylinderDecomposition:
    """Cylinders ``0 .. depth`` of the decomposition in ``direction``.

    Vertical data is the mirror image of horizontal data.  Antidiagonal data is
    the horizontal data transported by the order-3 rotation, measured in the
    hexagon metric where that rotation is an isometry.
    """
    data = _horizontal_data(surface)
    _validate_against_region(surface, data)
    cylinders = tuple(
        Cylinder(n, h, w, direction) for n, (h, w) in enumerate(data)
    )
    return CylinderDecomposition(direction, cylinders, surface.lam)


def commensurability(dec: CylinderDecomposition) -> Commensurability | NotCommensurable:
    """Largest ``m`` with every inverse modulus an integer multiple of ``m``."""
    if not dec.cylinders:
        raise ValueError("empty decomposition")
    inv = [c.inverse_modulus for c in dec.cylinders]
    base = min(inv)
    ratios = []
    for c, x in zip(dec.cylinders, inv):
        r = x / base
        if not r.is_rational():
            return NotCommensurable(c.index, r)
        ratios.append(r.a)
    # largest rational t with every ratio an integer multiple of t
    t = Fraction(
        math.gcd(*(r.numerator for r in ratios)),
        math.lcm(*(r.denominator for r in ratios)),
    )
    m = base * t
    return Commensurability(m, tuple(int(r / t) for r in ratios))


def synthesize_parabolic(dec: CylinderDecomposition) -> MoebiusElement:
    """The multi-twist ``(1, 1/m; 0, 1)`` moved into the decomposition's direction."""
    result = commensurability(dec)
    if not result:
        raise NotCommensurableError(
            f"inverse modulus of cylinder {result.index} is not a rational multiple"
        )
    horizontal = MoebiusElement(1, 1 / result.m, 0, 1)
    return conjugate(horizontal, dec.direction.conjugator)


def twist_counts(dec: CylinderDecomposition, shear: QuadExt) -> list[int]:
    if shear.sign() <= 0:
        raise ValueError("shear must be positive")
    out = []
    for c in dec.cylinders:
        count = shear * c.inverse_modulus
        if not count.is_integer():
            raise NonIntegerTwist(c.index, count)
        out.append(int(count.a))
    return out


def widest_cylinder(dec: CylinderDecomposition) -> Cylinder:
    cyls = dec.cylinders
    best = max(cyls, key=lambda c: c.circumference)
    if sum(1 for c in cyls if c.circumference == best.circumference) != 1:
        raise ValueError("widest cylinder is not unique")
    lam = dec.lam
    if lam is not None and len(cyls) > 2:
        # tail: w(n+1) = lam * w(n) < w(n) for n >= 1
        last = cyls[-1]
        assert 0 < lam < 1 and lam * last.circumference < last.circumference
    return best


def cylinder_area(dec: CylinderDecomposition) -> QuadExt:
    """Total area, truncated cylinders plus the exact geometric tail.

    Past cylinder 1 each area is ``lam^2`` times the previous one.
    """
    cyls = dec.cylinders
    total = sum((c.height * c.circumference for c in cyls), QuadExt(0))
    lam = dec.lam
    last = cyls[-1]
    if len(cyls) >= 3:
        ratio = lam * lam
        assert cyls[-1].height * cyls[-1].circumference == ratio * cyls[-2].height * cyls[-2].circumference
        tail_first = ratio * last.height * last.circumference
        total = total + tail_first / (1 - ratio)
    return total


def decomposition_json(dec: CylinderDecomposition, digits: int = 12) -> list[dict]:
    return [
        {
            "index": c.index,
            "height": str(c.height),
            "circumference": str(c.circumference),
            "modulus": str(c.modulus),
            "approx": {
                "height": to_decimal(c.height, digits),
                "circumference": to_decimal(c.circumference, digits),
                "modulus": to_decimal(c.modulus, digits),
            },
        }
        for c in dec.cylinders
    ]
