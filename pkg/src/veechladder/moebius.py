"""2x2 matrices over a real quadratic field acting on the upper half plane.

:class:`MoebiusElement` is a PSL(2) element: determinant one, stored with a
canonical sign so equality and hashing are coefficient-wise.  Raw matrices
(arbitrary determinant) are plain 4-tuples ``(a, b, c, d)`` and are handled by
:func:`matmul` and :func:`matinv`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction

from .numeric import QuadExt, parse_quadext, sqrt_exact

__all__ = [
    "INF",
    "Infinity",
    "HalfPlanePoint",
    "EllipticFixedPoint",
    "QuadraticRoots",
    "MoebiusElement",
    "ElementClass",
    "Kind",
    "VERTICAL",
    "NotParabolic",
    "matmul",
    "matinv",
    "conjugate",
    "classify",
    "fixed_points",
    "eigen_slope",
    "apply",
    "hexagon_conjugation_identity",
    "parse_matrix",
    "SHEAR_SCALE",
    "ROTATION_120",
    "REFLECTION",
    "MINUS_IDENTITY",
]


class Infinity:
    """The point at infinity of the boundary of the upper half plane."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    __str__ = __repr__


INF = Infinity()


class _Vertical:
    def __repr__(self):
        return "VERTICAL"


#: eigen slope of a parabolic whose eigen direction is the y-axis
VERTICAL = _Vertical()


class NotParabolic(ValueError):
    pass


@dataclass(frozen=True)
class HalfPlanePoint:
    re: QuadExt
    im: QuadExt

    def __post_init__(self):
        object.__setattr__(self, "re", QuadExt(0) + self.re)
        object.__setattr__(self, "im", QuadExt(0) + self.im)
        if self.im.sign() <= 0:
            raise ValueError(f"imaginary part must be positive, got {self.im}")

    def abs2(self) -> QuadExt:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        return f"({self.re}) + ({self.im})*i"


@dataclass(frozen=True)
class EllipticFixedPoint:
    """Interior fixed point ``re + i*sqrt(im_squared)`` when the root leaves the field."""

    re: QuadExt
    im_squared: QuadExt

    @property
    def poly(self) -> tuple[QuadExt, QuadExt, QuadExt]:
        """Coefficients of the monic quadratic ``z^2 + p z + q`` the point satisfies."""
        return QuadExt(1), -2 * self.re, self.re * self.re + self.im_squared

    def __complex__(self):
        return complex(float(self.re), float(self.im_squared) ** 0.5)


@dataclass(frozen=True)
class QuadraticRoots:
    """The two real roots of ``c z^2 + (d - a) z - b = 0`` outside the field."""

    a2: QuadExt
    a1: QuadExt
    a0: QuadExt


# -- raw matrices ----------------------------------------------------------

def matmul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def matinv(m):
    a, b, c, d = m
    det = a * d - b * c
    if det == 0:
        raise ZeroDivisionError("singular matrix")
    return (d / det, -b / det, -c / det, a / det)


def _q(x) -> QuadExt:
    return x if isinstance(x, QuadExt) else QuadExt(x)


class MoebiusElement:
    """A PSL(2) element with canonical sign (first nonzero entry positive)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        a, b, c, d = _q(a), _q(b), _q(c), _q(d)
        det = a * d - b * c
        if det != 1:
            if det.sign() <= 0:
                raise ValueError(f"determinant {det} is not positive")
            field_d = max(x.D for x in (a, b, c, d))
            root = sqrt_exact(det.with_radicand(field_d) if det.is_rational() else det)
            if root is None:
                raise ValueError(f"determinant {det} has no square root in the field")
            a, b, c, d = a / root, b / root, c / root, d / root
        first = next(x for x in (a, b, c, d) if x)
        if first.sign() < 0:
            a, b, c, d = -a, -b, -c, -d
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("MoebiusElement is immutable")

    @classmethod
    def identity(cls) -> "MoebiusElement":
        return cls(1, 0, 0, 1)

    @property
    def matrix(self):
        return (self.a, self.b, self.c, self.d)

    def __iter__(self):
        return iter(self.matrix)

    @property
    def radicand(self) -> int:
        return max(x.D for x in self.matrix)

    def det(self) -> QuadExt:
        return self.a * self.d - self.b * self.c

    def trace(self) -> QuadExt:
        return self.a + self.d

    def is_identity(self) -> bool:
        return self.matrix == (1, 0, 0, 1)

    @classmethod
    def _unimodular(cls, a, b, c, d) -> "MoebiusElement":
        # entries already have determinant one; only fix the sign
        first = a if a else (b if b else c)
        if first.sign() < 0:
            a, b, c, d = -a, -b, -c, -d
        m = object.__new__(cls)
        for name, x in zip("abcd", (a, b, c, d)):
            object.__setattr__(m, name, x)
        return m

    def __mul__(self, other):
        if not isinstance(other, MoebiusElement):
            return NotImplemented
        return MoebiusElement._unimodular(*matmul(self.matrix, other.matrix))

    def inverse(self) -> "MoebiusElement":
        return MoebiusElement._unimodular(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "MoebiusElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = MoebiusElement.identity()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MoebiusElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __call__(self, z):
        return apply(self, z)

    def __repr__(self):
        return "MoebiusElement({}, {}, {}, {})".format(*self.matrix)

    def __str__(self):
        return "[{}, {}; {}, {}]".format(*self.matrix)

    def to_json(self) -> dict:
        return {
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "c": self.c.to_json(),
            "d": self.d.to_json(),
            "D": self.radicand,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MoebiusElement":
        return cls(*(QuadExt.from_json(obj[key]) for key in "abcd"))


def conjugate(m: MoebiusElement, g) -> MoebiusElement:
    """``g m g^-1``; ``g`` may be a raw matrix of determinant -1."""
    g = tuple(_q(x) for x in g)
    return MoebiusElement(*matmul(matmul(g, m.matrix), matinv(g)))


# -- classification ----------------------------------------------------------

class Kind(enum.Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class ElementClass:
    kind: Kind
    order: int | None
    trace: QuadExt


def classify(m: MoebiusElement, max_order: int = 12) -> ElementClass:
    tr = m.trace()
    if m.is_identity():
        return ElementClass(Kind.IDENTITY, 1, tr)
    s = (tr * tr - 4).sign()
    if s > 0:
        return ElementClass(Kind.HYPERBOLIC, None, tr)
    if s == 0:
        return ElementClass(Kind.PARABOLIC, None, tr)
    order = None
    power = m
    for n in range(2, max_order + 1):
        power = power * m
        if power.is_identity():
            order = n
            break
    return ElementClass(Kind.ELLIPTIC, order, tr)


def fixed_points(m: MoebiusElement) -> list:
    """Fixed points in the closed upper half plane.

    Boundary points are ``QuadExt`` or :data:`INF`.  Interior or boundary roots
    that need a square root outside the field come back as
    :class:`EllipticFixedPoint` or :class:`QuadraticRoots`.
    """
    kind = classify(m).kind
    if kind is Kind.IDENTITY:
        raise ValueError("the identity fixes every point")
    a, b, c, d = m.matrix
    if c == 0:
        # z -> (a z + b)/d
        return [INF] if kind is Kind.PARABOLIC else [INF, b / (d - a)]
    centre = (a - d) / (2 * c)
    if kind is Kind.PARABOLIC:
        return [centre]
    disc = m.trace() ** 2 - 4
    if kind is Kind.HYPERBOLIC:
        root = sqrt_exact(disc)
        if root is None:
            return [QuadraticRoots(c, d - a, -b)]
        off = root / (2 * c)
        return sorted([centre - off, centre + off])
    im2 = -disc / (4 * c * c)
    im = sqrt_exact(im2)
    if im is None:
        return [EllipticFixedPoint(centre, im2)]
    return [HalfPlanePoint(centre, im)]


def eigen_slope(m: MoebiusElement):
    """Slope ``y/x`` of the eigen direction of a parabolic, or :data:`VERTICAL`."""
    if classify(m).kind is not Kind.PARABOLIC:
        raise NotParabolic(f"{m} is not parabolic")
    a, b, c, d = m.matrix
    if m.trace() < 0:
        a, b, c, d = -a, -b, -c, -d
    # kernel of (M - I): (a-1) x + b y = 0, c x + (d-1) y = 0
    if b != 0:
        return -(a - 1) / b
    return VERTICAL


def apply(m: MoebiusElement, z):
    a, b, c, d = m.matrix
    if isinstance(z, HalfPlanePoint):
        x, y = z.re, z.im
        den = (c * x + d) ** 2 + c * c * y * y
        re = ((a * x + b) * (c * x + d) + a * c * y * y) / den
        return HalfPlanePoint(re, y / den)
    if z is INF:
        return INF if c == 0 else a / c
    z = _q(z)
    den = c * z + d
    if den == 0:
        return INF
    return (a * z + b) / den


# -- constants -----------------------------------------------------------------

_SQRT3 = QuadExt.sqrt(3)
_HALF = Fraction(1, 2)

#: shear combined with a scaling, taking the ladder to the hexagon picture
SHEAR_SCALE = (QuadExt(1), QuadExt(_HALF), QuadExt(0), _SQRT3 / 2)
#: rotation by 2pi/3
ROTATION_120 = (QuadExt(-_HALF), -_SQRT3 / 2, _SQRT3 / 2, QuadExt(-_HALF))
#: orientation-reversing symmetry of the ladder (swap of coordinates)
REFLECTION = (QuadExt(0), QuadExt(1), QuadExt(1), QuadExt(0))
#: -I, which is not in the Veech group in SL(2); PSL identifies it with I
MINUS_IDENTITY = (QuadExt(-1), QuadExt(0), QuadExt(0), QuadExt(-1))


def hexagon_conjugation_identity(
    shear=SHEAR_SCALE, rotation=ROTATION_120, expected=(-1, -1, 1, 0)
) -> bool:
    """Check ``shear^-1 * rotation * shear == expected`` exactly in Q(sqrt(3))."""
    shear = tuple(_q(x) for x in shear)
    rotation = tuple(_q(x) for x in rotation)
    product = matmul(matmul(matinv(shear), rotation), shear)
    return product == tuple(_q(x) for x in expected)


# -- parsing -------------------------------------------------------------------

_SPACED_OP = re.compile(r"\s+([+\-])\s+")
_TIGHT_OP = re.compile(r"\s*([*/^])\s*")


def parse_matrix(text: str, lam: QuadExt | None = None) -> MoebiusElement:
    """Parse four entries ``"a b c d"`` (or comma separated) into an element.

    Binary ``+``/``-`` must be surrounded by spaces when entries are separated
    by whitespace, so ``"1 -1 0 1"`` reads as four entries.
    """
    if "," in text or ";" in text:
        parts = [p for p in re.split(r"[,;]", text) if p.strip()]
    else:
        squeezed = _TIGHT_OP.sub(r"\1", _SPACED_OP.sub(r"\1", text.strip()))
        parts = squeezed.split()
    if len(parts) != 4:
        raise ValueError(f"expected 4 matrix entries, got {len(parts)} in {text!r}")
    return MoebiusElement(*(parse_quadext(p, lam) for p in parts))
