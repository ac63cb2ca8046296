"""Exact arithmetic in real quadratic fields Q(sqrt(D)).

Elements are stored as ``a + b*sqrt(D)`` with rational ``a``, ``b`` and a
square-free radicand ``D``.  ``D == 1`` denotes the rational field; its
elements always have ``b == 0``.  Rational elements (``b == 0``) embed in every
field, so they combine freely with elements of any radicand.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = [
    "QuadExt",
    "LadderParams",
    "RadicandMismatch",
    "InvalidParameters",
    "squarefree_split",
    "sign",
    "sqrt_exact",
    "solve_lambda",
    "to_decimal",
    "parse_quadext",
]


class RadicandMismatch(ValueError):
    pass


class InvalidParameters(ValueError):
    pass


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s*s*f`` and ``f`` square-free."""
    if n <= 0:
        raise ValueError(f"radicand must be positive, got {n}")
    s, f = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            f *= p
        p += 1 if p == 2 else 2
    return s, f * n


def _coerce(x) -> "QuadExt":
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return _raw(Fraction(x), Fraction(0), 1)
    raise TypeError(f"cannot coerce {type(x).__name__} to QuadExt")


def _raw(a: Fraction, b: Fraction, D: int) -> "QuadExt":
    # D already square-free; skips normalization
    x = object.__new__(QuadExt)
    object.__setattr__(x, "a", a)
    object.__setattr__(x, "b", b)
    object.__setattr__(x, "D", D)
    return x


def _common_radicand(x: "QuadExt", y: "QuadExt") -> int:
    if x.D == y.D:
        return x.D
    if x.b == 0:
        return y.D
    if y.b == 0:
        return x.D
    raise RadicandMismatch(f"sqrt({x.D}) and sqrt({y.D}) live in different fields")


class QuadExt:
    """An element ``a + b*sqrt(D)`` of a real quadratic field."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a=0, b=0, D: int = 1):
        a = Fraction(a)
        b = Fraction(b)
        D = int(D)
        if b != 0 or D != 1:
            s, D = squarefree_split(D)
            b *= s
            if D == 1:
                a, b = a + b, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def sqrt(cls, D: int) -> "QuadExt":
        return cls(0, 1, D)

    def with_radicand(self, D: int) -> "QuadExt":
        if self.b != 0 and self.D != D:
            raise RadicandMismatch(f"cannot move sqrt({self.D}) into Q(sqrt({D}))")
        return QuadExt(self.a, 0, D) if self.b == 0 else self

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _raw(self.a + other.a, self.b + other.b, _common_radicand(self, other))

    __radd__ = __add__

    def __neg__(self):
        return _raw(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _raw(self.a - other.a, self.b - other.b, _common_radicand(self, other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        D = _common_radicand(self, other)
        a = self.a * other.a + D * self.b * other.b
        b = self.a * other.b + self.b * other.a
        return _raw(a, b, D)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return _raw(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = _raw(Fraction(1), Fraction(0), self.D)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order ---------------------------------------------------------------

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # mixed signs: compare a^2 with D*b^2
        lhs = self.a * self.a
        rhs = self.D * self.b * self.b
        return sa if lhs > rhs else sb

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.a == other.a and self.b == other.b and self.D == other.D
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    # -- rounding ------------------------------------------------------------

    def _scaled(self) -> tuple[int, int, int]:
        """Integers ``(p, q, r)`` with ``self == (p + q*sqrt(D)) / r`` and ``r > 0``."""
        r = math.lcm(self.a.denominator, self.b.denominator)
        return int(self.a * r), int(self.b * r), r

    def __floor__(self) -> int:
        if self.b == 0:
            return math.floor(self.a)
        p, q, r = self._scaled()
        root = math.isqrt(q * q * self.D)
        # q*sqrt(D) is irrational, so the ceiling case never hits an exact square
        fq = root if q > 0 else -root - 1
        return (p + fq) // r

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def __float__(self):
        if self.b == 0:
            return float(self.a)
        return float(self.a) + float(self.b) * math.sqrt(self.D)

    # -- text ----------------------------------------------------------------

    def __repr__(self):
        return f"QuadExt({self})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        tail = f"{abs(self.b)}*sqrt({self.D})"
        if self.a == 0:
            return tail if self.b > 0 else f"-{tail}"
        op = "+" if self.b > 0 else "-"
        return f"{self.a} {op} {tail}"

    def pretty(self) -> str:
        """Common-denominator form, e.g. ``(-1 + sqrt(5))/2``."""
        if self.b == 0:
            return str(self.a)
        p, q, r = self._scaled()
        g = math.gcd(p, q, r)
        p, q, r = p // g, q // g, r // g
        root = f"sqrt({self.D})" if abs(q) == 1 else f"{abs(q)}*sqrt({self.D})"
        if p == 0:
            num = root if q > 0 else f"-{root}"
        else:
            num = f"{p} {'+' if q > 0 else '-'} {root}"
        if r == 1:
            return num
        return f"({num})/{r}" if p != 0 or q < 0 else f"{num}/{r}"

    def to_json(self) -> dict:
        return {
            "a": [self.a.numerator, self.a.denominator],
            "b": [self.b.numerator, self.b.denominator],
            "D": self.D,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QuadExt":
        return cls(Fraction(*obj["a"]), Fraction(*obj["b"]), obj["D"])


def sign(x) -> int:
    return _coerce(x).sign()


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_exact(x) -> QuadExt | None:
    """Non-negative square root of ``x`` inside its own field, or ``None``."""
    x = _coerce(x)
    if x.sign() < 0:
        return None
    if x.b == 0:
        r = _rational_sqrt(x.a)
        if r is not None:
            return QuadExt(r, 0, x.D)
        if x.D > 1:
            r = _rational_sqrt(x.a / x.D)
            if r is not None:
                return QuadExt(0, r, x.D)
        return None
    n = _rational_sqrt(x.norm())
    if n is None:
        return None
    for cand in ((x.a + n) / 2, (x.a - n) / 2):
        p = _rational_sqrt(cand)
        if p:
            root = QuadExt(p, x.b / (2 * p), x.D)
            if root.sign() < 0:
                root = -root
            if root * root == x:
                return root
    return None


def to_decimal(x, digits: int) -> str:
    """Decimal expansion of ``x`` truncated (toward zero) to ``digits`` places."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    x = _coerce(x)
    neg = x.sign() < 0
    scaled = math.floor(abs(x) * 10**digits)
    whole, frac = divmod(scaled, 10**digits)
    text = f"{whole}.{frac:0{digits}d}"
    return f"-{text}" if neg and scaled else text


@dataclass(frozen=True)
class LadderParams:
    k: int
    l: int
    lam: QuadExt

    @property
    def radicand(self) -> int:
        return self.lam.D

    @property
    def shear(self) -> QuadExt:
        """Translation length ``k(1 + lambda)`` of the horizontal multi-twist."""
        return self.k * (1 + self.lam)

    def residual(self) -> QuadExt:
        lam = self.lam
        return self.k * (lam + 1) - self.l * (lam.inverse() + 1 + lam)


def solve_lambda(k: int, l: int) -> LadderParams:
    """Positive root of ``k(x + 1) = l(1/x + 1 + x)``, required to lie in (0, 1)."""
    if not (isinstance(k, int) and isinstance(l, int)):
        raise InvalidParameters("k and l must be integers")
    if not k > l > 0:
        raise InvalidParameters(f"need k > l > 0, got k={k}, l={l}")
    if math.gcd(k, l) != 1:
        raise InvalidParameters(f"k={k} and l={l} are not coprime")
    d = k - l
    # (k-l) x^2 + (k-l) x - l = 0
    lam = QuadExt(Fraction(-1, 2), Fraction(1, 2 * d), d * (k + 3 * l))
    if not (0 < lam < 1):
        raise InvalidParameters(
            f"lambda_{{{k},{l}}} = {lam.pretty()} is not in (0, 1); needs 2k > 3l"
        )
    params = LadderParams(k, l, lam)
    assert d * lam * lam + d * lam - l == 0
    assert params.residual() == 0
    return params


# -- parsing -----------------------------------------------------------------

_BINOPS = {
    ast.Add: lambda x, y: x + y,
    ast.Sub: lambda x, y: x - y,
    ast.Mult: lambda x, y: x * y,
    ast.Div: lambda x, y: x / y,
}


def parse_quadext(text: str, lam: QuadExt | None = None) -> QuadExt:
    """Parse an exact field expression such as ``-1/2 + 1/2*sqrt(5)``.

    Accepts integers, ``+ - * /``, ``^`` or ``**`` with integer exponents,
    parentheses, ``sqrt(n)`` for a positive integer ``n`` and, when ``lam`` is
    given, the symbol ``lambda`` (or ``λ``).
    """
    src = text.strip().replace("^", "**").replace("lambda", "λ").replace("√", "sqrt")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse field element {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return QuadExt(node.value)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = ev(node.right)
                if not exp.is_integer():
                    raise ValueError("exponents must be integers")
                return ev(node.left) ** int(exp.a)
            if type(node.op) in _BINOPS:
                return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return -ev(node.operand)
            if isinstance(node.op, ast.UAdd):
                return ev(node.operand)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            if node.func.id == "sqrt" and len(node.args) == 1:
                arg = ev(node.args[0])
                if not arg.is_integer() or arg.a <= 0:
                    raise ValueError("sqrt() takes a positive integer")
                return QuadExt.sqrt(int(arg.a))
        if isinstance(node, ast.Name) and node.id == "λ":
            if lam is None:
                raise ValueError("lambda used without a ladder parameter")
            return lam
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)
