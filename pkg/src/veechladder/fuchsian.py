"""The group G = <R, T> and its fundamental domain.

``R = (-1, -1; 1, 0)`` is elliptic of order three, ``T = (1, k(1+lam); 0, 1)``
is the horizontal multi-twist.  G is the free product <R | R^3> * <T>; a
fundamental domain is the strip ``-2 < Re z < k(1+lam) - 2`` minus the closed
unit disks about 0 and -1.  The side pairings are ``T`` (left wall to right
wall) and ``R``, which fixes ``w = (-1 + sqrt(3) i)/2`` and maps the arc of
``|z| = 1`` from ``w`` to ``1`` onto the arc of ``|z + 1| = 1`` from ``w`` to
``-2`` (``R(1) = -2``).
"""

from __future__ import annotations

import enum
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .moebius import (
    INF,
    HalfPlanePoint,
    Kind,
    MoebiusElement,
    NotParabolic,
    VERTICAL,
    classify,
    eigen_slope,
    fixed_points,
)
from .numeric import LadderParams, QuadExt

__all__ = [
    "GroupWord",
    "FundamentalDomain",
    "DegenerateDomain",
    "ReductionError",
    "ReductionResult",
    "Verdict",
    "MembershipResult",
    "R_MATRIX",
    "generators",
    "build_domain",
    "reduce",
    "membership",
    "normal_forms",
    "cusp_orbit_gap",
    "forbidden_direction_check",
    "boundary_parabolics",
    "BASE_POINT_OFFSET",
]

R_MATRIX = MoebiusElement(-1, -1, 1, 0)

#: rational offset of the base point ``2i + 1/7`` used for membership
BASE_POINT_OFFSET = Fraction(1, 7)


class DegenerateDomain(ValueError):
    pass


class ReductionError(RuntimeError):
    pass


# -- words -------------------------------------------------------------------

def _normalize(syllables) -> tuple[tuple[str, int], ...]:
    out: list[list] = []
    for letter, e in syllables:
        if letter not in ("R", "T"):
            raise ValueError(f"unknown generator {letter!r}")
        e = e % 3 if letter == "R" else e
        if e == 0:
            continue
        if out and out[-1][0] == letter:
            merged = out[-1][1] + e
            merged = merged % 3 if letter == "R" else merged
            if merged == 0:
                out.pop()
            else:
                out[-1][1] = merged
        else:
            out.append([letter, e])
    return tuple((l, e) for l, e in out)


_TOKEN = re.compile(r"([RT])(?:\^\(?(-?\d+)\)?)?")


@dataclass(frozen=True)
class GroupWord:
    """Normal form in <R | R^3> * <T>: alternating syllables ``T^n`` and ``R^e``.

    The word ``g1 g2 ... gm`` denotes the matrix product, so as a map it applies
    ``gm`` first.
    """

    syllables: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _normalize(self.syllables))

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        text = text.strip()
        if text in ("", "1", "id", "e"):
            return cls()
        syllables = []
        for tok in text.split():
            m = _TOKEN.fullmatch(tok)
            if not m:
                raise ValueError(f"bad word token {tok!r} in {text!r}")
            syllables.append((m.group(1), int(m.group(2) or 1)))
        return cls(tuple(syllables))

    def __str__(self):
        if not self.syllables:
            return "1"
        return " ".join(l if e == 1 else f"{l}^{e}" for l, e in self.syllables)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.syllables + other.syllables)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((l, -e) for l, e in reversed(self.syllables)))

    def __len__(self):
        """Length in the generators ``T, T^-1, R, R^-1``."""
        return sum(abs(e) if l == "T" else 1 for l, e in self.syllables)

    def evaluate(self, gens: dict[str, MoebiusElement]) -> MoebiusElement:
        result = MoebiusElement.identity()
        for letter, e in self.syllables:
            result = result * gens[letter] ** e
        return result


def generators(params: LadderParams) -> dict[str, MoebiusElement]:
    return {"R": R_MATRIX, "T": MoebiusElement(1, params.shear, 0, 1)}


def normal_forms(max_len: int) -> Iterator[GroupWord]:
    """All normal forms of generator length ``<= max_len``, shortest first."""
    def extend(prefix, last, budget):
        yield prefix
        if budget == 0:
            return
        if last != "R":
            for e in (1, 2):
                yield from extend(prefix + (("R", e),), "R", budget - 1)
        if last != "T":
            for n in range(1, budget + 1):
                for e in (n, -n):
                    yield from extend(prefix + (("T", e),), "T", budget - n)

    words = sorted(extend((), None, max_len), key=lambda s: (_syl_len(s), s))
    for syl in words:
        yield GroupWord(syl)


def _syl_len(syl) -> int:
    return sum(abs(e) if l == "T" else 1 for l, e in syl)


# -- fundamental domain ------------------------------------------------------

@dataclass(frozen=True)
class FundamentalDomain:
    params: LadderParams
    strip_left: QuadExt
    strip_right: QuadExt
    disk_centers: tuple[QuadExt, QuadExt] = (QuadExt(0), QuadExt(-1))
    outside_theorem_scope: bool = False

    @property
    def width(self) -> QuadExt:
        return self.strip_right - self.strip_left

    @property
    def free_side(self) -> tuple[QuadExt, QuadExt]:
        """The interval of the real axis on the boundary of the domain."""
        return QuadExt(1), self.strip_right

    def in_closure(self, z: HalfPlanePoint) -> bool:
        x = z.re
        if x < self.strip_left or x > self.strip_right:
            return False
        return all((x - c) ** 2 + z.im ** 2 >= 1 for c in self.disk_centers)

    def in_interior(self, z: HalfPlanePoint) -> bool:
        x = z.re
        if x <= self.strip_left or x >= self.strip_right:
            return False
        return all((x - c) ** 2 + z.im ** 2 > 1 for c in self.disk_centers)

    def __contains__(self, z: HalfPlanePoint) -> bool:
        return self.in_interior(z)


def build_domain(params: LadderParams) -> FundamentalDomain:
    right = params.shear - 2
    if right <= 1:
        raise DegenerateDomain(f"strip right end {right} <= 1 leaves no free side")
    off_scope = params.l != 1
    if off_scope:
        warnings.warn(
            f"l = {params.l}: G = <R, T> is not known to be the Veech group here",
            stacklevel=2,
        )
    return FundamentalDomain(params, QuadExt(-2), right, outside_theorem_scope=off_scope)


@dataclass(frozen=True)
class ReductionResult:
    word: GroupWord
    point: HalfPlanePoint
    iterations: int
    trace: tuple[tuple[str, HalfPlanePoint], ...] = field(default=(), repr=False)

    def trace_json(self) -> list[dict]:
        return [
            {"step": step, "re": str(z.re), "im": str(z.im)} for step, z in self.trace
        ]


def reduce(
    dom: FundamentalDomain,
    z: HalfPlanePoint,
    max_iter: int = 10_000,
    record: bool = False,
) -> ReductionResult:
    """Move ``z`` into the closure of the domain.

    Each round translates by a power of ``T`` into ``[-2, k(1+lam) - 2)``, then
    applies ``R`` if ``|z| < 1`` or ``R^2`` if ``|z + 1| < 1``.  Both strictly
    increase the imaginary part.  Returns ``word`` with ``word . z == point``.
    """
    gens = generators(dom.params)
    T, R, R2 = gens["T"], gens["R"], gens["R"] ** 2
    applied: list[tuple[str, int]] = []
    trace = []
    width = dom.width
    for it in range(max_iter):
        n = (z.re - dom.strip_left) / width
        n = n.__floor__()
        if n:
            z = (T ** (-n))(z)
            applied.append(("T", -n))
            if record:
                trace.append((f"T^{-n}", z))
        if z.abs2() < 1:
            step, e, g = "R", 1, R
        elif (z.re + 1) ** 2 + z.im ** 2 < 1:
            step, e, g = "R^2", 2, R2
        else:
            word = GroupWord(tuple(reversed(applied)))
            return ReductionResult(word, z, it, tuple(trace))
        w = g(z)
        if not w.im > z.im:
            raise ReductionError(f"{step} did not increase Im at {z}")
        z = w
        applied.append(("R", e))
        if record:
            trace.append((step, z))
    raise ReductionError(f"no reduction within {max_iter} iterations")


# -- membership --------------------------------------------------------------

class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class MembershipResult:
    verdict: Verdict
    word: GroupWord | None = None
    reduction: ReductionResult | None = field(default=None, repr=False)
    #: answers are about G = <R, T>; it equals the Veech group only when l == 1
    scope: str = "G-membership"

    def __bool__(self):
        return self.verdict is Verdict.YES

    def __str__(self):
        if self.verdict is Verdict.YES:
            return f"yes: {self.word}"
        return self.verdict.value


def base_point(offset: Fraction = BASE_POINT_OFFSET) -> HalfPlanePoint:
    return HalfPlanePoint(QuadExt(offset), QuadExt(2))


def membership(
    dom: FundamentalDomain, m: MoebiusElement, offset: Fraction = BASE_POINT_OFFSET
) -> MembershipResult:
    z0 = base_point(offset)
    res = reduce(dom, m(z0), record=True)
    g = res.word.evaluate(generators(dom.params))
    residue = g * m
    if residue.is_identity():
        return MembershipResult(Verdict.YES, res.word.inverse(), res)
    if res.point == z0:
        return MembershipResult(Verdict.AMBIGUOUS, None, res)
    return MembershipResult(Verdict.NO, None, res)


# -- limit set ---------------------------------------------------------------

def _orbit_matrices(gens, max_len: int):
    """Yield ``(word, matrix)`` for all normal forms of length ``<= max_len``."""
    T, Ti = gens["T"], gens["T"].inverse()
    R, R2 = gens["R"], gens["R"] ** 2

    def extend(prefix, mat, last, budget):
        yield prefix, mat
        if budget == 0:
            return
        if last != "R":
            yield from extend(prefix + (("R", 1),), mat * R, "R", budget - 1)
            yield from extend(prefix + (("R", 2),), mat * R2, "R", budget - 1)
        if last != "T":
            up, down = mat, mat
            for n in range(1, budget + 1):
                up, down = up * T, down * Ti
                yield from extend(prefix + (("T", n),), up, "T", budget - n)
                yield from extend(prefix + (("T", -n),), down, "T", budget - n)

    yield from extend((), MoebiusElement.identity(), None, max_len)


def cusp_orbit_gap(dom: FundamentalDomain, max_len: int) -> bool:
    """No image of the cusps ``inf, 0, -1`` under words of length ``<= max_len`` lies in ``(lam, 1/lam)``."""
    if max_len > 16:
        raise ValueError("max_len is capped at 16")
    lam = dom.params.lam
    hi = 1 / lam
    cusps = (INF, QuadExt(0), QuadExt(-1))
    for _, mat in _orbit_matrices(generators(dom.params), max_len):
        for c in cusps:
            x = mat(c)
            if x is not INF and lam < x < hi:
                return False
    return True


def forbidden_direction_check(params: LadderParams, m: MoebiusElement, dom: FundamentalDomain | None = None) -> bool:
    """True iff ``m`` has eigen slope in ``(lam, 1/lam)`` and is not in G."""
    slope = eigen_slope(m)  # raises NotParabolic
    lam = params.lam
    if slope is VERTICAL or not (lam < slope < 1 / lam):
        return False
    if dom is None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            dom = build_domain(params)
    return membership(dom, m).verdict is Verdict.NO


def boundary_parabolics(params: LadderParams) -> tuple[MoebiusElement, MoebiusElement]:
    """Parabolics bounding the forbidden band of slopes.

    The first fixes ``1/lam`` with eigen slope ``lam``, the second fixes ``lam``
    with eigen slope ``1/lam``.
    """
    lam = params.lam
    if not 0 < lam < 1:
        raise ValueError("lambda must lie in (0, 1)")
    p_lam = MoebiusElement(1 - lam, 1, -lam * lam, 1 + lam)
    p_inv = MoebiusElement(1 + lam, -lam * lam, 1, 1 - lam)
    for p, fixed, slope in ((p_lam, 1 / lam, lam), (p_inv, lam, 1 / lam)):
        assert p.det() == 1 and p.trace() == 2
        assert classify(p).kind is Kind.PARABOLIC
        assert fixed_points(p) == [fixed]
        assert eigen_slope(p) == slope
    return p_lam, p_inv
