"""Command-line front end: ``veech-ladder <command> [options]``.

Exit codes are a stable contract: 0 success, 1 a verification check failed,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import render
from .cylinders import (
    Direction,
    NonIntegerTwist,
    NotCommensurableError,
    commensurability,
    cylinder_area,
    decompose,
    decomposition_json,
    synthesize_parabolic,
    twist_counts,
)
from .fuchsian import (
    DegenerateDomain,
    GroupWord,
    ReductionError,
    Verdict,
    build_domain,
    cusp_orbit_gap,
    generators,
    membership,
    normal_forms,
    reduce,
    boundary_parabolics,
)
from .moebius import (
    ROTATION_120,
    SHEAR_SCALE,
    HalfPlanePoint,
    MoebiusElement,
    hexagon_conjugation_identity,
    parse_matrix,
)
from .numeric import (
    InvalidParameters,
    LadderParams,
    QuadExt,
    solve_lambda,
    to_decimal,
)
from .surface import (
    accumulation_point,
    area,
    area_series,
    build_surface,
    check_rotation_symmetry,
    corner_distance_sq,
    hexagon_chart,
    singular_segments,
)

SCHEMA = "veech-ladder/1"
DEFAULT_DEPTH = 24
DEFAULT_DIGITS = 12


class UsageError(Exception):
    """Bad configuration; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    k: int = 2
    l: int = 1
    depth: int = DEFAULT_DEPTH
    digits: int = DEFAULT_DIGITS
    output: Path | None = None
    format: str = "text"
    seed: int = 0
    max_word_len: int = 8

    def validate(self) -> LadderParams:
        if self.digits < 1:
            raise UsageError("--digits must be positive")
        if self.depth < 2:
            raise UsageError("--depth must be at least 2")
        if not 0 <= self.max_word_len <= 16:
            raise UsageError("--max-word-len must lie in 0..16")
        try:
            return solve_lambda(self.k, self.l)
        except InvalidParameters as exc:
            raise UsageError(str(exc)) from exc


def _depth_limit() -> int | None:
    raw = os.environ.get("LADDER_DEPTH_LIMIT")
    if raw is None or raw == "":
        return None
    try:
        limit = int(raw)
    except ValueError:
        raise UsageError(f"LADDER_DEPTH_LIMIT must be an integer, got {raw!r}") from None
    if limit < 2:
        raise UsageError("LADDER_DEPTH_LIMIT must be at least 2")
    return limit


def _exact(x: QuadExt, digits: int) -> dict:
    return {"exact": str(x), "approx": to_decimal(x, digits)}


def _matrix_json(m: MoebiusElement) -> list[str]:
    return [str(x) for x in m.matrix]


def _emit(cfg: RunConfig, text: str, payload: dict | None = None) -> None:
    if cfg.format == "json" and payload is not None:
        text = json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True)
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        Path(cfg.output).write_text(text, encoding="utf-8")


def _quiet_domain(params: LadderParams):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_domain(params)


# -- lambda --------------------------------------------------------------------

def lambda_payload(params: LadderParams, digits: int) -> dict:
    return {
        "k": params.k,
        "l": params.l,
        "D": params.radicand,
        "lambda": {**_exact(params.lam, digits), "pretty": params.lam.pretty()},
        "residual": str(params.residual()),
    }


def cmd_lambda(cfg: RunConfig) -> int:
    params = cfg.validate()
    p = lambda_payload(params, cfg.digits)
    text = (
        f"k = {params.k}, l = {params.l}\n"
        f"D = {p['D']}\n"
        f"lambda = {p['lambda']['pretty']}\n"
        f"exact = {p['lambda']['exact']}\n"
        f"approx = {p['lambda']['approx']}\n"
        f"residual = {p['residual']}"
    )
    _emit(cfg, text, p)
    return 0


# -- cylinders -----------------------------------------------------------------

def cylinder_payload(params: LadderParams, depth: int, direction: Direction, digits: int) -> dict:
    surface = build_surface(params, depth)
    dec = decompose(surface, direction)
    out: dict = {
        "direction": direction.value,
        "cylinders": decomposition_json(dec, digits),
        "shear": _exact(params.shear, digits),
    }
    comm = commensurability(dec)
    if not comm:
        out["commensurable"] = False
        out["not_commensurable"] = {"index": comm.index, "ratio": str(comm.ratio)}
        return out
    out["commensurable"] = True
    out["m"] = _exact(comm.m, digits)
    out["multipliers"] = list(comm.multipliers)
    try:
        out["parabolic"] = _matrix_json(synthesize_parabolic(dec))
    except NotCommensurableError as exc:  # pragma: no cover - guarded above
        out["parabolic"] = None
        out["parabolic_error"] = str(exc)
    try:
        out["twist_counts"] = twist_counts(dec, params.shear)
    except NonIntegerTwist as exc:
        out["twist_counts"] = None
        out["twist_error"] = {"index": exc.index, "count": str(exc.count)}
    return out


def _cylinder_text(block: dict) -> str:
    lines = [f"[{block['direction']}]"]
    lines.append(f"{'n':>3}  {'height':<28} {'circumference':<28} modulus")
    for row in block["cylinders"]:
        lines.append(
            f"{row['index']:>3}  {row['height']:<28} {row['circumference']:<28} {row['modulus']}"
        )
    lines.append(f"shear = {block['shear']['exact']}  (approx {block['shear']['approx']})")
    if not block["commensurable"]:
        nc = block["not_commensurable"]
        lines.append(f"not commensurable: cylinder {nc['index']} ratio {nc['ratio']}")
        return "\n".join(lines)
    lines.append(f"m = {block['m']['exact']}  (approx {block['m']['approx']})")
    lines.append("multipliers = " + ", ".join(map(str, block["multipliers"])))
    lines.append("parabolic = (" + ", ".join(block["parabolic"]) + ")")
    if block["twist_counts"] is None:
        te = block["twist_error"]
        lines.append(f"twist counts: cylinder {te['index']} non-integer ({te['count']})")
    else:
        lines.append("twist counts = " + ", ".join(map(str, block["twist_counts"])))
    return "\n".join(lines)


def cmd_cylinders(cfg: RunConfig, directions: list[Direction]) -> int:
    params = cfg.validate()
    blocks = [cylinder_payload(params, cfg.depth, d, cfg.digits) for d in directions]
    text = "\n\n".join(_cylinder_text(b) for b in blocks)
    _emit(cfg, text, {"k": params.k, "l": params.l, "depth": cfg.depth, "directions": blocks})
    return 0


# -- check suite ---------------------------------------------------------------

class CheckFailed(AssertionError):
    pass


class CheckSkipped(Exception):
    pass


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise CheckFailed(what)


def _random_element(rng: random.Random, D: int) -> QuadExt:
    def frac():
        return Fraction(rng.randint(-40, 40), rng.randint(1, 12))
    return QuadExt(frac(), frac(), D)


def check_field_axioms(params: LadderParams, cfg: RunConfig) -> str:
    rng = random.Random(cfg.seed)
    D = params.radicand
    for _ in range(200):
        x, y, z = (_random_element(rng, D) for _ in range(3))
        _require((x + y) + z == x + (y + z), "additive associativity")
        _require((x * y) * z == x * (y * z), "multiplicative associativity")
        _require(x * (y + z) == x * y + x * z, "distributivity")
        _require(x * y == y * x, "commutativity")
        _require((x * y).norm() == x.norm() * y.norm(), "multiplicative norm")
        if x:
            _require(x * x.inverse() == 1, "inverse")
            _require((x * x.conjugate()).is_rational(), "norm is rational")
    return "200 random triples"


def check_lambda_residual(params: LadderParams, cfg: RunConfig) -> str:
    _require(params.residual() == 0, "defining equation")
    _require(0 < params.lam < 1, "0 < lambda < 1")
    return f"lambda = {params.lam}"


def check_conjugation_identity(params: LadderParams, cfg: RunConfig) -> str:
    _require(hexagon_conjugation_identity(SHEAR_SCALE, ROTATION_120), "shear^-1 rotation shear = R")
    return "exact in Q(sqrt(3))"


def check_boundary_matrices(params: LadderParams, cfg: RunConfig) -> str:
    try:
        pair = boundary_parabolics(params)
    except AssertionError as exc:
        raise CheckFailed(f"boundary parabolic data: {exc}") from exc
    dom = _quiet_domain(params)
    for m in pair:
        _require(membership(dom, m).verdict is Verdict.NO, f"{m} should not lie in G")
    return "det 1, trace 2, fixed points lambda^-1 and lambda, both outside G"


def check_group_relations(params: LadderParams, cfg: RunConfig) -> str:
    gens = generators(params)
    T, R = gens["T"], gens["R"]
    _require((R ** 3).is_identity(), "R^3 = id")
    power = MoebiusElement.identity()
    for n in range(1, 51):
        power = power * T
        _require(not power.is_identity(), f"T^{n} != id")
    return "R^3 = id, T^n != id for n <= 50"


def _random_word(rng: random.Random, max_len: int) -> GroupWord:
    syl = []
    budget = rng.randint(0, max_len)
    last = None
    while budget > 0:
        if last != "R" and (last == "T" or rng.random() < 0.5):
            syl.append(("R", rng.choice((1, 2))))
            budget -= 1
            last = "R"
        else:
            n = rng.randint(1, min(budget, 3))
            syl.append(("T", rng.choice((n, -n))))
            budget -= n
            last = "T"
    return GroupWord(tuple(syl))


def check_reduction(params: LadderParams, cfg: RunConfig) -> str:
    rng = random.Random(cfg.seed + 1)
    dom = _quiet_domain(params)
    gens = generators(params)
    for _ in range(200):
        re_ = Fraction(rng.randint(-4000, 4000), rng.randint(1, 97))
        im = Fraction(rng.randint(1, 500), rng.randint(1, 997))
        z = HalfPlanePoint(QuadExt(re_), QuadExt(im))
        try:
            res = reduce(dom, z)
        except ReductionError as exc:
            raise CheckFailed(str(exc)) from exc
        _require(dom.in_closure(res.point), f"{z} did not land in the domain")
        _require(res.word.evaluate(gens)(z) == res.point, f"soundness at {z}")
    for _ in range(100):
        w = _random_word(rng, 20)
        verdict = membership(dom, w.evaluate(gens))
        _require(verdict.word == w, f"round trip of {w}")
    return "200 points, 100 words"


def check_cusp_gap(params: LadderParams, cfg: RunConfig) -> str:
    dom = _quiet_domain(params)
    _require(cusp_orbit_gap(dom, cfg.max_word_len), "cusp orbit enters (lambda, 1/lambda)")
    return f"word length <= {cfg.max_word_len}"


def check_area(params: LadderParams, cfg: RunConfig) -> str:
    exact = area(params)
    lam = params.lam
    _require(exact == (1 + 2 * lam) / (1 - lam * lam), "closed form")
    _require(abs(area_series(float(lam), 200) - float(exact)) < 1e-12, "series")
    dec = decompose(build_surface(params, cfg.depth), Direction.HORIZONTAL)
    _require(cylinder_area(dec) == exact, "cylinder total")
    return f"area = {exact}"


def check_veech_synthesis(params: LadderParams, cfg: RunConfig) -> str:
    dec = decompose(build_surface(params, cfg.depth), Direction.HORIZONTAL)
    _require(synthesize_parabolic(dec) == generators(params)["T"], "multi-twist equals T")
    counts = twist_counts(dec, params.shear)
    _require(counts == [params.k] + [params.l] * (len(counts) - 1), "twist counts")
    return f"twist counts {params.k}, {params.l}, ..."


def check_segments(params: LadderParams, cfg: RunConfig) -> str:
    surface = build_surface(params, cfg.depth)
    count = min(cfg.depth - 2, 16)
    results = singular_segments(surface, 1, count)
    _require(all(ok for _, ok in results), "slope-1 unit segments leave the region")
    lam2 = params.lam * params.lam
    for n in range(count - 1):
        _require(corner_distance_sq(surface, n + 1) == lam2 * corner_distance_sq(surface, n),
                 "corner distances shrink by lambda")
    return f"{count} corners"


def check_rotation(params: LadderParams, cfg: RunConfig) -> str:
    chart = hexagon_chart(params, 6)
    _require(check_rotation_symmetry(chart), "rotation commutes with gluing")
    return "depth-6 chart"


CHECKS: list[tuple[str, Callable[[LadderParams, RunConfig], str]]] = [
    ("field-axioms", check_field_axioms),
    ("lambda-residual", check_lambda_residual),
    ("conjugation-identity", check_conjugation_identity),
    ("boundary-matrices", check_boundary_matrices),
    ("group-relations", check_group_relations),
    ("veech-synthesis", check_veech_synthesis),
    ("reduction-round-trips", check_reduction),
    ("cusp-orbit-gap", check_cusp_gap),
    ("area-identity", check_area),
    ("segment-lemma", check_segments),
    ("rotation-symmetry", check_rotation),
]


def run_checks(params: LadderParams, cfg: RunConfig, checks=None) -> list[dict]:
    verdicts = []
    for name, fn in CHECKS if checks is None else checks:
        try:
            detail = fn(params, cfg)
            verdicts.append({"name": name, "verdict": "pass", "detail": detail})
        except CheckSkipped as exc:
            verdicts.append({"name": name, "verdict": "skipped", "detail": str(exc)})
        except Exception as exc:  # a crash inside a check counts as a failure
            verdicts.append({"name": name, "verdict": "fail", "detail": f"{type(exc).__name__}: {exc}"})
    return verdicts


def cmd_check(cfg: RunConfig) -> int:
    params = cfg.validate()
    verdicts = run_checks(params, cfg)
    failed = [v for v in verdicts if v["verdict"] == "fail"]
    lines = [f"{v['verdict'].upper():<7} {v['name']}: {v['detail']}" for v in verdicts]
    if failed:
        lines.append(f"first failing check: {failed[0]['name']}")
    else:
        lines.append("all checks passed")
    _emit(cfg, "\n".join(lines), {
        "k": params.k,
        "l": params.l,
        "checks": verdicts,
        "first_failure": failed[0]["name"] if failed else None,
    })
    return 1 if failed else 0


# -- render --------------------------------------------------------------------

FIGURES = ("surface", "cylinders", "segments", "domain")


def cmd_render(cfg: RunConfig, figure: str, slope: Fraction, stroke: float) -> int:
    params = cfg.validate()
    if figure == "domain":
        try:
            svg = render.svg_domain(_quiet_domain(params), stroke)
        except DegenerateDomain as exc:
            raise UsageError(str(exc)) from exc
    else:
        surface = build_surface(params, cfg.depth)
        if figure == "surface":
            svg = render.svg_surface(surface, stroke)
        elif figure == "cylinders":
            svg = render.svg_cylinders(surface, decompose(surface, Direction.HORIZONTAL), stroke)
        else:
            lam = params.lam
            if not lam < slope < 1 / lam:
                raise UsageError(f"--slope must lie in ({lam}, 1/lambda)")
            svg = render.svg_segments(surface, slope, None, stroke)
    if cfg.output is None:
        sys.stdout.write(svg)
    else:
        Path(cfg.output).write_text(svg, encoding="utf-8")
    return 0


# -- membership ----------------------------------------------------------------

def cmd_membership(cfg: RunConfig, entries: str | None, word: str | None, trace: bool) -> int:
    params = cfg.validate()
    if (entries is None) == (word is None):
        raise UsageError("give either matrix entries or --word")
    try:
        if word is not None:
            m = GroupWord.parse(word).evaluate(generators(params))
        else:
            m = parse_matrix(entries, params.lam)
    except (ValueError, SyntaxError) as exc:
        raise UsageError(f"cannot parse input: {exc}") from exc
    if m.det() != 1:
        raise UsageError("matrix is not unimodular")
    result = membership(_quiet_domain(params), m)
    lines = [str(result)]
    if trace and result.reduction is not None:
        lines += [f"  {s['step']}: {s['re']} + ({s['im']})i" for s in result.reduction.trace_json()]
    payload = {
        "k": params.k,
        "l": params.l,
        "matrix": _matrix_json(m),
        "verdict": result.verdict.value,
        "word": None if result.word is None else str(result.word),
        "scope": result.scope,
    }
    if trace and result.reduction is not None:
        payload["trace"] = result.reduction.trace_json()
    _emit(cfg, "\n".join(lines), payload)
    return 0


# -- report --------------------------------------------------------------------

def build_report(params: LadderParams, cfg: RunConfig, with_checks: bool = True) -> dict:
    gens = generators(params)
    report = {
        "schema": SCHEMA,
        "params": {"k": params.k, "l": params.l, "depth": cfg.depth, "digits": cfg.digits},
        "lambda": lambda_payload(params, cfg.digits)["lambda"],
        "D": params.radicand,
        "area": _exact(area(params), cfg.digits),
        "cylinders": [cylinder_payload(params, cfg.depth, d, cfg.digits) for d in Direction],
        "generators": {name: _matrix_json(g) for name, g in sorted(gens.items())},
        "normal_form_counts": {str(n): sum(1 for _ in normal_forms(n)) for n in range(5)},
    }
    try:
        dom = _quiet_domain(params)
        lo, hi = dom.free_side
        report["domain"] = {
            "strip": [str(dom.strip_left), str(dom.strip_right)],
            "disk_centers": ["0", "-1"],
            "free_side": [str(lo), str(hi)],
            "outside_theorem_scope": dom.outside_theorem_scope,
        }
    except DegenerateDomain as exc:
        report["domain"] = {"error": str(exc)}
    s = accumulation_point(params)
    report["accumulation_point"] = [str(s.x), str(s.y)]
    if with_checks:
        report["checks"] = run_checks(params, cfg)
    return report


def cmd_report(cfg: RunConfig, with_checks: bool) -> int:
    params = cfg.validate()
    report = build_report(params, cfg, with_checks)
    if cfg.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True)
    else:
        lines = [
            f"ladder k={params.k} l={params.l}",
            f"lambda = {report['lambda']['pretty']}  (approx {report['lambda']['approx']})",
            f"area = {report['area']['exact']}  (approx {report['area']['approx']})",
            f"T = ({', '.join(report['generators']['T'])})",
            f"R = ({', '.join(report['generators']['R'])})",
            f"domain = {report['domain']}",
        ]
        for block in report["cylinders"]:
            if block["commensurable"]:
                lines.append(
                    f"{block['direction']}: m = {block['m']['exact']}, multipliers "
                    f"{block['multipliers'][:4]}..."
                )
        for v in report.get("checks", []):
            lines.append(f"{v['verdict'].upper():<7} {v['name']}")
        text = "\n".join(lines)
    if cfg.output is None:
        sys.stdout.write(text + "\n")
    else:
        Path(cfg.output).write_text(text + "\n", encoding="utf-8")
    failed = any(v["verdict"] == "fail" for v in report.get("checks", []))
    return 1 if failed else 0


# -- argument parsing ------------------------------------------------------------

def _slope(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational slope: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=2)
    common.add_argument("--l", type=int, default=1)
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    common.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    common.add_argument("--format", choices=("text", "json", "svg"), default=None)
    common.add_argument("--output", type=Path, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-word-len", type=int, default=8)

    parser = argparse.ArgumentParser(
        prog="veech-ladder",
        description="Exact computations on ladder translation surfaces and their Veech groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("lambda", parents=[common], help="solve for the ladder parameter")
    cyl = sub.add_parser("cylinders", parents=[common], help="cylinder tables per direction")
    cyl.add_argument("--direction", choices=[d.value for d in Direction] + ["all"], default="all")
    sub.add_parser("check", parents=[common], help="run the verification suite")
    ren = sub.add_parser("render", parents=[common], help="write an SVG figure")
    ren.add_argument("--figure", choices=FIGURES, required=True)
    ren.add_argument("--slope", type=_slope, default=Fraction(1))
    ren.add_argument("--stroke", type=float, default=0.01)
    mem = sub.add_parser("membership", parents=[common], help="decide membership in G = <R, T>")
    mem.add_argument("entries", nargs="*", help='matrix entries "a b c d" in exact syntax')
    mem.add_argument("--word", default=None, help='a word such as "R T^2 R^2"')
    mem.add_argument("--trace", action="store_true", help="print the reduction trace")
    rep = sub.add_parser("report", parents=[common], help="full report")
    rep.add_argument("--no-checks", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        depth = args.depth
        limit = _depth_limit()
        if limit is not None and depth > limit:
            print(f"depth capped at {limit} by LADDER_DEPTH_LIMIT", file=sys.stderr)
            depth = limit
        fmt = args.format or ("svg" if args.command == "render" else "text")
        if fmt == "svg" and args.command != "render":
            raise UsageError("--format svg is only available for render")
        if args.command == "render" and fmt != "svg":
            raise UsageError("render only produces svg")
        cfg = RunConfig(
            k=args.k,
            l=args.l,
            depth=depth,
            digits=args.digits,
            output=args.output,
            format=fmt,
            seed=args.seed,
            max_word_len=args.max_word_len,
        )
        if args.command == "lambda":
            return cmd_lambda(cfg)
        if args.command == "cylinders":
            dirs = list(Direction) if args.direction == "all" else [Direction(args.direction)]
            return cmd_cylinders(cfg, dirs)
        if args.command == "check":
            return cmd_check(cfg)
        if args.command == "render":
            return cmd_render(cfg, args.figure, args.slope, args.stroke)
        if args.command == "membership":
            entries = " ".join(args.entries) if args.entries else None
            return cmd_membership(cfg, entries, args.word, args.trace)
        if args.command == "report":
            return cmd_report(cfg, not args.no_checks)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser.error(f"unknown command {args.command}")  # pragma: no cover
    return 2  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
