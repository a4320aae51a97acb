"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algebra import weighted_degree
from .errors import LengthExceeded, ParseError, SolvresError, StepCapExceeded, ValidationError
from .groebner import DEFAULT_STEP_CAP, buchberger
from .minimal import minimal_standard_basis, minimize_presentation
from .module import filtered_degree
from .resolution import minimal_filtered_resolution, verify_resolution
from .textio import (
    format_algebra,
    format_matrix_rows,
    parse_algebra_file,
    parse_module_file,
    parse_polynomial,
    format_resolution,
    parse_resolution,
)
from .transfer import assoc_graded_algebra, rees_algebra

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


class CheckFailed(Exception):
    """Raised by a command whose mathematical check did not pass."""

    def __init__(self, text: str):
        super().__init__(text)
        self.text = text


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_algebra(path: str, validate: bool = True):
    text = _read(path)
    try:
        return parse_algebra_file(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _load_module(path: str, algebra):
    try:
        return parse_module_file(_read(path), algebra)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _require_gens(mf):
    if not mf.gens:
        raise ParseError(f"module {mf.name} declares no generators")
    return [g for g in mf.gens if g]


def cmd_validate(args) -> str:
    text = _read(args.algebra)
    try:
        alg = parse_algebra_file(text)
    except ValidationError as exc:
        raise CheckFailed("rejected\n" + "\n".join(f"  {v}" for v in exc.violations) + "\n")
    out = [f"algebra {alg.name}: ok"]
    if args.module:
        mf = _load_module(args.module, alg)
        out.append(f"module {mf.name}: ok ({len(mf.gens)} generators)")
    return "\n".join(out) + "\n"


def cmd_mul(args) -> str:
    alg = _load_algebra(args.algebra)
    f = parse_polynomial(alg, args.f)
    g = parse_polynomial(alg, args.g)
    return f"{f * g}\n"


def cmd_degree(args) -> str:
    alg = _load_algebra(args.algebra)
    f = parse_polynomial(alg, args.f)
    if not f:
        raise ParseError("the zero polynomial has no degree")
    return f"{weighted_degree(alg, f)}\n"


def _basis_lines(module, basis, with_degree=False) -> list:
    if not basis:
        return ["basis: (empty)"]
    lines = ["basis:"]
    for k, g in enumerate(basis, 1):
        tail = f"  [degree {filtered_degree(module, g)}]" if with_degree else ""
        lines.append(f"  g{k} = {g}{tail}")
    return lines


def cmd_gb(args) -> str:
    alg = _load_algebra(args.algebra)
    mf = _load_module(args.module, alg)
    gens = _require_gens(mf)
    rec = buchberger(mf.module, gens, step_cap=args.step_cap, track=args.track)
    if args.track:
        lines = _basis_lines(mf.module, rec.basis)
        lines.append(f"U: {len(rec.U_matrix)} x {len(rec.basis)} matrix")
        lines += format_matrix_rows(rec.U_matrix)
        lines.append(f"V: {len(rec.V_matrix)} x {len(rec.inputs)} matrix")
        lines += format_matrix_rows(rec.V_matrix)
        lines.append(f"seeds: {len(rec.syzygy_seeds)}")
        for s in rec.syzygy_seeds:
            q = " | ".join(str(p) for p in s.quotients)
            lines.append(f"  pair {s.i + 1} {s.j + 1}: {q}")
    else:
        lines = _basis_lines(mf.module, rec.reduced_basis)
    return "\n".join(lines) + "\n"


def cmd_stdbasis(args) -> str:
    alg = _load_algebra(args.algebra)
    mf = _load_module(args.module, alg)
    gens = _require_gens(mf)
    if args.minimal:
        W = minimal_standard_basis(mf.module, gens, step_cap=args.step_cap)
    else:
        W = buchberger(mf.module, gens, step_cap=args.step_cap, track=False).reduced_basis
    return "\n".join(_basis_lines(mf.module, W, with_degree=True)) + "\n"


def cmd_present(args) -> str:
    alg = _load_algebra(args.algebra)
    mf = _load_module(args.module, alg)
    gens = _require_gens(mf)
    G = buchberger(mf.module, gens, step_cap=args.step_cap, track=False).reduced_basis if gens else []
    if args.minimal:
        pres = minimize_presentation(mf.module, G)
        retained, rels = pres.retained_components, pres.reduced_relations
    else:
        retained, rels = list(range(mf.module.rank)), G
    comps = " ".join(f"e{c + 1}" for c in retained) or "(none)"
    lines = [f"retained: {comps}"]
    if rels:
        lines.append("relations:")
        lines += [f"  v{k} = {v}" for k, v in enumerate(rels, 1)]
    else:
        lines.append("relations: (empty)")
    return "\n".join(lines) + "\n"


def cmd_graded(args) -> str:
    return format_algebra(assoc_graded_algebra(_load_algebra(args.algebra)))


def cmd_rees(args) -> str:
    return format_algebra(rees_algebra(_load_algebra(args.algebra)))


def _report_lines(report) -> list:
    return [f"{c.name}: {'pass' if c.passed else 'FAIL'} ({c.detail})" for c in report.checks]


def cmd_resolve(args) -> str:
    alg = _load_algebra(args.algebra)
    mf = _load_module(args.module, alg)
    if not mf.module.ordering.is_graded():
        raise ParseError("resolve needs a graded module ordering ('modorder ... graded')")
    R = minimal_filtered_resolution(
        mf.module, mf.gens, max_length=args.max_length, step_cap=args.step_cap, module_name=mf.name
    )
    text = format_resolution(R)
    if not R.report.passed:
        raise CheckFailed(text + "\n".join(_report_lines(R.report)) + "\n")
    return text


def cmd_verify(args) -> str:
    alg = _load_algebra(args.algebra)
    try:
        R = parse_resolution(_read(args.resolution), alg)
    except ParseError as exc:
        raise ParseError(f"{args.resolution}: {exc}") from None
    report = verify_resolution(R, step_cap=args.step_cap)
    text = "\n".join(_report_lines(report)) + "\n"
    if not report.passed:
        raise CheckFailed(text + "failed: " + ", ".join(report.failing()) + "\n")
    return text + "verified\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="solvres", description="Groebner bases and minimal filtered free resolutions over solvable polynomial algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--step-cap", type=int, default=DEFAULT_STEP_CAP, help="maximum S-pair treatments per completion")
    common.add_argument("--out", help="write output to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check an algebra (and optionally a module) file")
    s.add_argument("algebra")
    s.add_argument("module", nargs="?")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("mul", parents=[common], help="multiply two polynomials")
    s.add_argument("algebra")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(func=cmd_mul)

    s = sub.add_parser("degree", parents=[common], help="weighted degree of a polynomial")
    s.add_argument("algebra")
    s.add_argument("f")
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("gb", parents=[common], help="left Groebner basis of a submodule")
    s.add_argument("algebra")
    s.add_argument("module")
    s.add_argument("--track", action="store_true", help="print the raw basis with U/V matrices and S-pair reductions")
    s.set_defaults(func=cmd_gb)

    s = sub.add_parser("stdbasis", parents=[common], help="standard basis with filtered degrees")
    s.add_argument("algebra")
    s.add_argument("module")
    s.add_argument("--minimal", action="store_true")
    s.set_defaults(func=cmd_stdbasis)

    s = sub.add_parser("present", parents=[common], help="presentation of the quotient module")
    s.add_argument("algebra")
    s.add_argument("module")
    s.add_argument("--minimal", action="store_true")
    s.set_defaults(func=cmd_present)

    s = sub.add_parser("graded", parents=[common], help="associated graded algebra")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_graded)

    s = sub.add_parser("rees", parents=[common], help="Rees algebra")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_rees)

    s = sub.add_parser("resolve", parents=[common], help="minimal filtered free resolution of the quotient")
    s.add_argument("algebra")
    s.add_argument("module")
    s.add_argument("--max-length", type=int, default=None, help="longest resolution allowed (default: generator count)")
    s.set_defaults(func=cmd_resolve)

    s = sub.add_parser("verify", parents=[common], help="verify a resolution file")
    s.add_argument("algebra")
    s.add_argument("resolution")
    s.set_defaults(func=cmd_verify)
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "step_cap", 1) < 1:
        sys.stderr.write("error: --step-cap must be positive\n")
        return EXIT_INPUT
    try:
        text = args.func(args)
    except CheckFailed as exc:
        _emit(exc.text, getattr(args, "out", None))
        return EXIT_CHECK
    except (StepCapExceeded, LengthExceeded) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CHECK
    except (SolvresError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    _emit(text, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
