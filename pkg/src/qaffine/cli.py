"""Command-line interface.

Exit codes: 0 success, 1 a validation/verification/classification check
failed, 2 usage error (argparse), 3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .classify import ClassificationError, diagnose_basic, eight_pieces, extract_system, twist
from .construction import ConstructionError, construct_module
from .linalg import QParam, format_scalar, parse_scalar
from .relations import check_hat_relations
from .serialize import (
    FormatError,
    parse_module,
    parse_system,
    report_to_json,
    serialize_module,
    serialize_system,
    trace_to_json,
    write_json,
)
from .sl2 import DecompositionFailure, decompose_irreducibles, render_tags, restrict_to_sl2
from .system import AssumptionError, gen_evaluation, validate_assumptions

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    q: str = "2"
    check_level: str = "full"
    input: str | None = None
    output: str | None = None

    def qparam(self) -> QParam:
        return QParam(parse_scalar(self.q))

    @property
    def full_checks(self) -> bool:
        return self.check_level == "full"


def _sign(text: str) -> int:
    v = int(text)
    if v not in (1, -1):
        raise argparse.ArgumentTypeError("sign must be +1 or -1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qaffine", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the admission clauses of a system file")
    s.add_argument("system")
    s.add_argument("--report", help="also write the report as JSON")

    s = sub.add_parser("construct", help="build the module of a system")
    s.add_argument("system")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--trace", help="write every intermediate to this file")
    s.add_argument("--check-level", choices=("full", "fast"), default="full")

    s = sub.add_parser("verify", help="check the defining relations of a module file")
    s.add_argument("module")
    s.add_argument("--report", help="also write the report as JSON")

    s = sub.add_parser("classify", help="decide whether a module is basic")
    s.add_argument("module")

    s = sub.add_parser("extract", help="recover the system of a basic module")
    s.add_argument("module")
    s.add_argument("-o", "--output", required=True)

    s = sub.add_parser("pieces", help="split a module into its eight pieces")
    s.add_argument("module")
    s.add_argument("-o", "--output", required=True, help="output directory")

    s = sub.add_parser("twist", help="twist a module by a sign automorphism")
    s.add_argument("module")
    s.add_argument("--eps0", type=_sign, required=True)
    s.add_argument("--eps1", type=_sign, required=True)
    s.add_argument("-o", "--output", required=True)

    s = sub.add_parser("generate", help="write a generated system")
    s.add_argument("kind", choices=("eval",))
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--q", default="2")
    s.add_argument("-o", "--output", required=True)

    s = sub.add_parser("decompose-sl2", help="irreducible U_q(sl2) summands of a restriction")
    s.add_argument("module")
    s.add_argument("--i", type=int, choices=(0, 1), required=True)

    sub.add_parser("selfcheck", help="run the built-in acceptance suite")
    return p


def _cmd_validate(args) -> int:
    sys_ = parse_system(args.system, check=False)
    report = validate_assumptions(sys_)
    print(report.render())
    if args.report:
        write_json(report_to_json(report), args.report)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_construct(args) -> int:
    cfg = RunConfig(check_level=args.check_level, input=args.system, output=args.output)
    try:
        sys_ = parse_system(cfg.input)
    except AssumptionError as exc:
        print(exc.report.render())
        print(f"invalid system: {exc}")
        return EXIT_FAIL
    try:
        module, trace = construct_module(sys_, check=cfg.full_checks)
    except ConstructionError as exc:
        print(f"construction failed: {exc}")
        return EXIT_FAIL
    serialize_module(module, cfg.output)
    if args.trace:
        write_json(trace_to_json(trace, sys_.q), args.trace)
    print(f"constructed module: dim={module.dim} d={sys_.d} rho={list(trace.rho)}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = check_hat_relations(parse_module(args.module))
    print(report.render())
    if args.report:
        write_json(report_to_json(report), args.report)
    if not report.passed:
        print(f"FAIL: {report.first_failure().name}")
        return EXIT_FAIL
    return EXIT_OK


def _cmd_classify(args) -> int:
    d, reason = diagnose_basic(parse_module(args.module))
    if d is None:
        print(f"not basic: {reason}")
        return EXIT_FAIL
    print(f"basic d={d}")
    return EXIT_OK


def _cmd_extract(args) -> int:
    try:
        sys_ = extract_system(parse_module(args.module))
    except (ClassificationError, AssumptionError) as exc:
        print(str(exc))
        return EXIT_FAIL
    serialize_system(sys_, args.output)
    print(f"extracted system: dim={sys_.dim} d={sys_.d}")
    return EXIT_OK


def _cmd_pieces(args) -> int:
    m = parse_module(args.module)
    try:
        pd = eight_pieces(m)
    except ClassificationError as exc:
        print(f"cannot split: {exc}")
        return EXIT_FAIL
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {"q": format_scalar(m.q.value), "dim": m.dim, "pieces": []}
    for key in sorted(pd.pieces, key=lambda k: k.label):
        dim = pd.pieces[key].dim
        entry = {"key": key.label, "epsilon0": key.epsilon0, "epsilon1": key.epsilon1,
                 "parity": key.parity, "dim": dim}
        if dim:
            entry["file"] = f"{key.label}.json"
            serialize_module(pd.piece_module(key), out / entry["file"])
        manifest["pieces"].append(entry)
        print(f"{key.label} dim={dim}")
    write_json(manifest, out / "manifest.json")
    return EXIT_OK


def _cmd_twist(args) -> int:
    serialize_module(twist(parse_module(args.module), args.eps0, args.eps1), args.output)
    return EXIT_OK


def _cmd_generate(args) -> int:
    cfg = RunConfig(q=args.q, output=args.output)
    try:
        sys_ = gen_evaluation(args.d, parse_scalar(args.a), cfg.qparam())
    except ValueError as exc:
        print(f"generate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    serialize_system(sys_, cfg.output)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    m = restrict_to_sl2(parse_module(args.module), args.i)
    try:
        tags = decompose_irreducibles(m)
    except DecompositionFailure as exc:
        print(f"cannot decompose: {exc}")
        return EXIT_FAIL
    print(render_tags(tags))
    return EXIT_OK


def _cmd_selfcheck(args) -> int:
    from .acceptance import run_all
    results = run_all()
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


COMMANDS = {
    "validate": _cmd_validate,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "classify": _cmd_classify,
    "extract": _cmd_extract,
    "pieces": _cmd_pieces,
    "twist": _cmd_twist,
    "generate": _cmd_generate,
    "decompose-sl2": _cmd_decompose,
    "selfcheck": _cmd_selfcheck,
}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        # e.g. classification with q <= 0, or a module that is not square
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run_cli())
