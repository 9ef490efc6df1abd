"""Command-line front end.

Exit codes are part of the interface so shell pipelines can compare
decisions without parsing output:

* 0 / 1 — yes / no for ``validate``, ``solve``, and ``check``
* 2 — usage, parse, or contract errors
* 3 — a brute-force cap was exceeded

Every error is printed to stderr as one line starting with
``error[<code>]:`` so scripts can grep for the class of failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import abduction, defaults, planning
from .errors import ContractError, ParseError, QraiseError, ResourceLimitError
from .formulas import Var
from .harness import PrefixPattern, QbfGenSpec, check_equivalence, measure_growth
from .parsing import parse_qbf
from .qbf import qbf_valid

_PATTERNS = {
    "ea": PrefixPattern.EXISTS_FORALL,
    "ae": PrefixPattern.FORALL_EXISTS,
    "any": PrefixPattern.ARBITRARY,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qraise",
        description="Build and check QBF encodings into abduction, default logic, and planning.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", help="decide a QBF file; exit 0 valid, 1 invalid")
    validate.add_argument("qbf_file", type=Path)

    reduce_cmd = sub.add_parser("reduce", help="translate a QBF file into a target instance")
    reduce_cmd.add_argument("--target", choices=("abduction", "default", "planning"), required=True)
    reduce_cmd.add_argument("qbf_file", type=Path)
    reduce_cmd.add_argument("-o", "--output", type=Path, default=None)

    solve = sub.add_parser("solve", help="decide an instance file; exit 0 yes, 1 no")
    solve.add_argument("--target", choices=("abduction", "default", "planning"), required=True)
    solve.add_argument("instance_file", type=Path)

    check = sub.add_parser("check", help="compare a target against QBF validity in bulk")
    check.add_argument("--target", choices=("abduction", "default", "planning"), required=True)
    check.add_argument("--exhaustive", action="store_true")
    check.add_argument("--vars", type=int, default=3)
    check.add_argument("--depth", type=int, default=3)
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--pattern", choices=tuple(_PATTERNS), default=None)
    check.add_argument("--count", type=int, default=500)
    check.add_argument("--per-case", action="store_true", help="print one line per case")
    check.add_argument("--fixture-dir", type=Path, default=None)

    growth = sub.add_parser("growth", help="tabulate instance growth per raise")
    growth.add_argument("--target", choices=("abduction", "default", "planning"), required=True)
    growth.add_argument("--raises", type=int, default=5)

    return parser


def _cmd_validate(args: argparse.Namespace) -> int:
    q = parse_qbf(args.qbf_file.read_text(encoding="utf-8"))
    if qbf_valid(q):
        print("valid")
        return 0
    print("invalid")
    return 1


def _cmd_reduce(args: argparse.Namespace) -> int:
    q = parse_qbf(args.qbf_file.read_text(encoding="utf-8"))
    if args.target == "abduction":
        text = abduction.serialize_instance(abduction.reduce_qbf(q))
    elif args.target == "default":
        theory, query = defaults.reduce_qbf(q)
        text = defaults.serialize_theory(theory, query)
    else:
        text = planning.serialize_instance(planning.reduce_qbf(q))
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text, encoding="utf-8")
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    text = args.instance_file.read_text(encoding="utf-8")
    if args.target == "abduction":
        instance = abduction.parse_instance(text)
        explanations = abduction.enumerate_explanations(instance)
        if explanations:
            witness = min(sorted(s) for s in explanations)
            print(f"yes explanation={{{', '.join(witness)}}}")
            return 0
        print("no")
        return 1
    if args.target == "default":
        theory, query = defaults.parse_theory(text)
        if query is None:
            raise ContractError("theory file has no 'query:' line")
        result = defaults.skeptically_entails(theory, Var(query))
        detail = f"extensions={result.extension_count}" + (" vacuous" if result.vacuous else "")
        if result.holds:
            print(f"yes {detail}")
            return 0
        print(f"no {detail}")
        return 1
    instance = planning.parse_instance(text)
    found, plan = planning.plan_exists(instance)
    if found:
        print(f"yes plan={' '.join(plan or ())}".rstrip())
        return 0
    print("no")
    return 1


def _cmd_check(args: argparse.Namespace) -> int:
    if args.exhaustive:
        if args.pattern is not None:
            raise ContractError("--exhaustive and --pattern are mutually exclusive")
        pattern = PrefixPattern.EXHAUSTIVE
    elif args.pattern is not None:
        pattern = _PATTERNS[args.pattern]
    else:
        raise ContractError("check needs either --exhaustive or --pattern")
    spec = QbfGenSpec(
        seed=args.seed,
        num_vars=args.vars,
        prefix_pattern=pattern,
        matrix_depth=args.depth,
        count=args.count,
    )
    report = check_equivalence(
        args.target, spec, fixture_dir=args.fixture_dir, collect_cases=args.per_case
    )
    print(report.render(include_cases=args.per_case))
    if report.counterexamples:
        return 1
    if report.resource_errors:
        return 3
    return 0


def _cmd_growth(args: argparse.Namespace) -> int:
    print(measure_growth(args.target, args.raises).render())
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "validate": _cmd_validate,
        "reduce": _cmd_reduce,
        "solve": _cmd_solve,
        "check": _cmd_check,
        "growth": _cmd_growth,
    }
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        print(f"error[parse]: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"error[resource]: {exc}", file=sys.stderr)
        return 3
    except ContractError as exc:
        print(f"error[contract]: {exc}", file=sys.stderr)
        return 2
    except QraiseError as exc:
        print(f"error[internal]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
