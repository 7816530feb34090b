"""Command-line front end.

Subcommands
-----------

``validate <file>``
    Load a JSON model document and run every validator on the algebras,
    the surface labeling, and the induced vertex-local structures.

``check <file> [--seed N] [--max-dim N]``
    Validate, then build the state space and the full projector family and
    run the verification suite (idempotence, pairwise commutation,
    base-site independence, represented straightening).  Full matrix
    identities are checked up to total dimension 4096; beyond that the
    identities are sampled on seeded basis columns.

``ground-dim <file> [--method trace|kernel|both] [--force]``
    Exact ground-space dimension.  Requires a clean check first unless
    ``--force`` is given.  ``trace`` sums diagonal entries of the product
    of all projectors; ``kernel`` computes the null space of the
    Hamiltonian; the default picks ``trace`` and cross-checks with
    ``kernel`` when the dimension permits.

``report <file> --out <path>``
    Run everything and write a JSON report.  Output is byte-identical
    across runs for a fixed document (the sampling seed comes from the
    document's ``options.seed``, default 0).

Exit codes: 0 — clean; 1 — a mathematical law failed; 2 — input error
(unreadable file, malformed document, dimension guard exceeded).  The
environment variable ``KITAEV_MAX_DIM`` overrides the built-in state-space
dimension guard; an explicit ``--max-dim`` beats both it and the
document's ``options.guard``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Dict, Optional

from .documents import ModelDocument, load_document, validate_document
from .errors import InputError, MathViolation
from .lattice import (
    OperatorSet,
    build_operator_set,
    build_state_space,
    dimension_guard,
    ground_space_dimension,
    verify_operator_set,
)
from .reporting import CheckReport, CheckResult

__all__ = ["main"]


def _format_check(c: CheckResult) -> str:
    status = "PASS" if c.passed else "FAIL"
    suffix = f"  [{c.detail}]" if c.detail else ""
    return f"{status}  {c.name}{suffix}"


def _print_report(report: CheckReport) -> None:
    for c in report.checks:
        print(_format_check(c))
    print(f"{report.subject}: {len(report.checks)} checks, "
          f"{len(report.failures)} failures")


def _effective_guard(doc: ModelDocument, cli_max_dim: Optional[int]) -> Optional[int]:
    """Guard precedence: --max-dim, then KITAEV_MAX_DIM, then the document's
    ``options.guard``, then the built-in default (resolved downstream)."""
    if cli_max_dim is not None:
        return cli_max_dim
    if os.environ.get("KITAEV_MAX_DIM") is not None:
        return dimension_guard()
    return doc.guard


def _build_ops(doc: ModelDocument, cli_max_dim: Optional[int] = None) -> OperatorSet:
    ss = build_state_space(doc.labels, guard=_effective_guard(doc, cli_max_dim))
    return build_operator_set(ss)


def _cmd_validate(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    report = validate_document(doc)
    _print_report(report)
    return 0 if report.ok else 1


def _cmd_check(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    validation = validate_document(doc)
    if not validation.ok:
        _print_report(validation)
        print("document is invalid; not building operators", file=sys.stderr)
        return 1
    ops = _build_ops(doc, args.max_dim)
    seed = doc.seed if args.seed is None else args.seed
    report = verify_operator_set(ops, seed=seed)
    print(f"state space dimension: {ops.state_space.total_dim}")
    _print_report(report)
    return 0 if report.ok else 1


def _cmd_ground_dim(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    if not args.force:
        validation = validate_document(doc)
        if not validation.ok:
            _print_report(validation)
            print("document is invalid; use --force to compute anyway",
                  file=sys.stderr)
            return 1
    ops = _build_ops(doc)
    if not args.force:
        suite = verify_operator_set(ops, seed=doc.seed)
        if not suite.ok:
            _print_report(suite)
            print("operator suite failed; use --force to compute anyway",
                  file=sys.stderr)
            return 1
    result = ground_space_dimension(ops, method=args.method or "auto")
    used = [k for k in ("trace", "kernel") if k in result]
    label = "both" if len(used) == 2 else used[0]
    detail = ", ".join(f"{k}={result[k]}" for k in used)
    print(f"ground-state dimension: {result['dimension']}")
    print(f"method: {label} ({detail})")
    return 0


def _report_payload(doc: ModelDocument) -> Dict[str, object]:
    payload: Dict[str, object] = {"document": doc.name, "seed": doc.seed}
    validation = validate_document(doc)
    payload["validation"] = _report_section(validation)
    payload["operators"] = None
    payload["ground_dimension"] = None
    if not validation.ok:
        return payload
    ops = _build_ops(doc)
    payload["state_space_dimension"] = ops.state_space.total_dim
    suite = verify_operator_set(ops, seed=doc.seed)
    payload["operators"] = _report_section(suite)
    if suite.ok:
        result = ground_space_dimension(ops, method="auto")
        payload["ground_dimension"] = {
            "dimension": result["dimension"],
            "trace": result.get("trace"),
            "kernel": result.get("kernel"),
        }
    return payload


def _report_section(report: CheckReport) -> Dict[str, object]:
    return {
        "ok": report.ok,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in report.checks
        ],
    }


def _payload_ok(payload: Dict[str, object]) -> bool:
    for key in ("validation", "operators"):
        section = payload.get(key)
        if not isinstance(section, dict) or not section.get("ok"):
            return False
    return payload.get("ground_dimension") is not None


def _cmd_report(args: argparse.Namespace) -> int:
    doc = load_document(args.file)
    payload = _report_payload(doc)
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    out = Path(args.out)
    try:
        out.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc}") from exc
    print(f"report written to {args.out}")
    return 0 if _payload_ok(payload) else 1


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kitaev",
        description="Exact verification of Hopf-algebraic lattice models "
        "with defects, driven by JSON model documents.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a model document")
    p.add_argument("file", help="path to a JSON model document")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("check", help="build operators and run the verification suite")
    p.add_argument("file", help="path to a JSON model document")
    p.add_argument("--seed", type=int, default=None,
                   help="sampling seed (default: the document's options.seed)")
    p.add_argument("--max-dim", type=int, default=None,
                   help="state-space dimension guard override")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("ground-dim", help="exact ground-space dimension")
    p.add_argument("file", help="path to a JSON model document")
    p.add_argument("--method", choices=["trace", "kernel", "both"], default=None,
                   help="computation method (default: trace with kernel cross-check "
                        "when small enough)")
    p.add_argument("--force", action="store_true",
                   help="skip the validation and operator-suite preconditions")
    p.set_defaults(func=_cmd_ground_dim)

    p = sub.add_parser("report", help="write a JSON report of all checks")
    p.add_argument("file", help="path to a JSON model document")
    p.add_argument("--out", required=True, help="output path for the JSON report")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv: Optional[list] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except MathViolation as exc:
        print(f"math violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
