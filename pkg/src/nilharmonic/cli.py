"""Command-line interface: dims, harmonic, preimage, verify.

Exit codes: 0 success, 1 validation error, 2 invariant failure,
3 internal inconsistency.  Output is deterministic: identical inputs
produce byte-identical text and JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .errors import InternalInconsistency, NilharmonicError, ValidationError
from .groups import GroupSchema
from .laplacian import Measure, apply_laplacian, dim_hk, harmonic_basis, solve_preimage
from .polynomials import dim_pk
from .serialize import (
    measure_from_config,
    measure_to_config,
    parse_polynomial,
    polynomial_to_obj,
    schema_from_config,
    schema_to_config,
)
from .suite import run_invariant_suite
from .verify import check_harmonic_batch

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INVARIANT = 2
EXIT_INTERNAL = 3


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _load_group(path: str) -> GroupSchema:
    return schema_from_config(_load_json(path))


def _load_measure(schema: GroupSchema, path: str) -> Measure:
    return measure_from_config(schema, _load_json(path))


def _write_json(path: str, payload: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def cmd_dims(args: argparse.Namespace) -> int:
    schema = _load_group(args.group)
    if args.k < 0:
        raise ValidationError("--k must be non-negative")
    rows = [
        {"k": k, "dim_pk": dim_pk(schema, k), "dim_hk": dim_hk(schema, k)}
        for k in range(args.k + 1)
    ]
    lines = [f"group: {schema.name()}", f"{'k':>3}  {'dim_pk':>7}  {'dim_hk':>7}"]
    for row in rows:
        lines.append(f"{row['k']:>3}  {row['dim_pk']:>7}  {row['dim_hk']:>7}")
    print("\n".join(lines))
    if args.json:
        _write_json(args.json, {"group": schema_to_config(schema), "rows": rows})
    return EXIT_OK


def cmd_harmonic(args: argparse.Namespace) -> int:
    schema = _load_group(args.group)
    measure = _load_measure(schema, args.measure)
    report = harmonic_basis(schema, measure, args.k)
    lines = [
        f"group: {schema.name()}",
        f"measure: {len(measure.atoms)} atoms",
        f"k: {args.k}",
        f"dim: {report.dim} (predicted {report.predicted_dim})",
        "basis:",
    ]
    for i, p in enumerate(report.basis, start=1):
        lines.append(f"  [{i}] {p}")
    verified = None
    if args.verify:
        checks = check_harmonic_batch(schema, measure, list(report.basis), args.radius)
        failures = [(i, c) for i, c in enumerate(checks, start=1) if not c.passed]
        if failures:
            i, c = failures[0]
            lines.append(
                f"verify (radius {args.radius}): FAIL at basis element {i}, "
                f"point {c.witness}, lhs {c.lhs}, rhs {c.rhs}"
            )
            verified = False
        else:
            lines.append(
                f"verify (radius {args.radius}): all {report.dim} basis elements pass"
            )
            verified = True
    print("\n".join(lines))
    if args.json:
        payload = {
            "group": schema_to_config(schema),
            "measure": measure_to_config(measure),
            "k": args.k,
            "dim": report.dim,
            "predicted_dim": report.predicted_dim,
            "basis": [polynomial_to_obj(p) for p in report.basis],
        }
        if verified is not None:
            payload["verified"] = verified
        _write_json(args.json, payload)
    if verified is False:
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_preimage(args: argparse.Namespace) -> int:
    schema = _load_group(args.group)
    measure = _load_measure(schema, args.measure)
    try:
        with open(args.polynomial, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {args.polynomial}: {exc.strerror}") from exc
    target = parse_polynomial(schema, text)
    p_hat = solve_preimage(schema, measure, target)
    # solve_preimage guarantees this, but the CLI re-checks before claiming it
    if apply_laplacian(measure, p_hat) != target:
        raise InternalInconsistency("preimage re-verification failed")
    lines = [
        f"group: {schema.name()}",
        f"input: {target}",
        f"preimage: {p_hat}",
        f"degree: {p_hat.degree if not p_hat.is_zero else 0}",
        "verified: laplacian(preimage) == input",
    ]
    print("\n".join(lines))
    if args.json:
        _write_json(
            args.json,
            {
                "group": schema_to_config(schema),
                "input": polynomial_to_obj(target),
                "preimage": polynomial_to_obj(p_hat),
                "verified": True,
            },
        )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    schema = _load_group(args.group)
    measure = _load_measure(schema, args.measure)
    if args.k < 0 or args.radius < 0:
        raise ValidationError("--k and --radius must be non-negative")
    records = run_invariant_suite(schema, measure, args.k, args.radius)
    lines = [f"group: {schema.name()}", f"measure: {len(measure.atoms)} atoms"]
    for rec in records:
        status = "ok  " if rec.passed else "FAIL"
        detail = f" - {rec.detail}" if rec.detail else ""
        lines.append(f"{status} {rec.name}{detail}")
    n_pass = sum(1 for r in records if r.passed)
    lines.append(f"result: {n_pass}/{len(records)} checks passed")
    print("\n".join(lines))
    if args.json:
        _write_json(
            args.json,
            {
                "group": schema_to_config(schema),
                "measure": measure_to_config(measure),
                "checks": [
                    {"name": r.name, "passed": r.passed, "detail": r.detail}
                    for r in records
                ],
                "passed": n_pass == len(records),
            },
        )
    return EXIT_OK if n_pass == len(records) else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilharmonic",
        description=(
            "Exact polynomial and harmonic-function spaces on torsion-free "
            "nilpotent groups"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    dims = sub.add_parser("dims", help="table of polynomial/harmonic dimensions")
    dims.add_argument("--group", required=True, help="group config file (JSON)")
    dims.add_argument("--k", type=int, default=8, help="maximum degree (default 8)")
    dims.add_argument("--json", help="also write a JSON report to this path")
    dims.set_defaults(func=cmd_dims)

    harm = sub.add_parser("harmonic", help="basis of degree-<= k harmonic polynomials")
    harm.add_argument("--group", required=True, help="group config file (JSON)")
    harm.add_argument("--measure", required=True, help="measure config file (JSON)")
    harm.add_argument("--k", type=int, required=True, help="degree bound")
    harm.add_argument("--verify", action="store_true", help="run the mean-value oracle")
    harm.add_argument("--radius", type=int, default=5, help="oracle ball radius (default 5)")
    harm.add_argument("--json", help="also write a JSON report to this path")
    harm.set_defaults(func=cmd_harmonic)

    pre = sub.add_parser("preimage", help="solve laplacian(p) == q for p")
    pre.add_argument("--group", required=True, help="group config file (JSON)")
    pre.add_argument("--measure", required=True, help="measure config file (JSON)")
    pre.add_argument("polynomial", help="file containing q in caret-and-star syntax")
    pre.add_argument("--json", help="also write a JSON report to this path")
    pre.set_defaults(func=cmd_preimage)

    ver = sub.add_parser("verify", help="run the module invariant suite")
    ver.add_argument("--group", required=True, help="group config file (JSON)")
    ver.add_argument("--measure", required=True, help="measure config file (JSON)")
    ver.add_argument("--k", type=int, default=4, help="maximum degree (default 4)")
    ver.add_argument("--radius", type=int, default=4, help="oracle ball radius (default 4)")
    ver.add_argument("--json", help="also write a JSON report to this path")
    ver.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except NilharmonicError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
