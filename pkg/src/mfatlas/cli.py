"""Command-line front end.

Subcommands: build, verify, count, atlas, check-examples.  Reports are JSON
(schema mf-atlas/1) or CSV, written atomically; identical configurations
(including the seed) produce byte-identical output.

Exit codes: 0 all checks passed, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

from .components import (
    IPrimeTable,
    count_zero_fibre,
    member_label,
)
from .corpus import run_corpus
from .errors import CertificationError, MFError, PreconditionError, UnsupportedElementError
from .flags import enumerate_atlas, mask_strings, support_mask
from .lie import GElement, LieAlgebraA, sl
from .linalg import ExactMatrix
from .mfsystem import build_system
from .scalar import Scalar, scalar_from_str, scalar_to_str
from .verify import run_verify_suite

SCHEMA = "mf-atlas/1"


# -- element resolution ---------------------------------------------------------


def _diag(L: LieAlgebraA, values: list[Scalar]) -> GElement:
    return L.element(ExactMatrix.diagonal(values))


def _semisimple_rep(L: LieAlgebraA, params: list[Scalar]) -> GElement:
    n = L.n
    if not params:
        if n == 2:
            params = [Scalar(1)]
        else:
            params = [Scalar(k) for k in range(1, n)]
    if len(params) == n - 1:
        params = params + [-sum(params, Scalar(0))]
    if len(params) != n:
        raise PreconditionError(
            f"element s on sl_{n} takes {n - 1} or {n} parameters, got {len(params)}"
        )
    if sum(params, Scalar(0)) != Scalar(0):
        raise PreconditionError("diagonal parameters must sum to zero")
    return _diag(L, params)


def _nilpotent_rep(L: LieAlgebraA) -> GElement:
    n = L.n
    m = [[Scalar(1) if j == i + 1 else Scalar(0) for j in range(n)] for i in range(n)]
    return L.element(ExactMatrix(m))


def _mixed_rep(L: LieAlgebraA, params: list[Scalar]) -> GElement:
    if L.n != 3:
        raise UnsupportedElementError("element r (mixed representative) is defined on sl_3")
    rho = params[0] if params else Scalar(1)
    if rho == Scalar(0):
        raise PreconditionError("parameter rho must be nonzero")
    z = Scalar(0)
    m = [[rho, Scalar(1), z], [z, rho, z], [z, z, Scalar(-2) * rho]]
    return L.element(ExactMatrix(m))


def resolve_element(args: argparse.Namespace) -> GElement:
    if getattr(args, "matrix", None):
        try:
            with open(args.matrix) as f:
                data = json.load(f)
            a = GElement.from_json_dict(data)
        except (OSError, ValueError, KeyError) as exc:
            raise PreconditionError(f"cannot read matrix file: {exc}") from exc
        if args.n is not None and a.algebra.n != args.n:
            raise PreconditionError(
                f"matrix file is sl_{a.algebra.n} but --n {args.n} was given"
            )
        return a
    n = args.n if args.n is not None else 3
    if n < 2:
        raise PreconditionError("n must be at least 2")
    L = sl(n)
    try:
        params = [scalar_from_str(p) for p in (args.param or [])]
    except ValueError as exc:
        raise PreconditionError(f"bad --param value: {exc}") from exc
    label = args.element or "s"
    if label == "s":
        return _semisimple_rep(L, params)
    if label == "n":
        return _nilpotent_rep(L)
    if label == "r":
        return _mixed_rep(L, params)
    raise PreconditionError(f"unknown element label {label!r}")


def _config_dict(args: argparse.Namespace, command: str) -> dict:
    cfg: dict = {"command": command}
    for key in ("n", "element", "param", "matrix", "seed", "samples", "iprime"):
        if hasattr(args, key) and getattr(args, key) is not None:
            cfg[key] = getattr(args, key)
    return cfg


# -- report assembly ---------------------------------------------------------------


def _check_rows(results) -> list[dict]:
    return [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]


def cmd_build(args: argparse.Namespace) -> tuple[dict, bool]:
    a = resolve_element(args)
    sys_ = build_system(a)
    report = {
        "schema": SCHEMA,
        "config": _config_dict(args, "build"),
        "n": sys_.algebra.n,
        "b": sys_.b,
        "degrees": sys_.degrees,
        "shift": a.to_json_dict(),
        "coordinates": list(sys_.algebra.coord_names),
        "labels": [list(lbl) for lbl in sys_.labels],
        "components": [str(c) for c in sys_.components],
        "display_scale": [scalar_to_str(s) for s in sys_.display_scale],
        "printed_components": [str(c) for c in sys_.scaled_components()],
        "certificate_point": sys_.certificate_point.to_json_dict(),
    }
    return report, True


def cmd_verify(args: argparse.Namespace) -> tuple[dict, bool]:
    a = resolve_element(args)
    sys_ = build_system(a)
    samples = args.samples if args.samples is not None else 25
    results = run_verify_suite(sys_, samples=samples, seed=args.seed)
    ok = all(r.passed for r in results)
    report = {
        "schema": SCHEMA,
        "config": _config_dict(args, "verify"),
        "n": sys_.algebra.n,
        "shift": a.to_json_dict(),
        "checks": _check_rows(results),
        "passed": ok,
    }
    return report, ok


def cmd_count(args: argparse.Namespace) -> tuple[dict, bool]:
    a = resolve_element(args)
    table = None
    if args.iprime:
        table = IPrimeTable.default()
        table.entries.update(IPrimeTable.load(args.iprime).entries)
    rep = count_zero_fibre(a, table=table)
    terms = []
    for t in rep.parabolic_terms:
        terms.append(
            {
                "label": t.label,
                "composition": list(t.composition),
                "factors": [
                    {
                        "symbol": IPrimeTable.symbol(*key),
                        "value": val,
                        "lower": low,
                    }
                    for key, val, low in zip(t.factor_keys, t.factor_values, t.factor_lowers)
                ],
                "product": t.product,
                "product_lower": t.product_lower,
            }
        )
    report = {
        "schema": SCHEMA,
        "config": _config_dict(args, "count"),
        "n": rep.n,
        "shift": a.to_json_dict(),
        "eigenvalue_partition": list(rep.partition),
        "borel_count": rep.borel_count,
        "self_term": {
            "symbol": IPrimeTable.symbol(*rep.self_key),
            "value": rep.self_value,
            "lower": rep.self_lower,
        },
        "parabolic_terms": terms,
        "formula": rep.formula,
        "total": rep.total,
        "total_lower": rep.total_lower,
    }
    return report, True


def _member_row(m, L) -> dict:
    return {
        "label": member_label(m),
        "kind": "borel" if m.is_borel() else "parabolic",
        "composition": list(m.composition()),
        "mask": mask_strings(m.mask()),
        "dim_p": m.dim_p,
        "dim_u": m.dim_u,
    }


def cmd_atlas(args: argparse.Namespace) -> tuple[dict, bool]:
    a = resolve_element(args)
    L = a.algebra
    atlas = enumerate_atlas(a)
    report = {
        "schema": SCHEMA,
        "config": _config_dict(args, "atlas"),
        "n": L.n,
        "shift": a.to_json_dict(),
        "borel_count": len(atlas.borels),
        "parabolic_count": len(atlas.parabolics),
        "borels": [_member_row(m, L) for m in atlas.borels],
        "parabolics": [_member_row(m, L) for m in atlas.parabolics],
        "b_a": {
            "dim": len(atlas.b_a),
            "mask": mask_strings(support_mask(L, atlas.b_a)),
        },
        "u_a": {
            "dim": len(atlas.u_a),
            "mask": mask_strings(support_mask(L, atlas.u_a)),
        },
    }
    return report, True


def cmd_check_examples(args: argparse.Namespace) -> tuple[dict, bool]:
    samples = args.samples if args.samples is not None else 100
    results = run_corpus(samples=samples, seed=args.seed, self_test=args.self_test)
    ok = all(r.passed for r in results)
    report = {
        "schema": SCHEMA,
        "config": _config_dict(args, "check-examples"),
        "self_test": bool(args.self_test),
        "checks": _check_rows(results),
        "passed": ok,
    }
    if not ok:
        first = next(r for r in results if not r.passed)
        print(f"first mismatch: {first.name}: {first.detail}", file=sys.stderr)
    return report, ok


# -- output ------------------------------------------------------------------------


def _flatten(prefix: str, value, rows: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], rows)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, "" if value is None else str(value)))


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if "checks" in report:
        writer.writerow(["name", "passed", "detail"])
        for row in report["checks"]:
            writer.writerow([row["name"], row["passed"], row["detail"]])
    else:
        writer.writerow(["key", "value"])
        rows: list[tuple[str, str]] = []
        _flatten("", report, rows)
        for key, val in rows:
            writer.writerow([key, val])
    return buf.getvalue()


def write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".mf-report-")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- argument parsing ------------------------------------------------------------------


def _add_element_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=None, help="algebra size (sl_n), default 3")
    p.add_argument(
        "--element",
        choices=("s", "r", "n"),
        default=None,
        help="shift representative: s semisimple, r mixed (sl_3), n nilpotent",
    )
    p.add_argument(
        "--param",
        action="append",
        default=None,
        metavar="RATIONAL",
        help="element parameter (repeatable); rationals like 3/2 or Gaussian a+b*i",
    )
    p.add_argument("--matrix", default=None, metavar="FILE",
                   help="JSON file with an explicit traceless matrix")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.add_argument("--samples", type=int, default=None, help="sample count override")
    p.add_argument("--out", default=None, metavar="FILE", help="write the report here")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mf",
        description="Exact construction and verification of Mishchenko-Fomenko "
        "systems on sl_n at desk scale.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build F_a and print its descriptor")
    _add_element_flags(p_build)
    _add_common_flags(p_build)
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="run the named verification suite")
    _add_element_flags(p_verify)
    _add_common_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_count = sub.add_parser("count", help="evaluate the recursive zero-fibre count")
    _add_element_flags(p_count)
    _add_common_flags(p_count)
    p_count.add_argument("--iprime", default=None, metavar="FILE",
                         help="JSON table of exotic-component counts")
    p_count.set_defaults(func=cmd_count)

    p_atlas = sub.add_parser("atlas", help="enumerate Borels and parabolics containing a")
    _add_element_flags(p_atlas)
    _add_common_flags(p_atlas)
    p_atlas.set_defaults(func=cmd_atlas)

    p_corpus = sub.add_parser("check-examples", help="run the frozen regression corpus")
    _add_common_flags(p_corpus)
    p_corpus.add_argument("--self-test", action="store_true", dest="self_test",
                          help="also run the tamper self-test harness")
    p_corpus.set_defaults(func=cmd_check_examples)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        report, ok = args.func(args)
    except PreconditionError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return 2
    except (CertificationError, MFError) as exc:
        print(f"error: verification failure: {exc}", file=sys.stderr)
        return 1
    write_output(render_report(report, args.format), args.out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
