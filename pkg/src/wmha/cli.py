"""Command line: validate | verify | pairing | report."""

from __future__ import annotations

import argparse
import json
import sys
from collections import OrderedDict

from .algebra import check_algebra, table_algebra
from .coproduct import check_pairing
from .families import build_CG, build_KG, canonical_pairing, parse_table, table_structure
from .groupoid import InvalidSpec, build_groupoid, validate_groupoid
from .linalg import _key_json
from .report import FAIL, VerificationReport, jsonable
from .sampling import rng_for
from .wmha import verify_wmha, weak_hopf_adapter

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _seed(text: str) -> int:
    n = int(text)
    if not 0 <= n < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return n


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _is_table_algebra(spec) -> bool:
    return isinstance(spec, dict) and "basis" in spec and "kind" not in spec


def _groupoid_window(g, n: int):
    return g.window() if g.finite else g.window(n)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> tuple[int, object]:
    spec = _load(args.spec)
    if _is_table_algebra(spec):
        rep = check_algebra(table_algebra(spec), rng=rng_for(args.seed, "validate"), trials=args.trials)
    else:
        g = build_groupoid(spec)
        rep = validate_groupoid(g, _groupoid_window(g, args.window))
    rep.verdict = "valid" if rep.passed else "invalid"
    return (EXIT_OK if rep.passed else EXIT_NEGATIVE), rep


def _structure(spec, family: str):
    if family in ("kg", "cg"):
        if _is_table_algebra(spec):
            raise UsageError(f"--family {family} needs a groupoid spec")
        g = build_groupoid(spec)
        return g, (build_KG if family == "kg" else build_CG)(g)
    if not _is_table_algebra(spec):
        raise UsageError(f"--family {family} needs an algebra table with a coproduct")
    return None, table_structure(spec)


def cmd_verify(args) -> tuple[int, object]:
    spec = _load(args.spec)
    rng = rng_for(args.seed, f"verify/{args.family}")
    if args.family == "weak-hopf":
        if not _is_table_algebra(spec):
            raise UsageError("--family weak-hopf needs an algebra table with a coproduct")
        A, delta, eps, S = parse_table(spec)
        if eps is None or S is None:
            raise UsageError("a weak Hopf table needs 'counit' and 'antipode'")
        if A.unit is None:
            raise UsageError("a weak Hopf table needs a 'unit'")
        rep = weak_hopf_adapter(A, delta, eps, S, rng=rng, trials=args.trials, name=A.name)
        return (EXIT_OK if rep.verdict == "weak-hopf" else EXIT_NEGATIVE), rep
    g, st = _structure(spec, args.family)
    if g is not None:
        gv = validate_groupoid(g, _groupoid_window(g, args.window))
        if not gv.passed:
            gv.verdict = "not-wmha"
            return EXIT_NEGATIVE, gv
    W = st.window(args.window) if st.lazy else st.window()
    rep = verify_wmha(st, W, rng=rng, trials=args.trials, oracle=args.oracle)
    ok = rep.verdict != "not-wmha" and rep.passed
    return (EXIT_OK if ok else EXIT_NEGATIVE), rep


def pairing_matrix(pr, rows, cols) -> dict:
    return {
        "rows": [_key_json(r) for r in rows],
        "cols": [_key_json(c) for c in cols],
        "entries": [[pr.rule(r, c).to_json() for c in cols] for r in rows],
    }


def cmd_pairing(args) -> tuple[int, object]:
    spec = _load(args.spec)
    if _is_table_algebra(spec):
        raise UsageError("pairing needs a groupoid spec")
    g = build_groupoid(spec)
    W = _groupoid_window(g, args.window)
    kg, cg = build_KG(g), build_CG(g)
    pr = canonical_pairing(kg, cg)
    rep = check_pairing(pr, kg.cp, cg.cp, W, W, rng_for(args.seed, "pairing"), args.trials)
    rep.verdict = "pass" if rep.passed else "fail"
    out = rep.to_dict()
    out["pairing_matrix"] = pairing_matrix(pr, W, W)
    return (EXIT_OK if rep.passed else EXIT_NEGATIVE), out


def cmd_report(args) -> tuple[int, object]:
    if not args.reports:
        raise UsageError("report needs at least one report file")
    reports = []
    for path in args.reports:
        try:
            reports.append(VerificationReport.from_dict(_load(path)))
        except ValueError as exc:
            raise UsageError(f"{path}: {exc}") from exc
    groups: OrderedDict[str, list] = OrderedDict()
    failing = []
    for rep in reports:
        for c in rep.checks:
            row = {"structure": rep.structure, **c.to_dict()}
            groups.setdefault(c.id.split("/")[0], []).append(row)
            if c.status == FAIL:
                failing.append(f"{rep.structure}: {c.id}")
    bad_verdict = [r.structure for r in reports if r.verdict in ("not-wmha", "invalid", "fail")]
    ok = not failing and not bad_verdict
    merged = {
        "reports": [{"structure": r.structure, "verdict": r.verdict} for r in reports],
        "groups": groups,
        "failing": failing,
        "verdict": "pass" if ok else "fail",
    }
    return (EXIT_OK if ok else EXIT_NEGATIVE), merged


# ---------------------------------------------------------------------------
# rendering


def _render_matrix(m: dict) -> list[str]:
    lines = ["pairing matrix (rows: K basis, columns: C basis):"]
    cols = [json.dumps(c) for c in m["cols"]]
    lines.append("  " + " ".join(cols))
    for r, row in zip(m["rows"], m["entries"]):
        cells = [json.dumps(x) for x in row]
        lines.append(f"  {json.dumps(r)}: " + " ".join(cells))
    return lines


def _render_merged(m: dict) -> str:
    lines = []
    for r in m["reports"]:
        lines.append(f"report: {r['structure']}  verdict: {r['verdict']}")
    for name, rows in m["groups"].items():
        lines.append(f"== {name} ==")
        for row in rows:
            lines.append(f"  [{row['status']:^7}] {row['id']}  ({row['structure']})")
    if m["failing"]:
        lines.append("failing:")
        lines.extend(f"  {f}" for f in m["failing"])
    lines.append(f"combined verdict: {m['verdict']}")
    return "\n".join(lines)


def render(result, fmt: str) -> str:
    if fmt == "json":
        d = result.to_dict() if isinstance(result, VerificationReport) else result
        return json.dumps(jsonable(d), indent=2)
    if isinstance(result, VerificationReport):
        return result.to_text()
    if "pairing_matrix" in result:
        rep = VerificationReport.from_dict(result)
        return "\n".join([rep.to_text(), *_render_matrix(result["pairing_matrix"])])
    return _render_merged(result)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", type=_positive, default=5, help="points of a lazy groupoid to enumerate")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--trials", type=_positive, default=100, help="random cases per identity when sampling")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="wmha", description="Exact verification of weak multiplier Hopf algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate", parents=[common], help="check a groupoid or algebra spec")
    v.add_argument("spec")
    v.set_defaults(func=cmd_validate)
    v = sub.add_parser("verify", parents=[common], help="run the full verification suite")
    v.add_argument("spec")
    v.add_argument("--family", choices=("kg", "cg", "weak-hopf", "table-coproduct"), required=True)
    v.add_argument("--oracle", action="store_true", help="cross-check closed forms against the dense solvers")
    v.set_defaults(func=cmd_verify)
    v = sub.add_parser("pairing", parents=[common], help="pairing matrix and adjointness checks")
    v.add_argument("spec")
    v.set_defaults(func=cmd_pairing)
    v = sub.add_parser("report", parents=[common], help="merge earlier JSON reports")
    v.add_argument("reports", nargs="*")
    v.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        code, result = args.func(args)
    except (UsageError, InvalidSpec, ValueError, KeyError, TypeError) as exc:
        print(f"wmha: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(result, args.format) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"wmha: error: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
