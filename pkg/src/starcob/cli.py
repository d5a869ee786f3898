"""Command-line interface: build summaries, verification sweeps, cohomology
tables, and diagnostic dumps, with machine-readable deterministic reports.

Exit codes: 0 for a clean run, 1 when a verification finds violations, 2 for
configuration errors (including N <= 2).  JSON reports carry a versioned
"schema" field and record the full configuration including the seed, so equal
configurations produce byte-identical output.  The STARCOB_THREADS environment
variable caps worker threads for the sweep commands.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Optional

from .ainfty import check_ainfty, op_grading_check, parse_fault
from .barcobar import enumerate_strings, phi, psi, verify_homotopy
from .gradegroup import admissible_arities, check_multiplicativity
from .hochschild import InsufficientTruncation, cohomology_dim, witness_cocycle
from .staralg import (
    AlgElem,
    enumerate_basis,
    special_element,
    var_grading,
)

SCHEMA = "starcob/1"


class ConfigError(Exception):
    pass


def _threads() -> int:
    raw = os.environ.get("STARCOB_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"STARCOB_THREADS must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigError("STARCOB_THREADS must be >= 1")
    return value


def _check_n(n: int) -> None:
    if n <= 2:
        raise ConfigError(f"the construction needs N > 2, got N={n}")


def _emit_json(doc: dict, out) -> None:
    out.write(json.dumps(doc, indent=2, sort_keys=True))
    out.write("\n")


def _config_doc(args, n: int, extra: Optional[dict] = None) -> dict:
    doc = {"N": n, "seed": args.seed}
    if extra:
        doc.update(extra)
    return doc


def cmd_build(args, out) -> int:
    n = args.n
    _check_n(n)
    max_len = args.max_len if args.max_len is not None else 4 * n
    counts = {}
    generators = {}
    for alg in ("A", "B"):
        basis = enumerate_basis(alg, max_len, n)
        generators[alg] = [w.render() for w in basis if w.ell <= 1]
        by_len: dict[str, int] = {}
        for w in basis:
            by_len[str(w.ell)] = by_len.get(str(w.ell), 0) + 1
        counts[alg] = by_len
    gradings = {}
    for var in (0, n + 1):
        g = var_grading(var, n)
        gradings[f"V{var}"] = {"m": g.m, "weights": list(g.alexander), "len": g.ell}
    doc = {
        "schema": SCHEMA,
        "command": "build",
        "config": _config_doc(args, n, {"max-len": max_len}),
        "generators": generators,
        "grading-table": gradings,
        "basis-counts": counts,
    }
    if args.format == "json":
        _emit_json(doc, out)
    else:
        out.write(f"N = {n}\n")
        for alg in ("A", "B"):
            out.write(f"algebra {alg} generators: {', '.join(generators[alg])}\n")
        for var, g in gradings.items():
            out.write(f"{var}: m = {g['m']}, weights = {g['weights']}, len = {g['len']}\n")
        for alg in ("A", "B"):
            pairs = ", ".join(f"len {k}: {v}" for k, v in sorted(counts[alg].items(), key=lambda kv: int(kv[0])))
            out.write(f"algebra {alg} basis counts: {pairs}\n")
    return 0


def _verify_ainfty(args, algebra: str, threads: int) -> tuple[list[dict], dict]:
    n = args.n
    max_arity = args.max_arity if args.max_arity is not None else (2 * n + 2 if algebra == "A" else n + 2)
    max_len = args.max_len if args.max_len is not None else (4 * n if algebra == "A" else 3 * n)
    fault = parse_fault(args.inject_fault)
    violations = check_ainfty(algebra, max_arity, max_len, n, fault=fault, threads=threads)
    extra = {"max-arity": max_arity, "max-len": max_len, "fault": args.inject_fault}
    return violations, extra


def _verify_homotopy(args, threads: int) -> tuple[list[dict], dict]:
    n = args.n
    max_len = args.max_len if args.max_len is not None else 8
    fault = parse_fault(args.inject_fault)
    violations = []
    for base in ("A", "B"):
        identity_ok = True
        for w in enumerate_basis("B" if base == "A" else "A", max_len, n):
            if w.is_idempotent():
                continue
            if phi(psi(w)) != AlgElem.from_word(w):
                identity_ok = False
                violations.append({"base": base, "reason": f"phi(psi({w.render()})) != {w.render()}"})
        cert = verify_homotopy(max_len, n, base, fault=fault, threads=threads)
        if not cert:
            violations.append({"base": base, "reason": "homotopy certificate fails"})
        if not identity_ok:
            violations.append({"base": base, "reason": "phi-psi identity fails"})
    extra = {"max-len": max_len, "fault": args.inject_fault}
    return violations, extra


def _verify_grading(args, threads: int) -> tuple[list[dict], dict]:
    n = args.n
    violations = []
    for algebra in ("A", "B"):
        max_arity = args.max_arity if args.max_arity is not None else (2 * n + 2 if algebra == "A" else n + 2)
        max_len = args.max_len if args.max_len is not None else (4 * n if algebra == "A" else 3 * n)
        violations.extend(op_grading_check(algebra, max_arity, max_len, n))
        violations.extend(check_multiplicativity(algebra, max_arity, max_len, n))
    expected_m = {0: 2 * n - 2, n + 1: -2}
    for var, m_expected in expected_m.items():
        got = var_grading(var, n).m
        if got != m_expected:
            violations.append({"reason": f"m(V{var}) = {got} != {m_expected}"})
    return violations, {}


def _verify_arities(args, threads: int) -> tuple[list[dict], dict]:
    n = args.n
    violations = []
    computed = {}
    for side, below, boundary in (("A", (3, 2 * n - 1), 2 * n), ("B", (3, n - 1), n)):
        empty = admissible_arities(side, n, *below)
        bound = admissible_arities(side, n, 3, boundary)
        computed[side] = {
            "below-boundary": sorted(empty),
            "through-boundary": sorted(bound),
        }
        if empty:
            violations.append({"side": side, "reason": f"expected no admissible arities in {below}, got {sorted(empty)}"})
        if bound != {boundary}:
            violations.append({"side": side, "reason": f"expected {{{boundary}}} through the boundary, got {sorted(bound)}"})
    return violations, {"computed": computed}


def cmd_verify(args, out) -> int:
    _check_n(args.n)
    threads = _threads()
    kind = args.kind
    if kind == "ainfty-a":
        violations, extra = _verify_ainfty(args, "A", threads)
    elif kind == "ainfty-b":
        violations, extra = _verify_ainfty(args, "B", threads)
    elif kind == "homotopy":
        violations, extra = _verify_homotopy(args, threads)
    elif kind == "grading":
        violations, extra = _verify_grading(args, threads)
    elif kind == "arities":
        violations, extra = _verify_arities(args, threads)
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(f"unknown verify kind {kind!r}")
    doc = {
        "schema": SCHEMA,
        "command": "verify",
        "kind": kind,
        "config": _config_doc(args, args.n, extra),
        "violations": violations,
        "violation-count": len(violations),
    }
    if args.format == "json":
        _emit_json(doc, out)
    else:
        out.write(f"verify {kind}: {len(violations)} violation(s)\n")
        for v in violations:
            out.write(json.dumps(v, sort_keys=True) + "\n")
    return 1 if violations else 0


def cmd_cohomology(args, out) -> int:
    n = args.n
    _check_n(n)
    model = args.algebra
    n_max = args.n_max if args.n_max is not None else 3 * n
    j_values = tuple(args.j) if args.j else (-1, -2)
    rows = []
    for n_deg in range(3, n_max + 1):
        for j in j_values:
            cell = {"model": model, "N": n, "n": n_deg, "j": j}
            try:
                dim, wits = cohomology_dim(model, n_deg, j, n, args.trunc)
                cell["dim"] = dim
                cell["witnesses"] = [w.render() for w in wits]
            except InsufficientTruncation as exc:
                cell["error"] = str(exc)
            rows.append(cell)
    doc = {
        "schema": SCHEMA,
        "command": "cohomology",
        "config": _config_doc(args, n, {"algebra": model, "n-max": n_max, "j": list(j_values), "trunc": args.trunc}),
        "rows": rows,
        "distinguished-cocycle": witness_cocycle(model, n).render(),
    }
    if args.format == "json":
        _emit_json(doc, out)
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["model", "N", "n", "j", "dim", "witnesses"])
        for cell in rows:
            writer.writerow(
                [
                    cell["model"],
                    cell["N"],
                    cell["n"],
                    cell["j"],
                    cell.get("dim", "error"),
                    "; ".join(cell.get("witnesses", [cell.get("error", "")])),
                ]
            )
    else:
        for cell in rows:
            if "error" in cell:
                out.write(f"H^({cell['n']},{cell['j']}) [{model}]: error: {cell['error']}\n")
            else:
                wit = f"  witnesses: {'; '.join(cell['witnesses'])}" if cell["witnesses"] else ""
                out.write(f"H^({cell['n']},{cell['j']}) [{model}]: dim {cell['dim']}{wit}\n")
    return 0


def cmd_dump(args, out) -> int:
    n = args.n
    _check_n(n)
    what = args.what
    max_len = args.max_len if args.max_len is not None else 2 * n
    if what == "basis":
        items = [w.render() for w in enumerate_basis(args.algebra, max_len, n)]
    elif what == "special":
        if args.algebra == "A":
            items = [f"U{n + 1} = {special_element('A', f'U{n + 1}', n).render()}"]
        else:
            items = [f"U0 = {special_element('B', 'U0', n).render()}"]
    elif what == "strings":
        items = [
            ts.render_with_block()
            for ts in sorted(
                enumerate_strings(args.algebra, max_len, n),
                key=lambda t: (t.total_ell, len(t.factors), t.render()),
            )
        ]
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(f"unknown dump target {what!r}")
    if args.format == "json":
        doc = {
            "schema": SCHEMA,
            "command": "dump",
            "what": what,
            "config": _config_doc(args, n, {"algebra": args.algebra, "max-len": max_len}),
            "items": items,
        }
        _emit_json(doc, out)
    else:
        for item in items:
            out.write(item + "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starcob",
        description="Exact verification toolkit for a dual pair of quiver algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p) -> None:
        p.add_argument("--n", type=int, default=3, help="number of quiver nodes (N > 2)")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--seed", type=int, default=0, help="seed recorded in reports")

    p_build = sub.add_parser("build", help="print generators, gradings, and basis counts")
    common(p_build)
    p_build.add_argument("--max-len", type=int, default=None)
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="run a verification sweep")
    p_verify.add_argument(
        "kind", choices=("ainfty-a", "ainfty-b", "homotopy", "grading", "arities")
    )
    common(p_verify)
    p_verify.add_argument("--max-arity", type=int, default=None)
    p_verify.add_argument("--max-len", type=int, default=None)
    p_verify.add_argument("--inject-fault", default=None, help="drop-mu2N[:k] or break-h")
    p_verify.set_defaults(func=cmd_verify)

    p_coh = sub.add_parser("cohomology", help="bigraded cohomology table")
    common(p_coh)
    p_coh.add_argument("--algebra", choices=("A", "B"), default="A")
    p_coh.add_argument("--n-max", type=int, default=None)
    p_coh.add_argument("--j", type=int, action="append", default=None)
    p_coh.add_argument("--trunc", type=int, default=None)
    p_coh.set_defaults(func=cmd_cohomology)

    p_dump = sub.add_parser("dump", help="dump bases, special elements, or strings")
    p_dump.add_argument("what", choices=("basis", "special", "strings"))
    common(p_dump)
    p_dump.add_argument("--algebra", choices=("A", "B"), default="A")
    p_dump.add_argument("--max-len", type=int, default=None)
    p_dump.set_defaults(func=cmd_dump)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
