"""Command-line front end.

Exit codes: 0 success, 1 a verified property failed (the counterexample is
printed), 2 bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import census
from .constructions import SpecError, build_central, build_extremal, extremal_spec, parse_block_spec
from .dissociation import dissociation_brute, dissociation_dp
from .graph import GraphError, block_decomposition, format_edge_list, parse_edge_list, to_dot
from .rewrites import Op, PreconditionError, apply_rewrite, complete_site
from .dissociation import DissociationCertificate
from .spectral import DEFAULT_TOL, ConvergenceError, spectral_radius

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

VERTEX_ROLES = ("p", "q", "r", "s", "u", "v", "w")
BLOCK_ROLES = ("B", "C", "B1", "B2", "K_m", "K_n", "H", "T")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read_graph(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="ascii")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_edge_list(text)
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(text: str, out: str | None, stdout) -> None:
    if out is None or out == "-":
        stdout.write(text)
    else:
        Path(out).write_text(text, encoding="ascii", newline="\n")


def _dump(obj, stdout) -> None:
    stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def parse_site(text: str) -> tuple[dict, dict]:
    """``p=3,q=4,w=0,K_m=0/1/2/3`` -> (vertex roles, block roles as vertex tuples)."""
    vertices, blocks = {}, {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        role, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"site item {item!r} is not role=value")
        try:
            if role in VERTEX_ROLES:
                vertices[role] = int(val)
            elif role in BLOCK_ROLES:
                blocks[role] = tuple(int(x) for x in val.split("/"))
            else:
                raise UsageError(f"unknown site role {role!r}")
        except ValueError:
            raise UsageError(f"site role {role}: bad value {val!r}") from None
    return vertices, blocks


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args, stdout, stderr):
    if (args.spec is None) == (args.k is None):
        raise UsageError("construct needs either --spec or --k with --phi")
    if args.spec is not None:
        g = build_central(parse_block_spec(args.spec))
    else:
        if args.phi is None:
            raise UsageError("construct --k needs --phi")
        extremal_spec(args.k, args.phi)  # range check with a clear message
        g = build_extremal(args.k, args.phi)
    _emit(format_edge_list(g), args.out, stdout)
    return EXIT_OK


def cmd_rho(args, stdout, stderr):
    g = _read_graph(args.input)
    res = spectral_radius(g, tol=args.tol)
    if args.json:
        _dump({"n": g.n, "rho": res.rho, "perron": res.perron.tolist(),
               "residual": res.residual, "iterations": res.iterations}, stdout)
    else:
        stdout.write(f"rho = {res.rho:.12f}\n")
        stdout.write("perron = " + " ".join(f"{x:.12f}" for x in res.perron) + "\n")
        stdout.write(f"residual = {res.residual:.3e}\n")
        stdout.write(f"iterations = {res.iterations}\n")
    return EXIT_OK


def cmd_dissociation(args, stdout, stderr):
    g = _read_graph(args.input)
    cert = dissociation_dp(g) if args.method == "dp" else dissociation_brute(g)
    members = sorted(cert.set)
    if args.json:
        _dump({"n": g.n, "method": args.method, "phi": cert.phi, "set": members}, stdout)
    else:
        stdout.write(f"phi = {cert.phi}\n")
        stdout.write("set = " + " ".join(map(str, members)) + "\n")
    return EXIT_OK


def cmd_rewrite(args, stdout, stderr):
    g = _read_graph(args.input)
    try:
        op = Op(args.op)
    except ValueError:
        raise UsageError(f"unknown operation {args.op!r}; choose from {', '.join(o.value for o in Op)}") from None
    vertices, blocks = parse_site(args.site)
    dec = block_decomposition(g)
    try:
        site = complete_site(g, dec, op, vertices, blocks)
    except KeyError as exc:
        raise UsageError(f"{op.value} site is missing vertex role {exc.args[0]}") from None
    cert = None
    if args.dset is not None:
        try:
            cert = DissociationCertificate.of(g, (int(x) for x in args.dset.split(",") if x.strip()))
        except ValueError:
            raise UsageError(f"bad --dset {args.dset!r}") from None
    report = apply_rewrite(g, op, site, cert, dec)
    if args.json:
        _dump(report.to_json(), stdout)
    else:
        stdout.write(f"operation = {op.value}\n")
        stdout.write(f"rho: {report.rho_before:.12f} -> {report.rho_after:.12f}\n")
        stdout.write(f"phi: {report.phi_before} -> {report.phi_after}\n")
        for name, ok in report.verdicts.items():
            stdout.write(f"  {name}: {'ok' if ok else 'VIOLATED'}\n")
        stdout.write(format_edge_list(report.output))
    if args.out:
        _emit(format_edge_list(report.output), args.out, stdout)
    if not report.contract_ok:
        bad = [k for k, v in report.verdicts.items() if not v]
        stderr.write(f"contract violated: {', '.join(bad)}\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_enumerate(args, stdout, stderr):
    entries = list(census.enumerate_block_graphs(args.k, phi=args.phi, workers=args.workers))
    if args.jsonl is not None:
        if args.jsonl == "-":
            census.write_census_jsonl(entries, stdout)
        else:
            with open(args.jsonl, "w", encoding="ascii", newline="\n") as fh:
                census.write_census_jsonl(entries, fh)
    if args.jsonl != "-":
        stdout.write(f"{'canonical':<28} {'phi':>3} {'rho':>16}  extremal\n")
        for e in entries:
            code = e.canonical.decode("ascii", "replace")
            stdout.write(f"{code[:28]:<28} {e.phi:>3} {e.rho:>16.12f}  {'yes' if e.is_extremal else ''}\n")
        stdout.write(f"{len(entries)} classes\n")
    return EXIT_OK


def cmd_verify(args, stdout, stderr):
    theorem = census.verify_main_theorem(args.k, workers=args.workers)
    structure = census.verify_structure_corollaries(args.k, theorem=theorem)
    ok = theorem.passed and structure.passed
    if args.json:
        _dump({"k": args.k, "passed": ok, "theorem": theorem.to_json(), "structure": structure.to_json()}, stdout)
    else:
        stdout.write(f"k = {args.k}\n")
        stdout.write(f"{'phi':>3} {'count':>6} {'max rho':>16}  status\n")
        for r in theorem.rows:
            row = r.to_json()
            rho = "-" if r.max_rho is None else f"{r.max_rho:.12f}"
            stdout.write(f"{r.phi:>3} {r.count:>6} {rho:>16}  {row['status']}\n")
        stdout.write(f"structure: {'PASS' if structure.passed else 'FAIL'}\n")
    if not ok:
        for k, phi, codes in theorem.failures():
            stderr.write(f"counterexample: k={k} phi={phi} maximizers={codes}\n")
        for row in structure.rows:
            if not row.passed:
                stderr.write(f"structure violated: phi={row.phi} blocks={row.block_sizes}\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_export_dot(args, stdout, stderr):
    g = _read_graph(args.input)
    _emit(to_dot(g, args.name), args.out, stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blockgraphs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    workers = os.cpu_count() or 1

    p = sub.add_parser("construct", help="write B(k, phi) or a central block graph as an edge list")
    p.add_argument("--k", type=int)
    p.add_argument("--phi", type=int)
    p.add_argument("--spec", help='block spec such as "K2+K3^2+K6"')
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("rho", help="spectral radius and Perron vector")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("dissociation", help="dissociation number and a maximum set")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--method", choices=("dp", "brute"), default="dp")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dissociation)

    p = sub.add_parser("rewrite", help="apply one rewrite at an explicit site")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--op", required=True)
    p.add_argument("--site", required=True, help="e.g. p=3,q=4,r=7,s=8,w=0; blocks as K_m=0/1/2/3")
    p.add_argument("--dset", help="comma-separated maximum dissociation set (default: solver's)")
    p.add_argument("--out", help="also write the output graph here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("enumerate", help="census of block graphs on k vertices")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--phi", type=int)
    p.add_argument("--jsonl", help="write JSON lines here ('-' for stdout)")
    p.add_argument("--workers", type=int, default=workers)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="exhaustive check of the extremal theorem for one k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--workers", type=int, default=workers)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dot", help="render an edge list as Graphviz DOT")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--name", default="G")
    p.set_defaults(func=cmd_export_dot)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
        return args.func(args, stdout, stderr)
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except (UsageError, SpecError, PreconditionError, GraphError, ConvergenceError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
