"""Command line front end.

Exit codes: 0 all good, 1 a verification row failed or a property is absent,
2 usage or parse errors. Flags override the RATGROUPS_* environment variables.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import config as cfgmod
from .catalog import CatalogError, catalog_entries
from .chartab import CapExceeded, character_table_for, render_e
from .descr import DescriptionError, parse_description
from .groups import EnumerationCapError, SemidirectOps, prime_graph
from .rationality import classify
from .verify import render_rows, run_verification


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ratgroups",
        description="rationality properties of finite groups, exactly",
    )
    p.add_argument("--cap", type=int, default=None, help="enumeration cap (elements)")
    p.add_argument("--dixon-cap", type=int, default=None,
                   help="largest order for the eigenvalue method")
    p.add_argument("--cache-dir", default=None, help="character table cache directory")
    p.add_argument("--format", choices=("text", "machine"), default=None)
    sub = p.add_subparsers(dest="command")
    pa = sub.add_parser("analyze", help="full rationality report for one group")
    pa.add_argument("group", help="description document, file path, or catalog:NAME")
    pc = sub.add_parser("chartable", help="print the character table")
    pc.add_argument("group")
    pl = sub.add_parser("catalog", help="catalog operations")
    pl.add_argument("action", choices=("list",))
    sub.add_parser("verify", help="run every classification check row")
    sub.add_parser("verify-paper", help=argparse.SUPPRESS)
    return p


def _config(args) -> cfgmod.Config:
    base = cfgmod.from_env()
    return cfgmod.Config(
        cap=args.cap if args.cap is not None else base.cap,
        dixon_cap=args.dixon_cap if args.dixon_cap is not None else base.dixon_cap,
        cache_dir=args.cache_dir if args.cache_dir is not None else base.cache_dir,
        fmt=args.format if args.format is not None else base.fmt,
    )


def _load_group(text: str, cap: int):
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    g = parse_description(text)
    g.cap = cap
    return g


def cmd_analyze(args, cfg: cfgmod.Config, out) -> int:
    g = _load_group(args.group, cfg.cap)
    print(f"group: {g.name or 'anonymous'}", file=out)
    print(f"order: {g.order()}", file=out)
    print(f"exponent: {g.exponent()}", file=out)
    conj = g.conjugacy()
    pairs = ", ".join(f"{o}^{s}" for o, s in zip(conj.orders, conj.sizes))
    print(f"classes ({conj.num_classes()}): order^size = {pairs}", file=out)
    pg = prime_graph(g)
    edges = sorted(tuple(sorted(e)) for e in pg.edges)
    print(f"prime graph: vertices {list(pg.vertices)}, edges {edges}", file=out)
    ops = g.ops
    if isinstance(ops, SemidirectOps):
        print(f"semidirect: kernel C_{ops.p}^{ops.d}, complement of order "
              f"{len(ops.comp_index)}", file=out)
    report = classify(g)
    print(f"exponent-residue data:", file=out)
    for c, o, res in report.class_residues:
        print(f"  class {c} (order {o}): residues {res.render()}", file=out)
    print(f"rationality R = {report.rationality.render()}", file=out)
    print(f"semi-rationality S = {report.semirationality.render()}", file=out)
    for flag in ("rational", "semi_rational", "uniformly_semi_rational",
                 "inverse_semi_rational"):
        val = report.flag(flag)
        line = f"{flag}: {val}"
        if not val and flag in report.witnesses:
            line += f"  [{report.witnesses[flag]}]"
        print(line, file=out)
    if report.quadratic_rational is None:
        print("quadratic_rational: unavailable (table caps)", file=out)
    else:
        line = f"quadratic_rational: {report.quadratic_rational}"
        if not report.quadratic_rational:
            line += f"  [{report.witnesses.get('quadratic_rational', '')}]"
        print(line, file=out)
    return 0


def cmd_chartable(args, cfg: cfgmod.Config, out) -> int:
    g = _load_group(args.group, cfg.cap)
    t = character_table_for(g, dixon_cap=cfg.dixon_cap, cache_dir=cfg.cache_dir)
    conj = t.conj
    header = ["chi\\class"] + [f"{o}[{s}]" for o, s in zip(conj.orders, conj.sizes)]
    rows = [header]
    for i, row in enumerate(t.rows):
        rows.append([f"X{i}(deg {t.degrees[i]})"] + [render_e(v) for v in row])
    widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
    for r in rows:
        print("  ".join(x.rjust(w) for x, w in zip(r, widths)), file=out)
    return 0


def cmd_catalog_list(out) -> int:
    for e in catalog_entries():
        print(f"{e.name:20s} {e.kind:14s} {e.description}", file=out)
    return 0


def cmd_verify(cfg: cfgmod.Config, out) -> int:
    rows, code = run_verification(cfg)
    out.write(render_rows(rows, cfg.fmt))
    return code


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    if not args.command:
        parser.print_help()
        return 2
    cfg = _config(args)
    out = sys.stdout
    try:
        if args.command == "analyze":
            return cmd_analyze(args, cfg, out)
        if args.command == "chartable":
            return cmd_chartable(args, cfg, out)
        if args.command == "catalog":
            return cmd_catalog_list(out)
        if args.command in ("verify", "verify-paper"):
            return cmd_verify(cfg, out)
    except DescriptionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (CatalogError, CapExceeded, EnumerationCapError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
