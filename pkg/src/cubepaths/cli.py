"""Command line front end.

Verdicts go to stdout; the exit code only says whether the command ran:
0 success, 2 usage error, 3 input format error, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import chains, pcs
from .chains import ResourceCapError, build_category, enumerate_chains
from .dpath import DPathError
from .flow import path_space_model
from .pv import PvError, compile_pv, parse_pv
from .spatial import DEFAULT_GRIDS, is_proper, is_spatial

EXIT_USAGE = 2
EXIT_FORMAT = 3
EXIT_CAP = 4


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> pcs.PrecubicalSet:
    K = pcs.loads(_read(path))
    problems = pcs.validate(K)
    if problems:
        raise pcs.PcsFormatError(f"not a precubical set: {problems[0]}")
    return K


def _vertices(K, args):
    for v in (args.source, args.target):
        if K.dims.get(v) != 0:
            raise pcs.PcsFormatError(f"{v!r} is not a vertex of the input")
    return args.source, args.target


def _bound(K, n_max):
    try:
        return chains.grade_bound(K, n_max)
    except ValueError as exc:
        raise UsageError(f"{exc} (use --max-grade)") from None


def cmd_validate(args, out):
    K = pcs.loads(_read(args.input))
    problems = pcs.validate(K)
    out.write(f"violations = {len(problems)}\n")
    for p in problems:
        out.write(p + "\n")


def cmd_info(args, out):
    K = _load(args.input)
    out.write(f"dim = {K.dim}\n")
    for k, n in enumerate(K.counts()):
        out.write(f"cells {k} = {n}\n")
    out.write(f"acyclic = {'yes' if chains.is_acyclic(K) else 'no'}\n")
    out.write(f"proper = {'yes' if is_proper(K).proper else 'no'}\n")


def cmd_gen(args, out):
    kind, params = args.kind, args.params
    try:
        if kind == "loop":
            K = pcs.loop()
        elif kind in ("cube", "boundary"):
            (n,) = map(int, params)
            K = pcs.standard_cube(n) if kind == "cube" else pcs.boundary_cube(n)
        elif kind == "chain":
            K = pcs.chain_cube([int(x) for x in params])
        elif kind == "amalgam":
            n = int(params[0])
            along = params[1:] or ["boundary"]
            words = pcs.boundary_cube(n).dims if along == ["boundary"] else along
            K = pcs.amalgam(n, words)[0]
        else:
            raise UsageError(f"unknown generator {kind!r}")
    except (ValueError, pcs.PcsError) as exc:
        raise UsageError(f"gen {kind}: {exc}") from None
    out.write(pcs.dumps(K))


def cmd_chains(args, out):
    K = _load(args.input)
    source, target = _vertices(K, args)
    found = enumerate_chains(K, source, target, _bound(K, args.max_grade))
    cats = {g: build_category(K, source, target, g, objs) for g, objs in found.items()}
    out.write(chains.dumps(cats))


def cmd_pathspace(args, out):
    K = _load(args.input)
    source, target = _vertices(K, args)
    out.write(path_space_model(K, source, target, _bound(K, args.max_grade)).report())


def cmd_homology(args, out):
    K = _load(args.input)
    source, target = _vertices(K, args)
    model = path_space_model(K, source, target, _bound(K, args.max_grade))
    out.write(f"homology v1\nfrom {source} to {target}\n")
    for g in sorted(model.grades):
        out.write(f"grade {g}\n")
        for line in model.grades[g].homology.lines():
            out.write(f"  {line}\n")


def cmd_proper(args, out):
    out.write(is_proper(_load(args.input)).report())


def cmd_spatial(args, out):
    K = _load(args.input)
    grids = (args.grid,) if args.grid else DEFAULT_GRIDS
    if args.grid is not None and args.grid < 2:
        raise UsageError("--grid must be at least 2")
    out.write(is_spatial(K, grids).report())


def cmd_pv(args, out):
    if args.action != "compile":
        raise UsageError(f"unknown pv action {args.action!r}")
    out.write(pcs.dumps(compile_pv(parse_pv(_read(args.input)))))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubepaths", description="Path-space models of precubical sets."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the cubical relations")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", help="cell counts and basic properties")
    p.add_argument("input")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("gen", help="generate a standard complex")
    p.add_argument("kind", choices=["cube", "boundary", "chain", "amalgam", "loop"])
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_gen)

    for name, func, helptext in [
        ("pathspace", cmd_pathspace, "graded path-space model"),
        ("homology", cmd_homology, "homology of the path-space model"),
        ("chains", cmd_chains, "cube-chain categories"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input")
        p.add_argument("--from", dest="source", required=True)
        p.add_argument("--to", dest="target", required=True)
        p.add_argument("--max-grade", type=int, default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("proper", help="decide properness")
    p.add_argument("input")
    p.set_defaults(func=cmd_proper)

    p = sub.add_parser("spatial", help="decide spatiality")
    p.add_argument("input")
    p.add_argument("--grid", type=int, default=None)
    p.set_defaults(func=cmd_spatial)

    p = sub.add_parser("pv", help="PV programs")
    p.add_argument("action", choices=["compile"])
    p.add_argument("input")
    p.set_defaults(func=cmd_pv)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except UsageError as exc:
        print(f"cubepaths: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (pcs.PcsFormatError, PvError, DPathError, OSError) as exc:
        print(f"cubepaths: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except ResourceCapError as exc:
        print(f"cubepaths: {exc}", file=sys.stderr)
        return EXIT_CAP
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
