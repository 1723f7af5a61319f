"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

from fusionlab import __version__, config
from fusionlab.errors import DomainError, ResourceCapError, VerificationError

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunConfig:
    dimension_cap: int = config.DIMENSION_CAP
    tuple_cap: int = config.TUPLE_CAP
    params_policy: str = "integers"
    seed: int = 0
    output_format: str = "json"

    def __post_init__(self):
        if self.dimension_cap <= 0 or self.tuple_cap <= 0:
            raise DomainError("caps must be positive")
        if self.params_policy not in ("integers", "random-rational"):
            raise DomainError(f"unknown parameter policy {self.params_policy!r}")
        if self.output_format not in ("json", "csv", "pretty"):
            raise DomainError(f"unknown output format {self.output_format!r}")

    def params(self, n):
        if self.params_policy == "integers":
            return list(range(n))
        from fusionlab.sl2mod import parameter_sets
        return parameter_sets(n, self.seed)[2]


# output


def jsonable(x):
    """Plain JSON data: exact rationals become strings, tuples become lists."""
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, str) else k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        return str(x)
    return str(x)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and all(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj) if isinstance(obj, list) else obj


def emit(report, fmt, out=None):
    out = out or sys.stdout
    data = jsonable(report)
    if fmt == "json":
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        rows = data.get("rows") if isinstance(data, dict) else None
        buf = io.StringIO()
        if isinstance(rows, list) and rows and all(isinstance(r, dict) for r in rows):
            keys = sorted({k for r in rows for k in r})
            w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                            for k, v in r.items()})
        else:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["key", "value"])
            for k, v in _flatten(data):
                w.writerow([k, v])
        out.write(buf.getvalue())
    else:
        out.write(_pretty(data) + "\n")


def _pretty(data, indent=0):
    pad = "  " * indent
    if isinstance(data, dict):
        lines = []
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(data, list):
        return "\n".join(f"{pad}- " + _pretty(v, indent + 1).lstrip() for v in data)
    return f"{pad}{data}"


def _flat_list(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def envelope(command, cfg, body):
    return {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "command": command,
            "config": asdict(cfg), **body}


# argument helpers


def _ints(text):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _rationals(text):
    try:
        return [Fraction(x) for x in text.replace(" ", "").split(",") if x != ""]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma separated rationals, got {text!r}")


def _root_system(args):
    from fusionlab.rootsys import build_root_system
    return build_root_system(args.type, args.rank)


# subcommands


def cmd_roots(args, cfg):
    rs = _root_system(args)
    return envelope("roots", cfg, {"root_system": rs.to_dict()}), EXIT_OK


def cmd_demazure_params(args, cfg):
    from fusionlab.demazure import demazure_params, demazure_relations, truncation_bound
    rs = _root_system(args)
    rows = []
    for beta in rs.positive_roots:
        p = demazure_params(args.level, args.weight, beta, rs)
        rows.append({"beta": list(beta), "p_beta": p.p_beta, "m_beta": p.m_beta,
                     "d_beta": p.d_beta, "pairing": p.value})
    body = {"level": args.level, "weight": args.weight, "rows": rows,
            "relations": [r.to_dict() for r in demazure_relations(args.level, args.weight, rs).relations]}
    code = EXIT_OK
    if args.bound_n is not None:
        rep = truncation_bound(args.level, args.bound_n, args.lam1, args.lam0, rs)
        body["bound"] = {"N": args.bound_n, "lambda1": args.lam1, "lambda0": args.lam0, "ok": rep.ok,
                         "rows": [{"beta": list(r.beta), "p_beta": r.p_beta, "m_beta": r.m_beta,
                                   "bound": r.bound, "holds": r.holds} for r in rep.rows]}
        code = EXIT_OK if rep.ok else EXIT_FAIL
    return envelope("demazure-params", cfg, body), code


def cmd_order(args, cfg):
    from fusionlab.weightorder import (check_unique_maximum, compare, enumerate_tuples,
                                       expected_maximum, maximal_elements, WeightTuple)
    rs = _root_system(args)
    if args.compare:
        a, b = (WeightTuple(tuple(tuple(_ints(w)) for w in t.split(";"))) for t in args.compare)
        return envelope("order", cfg, {"compare": [a.as_lists(), b.as_lists()],
                                       "order": compare(a, b, rs).value}), EXIT_OK
    tuples = enumerate_tuples(args.weight, args.n, cfg.tuple_cap)
    maxima = maximal_elements(args.weight, args.n, rs, cfg.tuple_cap)
    exp = expected_maximum(args.weight, args.n, rs)
    body = {"weight": args.weight, "N": args.n, "count": len(tuples),
            "maximal": [t.as_lists() for t in maxima],
            "expected": exp.as_lists() if exp else None}
    code = EXIT_OK
    if exp is not None:
        rep = check_unique_maximum(args.weight, args.n, rs, cap=cfg.tuple_cap)
        body["unique_maximum_ok"] = rep.ok
        code = EXIT_OK if rep.ok else EXIT_FAIL
    if args.list:
        body["tuples"] = [t.as_lists() for t in tuples]
    return envelope("order", cfg, body), code


def cmd_fusion(args, cfg):
    from fusionlab.sl2mod import fusion_graded_of
    if args.weights:
        ks = args.weights
    else:
        if args.k is None or args.n is None:
            raise DomainError("give --k and --n (and optionally --j), or --weights")
        if not 0 <= args.j < args.n:
            raise DomainError("need 0 <= j < n")
        ks = [args.k] * (args.n - args.j) + [args.k + 1] * args.j
    params = args.params if args.params else cfg.params(len(ks))
    filt = fusion_graded_of(ks, params, cap=cfg.dimension_cap)
    if filt.defect:
        raise VerificationError(f"cyclic span has codimension {filt.defect}")
    body = {"weights": ks, "params": [str(z) for z in params],
            "graded_dims": filt.graded_dims().to_list(), "total_dim": filt.selected}
    if args.emit_character:
        body["weight_graded_dims"] = [{"weight": w, "degree": s, "dim": d}
                                      for (w, s), d in filt.weight_graded_dims().items()]
    return envelope("fusion", cfg, body), EXIT_OK


def cmd_pbw(args, cfg):
    from fusionlab.pbw import (enumerate_S, expected_dim, recursive_basis, sl2_weights,
                               verify_basis_property, verify_equivalence)
    top = None if args.carry_top is None else args.carry_top
    body = {"k": args.k, "j": args.j, "N": args.n, "expected_dim": expected_dim(args.k, args.j, args.n)}
    if args.carry_top is not None:
        body["carry_top"] = args.carry_top
    mode = args.mode
    if mode in ("inequality", "both"):
        body["inequality"] = [list(u) for u in enumerate_S(args.k, args.j, args.n, cfg.tuple_cap, top)]
    if mode in ("recursive", "both"):
        body["recursive"] = sorted(list(u) for u in recursive_basis(sl2_weights(args.k, args.j, args.n)))
    code = EXIT_OK
    if args.verify:
        eq = verify_equivalence(args.k, args.j, args.n, cfg.tuple_cap, top)
        bp = verify_basis_property(args.k, args.j, args.n, route=args.route,
                                   cap=cfg.dimension_cap, carry_top=top)
        body["equivalence"] = eq.to_dict()
        body["basis"] = bp.to_dict()
        code = EXIT_OK if eq.ok and bp.ok else EXIT_FAIL
    key = "inequality" if "inequality" in body else "recursive"
    body["rows"] = [{"exponents": u} for u in body.get(key, [])]
    return envelope("pbw", cfg, body), code


def cmd_toroidal(args, cfg):
    from fusionlab.toroidal import verify_theorem1_sl2
    params = args.params if args.params else cfg.params(args.n)
    rep = verify_theorem1_sl2(args.level, args.c, args.lambda0, args.n, params,
                              cap=cfg.dimension_cap)
    body = rep.to_dict()
    body["params"] = [str(z) for z in params]
    body["left_table"] = rep.left.table()
    body["right_table"] = rep.right.table()
    return envelope("toroidal", cfg, body), EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify_all(args, cfg):
    from fusionlab.acceptance import CHECKS, FAIL, CheckConfig, run_check
    offset = args.carry_offset
    if args.corrupt_carry_range and offset == 0:
        offset = -1
    ccfg = CheckConfig(cfg.dimension_cap, cfg.tuple_cap, cfg.seed, offset)
    wanted = args.only or list(range(1, len(CHECKS) + 1))
    for n in wanted:
        if not 1 <= n <= len(CHECKS):
            raise DomainError(f"no criterion {n}")
    t0 = time.perf_counter()
    results = _run_checks(sorted(set(wanted)), ccfg, args.jobs)
    for r in results:
        print(r.line(), file=sys.stderr, flush=True)
    body = {"seed": cfg.seed, "carry_offset": offset, "seconds": round(time.perf_counter() - t0, 3),
            "checks": [r.to_dict() for r in results],
            "rows": [{"number": r.number, "name": r.name, "status": r.status, "cases": r.cases,
                      "skipped": len(r.skipped), "failed": len(r.failures),
                      "seconds": round(r.seconds, 3)} for r in results]}
    body["verdict"] = FAIL if any(r.status == FAIL for r in results) else "PASS"
    return envelope("verify-all", cfg, body), EXIT_FAIL if body["verdict"] == FAIL else EXIT_OK


def _run_checks(numbers, ccfg, jobs):
    from fusionlab.acceptance import run_check
    if jobs <= 1:
        return [run_check(n, ccfg) for n in numbers]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = {n: pool.submit(run_check, n, ccfg) for n in numbers}
        # report order is fixed by criterion number, not completion order
        return [futures[n].result() for n in numbers]


# parser


def build_parser():
    p = argparse.ArgumentParser(prog="fusionlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"fusionlab {__version__}")
    common = argparse.ArgumentParser(add_help=False)

    def shared(parser, suppress):
        dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        parser.add_argument("--dimension-cap", type=int, default=dflt(None),
                            help=f"largest module dimension (default {config.DIMENSION_CAP}, "
                                 f"env {config.ENV_DIMENSION_CAP})")
        parser.add_argument("--tuple-cap", type=int, default=dflt(None),
                            help=f"largest enumeration (default {config.TUPLE_CAP}, "
                                 f"env {config.ENV_TUPLE_CAP})")
        parser.add_argument("--params-policy", choices=["integers", "random-rational"],
                            default=dflt("integers"))
        parser.add_argument("--seed", type=int, default=dflt(0))
        parser.add_argument("--format", dest="output_format", choices=["json", "csv", "pretty"],
                            default=dflt("json"))

    shared(p, False)
    # the same options are accepted after the subcommand too
    shared(common, True)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    def typed(sp):
        sp.add_argument("--type", required=True, choices=list("ABCDG"))
        sp.add_argument("--rank", type=int, required=True)

    sp = add("roots", help="positive roots, highest root, Cartan matrix")
    typed(sp)
    sp.set_defaults(func=cmd_roots)

    sp = add("demazure-params", help="p_beta, m_beta for every positive root")
    typed(sp)
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--weight", type=_ints, required=True, help="e.g. 2,1")
    sp.add_argument("--bound-n", type=int, default=None, help="also check the truncation bound")
    sp.add_argument("--lam1", type=_ints, default=None)
    sp.add_argument("--lam0", type=_ints, default=None)
    sp.set_defaults(func=cmd_demazure_params)

    sp = add("order", help="maximal tuples in the partial order")
    typed(sp)
    sp.add_argument("--weight", type=_ints, required=False)
    sp.add_argument("--n", type=int, required=False)
    sp.add_argument("--list", action="store_true", help="include every tuple")
    sp.add_argument("--compare", nargs=2, metavar="TUPLE",
                    help="two tuples such as '1,0;0,1' '0,0;1,1'")
    sp.set_defaults(func=cmd_order)

    sp = add("fusion", help="graded dimensions of V(k)^(n-j) * V(k+1)^j")
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--j", type=int, default=0)
    sp.add_argument("--weights", type=_ints, default=None, help="explicit highest weights")
    sp.add_argument("--params", type=_rationals, default=None, help="e.g. 0,1,-1/2")
    sp.add_argument("--emit-character", action="store_true")
    sp.set_defaults(func=cmd_fusion)

    sp = add("pbw", help="PBW monomial bases of W(kn+j, n)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--j", type=int, default=0)
    sp.add_argument("--n", type=int, required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--recursive", dest="mode", action="store_const", const="recursive")
    g.add_argument("--inequality", dest="mode", action="store_const", const="inequality")
    g.add_argument("--both", dest="mode", action="store_const", const="both")
    sp.set_defaults(mode="inequality")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--route", choices=["auto", "quotient", "presentation"], default="auto")
    sp.add_argument("--carry-top", type=int, default=None,
                    help="last carry index (default n-4); for experiments only")
    sp.add_argument("--csv", action="store_true", help="same as --format csv")
    sp.set_defaults(func=cmd_pbw)

    sp = add("toroidal", help="compare bigraded tables for sl2")
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--lambda0", type=int, default=0)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--params", type=_rationals, default=None)
    sp.set_defaults(func=cmd_toroidal)

    sp = add("verify-all", help="run every acceptance check")
    sp.add_argument("--only", type=_ints, default=None, help="criterion numbers, e.g. 1,2,3")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--corrupt-carry-range", action="store_true",
                    help="deliberately shorten the carry range by one (negative test)")
    sp.add_argument("--carry-offset", type=int, default=0,
                    help="shift the last carry index by this amount")
    sp.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None, out=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if getattr(args, "csv", False):
        args.output_format = "csv"
    if args.command == "order" and not args.compare and (args.weight is None or args.n is None):
        parser.error_code = EXIT_USAGE
        print("order: give --weight and --n, or --compare", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = RunConfig(config.dimension_cap(args.dimension_cap), config.tuple_cap(args.tuple_cap),
                        args.params_policy, args.seed, args.output_format)
        report, code = args.func(args, cfg)
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(report, cfg.output_format, out)
    return code


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
