"""Command-line interface.

Subcommands: ``dualcheeger``, ``maxcut``, ``eigen verify``, ``eigen
enumerate``, ``oracle dualcheeger``, ``oracle maxcut`` and ``bench``.
Results go to stdout as JSON (CSV for ``bench`` and ``maxcut --csv``).
Exit status is 0 on success, 1 on domain or capacity errors, 2 on usage
errors.
"""

import argparse
import csv
import io
import json
import os
import sys
import time
import zlib
from pathlib import Path

import numpy as np

from . import __version__
from .cut import rsc_maxcut
from .eigen import enumerate_ternary_eigenpairs, verify_eigenpair
from .exceptions import CapacityError, DomainError
from .graph import read_gset
from .ipm import IpmConfig, ipm_multistart
from .oracle import oracle_dual_cheeger, oracle_maxcut

BENCH_HEADER = ["Graph", "|V|", "|E|", "d2-obj1", "d2-obj2", "d1-obj1", "d1-obj2"]


def _config(args, seed=None):
    return IpmConfig(outer_tol=args.tol, rng_seed=args.seed if seed is None else seed)


def _threads(args):
    return args.threads or os.cpu_count() or 1


def read_vector(path):
    with open(path) as fh:
        return np.array([float(t) for t in fh.read().split()])


def cmd_dualcheeger(args, g):
    res = ipm_multistart(g, args.restarts, _config(args), n_jobs=_threads(args))
    mu = res.trace.eigenvalue
    return {
        "mu1": mu,
        "h_plus": 1.0 - mu,
        "pair": res.dual_pair.as_dict(),
        "verified": res.trace.verified,
        "iterations": res.trace.iterations,
    }


def _table_row(name, g, args, seed):
    cfg = _config(args, seed)
    vals = [rsc_maxcut(g, s, o, cfg, args.restarts).cut_weight for s in ("d2", "d1") for o in (1, 2)]
    return [name, g.n, g.m] + [_num(v) for v in vals]


def _num(v):
    return int(v) if float(v).is_integer() else v


def _csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_maxcut(args, g):
    if args.csv:
        return _csv([_table_row(Path(args.graph).stem, g, args, args.seed)])
    order = None
    if args.greedy_seed is not None:
        order = np.random.default_rng(args.greedy_seed).permutation(g.n)
    res = rsc_maxcut(g, args.solver, args.objfun, _config(args), args.restarts, greedy_order=order)
    return res.as_dict()


def cmd_eigen_verify(args, g):
    x = read_vector(args.vector)
    if len(x) != g.n:
        raise DomainError(f"vector has {len(x)} entries, graph has {g.n} vertices")
    cert = verify_eigenpair(g, x, args.tol)
    if cert is None:
        return {"verified": False}
    return {"verified": True, **cert.as_dict(g)}


def cmd_eigen_enumerate(args, g):
    return [{"mu": mu, **pair.as_dict()} for mu, pair in enumerate_ternary_eigenpairs(g)]


def cmd_oracle_dualcheeger(args, g):
    return oracle_dual_cheeger(g).as_dict()


def cmd_oracle_maxcut(args, g):
    res = oracle_maxcut(g)
    s, t = res.witness
    return {
        "value": _num(res.cut),
        "fraction": res.fraction,
        "h_max": res.value,
        "witness": {"S": sorted(s), "T": sorted(t)},
    }


def cmd_bench(args):
    rows = []
    for path in args.graphs:
        try:
            g = read_gset(path)
            seed = args.seed ^ zlib.crc32(Path(path).name.encode())
            rows.append(_table_row(Path(path).stem, g, args, seed))
        except (OSError, DomainError, CapacityError) as err:
            print(f"{path}: {err}", file=sys.stderr)
    return _csv(rows)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--restarts", type=int, default=20)
    common.add_argument("--tol", type=float, default=1e-6)
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")
    common.add_argument("--report", action="store_true", help="wrap the result in a run report")

    parser = argparse.ArgumentParser(prog="signlesslap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dualcheeger", parents=[common], help="dual Cheeger constant by the inverse power method")
    p.add_argument("graph")
    p.set_defaults(func=cmd_dualcheeger)

    p = sub.add_parser("maxcut", parents=[common], help="maxcut by recursive spectral cut")
    p.add_argument("graph")
    p.add_argument("--solver", choices=["d1", "d2"], default="d1")
    p.add_argument("--objfun", type=int, choices=[1, 2], default=2)
    p.add_argument("--greedy-seed", type=int, default=None, help="seeded random vertex order for the greedy fallback")
    p.add_argument("--csv", action="store_true", help="emit a benchmark-table row for all four solver/objective pairs")
    p.set_defaults(func=cmd_maxcut)

    p = sub.add_parser("eigen", help="eigenpair tools")
    esub = p.add_subparsers(dest="eigen_command", required=True)
    q = esub.add_parser("verify", parents=[common])
    q.add_argument("graph")
    q.add_argument("vector")
    q.set_defaults(func=cmd_eigen_verify, tol=1e-9)
    q = esub.add_parser("enumerate", parents=[common])
    q.add_argument("graph")
    q.set_defaults(func=cmd_eigen_enumerate)

    p = sub.add_parser("oracle", help="exhaustive ground truth for small graphs")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    q = osub.add_parser("dualcheeger", parents=[common])
    q.add_argument("graph")
    q.set_defaults(func=cmd_oracle_dualcheeger)
    q = osub.add_parser("maxcut", parents=[common])
    q.add_argument("graph")
    q.set_defaults(func=cmd_oracle_maxcut)

    p = sub.add_parser("bench", parents=[common], help="benchmark table over G-set files")
    p.add_argument("graphs", nargs="*")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    graph = None
    try:
        if args.func is cmd_bench:
            payload = cmd_bench(args)
        else:
            graph = read_gset(args.graph)
            payload = args.func(args, graph)
    except (OSError, DomainError, CapacityError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    if args.report:
        payload = {
            "command": list(sys.argv[1:] if argv is None else argv),
            "graph": None if graph is None else {"n": graph.n, "m": graph.m, "total_weight": graph.total_weight},
            "result": payload,
            "wall_time": time.perf_counter() - start,
            "seed": args.seed,
            "version": __version__,
        }
    if isinstance(payload, str):
        sys.stdout.write(payload)
    else:
        print(json.dumps(payload))
    return 0


if __name__ == "__main__":
    sys.exit(main())
