"""Command-line front end.

Subcommands
-----------
sieve       --limit N --out PATH          build and cache an SPF table
eval        --n N [--table PATH]          phi, lambda, compositions, exact log ratio
decompose   --x X [--schema rows|per-n]   stream per-n CSV
experiment  --name NAME --x X [...]       emit a JSON report
constants   --name NAME [...]             emit JSON records
dist        --x X --t-grid T1,T2,...      empirical distribution of n/phi(n)

CSV schemas (both start with a "# schema_version=..." comment line):
rows:   n,large_sum,small_lambda_lambda,g,g0,h,in_S   (real values, in_S 0/1)
per-n:  n,phi,lambda,lambda_phi,lambda_lambda,log_ratio,g,g0,h,in_S

Data goes to stdout (or --out), diagnostics to stderr.  Floats are printed
with 12 significant digits so reruns diff cleanly.  The environment
variable LAMBDAPHI_CACHE_DIR names a default directory for cached tables.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

from . import constants as constants_mod
from . import harness
from .decomposition import PSI_CHOICES, scale_params
from .factorint import SpfTable, build_spf_table, factorize, load_spf_table, save_spf_table
from .arith import (
    carmichael_lambda,
    compose,
    euler_phi,
    log_ratio,
)

CACHE_ENV = "LAMBDAPHI_CACHE_DIR"

EXPERIMENT_NAMES = ("theorem1", "mp", "blss", "harland", "egps", "prop4", "lemma3")
CONSTANT_NAMES = ("mertens", "eps", "bt", "tk", "lemma2")


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"invalid config field {field_name!r}: {message}")
        self.field_name = field_name


@dataclass
class ExperimentConfig:
    """Run configuration shared by the range subcommands."""

    x: int
    c: float = 2.0
    psi: str = "sqrt-log3"
    table_path: str | None = None
    fmt: str = "json"
    out: str | None = None
    block_size: int = 65536

    def validate(self) -> None:
        if self.x < 100:
            raise ConfigError("x", f"must be >= 100, got {self.x}")
        if self.block_size < 1:
            raise ConfigError("block_size", f"must be >= 1, got {self.block_size}")
        if self.c <= 0:
            raise ConfigError("c", f"must be positive, got {self.c}")
        if self.psi not in PSI_CHOICES:
            raise ConfigError("psi", f"must be one of {PSI_CHOICES}, got {self.psi!r}")
        if self.fmt not in ("json", "csv"):
            raise ConfigError("output", f"format must be json or csv, got {self.fmt!r}")


def _round12(obj):
    """Round floats to 12 significant digits, recursively, for stable output."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(_round12(obj), indent=2) + "\n", out)


def _get_table(limit: int, table_path: str | None) -> SpfTable:
    path = table_path
    if path is None:
        cache_dir = os.environ.get(CACHE_ENV)
        if cache_dir:
            path = os.path.join(cache_dir, f"spf_{limit}.bin")
    if path and os.path.exists(path):
        table = load_spf_table(path)
        if table.limit >= limit:
            return table
        print(f"cached table at {path} has limit {table.limit} < {limit}; rebuilding", file=sys.stderr)
    table = build_spf_table(limit)
    if path:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        save_spf_table(table, path)
    return table


def _parse_floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _parse_ints(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_sieve(args) -> int:
    table = build_spf_table(args.limit)
    save_spf_table(table, args.out)
    print(f"wrote spf table (limit {args.limit}) to {args.out}", file=sys.stderr)
    return 0


def _cmd_eval(args) -> int:
    n = args.n
    if n < 1:
        raise ConfigError("n", f"must be positive, got {n}")
    table = _get_table(max(n, 4), args.table)
    f = factorize(n, table)
    ratio = log_ratio(n, table)
    lines = [
        f"n = {n}",
        f"factorization = {' * '.join(f'{p}^{a}' if a > 1 else str(p) for p, a in f.parts) or '1'}",
        f"phi = {euler_phi(f)}",
        f"lambda = {carmichael_lambda(f)}",
        f"phi_phi = {compose(n, 'phi', 'phi', table)}",
        f"phi_lambda = {compose(n, 'phi', 'lambda', table)}",
        f"lambda_phi = {compose(n, 'lambda', 'phi', table)}",
        f"lambda_lambda = {compose(n, 'lambda', 'lambda', table)}",
        f"log_ratio = {ratio.symbolic()} = {ratio.real_value():.12g}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_decompose(args) -> int:
    cfg = ExperimentConfig(
        x=args.x, c=args.c, psi=args.psi, table_path=args.table, out=args.out, block_size=args.block_size
    )
    cfg.validate()
    table = _get_table(cfg.x, cfg.table_path)
    params = scale_params(cfg.x, c=cfg.c, psi_choice=cfg.psi)
    if args.schema == "per-n":
        rows = harness.per_n_rows(cfg.x, params, table, block_size=cfg.block_size)
    else:
        rows = harness.decomposition_rows(cfg.x, params, table)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            for line in rows:
                fh.write(line + "\n")
    else:
        for line in rows:
            sys.stdout.write(line + "\n")
    return 0


def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig(x=args.x, c=args.c, psi=args.psi, table_path=args.table, out=args.out)
    cfg.validate()
    table = _get_table(cfg.x, cfg.table_path)
    name = args.name
    if name == "theorem1":
        params = scale_params(cfg.x, c=cfg.c, psi_choice=cfg.psi)
        payload = harness.theorem1_experiment(cfg.x, params, table).to_dict()
    elif name == "mp":
        payload = harness.mp_experiment(cfg.x, table).to_dict()
    elif name == "blss":
        payload = [r.to_dict() for r in harness.blss_experiments(cfg.x, table)]
    elif name == "harland":
        payload = harness.harland_experiment(cfg.x, args.k, table).to_dict()
    elif name == "egps":
        payload = harness.egps_experiment(cfg.x, args.k, table).to_dict()
    elif name == "prop4":
        params = scale_params(cfg.x, c=cfg.c, psi_choice=cfg.psi)
        payload = harness.prop4_experiment(cfg.x, params, table).to_dict()
    else:  # lemma3
        pairs = [(args.q, args.a)] if args.q else [(q, a) for q in (3, 5, 7) for a in (1, 2, 3)]
        payload = []
        for q, a in pairs:
            count, ratio = harness.lemma3_count_check(cfg.x, q, a, table)
            payload.append(
                {
                    "schema_version": harness.SCHEMA_VERSION,
                    "name": "lemma3",
                    "x": cfg.x,
                    "q": q,
                    "a": a,
                    "count": count,
                    "ratio": ratio,
                }
            )
    _emit_json(payload, cfg.out)
    return 0


def _cmd_constants(args) -> int:
    name = args.name
    records: list[dict] = []
    if name == "mertens":
        zs = _parse_floats(args.z) if args.z else [100.0, 10**3, 10**4, 10**5, 10**6]
        limit = int(max(zs))
        table = _get_table(limit, args.table)
        for z in zs:
            v = constants_mod.mertens_sum(z, table)
            records.append({"name": "mertens", "z": z, "value": v, "offset_from_log": v - math.log(z)})
    elif name == "lemma2":
        zs = _parse_floats(args.z) if args.z else [100.0, 10**3, 10**4, 10**5]
        limit = max(int(max(zs)), 10**6)
        table = _get_table(limit, args.table)
        records = constants_mod.prime_sum_ratios(zs, table)
    elif name == "eps":
        limit = args.prime_limit
        table = _get_table(limit, args.table)
        b = constants_mod.eps_constant(limit, table)
        rec = {
            "name": "eps",
            "prime_limit": limit,
            "value": 0.5 * (b.lower + b.upper),
            "lower": b.lower,
            "upper": b.upper,
            "terms_used": b.terms_used,
            "reference": constants_mod.EPS_REFERENCE,
            "note": constants_mod.EPS_SUMMAND_NOTE,
        }
        if b.width >= 1e-3:
            rec["warning"] = f"bracket width {b.width:.3g} >= 1e-3; raise prime_limit"
        records.append(rec)
    elif name == "bt":
        z = float(args.z) if args.z else 10.0**6
        moduli = _parse_ints(args.moduli) if args.moduli else [1, 3, 4, 5]
        table = _get_table(int(z), args.table)
        v = constants_mod.brun_titchmarsh_ratio(z, moduli, table)
        records.append({"name": "bt", "z": z, "moduli": moduli, "value": v})
    else:  # tk
        x = args.x
        table = _get_table(x, args.table)
        params = scale_params(x, c=args.c, psi_choice=args.psi)
        m = constants_mod.turan_kubilius_moments(x, params, table)
        r = constants_mod.turan_kubilius_ratio(x, params, table)
        records.append(
            {
                "name": "tk",
                "x": x,
                "value": r,
                "first_moment": m.first,
                "second_moment": m.second,
                "y_log_Y": params.y * math.log(params.Y) if params.Y > 1 else 0.0,
            }
        )
    _emit_json(records, args.out)
    return 0


def _cmd_dist(args) -> int:
    cfg = ExperimentConfig(x=args.x, table_path=args.table, out=args.out)
    cfg.validate()
    table = _get_table(cfg.x, cfg.table_path)
    t_grid = _parse_floats(args.t_grid)
    est = harness.schoenberg_distribution(cfg.x, t_grid, table)
    _emit_json(est.to_dict(), cfg.out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lambdaphi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="build and cache an SPF table")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("eval", help="evaluate phi/lambda data for one n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--table")
    p.add_argument("--out")

    p = sub.add_parser("decompose", help="stream per-n CSV rows")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--schema", choices=("rows", "per-n"), default="rows")
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--psi", choices=PSI_CHOICES, default="sqrt-log3")
    p.add_argument("--block-size", type=int, default=65536, dest="block_size")
    p.add_argument("--table")
    p.add_argument("--out")

    p = sub.add_parser("experiment", help="run a batch experiment")
    p.add_argument("--name", choices=EXPERIMENT_NAMES, required=True)
    p.add_argument("--x", type=int, default=10**6)
    p.add_argument("--k", type=int, default=1, help="iterate depth for harland/egps")
    p.add_argument("--q", type=int, help="prime for lemma3 (default: the 3,5,7 x 1,2,3 grid)")
    p.add_argument("--a", type=int, default=1, help="exponent for lemma3")
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--psi", choices=PSI_CHOICES, default="sqrt-log3")
    p.add_argument("--table")
    p.add_argument("--out")

    p = sub.add_parser("constants", help="numerical constants and bound checks")
    p.add_argument("--name", choices=CONSTANT_NAMES, required=True)
    p.add_argument("--z", help="comma-separated z values (mertens/lemma2/bt)")
    p.add_argument("--prime-limit", type=int, default=10**6, dest="prime_limit")
    p.add_argument("--moduli", help="comma-separated moduli for bt")
    p.add_argument("--x", type=int, default=10**5, help="range bound for tk")
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--psi", choices=PSI_CHOICES, default="sqrt-log3")
    p.add_argument("--table")
    p.add_argument("--out")

    p = sub.add_parser("dist", help="empirical distribution of n/phi(n)")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--t-grid", default="1,1.5,2,2.5,3", dest="t_grid")
    p.add_argument("--table")
    p.add_argument("--out")

    return parser


_HANDLERS = {
    "sieve": _cmd_sieve,
    "eval": _cmd_eval,
    "decompose": _cmd_decompose,
    "experiment": _cmd_experiment,
    "constants": _cmd_constants,
    "dist": _cmd_dist,
}


def run(argv) -> int:
    """Dispatch a CLI invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints usage itself
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
