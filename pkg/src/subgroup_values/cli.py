"""Command-line front end.

Exit codes: 0 success, 1 domain error (message on stderr), 2 usage error.
All numeric output goes through the selected format (text, csv, or json), so
identical invocations produce byte-identical output.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import factorization
from .counting import (
    Interval,
    count_values_in_subgroup,
    integral_points_in_box,
    shortest_covering_interval,
    subgroup_of_order,
    vinogradov_count,
)
from .errors import ParseError, SubgroupValuesError
from .lambda_scan import exceptional_lambdas
from .lattices import SmallResidueInstance, find_small_residue_multiplier
from .parsing import parse_int_bipoly, parse_poly_expr, parse_rational_expr
from .polynomials import UniPoly, rational_normalize
from .reporting import emit_report, mapping_to_output
from .pipeline import (
    exponent_set,
    reduce_perfect_power,
    run_sweep,
    standard_sweep_cells,
    trace_proof,
)

SUBCOMMANDS = (
    "count",
    "lambda-scan",
    "lattice-find",
    "perfect-power",
    "exponents",
    "trace",
    "sweep",
    "kshort",
    "vinogradov",
    "points",
)


@dataclass
class CliConfig:
    subcommand: str
    fmt: str
    output: str | None
    seed: int
    args: argparse.Namespace


def _parse_interval(text: str):
    """Closed range "a..b" -> (u, H) with u = a - 1, H = b - a + 1."""
    parts = text.split("..")
    if len(parts) != 2:
        raise ParseError("interval must look like a..b", 0)
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("interval endpoints must be integers", 0) from None
    if b < a:
        raise ParseError("interval end precedes its start", 0)
    return a - 1, b - a + 1


def _parse_num_list(text: str, allow_fraction: bool = False):
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if allow_fraction and "/" in piece:
            out.append(Fraction(piece))
        elif allow_fraction and "." in piece:
            out.append(Fraction(piece))
        else:
            out.append(int(piece))
    return out


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="subgroup-values",
        description="Count rational-function values in multiplicative subgroups and "
        "verify the constructive machinery behind the bound.",
    )
    sub = top.add_subparsers(dest="subcommand", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
        sp.add_argument("--output", default=None, help="write to this path instead of stdout")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized internals")

    sp = sub.add_parser("count", help="count interval values landing in a subgroup")
    sp.add_argument("--psi", required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-T", type=int, required=True)
    sp.add_argument("--interval", required=True, help="closed range a..b")
    sp.add_argument("--wrap", action="store_true")
    common(sp)

    sp = sub.add_parser("lambda-scan", help="exceptional multipliers of the symmetrized polynomial")
    sp.add_argument("--psi", required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--max-ext", type=int, default=1)
    common(sp)

    sp = sub.add_parser("lattice-find", help="small-residue multiplier from the lattice construction")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--b", required=True, help="comma-separated residues")
    sp.add_argument("--V", required=True, help="comma-separated bounds")
    common(sp)

    sp = sub.add_parser("perfect-power", help="largest n with psi = phi^n over the closure")
    sp.add_argument("--psi", required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-T", type=int, default=None, help="also reduce a subgroup order")
    common(sp)

    sp = sub.add_parser("exponents", help="the exponent family for degrees (d, e)")
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("-e", type=int, required=True)
    common(sp)

    sp = sub.add_parser("trace", help="replay the proof pipeline on one instance")
    sp.add_argument("--psi", required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-T", type=int, required=True)
    sp.add_argument("--H", type=int, required=True)
    common(sp)

    sp = sub.add_parser("sweep", help="evaluate a grid of instances")
    sp.add_argument("--config", default=None, help="JSON file with a list of cells")
    sp.add_argument("--standard", action="store_true", help="run the built-in corpus")
    sp.add_argument("--jobs", type=int, default=None)
    common(sp)

    sp = sub.add_parser("kshort", help="shortest interval covering H consecutive values")
    sp.add_argument("--psi", required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--H", type=int, required=True)
    sp.add_argument("--wrap", action="store_true")
    common(sp)

    sp = sub.add_parser("vinogradov", help="count power-sum solutions J_{d,k}(H)")
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--H", type=int, required=True)
    sp.add_argument("--budget", type=int, default=10**9)
    common(sp)

    sp = sub.add_parser("points", help="integer points of a plane curve in a box")
    sp.add_argument("--poly", required=True, help="integer polynomial in x and y")
    sp.add_argument("--H", type=int, required=True)
    common(sp)

    return top


def _emit_pairs(pairs, cfg: CliConfig) -> None:
    text = mapping_to_output(pairs, cfg.fmt)
    if cfg.output:
        with open(cfg.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_count(cfg):
    a = cfg.args
    u, H = _parse_interval(a.interval)
    psi = parse_rational_expr(a.psi, a.p)
    G = subgroup_of_order(a.p, a.T)
    n, _ = count_values_in_subgroup(psi, Interval(u, H, wrap=a.wrap), G)
    if cfg.fmt == "text":
        _emit_pairs([("N", n)], cfg)
    else:
        _emit_pairs(
            [("p", a.p), ("d", psi.num.degree), ("e", psi.den.degree),
             ("H", H), ("T", a.T), ("u", u), ("N", n)],
            cfg,
        )


def _cmd_lambda_scan(cfg):
    a = cfg.args
    psi = parse_rational_expr(a.psi, a.p)
    report = exceptional_lambdas(psi, a.p, max_ext=a.max_ext)
    entries = []
    for w in report.exceptional:
        key = w.lam.ctx.raw_key(w.lam.raw)
        tag = f"{key}" if w.lam.ctx.t == 1 else f"{key}@{w.lam.ctx.t}"
        entries.append(tag)
    _emit_pairs(
        [("p", a.p), ("psi", psi.text()), ("degree", psi.D), ("bound", report.bound),
         ("count", report.count), ("lambdas", ";".join(entries))],
        cfg,
    )


def _cmd_lattice_find(cfg):
    a = cfg.args
    b = _parse_num_list(a.b)
    V = _parse_num_list(a.V, allow_fraction=True)
    inst = SmallResidueInstance(a.p, tuple(b), tuple(V))
    v = find_small_residue_multiplier(inst)
    from .fields import centered_residue

    residues = ";".join(str(centered_residue(bi * v, a.p)) for bi in b)
    _emit_pairs([("p", a.p), ("s", inst.s), ("v", v), ("residues", residues)], cfg)


def _cmd_perfect_power(cfg):
    a = cfg.args
    psi = parse_rational_expr(a.psi, a.p)
    n = factorization.perfect_power_exponent(psi)
    pairs = [("psi", psi.text()), ("p", a.p), ("exponent", n)]
    if n > 1:
        root = factorization.extract_power_root(psi, n)
        pairs.append(("root", root.text() if root.ctx.t == 1 else f"<degree-{root.ctx.t} extension>"))
    if a.T is not None:
        _, reduced = reduce_perfect_power(psi, a.T)
        pairs.append(("reduced_order", reduced))
    _emit_pairs(pairs, cfg)


def _cmd_exponents(cfg):
    a = cfg.args
    e = exponent_set(a.d, a.e)
    _emit_pairs(
        [("d", e.d), ("e", e.e), ("ell", e.ell), ("m", e.m), ("k", e.k), ("s", e.s),
         ("theta", e.theta), ("rho", e.rho), ("tau", e.tau)],
        cfg,
    )


def _cmd_trace(cfg):
    a = cfg.args
    psi = parse_rational_expr(a.psi, a.p)
    tr = trace_proof(psi, a.p, a.H, a.T)
    _emit_pairs(
        [("p", a.p), ("psi", psi.text()), ("H", a.H), ("T", a.T), ("N", tr.count),
         ("lambda", tr.chosen_lambda), ("lambda_count", tr.lambda_count),
         ("pair_count", tr.pair_count), ("multiplier", tr.multiplier),
         ("z_max", tr.z_max), ("z_magnitude", tr.z_magnitude),
         ("bound", tr.bound), ("ratio", tr.ratio), ("rt_ok", tr.rt_ok)],
        cfg,
    )


def _cmd_sweep(cfg):
    a = cfg.args
    if a.standard == (a.config is not None):
        raise SubgroupValuesError("pass exactly one of --standard or --config")
    if a.standard:
        cells = standard_sweep_cells()
    else:
        with open(a.config) as fh:
            cells = json.load(fh)
        if not isinstance(cells, list):
            raise SubgroupValuesError("config must be a JSON list of cells")
    jobs = a.jobs
    if jobs is None:
        jobs = int(os.environ.get("SUBGROUP_VALUES_THREADS", "1"))
    rows = run_sweep(cells, jobs=max(jobs, 1))
    text = emit_report(rows, fmt=cfg.fmt if cfg.fmt != "text" else "text", path=cfg.output)
    if not cfg.output:
        sys.stdout.write(text)


def _cmd_kshort(cfg):
    a = cfg.args
    f = parse_poly_expr(a.psi, a.p)
    if isinstance(f, UniPoly):
        f = rational_normalize(f, UniPoly.one(f.ctx))
    k = shortest_covering_interval(f, a.H, a.p, wrap=a.wrap)
    _emit_pairs([("p", a.p), ("psi", f.text()), ("H", a.H), ("wrap", a.wrap), ("K", k)], cfg)


def _cmd_vinogradov(cfg):
    a = cfg.args
    j = vinogradov_count(a.d, a.k, a.H, budget=a.budget)
    _emit_pairs([("d", a.d), ("k", a.k), ("H", a.H), ("count", j)], cfg)


def _cmd_points(cfg):
    a = cfg.args
    terms = parse_int_bipoly(a.poly)
    res = integral_points_in_box(terms, a.H)
    _emit_pairs(
        [("poly", a.poly), ("H", a.H), ("count", res.count),
         ("degree", res.curve_degree), ("reference", res.reference)],
        cfg,
    )


_HANDLERS = {
    "count": _cmd_count,
    "lambda-scan": _cmd_lambda_scan,
    "lattice-find": _cmd_lattice_find,
    "perfect-power": _cmd_perfect_power,
    "exponents": _cmd_exponents,
    "trace": _cmd_trace,
    "sweep": _cmd_sweep,
    "kshort": _cmd_kshort,
    "vinogradov": _cmd_vinogradov,
    "points": _cmd_points,
}


def cmd_dispatch(argv) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else 2
    cfg = CliConfig(
        subcommand=ns.subcommand,
        fmt=getattr(ns, "format", "text"),
        output=getattr(ns, "output", None),
        seed=getattr(ns, "seed", 0),
        args=ns,
    )
    factorization.set_default_seed(cfg.seed)
    try:
        _HANDLERS[cfg.subcommand](cfg)
    except SubgroupValuesError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(cmd_dispatch(sys.argv[1:]))
