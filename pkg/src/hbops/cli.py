"""Command-line interface: ``hbops <command> [options]``.

Exit codes: 0 success, 1 malformed input, 2 verification failure,
3 inconclusive verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .criteria import CRITERIA_SETS, criterion
from .errors import HbopsError, SchemaError
from .geometry import make_grid
from .harness import SUITES, SuiteConfig, run_suite
from .norms import bloch_norm, little_space_profile, sup_norm, zygmund_norm
from .operators import apply_integral_operator, integral_operator_series
from .quadrature import QuadratureConfig
from .serialization import (
    SCHEMA,
    complex_to_json,
    dumps,
    function_from_json,
    map_from_json,
    read_json,
    series_to_json,
    symbol_from_json,
)
from .symbols import HoloSelfMap, Symbol, TestFunction

__all__ = ["main", "sweep", "parse_point", "CliError"]

EXIT_OK, EXIT_INPUT, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2, 3

SWEEP_FAMILIES = ("linear-lambda", "log-radius")
SWEEP_HEADER = ["family", "parameter", "criterion", "value", "classification",
                "witness_re", "witness_im"]


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def parse_point(text: str, field: str = "z") -> np.ndarray:
    """``"0.5,0,0.1,0.2"`` -> ``[0.5+0j, 0.1+0.2j]``."""
    try:
        vals = [float(s) for s in text.split(",")]
    except ValueError:
        raise CliError(f"{field}: expected comma-separated numbers") from None
    if not vals or len(vals) % 2:
        raise CliError(f"{field}: expected re,im pairs (even number of values)")
    v = np.array(vals)
    return v[0::2] + 1j * v[1::2]


def _parse_values(text: str, field: str) -> list[float]:
    if text.strip() == "":
        return []
    try:
        return [float(s) for s in text.split(",")]
    except ValueError:
        raise CliError(f"{field}: expected comma-separated numbers") from None


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _add_grid(p):
    p.add_argument("--shells", type=_positive_int, help="dyadic levels J (default 16)")
    p.add_argument("--points", type=_positive_int, help="directions per shell")
    p.add_argument("--seed", type=int, help="direction seed (fallback: HBOPS_SEED, then 0)")
    p.add_argument("--substeps", type=_positive_int, help="radial sub-shells per level (default 8)")


def _add_output(p, csv_flag=True):
    p.add_argument("--out", help="output file (default: stdout)")
    if csv_flag:
        p.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")


def _add_testfn(p, dest_help):
    p.add_argument("--testfn", choices=("h_a", "f_a", "f_k"), help=dest_help)
    p.add_argument("--a", help="test-function parameter as re,im pairs")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hbops", description="Radial-derivative operators between Zygmund and Bloch spaces.")
    parser.add_argument("--version", action="version", version=f"hbops {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("apply", help="evaluate I_phi^g f at a point")
    p.add_argument("--f", help="function JSON")
    _add_testfn(p, "use a test function as f")
    p.add_argument("--phi", help="self-map JSON or 'id'")
    p.add_argument("--g", help="symbol JSON")
    p.add_argument("--z", help="evaluation point, re,im pairs")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="series path (polynomial inputs)")
    mode.add_argument("--quad", action="store_true", help="quadrature path")
    p.add_argument("--tol", type=_positive_float, default=1e-10, help="quadrature rtol")
    _add_output(p, csv_flag=False)

    p = sub.add_parser("rderiv", help="iterated radial derivative of a series")
    p.add_argument("--function", help="function JSON")
    p.add_argument("--order", type=_positive_int, default=1)
    _add_output(p, csv_flag=False)

    p = sub.add_parser("norm", help="sampled norm or little-space profile")
    p.add_argument("--space", choices=("bloch", "bloch0", "zygmund", "zygmund0", "sup"))
    p.add_argument("--function", help="function JSON")
    _add_testfn(p, "use a test function")
    _add_grid(p)
    _add_output(p)

    p = sub.add_parser("criteria", help="evaluate a criteria set for (phi, g)")
    p.add_argument("--phi", help="self-map JSON or 'id'")
    p.add_argument("--g", help="symbol JSON")
    p.add_argument("--set", dest="cset", choices=tuple(CRITERIA_SETS))
    _add_grid(p)
    _add_output(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=tuple(SUITES))
    p.add_argument("--config", help="suite configuration JSON")
    p.add_argument("--threads", type=_positive_int, help="worker cap")
    _add_grid(p)
    _add_output(p, csv_flag=False)

    p = sub.add_parser("sweep", help="criteria over a parameter family (CSV)")
    p.add_argument("--family", choices=SWEEP_FAMILIES)
    p.add_argument("--values", help="comma-separated parameters (lambda or m)")
    p.add_argument("--criteria", default="B10,B11", help="comma-separated criterion ids")
    _add_grid(p)
    p.add_argument("--out", help="output file (default: stdout)")
    return parser


def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise CliError(f"missing required: {name}")


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("HBOPS_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise CliError(f"HBOPS_SEED: expected an integer, got {env!r}") from None


def _grid_config(args, n: int) -> dict:
    defaults = SuiteConfig()
    pts = args.points or (defaults.points_1d if n == 1 else defaults.points_nd)
    return {"n": n, "shells": args.shells or defaults.levels, "points": pts,
            "seed": _seed(args), "substeps": args.substeps or defaults.substeps}


def _grid(cfg: dict):
    return make_grid(cfg["n"], cfg["shells"], cfg["points"], cfg["seed"], cfg["substeps"])


def _load_function(args, field: str):
    if args.testfn is not None:
        _require(args, "a")
        a = parse_point(args.a, "a")
        return TestFunction(args.testfn, a), {"testfn": args.testfn, "a": [complex_to_json(c) for c in a]}
    _require(args, field)
    path = getattr(args, field)
    return function_from_json(read_json(path, field)), {field: path}


def _load_phi(text, n):
    if text == "id":
        return HoloSelfMap.identity(n)
    return map_from_json(read_json(text, "phi"))


def _load_symbol(path) -> Symbol:
    return symbol_from_json(read_json(path, "g"))


def _report(command, config, **body) -> dict:
    return {"schema": SCHEMA, "command": command, "config": config, **body}


def _emit(text: str, out):
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")


def _csv_text(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _trace_rows(label, est, grid):
    levels = np.arange(len(est.trace))
    radii = [float(grid.shells[grid.shell_level == l].min()) for l in levels]
    return [[label, int(l), radii[l], float(v)] for l, v in zip(levels, est.trace)]


# ---------------------------------------------------------------------------
# commands


def cmd_apply(args) -> int:
    _require(args, "phi", "g", "z")
    g = _load_symbol(args.g)
    f, fsrc = _load_function(args, "f")
    n = g.dimension
    phi = _load_phi(args.phi, n)
    z = parse_point(args.z)
    if not (f.dimension == phi.dimension == n == len(z)):
        raise CliError("dimension mismatch between f, phi, g and z")
    exact_possible = not isinstance(f, TestFunction) and g.kind == "polynomial" and phi.kind in ("linear", "polynomial")
    use_exact = args.exact or (not args.quad and exact_possible)
    if args.exact and not exact_possible:
        raise CliError("exact: needs polynomial f, polynomial g and a linear or polynomial phi")
    config = {**fsrc, "phi": args.phi, "g": args.g, "z": [complex_to_json(c) for c in z],
              "path": "exact" if use_exact else "quad", "tol": args.tol}
    if use_exact:
        F = integral_operator_series(f, phi, g)
        value, err = complex(F.value(z)), 0.0
    else:
        res = apply_integral_operator(f, phi, g, z, QuadratureConfig(rtol=args.tol))
        value, err = res.value, res.err_est
    rep = _report("apply", config, value=complex_to_json(value), err_est=float(err),
                  path=config["path"])
    _emit(dumps(rep), args.out)
    return EXIT_OK


def cmd_rderiv(args) -> int:
    _require(args, "function")
    f = function_from_json(read_json(args.function, "function"))
    out = f.radial(args.order)
    rep = _report("rderiv", {"function": args.function, "order": args.order},
                  result=series_to_json(out))
    _emit(dumps(rep), args.out)
    return EXIT_OK


def cmd_norm(args) -> int:
    _require(args, "space")
    f, fsrc = _load_function(args, "function")
    cfg = _grid_config(args, f.dimension)
    G = _grid(cfg)
    if args.space == "bloch":
        est, cls = bloch_norm(f, G), None
    elif args.space == "zygmund":
        est, cls = zygmund_norm(f, G), None
    elif args.space == "sup":
        est, cls = sup_norm(f, G), None
    else:
        prof = little_space_profile(f, G, 1 if args.space == "bloch0" else 2)
        est, cls = prof.estimate, prof.classification.value
    if args.csv:
        _emit(_csv_text(_trace_rows(args.space, est, G), ["space", "level", "radius", "max"]), args.out)
        return EXIT_OK
    body = {"space": args.space, "estimate": est.as_dict()}
    if cls is not None:
        body["classification"] = cls
    _emit(dumps(_report("norm", {**fsrc, "grid": cfg}, **body)), args.out)
    return EXIT_OK


def cmd_criteria(args) -> int:
    _require(args, "phi", "g", "cset")
    g = _load_symbol(args.g)
    phi = _load_phi(args.phi, g.dimension)
    if phi.dimension != g.dimension:
        raise CliError("dimension mismatch between phi and g")
    cfg = _grid_config(args, g.dimension)
    G = _grid(cfg)
    reps = [criterion(c, phi, g, G) for c in CRITERIA_SETS[args.cset]]
    if args.csv:
        rows = []
        for r in reps:
            rows += _trace_rows(r.criterion, r.estimate, G)
        _emit(_csv_text(rows, ["criterion", "level", "radius", "max"]), args.out)
        return EXIT_OK
    config = {"phi": args.phi, "g": args.g, "set": args.cset, "grid": cfg}
    _emit(dumps(_report("criteria", config, criteria=[r.as_dict() for r in reps])), args.out)
    return EXIT_OK


def _suite_config(args) -> SuiteConfig:
    base = {}
    if args.config is not None:
        base = read_json(args.config, "config")
        if not isinstance(base, dict):
            raise SchemaError("config: expected an object", "config")
    overrides = {"levels": args.shells, "substeps": args.substeps, "workers": args.threads}
    if args.points is not None:
        overrides["points_1d"] = overrides["points_nd"] = args.points
    for k, v in overrides.items():
        if v is not None:
            base[k] = v
    if args.seed is not None or "seed" not in base:
        base["seed"] = _seed(args)
    return SuiteConfig.from_dict(base)


def cmd_verify(args) -> int:
    _require(args, "suite")
    cfg = _suite_config(args)
    report = run_suite(args.suite, cfg)
    _emit(dumps({"schema": SCHEMA, "command": "verify", **report.as_dict()}), args.out)
    return {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}[report.outcome]


def _family_member(family: str, value: float):
    if family == "linear-lambda":
        if not 0 <= value < 1:
            raise CliError(f"values: lambda must lie in [0, 1), got {value}")
        return HoloSelfMap.scaled_identity(1, value), Symbol.coordinate(1)
    m = value
    if not m > 0:
        raise CliError(f"values: m must be positive, got {value}")
    return HoloSelfMap.identity(1), Symbol.log_form([1.0 - 2.0 ** (-m)], 2)


def sweep(family: str, values, criteria, grid) -> list[list]:
    """Rows of (family, parameter, criterion, value, classification, witness re/im)."""
    rows = []
    for v in values:
        phi, g = _family_member(family, v)
        for cid in criteria:
            r = criterion(cid, phi, g, grid)
            w = complex(r.estimate.witness[0])
            rows.append([family, float(v), cid, float(r.estimate.value), r.classification.value,
                         w.real, w.imag])
    return rows


def cmd_sweep(args) -> int:
    _require(args, "family", "values")
    values = _parse_values(args.values, "values")
    crits = [c.strip() for c in args.criteria.split(",") if c.strip()]
    known = {c for s in CRITERIA_SETS.values() for c in s}
    for c in crits:
        if c not in known:
            raise CliError(f"criteria: unknown criterion {c!r}")
    G = _grid(_grid_config(args, 1))
    _emit(_csv_text(sweep(args.family, values, crits, G), SWEEP_HEADER), args.out)
    return EXIT_OK


COMMANDS = {
    "apply": cmd_apply,
    "rderiv": cmd_rderiv,
    "norm": cmd_norm,
    "criteria": cmd_criteria,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise CliError("missing required: command")
        return COMMANDS[args.command](args)
    except (CliError, HbopsError, ValueError) as exc:
        print(f"hbops: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
