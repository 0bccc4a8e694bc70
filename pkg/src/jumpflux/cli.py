"""Command line entry point: ``jumpflux <subcommand> [options]``.

Subcommands
  parametrize   dump ``v, b, g_1..g_n`` (and ``b_r, phi_r_1..`` with ``--regularize``)
  solve         run the regularized scheme, write ``t, x_center, u`` snapshots
  extremal      largest and/or smallest solution plus ``report.json``
  verify        bundled suites (``--suite``) or scoring of solver CSV (``--input``)
  convergence   refinement ladder, writes ``dx, cells, l1_error``

Every CSV starts with ``# config_sha256=..., version=...`` and a header row.
All outputs of a command are computed before any file is written, and each
file is written through a temporary name, so failures leave no partial files.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, oracles, suites
from .config import ConfigError, ScenarioConfig, load_config
from .extremal import default_window, solve_largest, solve_smallest
from .parametrize import build_parametrization
from .regularize import regularize
from .scheme import GridSolution, run

log = logging.getLogger("jumpflux")

EXIT_OK, EXIT_FAILED_CHECK, EXIT_USAGE, EXIT_ERROR = 0, 1, 2, 3


class CommandError(RuntimeError):
    pass


# ---- output helpers ---------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    return "%.17g" % v


def csv_text(header: list[str], rows, config_hash: str) -> str:
    buf = io.StringIO()
    buf.write(f"# config_sha256={config_hash}, version={__version__}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def write_outputs(out_dir: Path, files: dict[str, str]):
    """Write every file atomically; nothing is touched until all content exists."""
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        fd, tmp = tempfile.mkstemp(dir=out_dir, prefix=f".{name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            os.replace(tmp, out_dir / name)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise


def snapshot_rows(states: list[GridSolution], run_id: str | None = None):
    for s in states:
        x = s.centers
        for xi, ui in zip(x, s.u):
            yield ([run_id] if run_id is not None else []) + [s.t, xi, ui]


def _hash_configs(configs: list[ScenarioConfig]) -> str:
    if len(configs) == 1:
        return configs[0].source_hash
    return hashlib.sha256("".join(c.source_hash for c in configs).encode()).hexdigest()


def _load(paths) -> list[tuple[str, ScenarioConfig]]:
    if not paths:
        raise CommandError("--config is required")
    return [(Path(p).stem, load_config(p)) for p in paths]


def _snapshot_files(kind: str, runs: list[tuple[str, list[GridSolution]]], config_hash: str, concat: bool):
    header = ["t", "x_center", "u"]
    if concat:
        rows = (r for rid, states in runs for r in snapshot_rows(states, rid))
        return {f"{kind}.csv": csv_text(["run"] + header, rows, config_hash)}
    return {f"{kind}_{rid}.csv": csv_text(header, snapshot_rows(states), config_hash) for rid, states in runs}


# ---- subcommands ------------------------------------------------------------


def cmd_parametrize(args) -> int:
    (stem, cfg), *rest = _load(args.config)
    if rest:
        raise CommandError("parametrize takes a single --config")
    f = cfg.build_flux()
    par = build_parametrization(f, cfg.weights(), cfg.theta)
    n = par.dim
    header = ["v", "b"] + [f"g_{i + 1}" for i in range(n)]
    g = np.asarray(par.g.values).reshape(len(par.v), n)
    cols = [par.v, par.b.values] + [g[:, i] for i in range(n)]
    if args.regularize is not None:
        rf = regularize(par, args.regularize, cover=f.state_range)
        phi = np.asarray(g)  # phi_r(b_r(v_j)) = g(v_j) at every breakpoint
        header += ["b_r"] + [f"phi_r_{i + 1}" for i in range(n)]
        cols += [rf.b_r.values] + [phi[:, i] for i in range(n)]
    rows = zip(*cols)
    write_outputs(Path(args.out), {"parametrization.csv": csv_text(header, rows, cfg.source_hash)})
    return EXIT_OK


def _solve_one(cfg: ScenarioConfig) -> list[GridSolution]:
    f = cfg.build_flux()
    par = build_parametrization(f, cfg.weights(), cfg.theta)
    rf = regularize(par, cfg.regularization["r"], cover=f.state_range)
    u0 = cfg.build_initial()
    lo, hi = f.state_range
    if u0.u.min() < lo or u0.u.max() > hi:
        raise CommandError("initial data leave flux.state_range")
    if cfg.t_end == 0:
        return [u0]
    return [u0] + run(u0, rf, cfg.scheme_params(), cfg.t_end, cfg.snapshots)


def cmd_solve(args) -> int:
    loaded = _load(args.config)
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        states = list(pool.map(lambda item: _solve_one(item[1]), loaded))
    runs = [(stem, s) for (stem, _), s in zip(loaded, states)]
    files = _snapshot_files("solve", runs, _hash_configs([c for _, c in loaded]), args.concat)
    write_outputs(Path(args.out), files)
    return EXIT_OK


def _extremal_one(cfg: ScenarioConfig, which: str):
    f = cfg.build_flux()
    u0 = cfg.build_initial()
    params = cfg.extremal_params()
    solver = solve_largest if which == "largest" else solve_smallest
    snaps = [t for t in cfg.snapshots if t < cfg.t_end]
    return solver(f, u0, params, cfg.t_end, snaps)


def cmd_extremal(args) -> int:
    loaded = _load(args.config)
    which = ["largest", "smallest"] if args.which == "both" else [args.which]
    jobs = [(stem, cfg, w) for stem, cfg in loaded for w in which]
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(lambda j: _extremal_one(j[1], j[2]), jobs))
    runs, report = [], {}
    for (stem, _, w), res in zip(jobs, results):
        rid = f"{w}" if len(loaded) == 1 else f"{stem}_{w}"
        runs.append((rid, res.solutions))
        report[rid] = res.report()
    config_hash = _hash_configs([c for _, c in loaded])
    files = _snapshot_files("extremal", runs, config_hash, args.concat)
    files["report.json"] = json.dumps(
        {"config_sha256": config_hash, "version": __version__, "runs": report}, indent=2
    ) + "\n"
    write_outputs(Path(args.out), files)
    for rid, rep in report.items():
        log.info("%s: iterations=%d converged=%s", rid, rep["iterations"], rep["converged"])
    print(json.dumps(report, indent=2))
    return EXIT_OK


def read_snapshots(path) -> dict[str, list[GridSolution]]:
    """Parse solver CSV back into per-run grids (uniform cell centres assumed)."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    if reader.fieldnames is None or not {"t", "x_center", "u"} <= set(reader.fieldnames):
        raise CommandError(f"{path}: expected columns t, x_center, u")
    groups: dict[tuple[str, float], list[tuple[float, float]]] = {}
    for row in reader:
        key = (row.get("run", ""), float(row["t"]))
        groups.setdefault(key, []).append((float(row["x_center"]), float(row["u"])))
    out: dict[str, list[GridSolution]] = {}
    for (rid, t), pts in groups.items():
        x, u = np.array(pts).T
        dx = float(x[1] - x[0])
        out.setdefault(rid, []).append(GridSolution(x[0] - dx / 2, x[-1] + dx / 2, u, t, "constant"))
    return out


def cmd_verify(args) -> int:
    if args.input is None and args.suite is None:
        raise CommandError("verify needs --suite or --input")
    files, ok = {}, True
    if args.suite is not None:
        names = list(suites.SUITES) if args.suite == "all" else [args.suite]
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(lambda n: suites.SUITES[n](), names))
        for rep in reports:
            for line in rep.lines():
                print(f"[{rep.suite}] {line}")
            ok &= rep.passed
        payload = {"version": __version__, "suites": [r.to_dict() for r in reports]}
    else:
        if args.oracle not in oracles.ORACLES:
            raise CommandError(f"unknown oracle {args.oracle!r}; choose from {sorted(oracles.ORACLES)}")
        oracle = oracles.ORACLES[args.oracle]
        checks = []
        for rid, states in read_snapshots(args.input).items():
            s = max(states, key=lambda g: g.t)
            dist = oracles.score(s, oracle, tuple(args.window))
            passed = dist <= args.threshold
            ok &= passed
            name = f"{rid or 'run'} t={s.t:g}"
            checks.append({"name": name, "value": dist, "threshold": args.threshold, "passed": passed})
            print(f"{'PASS' if passed else 'FAIL'} {name}: L1 distance to {args.oracle} {dist:.6g} "
                  f"(threshold {args.threshold:g})")
        payload = {"version": __version__, "input": str(args.input), "oracle": args.oracle, "checks": checks}
    files["verify_report.json"] = json.dumps(payload, indent=2, default=float) + "\n"
    write_outputs(Path(args.out), files)
    return EXIT_OK if ok else EXIT_FAILED_CHECK


def cmd_convergence(args) -> int:
    if args.refine < 2:
        raise CommandError("--refine needs at least 2 levels")
    if not args.config:
        cells = [500 * 2**i for i in range(args.refine)]
        rows = suites.convergence_ladder(cells, jobs=args.jobs)
        config_hash = hashlib.sha256(b"builtin:example1_largest").hexdigest()
    else:
        (_, cfg), *rest = _load(args.config)
        if rest:
            raise CommandError("convergence takes a single --config")
        kind = cfg.require("initial")["kind"]
        name = args.oracle or {"example1": "example1_largest", "example2": "example2"}.get(kind)
        if name not in oracles.ORACLES:
            raise CommandError(f"no reference solution for initial.kind={kind!r}; pass --oracle")
        oracle = oracles.ORACLES[name]
        f = cfg.build_flux()
        params = cfg.extremal_params()
        base = cfg.require("domain")["cells"]

        def one(n):
            u0 = cfg.build_initial(cells=n)
            window = params.window or default_window(u0)
            s = solve_largest(f, u0, params, cfg.t_end).final
            return s.dx, n, oracles.score(s, oracle, window)

        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(one, [base * 2**i for i in range(args.refine)]))
        config_hash = cfg.source_hash
    for dx, n, err in rows:
        print(f"dx={dx:.6g} cells={n} l1_error={err:.6g}")
    write_outputs(Path(args.out), {"convergence.csv": csv_text(["dx", "cells", "l1_error"], rows, config_hash)})
    return EXIT_OK


# ---- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", action="append", metavar="PATH", help="scenario YAML (repeatable)")
    common.add_argument("--out", default=".", metavar="DIR", help="output directory")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker threads")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="jumpflux", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parametrize", parents=[common], help="dump the (b, g) parametrization")
    sp.add_argument("--regularize", type=float, metavar="R", help="append b_r and phi_r columns")
    sp.set_defaults(func=cmd_parametrize)

    sp = sub.add_parser("solve", parents=[common], help="run the scheme on the regularized flux")
    sp.add_argument("--concat", action="store_true", help="one CSV with a run column")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("extremal", parents=[common], help="largest/smallest entropy solutions")
    sp.add_argument("--which", choices=["largest", "smallest", "both"], default="both")
    sp.add_argument("--concat", action="store_true", help="one CSV with a run column")
    sp.set_defaults(func=cmd_extremal)

    sp = sub.add_parser("verify", parents=[common], help="score against reference solutions")
    sp.add_argument("--suite", choices=list(suites.SUITES) + ["all"])
    sp.add_argument("--input", metavar="CSV", help="solver CSV to score")
    sp.add_argument("--oracle", default="example1_largest", help="reference for --input")
    sp.add_argument("--window", type=float, nargs=2, default=(-10.0, 10.0), metavar=("LO", "HI"))
    sp.add_argument("--threshold", type=float, default=0.05)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("convergence", parents=[common], help="grid-refinement ladder")
    sp.add_argument("--refine", type=int, default=4, metavar="K", help="number of levels")
    sp.add_argument("--oracle", default=None, help="reference solution name")
    sp.set_defaults(func=cmd_convergence)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"jumpflux: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CommandError, OSError) as exc:
        print(f"jumpflux: {exc}", file=sys.stderr)
        return EXIT_USAGE if isinstance(exc, CommandError) else EXIT_ERROR
    except (ValueError, RuntimeError) as exc:
        print(f"jumpflux: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
