"""Command-line entry point: patterns, Schmidt sweeps, figure bundles and checks.

Exit codes: 0 success, 1 verification failure, 2 usage or config error.
Every command writing files also writes ``manifest.json`` into the output
directory with the invocation, config snapshot, grids and file digests.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .entanglement import EntanglementError, overlap_theta, schmidt_sweep
from .joint import DEFAULT_NORM_GRID, StateKind, normalize
from .params import ArrangementConfig, ConfigError, dump_config, paper_defaults, read_config
from .patterns import PatternError, fixed_detector_sweep, pattern
from .quadrature import GridSpec, QuadratureError

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _tag(v) -> str:
    return format(float(v), "g")


class Run:
    """Collects written files for the manifest."""

    def __init__(self, args, cfg: ArrangementConfig, argv):
        self.args = args
        self.cfg = cfg
        self.argv = list(argv)
        self.out_dir = Path(args.out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.files: dict[str, str] = {}
        self.grids: dict[str, list] = {}

    def write_csv(self, name: str, header: list[str], columns) -> Path:
        path = self.out_dir / name
        cols = [np.asarray(c, dtype=float) for c in columns]
        lines = [",".join(header)]
        lines.extend(",".join(_fmt(c[i]) for c in cols) for i in range(cols[0].size))
        data = ("\n".join(lines) + "\n").encode()
        path.write_bytes(data)
        self.files[name] = hashlib.sha256(data).hexdigest()
        return path

    def note_grid(self, label: str, grid: GridSpec):
        self.grids[label] = [grid.lo, grid.hi, grid.n]

    def write_manifest(self):
        snapshot = dump_config(self.cfg)
        manifest = {
            "command": self.argv,
            "tool_version": __version__,
            "config": snapshot,
            "config_sha256": hashlib.sha256(snapshot.encode()).hexdigest(),
            "grids": self.grids,
            "outputs": dict(sorted(self.files.items())),
        }
        (self.out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _config(args) -> ArrangementConfig:
    cfg = read_config(args.config) if args.config else paper_defaults()
    a = getattr(args, "a", None)
    if a is not None:
        cfg = cfg.with_coeffs(a)
    return cfg


def _pattern_grid(args) -> GridSpec:
    return GridSpec.symmetric(args.grid_l, args.grid_n)


def _norm_grid(args) -> GridSpec:
    return GridSpec.symmetric(args.norm_l, args.norm_n)


def _states(text: str) -> list[StateKind]:
    try:
        return [StateKind(s.strip()) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"unknown state kind in {text!r}") from None


def cmd_pattern(args, run: Run):
    grid, ngrid = _pattern_grid(args), _norm_grid(args)
    run.note_grid("pattern_x", grid)
    run.note_grid("normalization", ngrid)
    state = normalize(run.cfg, ngrid)
    for kind in _states(args.states):
        p = pattern(state.as_kind(kind), args.y, grid)
        name = f"pattern_{kind.value}_a{_tag(np.real(run.cfg.a))}_y{_tag(args.y)}.csv"
        run.write_csv(name, ["x", "P"], [p.xs, p.values])
        print(run.out_dir / name)


def _schmidt_curves(axis, values_list, points):
    curves = []
    for fixed in values_list:
        xs, s = schmidt_sweep(axis, fixed, points=points)
        curves.append((fixed, xs, s))
    return curves


def _write_schmidt(run: Run, name, axis, curves):
    other = "theta" if axis == "a" else "a"
    if len(curves) == 1:
        header = ["axis_value", "S"]
    else:
        header = ["axis_value"] + [f"S[{other}={_tag(f)}]" for f, _, _ in curves]
    cols = [curves[0][1]] + [s for _, _, s in curves]
    run.write_csv(name, header, cols)
    print(run.out_dir / name)


def cmd_schmidt(args, run: Run):
    if args.axis == "a":
        if args.theta_list is not None:
            fixed = args.theta_list
        elif args.theta is not None:
            fixed = [args.theta]
        elif args.sigma is not None and args.sigma_bar is not None:
            fixed = [overlap_theta(args.sigma, args.sigma_bar)]
        else:
            fixed = [overlap_theta(run.cfg.psi.width, run.cfg.varphi.width)]
    else:
        if args.a_list is not None:
            fixed = args.a_list
        elif args.a_fixed is not None:
            fixed = [args.a_fixed]
        else:
            fixed = [float(np.real(run.cfg.a))]
    curves = _schmidt_curves(args.axis, fixed, args.points)
    _write_schmidt(run, f"schmidt_{args.axis}.csv", args.axis, curves)


def _sweep_ys(args) -> list[float]:
    if args.y_list is not None:
        return args.y_list
    return list(np.linspace(args.y_min, args.y_max, args.y_n))


def cmd_sweep_detector(args, run: Run):
    grid, ngrid = _pattern_grid(args), _norm_grid(args)
    run.note_grid("pattern_x", grid)
    run.note_grid("normalization", ngrid)
    state = normalize(run.cfg, ngrid)
    sweep = fixed_detector_sweep(state, _sweep_ys(args), grid, workers=args.threads)
    run.write_csv("sweep_detector.csv", ["y", "height"], [[s.y for s in sweep], [s.height for s in sweep]])
    print(run.out_dir / "sweep_detector.csv")
    if args.patterns:
        for s in sweep:
            run.write_csv(f"sweep_pattern_y{_tag(s.y)}.csv", ["x", "P"], [s.pattern.xs, s.pattern.values])


def _figure_2(run: Run, grid, ngrid):
    state = normalize(run.cfg.with_coeffs(0.3), ngrid)
    for kind in StateKind:
        p = pattern(state.as_kind(kind), 0.0, grid)
        run.write_csv(f"fig2_{kind.value}.csv", ["x", "P"], [p.xs, p.values])


def _figure_3(run: Run, grid, ngrid):
    _write_schmidt(run, "fig3_left.csv", "a", _schmidt_curves("a", [0.0, 0.3, 0.6], 101))
    _write_schmidt(run, "fig3_right.csv", "theta", _schmidt_curves("theta", [0.7, 0.5, 0.4], 101))


def _figure_4(run: Run, grid, ngrid):
    for a, label in [(0.3, "superposition_a0.3"), (0.7, "superposition_a0.7")]:
        p = pattern(normalize(run.cfg.with_coeffs(a), ngrid), 0.0, grid)
        keep = np.abs(p.xs) <= 0.8
        run.write_csv(f"fig4_{label}.csv", ["x", "P"], [p.xs[keep], p.values[keep]])
    state = normalize(run.cfg.with_coeffs(1.0), ngrid).as_kind(StateKind.PRODUCT_A)
    p = pattern(state, 0.0, grid)
    keep = np.abs(p.xs) <= 0.8
    run.write_csv("fig4_product_a.csv", ["x", "P"], [p.xs[keep], p.values[keep]])
    theta = overlap_theta(run.cfg.psi.width, run.cfg.varphi.width)
    _write_schmidt(run, "fig4_schmidt.csv", "a", _schmidt_curves("a", [theta], 101))


def _figure_5(run: Run, grid, ngrid):
    state = normalize(run.cfg.with_coeffs(0.3), ngrid)
    for s in fixed_detector_sweep(state, [0.0, 0.7, 1.7], grid):
        run.write_csv(f"fig5_y{_tag(s.y)}.csv", ["x", "P"], [s.pattern.xs, s.pattern.values])


FIGURES = {2: _figure_2, 3: _figure_3, 4: _figure_4, 5: _figure_5}


def cmd_figure(args, run: Run):
    if args.id not in FIGURES:
        raise UsageError(f"unknown figure id {args.id}; choose from {sorted(FIGURES)}")
    grid, ngrid = _pattern_grid(args), _norm_grid(args)
    if args.id != 3:
        run.note_grid("pattern_x", grid)
        run.note_grid("normalization", ngrid)
    FIGURES[args.id](run, grid, ngrid)
    for name in sorted(run.files):
        print(run.out_dir / name)


def cmd_verify(args) -> int:
    from .verify import CHECKS, run_checks

    only = None
    if args.only:
        only = [n.strip() for chunk in args.only for n in chunk.split(",") if n.strip()]
        unknown = [n for n in only if n not in CHECKS]
        if unknown:
            raise UsageError(f"unknown check(s) {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    cfg = read_config(args.config) if args.config else paper_defaults()
    results = run_checks(cfg, only)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def cmd_print_config(args) -> int:
    sys.stdout.write(dump_config(_config(args)))
    return EXIT_OK


def _odd(text: str) -> int:
    n = int(text)
    if n < 3 or n % 2 == 0:
        raise argparse.ArgumentTypeError("grid size must be an odd integer >= 3")
    return n


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value config file (default: built-in parameter set)")
    common.add_argument("--out-dir", default=".", help="directory for CSV output and manifest.json")
    common.add_argument("--grid-n", type=_odd, default=1601, help="pattern grid points (odd)")
    common.add_argument("--grid-l", type=_positive, default=4.0, help="pattern grid half-length in um")
    common.add_argument("--norm-n", type=_odd, default=DEFAULT_NORM_GRID.n, help="normalization grid points per axis")
    common.add_argument("--norm-l", type=_positive, default=DEFAULT_NORM_GRID.hi, help="normalization half-length in um")
    common.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")

    parser = argparse.ArgumentParser(prog="twoslit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pattern", parents=[common], help="coincidence pattern P(x) at fixed y")
    p.add_argument("--states", default="superposition", help="comma list of " + ",".join(k.value for k in StateKind))
    p.add_argument("--y", type=float, default=0.0, help="fixed detector position in um")
    p.add_argument("--a", type=float, help="real coefficient a; b = +sqrt(1 - a^2)")

    p = sub.add_parser("schmidt", parents=[common], help="Schmidt number sweep")
    p.add_argument("--axis", choices=["a", "theta"], default="a")
    p.add_argument("--theta", type=float, help="fixed overlap for --axis a")
    p.add_argument("--theta-list", type=_floats, help="several fixed overlaps for --axis a")
    p.add_argument("--sigma", type=_positive, help="with --sigma-bar: derive the overlap from packet widths")
    p.add_argument("--sigma-bar", type=_positive)
    p.add_argument("--a", dest="a_fixed", type=float, help="fixed a for --axis theta")
    p.add_argument("--a-list", type=_floats, help="several fixed a values for --axis theta")
    p.add_argument("--points", type=int, default=101)

    p = sub.add_parser("sweep-detector", parents=[common], help="central-peak height versus fixed y")
    p.add_argument("--y-list", type=_floats)
    p.add_argument("--y-min", type=float, default=0.0)
    p.add_argument("--y-max", type=float, default=3.0)
    p.add_argument("--y-n", type=int, default=31)
    p.add_argument("--a", type=float)
    p.add_argument("--patterns", action="store_true", help="also write every swept pattern")

    p = sub.add_parser("figure", parents=[common], help="data bundle for figure 2, 3, 4 or 5")
    p.add_argument("id", type=int)

    p = sub.add_parser("verify", parents=[common], help="run the numerical acceptance checks")
    p.add_argument("--only", action="append", help="check name(s), comma separated; repeatable")

    p = sub.add_parser("print-config", parents=[common], help="print the effective config document")
    p.add_argument("--a", type=float)
    return parser


WRITERS = {
    "pattern": cmd_pattern,
    "schmidt": cmd_schmidt,
    "sweep-detector": cmd_sweep_detector,
    "figure": cmd_figure,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "print-config":
            return cmd_print_config(args)
        run = Run(args, _config(args), argv)
        WRITERS[args.command](args, run)
        run.write_manifest()
        return EXIT_OK
    except (ConfigError, UsageError, EntanglementError, PatternError, QuadratureError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
