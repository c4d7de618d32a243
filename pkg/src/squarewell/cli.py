"""Command-line interface.

Exit status: 0 success, 1 inequality violation found by ``check-wirtinger``,
2 usage error, 3 minimizer hit ``--max-iterations``, 4 I/O or validation
error in an input file.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .analytic import energy_level, exact_bound, ground_state
from .core import (
    DomainError,
    Grid,
    PhysicalParams,
    SineSeries,
    SquareWellError,
    sample,
)
from .formats import (
    coefficients_from_csv,
    coefficients_to_csv,
    report_to_json,
    rows_to_csv,
    spectrum_to_csv,
    table_to_csv,
    trajectory_to_csv,
    wavefunction_from_csv,
)
from .functionals import (
    bounds_report,
    energy_report,
    norm_squared,
    uncertainty_tolerance,
    wirtinger_margin,
    wirtinger_ratio,
    wirtinger_tolerance,
)
from .minimize import MinimizerConfig, closed_form_minimizer, minimize_rayleigh
from .spectral import DEFAULT_TRUNCATION, project_exp, project_sine, sine_to_exp
from .trials import Trial, trials

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_NOT_CONVERGED = 3
EXIT_INPUT = 4


class InputError(Exception):
    """Unreadable or invalid input file; maps to exit status 4."""


@dataclass(frozen=True)
class GlobalOptions:
    params: PhysicalParams
    grid_points: int = 1001
    truncation: int = DEFAULT_TRUNCATION
    output_format: str = "text"
    output_path: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.grid_points < 3:
            raise DomainError(f"grid points must be >= 3, got {self.grid_points}")
        if self.truncation < 1:
            raise DomainError(f"truncation must be >= 1, got {self.truncation}")


def _add_global_options(parser, suppress):
    def default(value):
        return argparse.SUPPRESS if suppress else value

    group = parser.add_argument_group("global options")
    group.add_argument("--hbar", type=float, default=default(1.0), help="reduced Planck constant")
    group.add_argument("--mass", type=float, default=default(1.0), help="particle mass")
    group.add_argument("--length", type=float, default=default(1.0), help="well width L")
    group.add_argument("--grid-points", type=int, default=default(1001), help="grid size N")
    group.add_argument(
        "--truncation", type=int, default=default(DEFAULT_TRUNCATION), help="basis size K"
    )
    group.add_argument("--seed", type=int, default=default(0))
    group.add_argument(
        "--output-format", choices=("json", "csv", "text"), default=default("text")
    )
    group.add_argument("--output", default=default(None), help="write to this file, not stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squarewell",
        description="Variational ground state and energy bounds of the infinite square well.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="closed-form energy levels")
    p.add_argument("--n-max", type=int, default=5)
    _add_global_options(p, suppress=True)

    p = sub.add_parser("minimize", help="ground state by projected gradient descent")
    p.add_argument("--max-iterations", type=int, default=10000)
    p.add_argument("--step-size", type=float, default=None, help="default 0.1 / E_K")
    p.add_argument("--tolerance", type=float, default=1e-12, help="relative energy change")
    p.add_argument(
        "--initial", default="random", help="random | mode:N | file:PATH (n,re,im coefficients)"
    )
    p.add_argument("--trajectory", help="also write the iteration,energy CSV here")
    p.add_argument("--coefficients", help="also write the final n,re,im CSV here")
    _add_global_options(p, suppress=True)

    p = sub.add_parser("check-wirtinger", help="random-trial check of the exact inequality")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument(
        "--include-ground", action="store_true", help="add the exact ground state as a trial"
    )
    _add_global_options(p, suppress=True)

    p = sub.add_parser("bounds", help="Heisenberg estimate vs exact bound for a state")
    p.add_argument("state", nargs="?", default="ground", help="ground | mode:N | file:PATH")
    p.add_argument("--normalize", action="store_true", help="normalize a file state first")
    _add_global_options(p, suppress=True)

    p = sub.add_parser("coeffs", help="project a sampled state onto a basis")
    p.add_argument("state", help="file:PATH or PATH to an x,re,im CSV")
    p.add_argument("--basis", choices=("sine", "exp"), default="sine")
    _add_global_options(p, suppress=True)
    return parser


def _multiple(value, params):
    return value / params.energy_scale


def _text_block(pairs, params=None, energy_keys=()):
    width = max(len(k) for k, _ in pairs)
    lines = []
    for key, value in pairs:
        if isinstance(value, float):
            line = f"{key:<{width}}  {value:.12g}"
            if key in energy_keys and params is not None:
                line += f"  ({_multiple(value, params):.12g} hbar^2/2mL^2)"
        else:
            line = f"{key:<{width}}  {value}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_state(selector, opts, normalize=False):
    params = opts.params
    if selector == "ground":
        return ground_state(params, opts.grid_points)
    if selector.startswith("mode:"):
        try:
            n = int(selector[5:])
        except ValueError:
            raise DomainError(f"bad mode selector {selector!r}") from None
        return sample(SineSeries.mode(n, params=params), opts.grid_points)
    path = selector[5:] if selector.startswith("file:") else selector
    try:
        psi = wavefunction_from_csv(_read_text(path), params)
    except SquareWellError as exc:
        raise InputError(f"{path}: {exc}") from None
    if normalize:
        norm = norm_squared(psi)
        if norm == 0:
            raise InputError(f"{path}: state is identically zero")
        psi = psi.scaled(1.0 / np.sqrt(norm))
    return psi


def cmd_spectrum(opts, args):
    if args.n_max < 1:
        raise DomainError(f"--n-max must be >= 1, got {args.n_max}")
    levels = [(n, energy_level(opts.params, n)) for n in range(1, args.n_max + 1)]
    if opts.output_format == "csv":
        return EXIT_OK, spectrum_to_csv(levels)
    if opts.output_format == "json":
        data = {
            "hbar": opts.params.hbar,
            "mass": opts.params.mass,
            "length": opts.params.length,
            "n": [n for n, _ in levels],
            "energy": [e for _, e in levels],
        }
        return EXIT_OK, report_to_json(data)
    lines = [f"{'n':>4}  {'energy':>20}  {'hbar^2/2mL^2':>14}"]
    for n, e in levels:
        lines.append(f"{n:>4}  {e:>20.12g}  {_multiple(e, opts.params):>14.10g}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _initial_series(selector, opts):
    if selector == "random":
        return None
    if selector.startswith("mode:"):
        try:
            n = int(selector[5:])
        except ValueError:
            raise DomainError(f"bad initial selector {selector!r}") from None
        return SineSeries.mode(n, params=opts.params)
    if selector.startswith("file:"):
        path = selector[5:]
        try:
            series = coefficients_from_csv(_read_text(path), opts.params)
        except SquareWellError as exc:
            raise InputError(f"{path}: {exc}") from None
        if not isinstance(series, SineSeries):
            raise InputError(f"{path}: expected n,re,im sine coefficients")
        return series
    raise DomainError(f"--initial must be random, mode:N or file:PATH, got {selector!r}")


def _write_side_file(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from None


def cmd_minimize(opts, args):
    config = MinimizerConfig(
        truncation=opts.truncation,
        max_iterations=args.max_iterations,
        step_size=args.step_size,
        tolerance=args.tolerance,
        seed=opts.seed,
    )
    result = minimize_rayleigh(_initial_series(args.initial, opts), config, opts.params)
    bound = exact_bound(opts.params)
    status = EXIT_OK if result.converged else EXIT_NOT_CONVERGED
    if args.trajectory:
        _write_side_file(args.trajectory, trajectory_to_csv(result.energy_trajectory))
    if args.coefficients:
        _write_side_file(args.coefficients, coefficients_to_csv(result.final_series))

    report = {
        "final_energy": result.final_energy,
        "exact_bound": bound,
        "gap": result.final_energy - bound,
        "relative_gap": (result.final_energy - bound) / bound,
        "overlap_with_mode1": result.overlap_with_mode1,
        "iterations_used": result.iterations_used,
        "converged": result.converged,
        "step_size": result.step_size,
        "truncation": opts.truncation,
        "seed": opts.seed,
    }
    if opts.output_format == "csv":
        return status, trajectory_to_csv(result.energy_trajectory)
    if opts.output_format == "json":
        return status, report_to_json(report)
    return status, _text_block(
        list(report.items()), opts.params, energy_keys=("final_energy", "exact_bound", "gap")
    )


def _score_trial(trial: Trial, opts):
    L = opts.params.length
    if trial.series is not None:
        coeffs = sine_to_exp(trial.series)
    else:
        coeffs = project_exp(trial.psi, opts.truncation)
    report = bounds_report(trial.psi)
    return {
        "trial": trial.index,
        "kind": trial.kind,
        "grid_margin": wirtinger_ratio(trial.psi) - (np.pi / L) ** 2,
        "coefficient_margin": wirtinger_margin(coeffs),
        "uncertainty_product": report.uncertainty_product,
    }


def cmd_check_wirtinger(opts, args):
    if args.trials < 1:
        raise DomainError(f"--trials must be >= 1, got {args.trials}")
    grid = Grid(opts.grid_points, opts.params)
    pool = list(trials(opts.seed, args.trials, grid))
    if args.include_ground:
        series = closed_form_minimizer(opts.truncation, opts.params)
        pool.append(Trial(args.trials, "ground", sample(series, grid.n_points), series))
    rows = [_score_trial(t, opts) for t in pool]

    eps_w = wirtinger_tolerance(grid)
    eps_u = uncertainty_tolerance(grid)
    grid_m = np.array([r["grid_margin"] for r in rows])
    coef_m = np.array([r["coefficient_margin"] for r in rows])
    unc = np.array([r["uncertainty_product"] for r in rows])
    half_hbar = 0.5 * opts.params.hbar
    summary = {
        "trials": len(rows),
        "seed": opts.seed,
        "grid_points": opts.grid_points,
        "epsilon_quad": eps_w,
        "grid_min_margin": float(grid_m.min()),
        "grid_mean_margin": float(grid_m.mean()),
        "grid_violations": int(np.sum(grid_m < -eps_w)),
        "coefficient_min_margin": float(coef_m.min()),
        "coefficient_mean_margin": float(coef_m.mean()),
        "coefficient_violations": int(np.sum(coef_m < 0)),
        "equality_cases": int(np.sum(coef_m == 0)),
        "uncertainty_min_product": float(unc.min()),
        "uncertainty_violations": int(np.sum(unc < half_hbar - eps_u)),
    }
    failed = summary["grid_violations"] or summary["coefficient_violations"]
    status = EXIT_VIOLATION if failed else EXIT_OK
    if opts.output_format == "csv":
        header = list(rows[0])
        return status, rows_to_csv(header, ([r[h] for h in header] for r in rows))
    if opts.output_format == "json":
        return status, report_to_json(summary)
    return status, _text_block(list(summary.items()))


def cmd_bounds(opts, args):
    psi = _load_state(args.state, opts, normalize=args.normalize)
    try:
        report = bounds_report(psi)
    except SquareWellError as exc:
        if args.state.startswith(("ground", "mode:")):
            raise
        raise InputError(str(exc)) from None
    data = report.to_dict()
    if opts.output_format == "csv":
        return EXIT_OK, table_to_csv(data)
    if opts.output_format == "json":
        return EXIT_OK, report_to_json(data)
    energy_keys = ("heisenberg_bound", "exact_bound", "kinetic_energy", "spread_energy")
    return EXIT_OK, _text_block(list(data.items()), opts.params, energy_keys)


def cmd_coeffs(opts, args):
    psi = _load_state(args.state, opts)
    if args.basis == "sine":
        coeffs = project_sine(psi, opts.truncation)
        index, label = coeffs.modes, "n"
    else:
        coeffs = project_exp(psi, opts.truncation)
        index, label = coeffs.k, "k"
    if opts.output_format == "csv":
        return EXIT_OK, coefficients_to_csv(coeffs)
    try:
        energies = energy_report(psi, opts.truncation).to_dict()
    except SquareWellError as exc:
        raise InputError(str(exc)) from None
    if opts.output_format == "json":
        data = {
            "basis": args.basis,
            label: [int(i) for i in index],
            "re": [float(c.real) for c in coeffs.coefficients],
            "im": [float(c.imag) for c in coeffs.coefficients],
            **energies,
        }
        return EXIT_OK, report_to_json(data)
    lines = [f"{label:>4}  {'re':>22}  {'im':>22}"]
    for i, c in zip(index, coeffs.coefficients):
        lines.append(f"{int(i):>4}  {c.real:>22.15g}  {c.imag:>22.15g}")
    energy_keys = ("energy_quadrature", "energy_spectral", "rayleigh_quotient")
    return EXIT_OK, "\n".join(lines) + "\n\n" + _text_block(
        list(energies.items()), opts.params, energy_keys
    )


COMMANDS = {
    "spectrum": cmd_spectrum,
    "minimize": cmd_minimize,
    "check-wirtinger": cmd_check_wirtinger,
    "bounds": cmd_bounds,
    "coeffs": cmd_coeffs,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        opts = GlobalOptions(
            params=PhysicalParams(args.hbar, args.mass, args.length),
            grid_points=args.grid_points,
            truncation=args.truncation,
            output_format=args.output_format,
            output_path=args.output,
            seed=args.seed,
        )
        status, text = COMMANDS[args.command](opts, args)
    except InputError as exc:
        print(f"squarewell: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SquareWellError as exc:
        parser.print_usage(sys.stderr)
        print(f"squarewell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if opts.output_path:
        try:
            with open(opts.output_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"squarewell: error: cannot write {opts.output_path}: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    return status
