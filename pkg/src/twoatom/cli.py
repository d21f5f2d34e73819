"""Command-line front end.

Subcommands::

    twoatom figure {1,2}      purity dataset of a reproduced figure (t,zeta1,zeta2)
    twoatom purity            purity deficits of atom 1, atom 2 and the field
    twoatom inversion         inversions of both atoms
    twoatom compare           closed-form vs brute-force atom-1 purity
    twoatom validity          dispersive-limit validity ratio, PASS/WARN at 0.1

Exit status: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

import numpy as np

from . import analytic, numeric, sweep
from .core import FieldState, JointKet, ModelParams, QubitState, TruncationError, partial_trace, purity_deficit

__all__ = ["ConfigError", "RunConfig", "parse_config", "run", "main", "format_csv"]

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3
SUBCOMMANDS = ("purity", "inversion", "compare", "validity", "figure")
VALIDITY_THRESHOLD = 0.1


class ConfigError(ValueError):
    """Bad command line; the message names the offending flag."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    params: ModelParams
    field: Optional[FieldState] = None
    atom1: Optional[QubitState] = None
    atom2: Optional[QubitState] = None
    grid: sweep.TimeGrid = sweep.TimeGrid()
    output: Optional[str] = None
    precision: int = 12
    source: str = "numeric"
    figure: Optional[int] = None
    lambda_dipole: Optional[float] = None
    photon_number: int = 0
    mapping: str = "standard"
    exact_report: bool = False


def _number(kind, check=None, message=""):
    def convert(text):
        try:
            value = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"malformed number {text!r}") from None
        if check is not None and not check(value):
            raise argparse.ArgumentTypeError(f"{message}, got {text}")
        return value

    return convert


def _amplitudes(text):
    try:
        return [complex(part.strip().replace(" ", "")) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"malformed amplitude list {text!r}") from None


def _qubit(text: str, flag: str) -> QubitState:
    key = text.strip().lower()
    try:
        if key == "g":
            return QubitState.ground()
        if key == "e":
            return QubitState.excited()
        amps = _amplitudes(text)
        if len(amps) != 2:
            raise ValueError("expected g, e or two amplitudes 'a,b' for a|g> + b|e>")
        return QubitState(*amps)
    except ValueError as exc:
        raise ConfigError(f"argument {flag}: {exc}") from None


def _field(text: str, n_max: int) -> FieldState:
    key = text.strip().lower()
    try:
        if key == "vacuum":
            return FieldState.vacuum(n_max)
        if key.startswith("fock:"):
            return FieldState.fock(int(key[5:]), n_max)
        amps = _amplitudes(text)
        if len(amps) > n_max + 1:
            raise ValueError(f"{len(amps)} amplitudes exceed the n_max={n_max} ladder")
        return FieldState(np.pad(np.array(amps), (0, n_max + 1 - len(amps))))
    except ValueError as exc:
        raise ConfigError(f"argument --field: {exc}") from None


def _build_parser() -> argparse.ArgumentParser:
    positive = _number(float, lambda v: v > 0, "must be > 0")
    nonneg = _number(float, lambda v: v >= 0, "must be >= 0")
    real = _number(float)

    output = _Parser(add_help=False)
    output.add_argument("--output", "-o", help="CSV destination (default: standard output)")
    output.add_argument("--precision", type=_number(int, lambda v: 1 <= v <= 17, "must be in 1..17"), default=12)

    grid = _Parser(add_help=False)
    grid.add_argument("--t-end", type=positive, default=20.0, help="last scaled time lambda1*t")
    grid.add_argument("--steps", type=_number(int, lambda v: v >= 2, "must be >= 2"), default=2001)

    model = _Parser(add_help=False)
    model.add_argument("--lambda1", type=positive, default=1.0)
    model.add_argument("--lambda2", type=nonneg, default=0.2)
    model.add_argument("--delta", type=real, default=None)
    model.add_argument("--omega", type=real, default=None)
    model.add_argument("--omega2", type=real, default=None)
    model.add_argument("--n-max", type=_number(int, lambda v: v >= 1, "must be >= 1"), default=15)
    model.add_argument("--tol", type=positive, default=1e-10)

    state = _Parser(add_help=False)
    state.add_argument("--field", default="vacuum", help="vacuum | fock:N | comma-separated amplitudes")
    state.add_argument("--atom1", default="e", help="g | e | 'a,b' meaning a|g> + b|e>")
    state.add_argument("--atom2", default=f"{2**-0.5!r},{2**-0.5!r}")

    parser = _Parser(prog="twoatom", description="Two atoms in a cavity: one resonant, one dispersive.")
    subs = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    fig = subs.add_parser("figure", parents=[grid, output], help="reproduce a purity figure")
    fig.add_argument("figure", type=_number(int), choices=sorted(sweep.FIGURE_LAMBDA2))

    for name in ("purity", "inversion"):
        p = subs.add_parser(name, parents=[model, state, grid, output], help=f"{name} time series as CSV")
        p.add_argument("--source", choices=sweep.SOURCES, default="numeric")
    subs.add_parser("compare", parents=[model, state, grid, output], help="closed form vs propagator")

    val = subs.add_parser("validity", parents=[model, state, grid, output], help="dispersive-limit check")
    val.add_argument("--lambda-dipole", type=nonneg, required=True)
    val.add_argument("--n", dest="photon_number", type=_number(int, lambda v: v >= 0, "must be >= 0"), default=0)
    val.add_argument("--exact-report", action="store_true", help="also run the exact two-dipole comparison")
    val.add_argument("--mapping", choices=sorted(numeric.MAPPINGS), default="standard")
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    """Turn command-line tokens into a :class:`RunConfig`.

    Raises:
        ConfigError: unknown flag, missing flag, malformed or out-of-range value.
    """
    ns = _build_parser().parse_args(list(argv))
    grid_kw = dict(t_end=ns.t_end, steps=ns.steps)
    common = dict(output=ns.output, precision=ns.precision, grid=sweep.TimeGrid(**grid_kw))

    if ns.subcommand == "figure":
        params = ModelParams(lambda1=1.0, lambda2=sweep.FIGURE_LAMBDA2[ns.figure])
        return RunConfig("figure", params, figure=ns.figure, **common)

    try:
        params = ModelParams(
            lambda1=ns.lambda1,
            lambda2=ns.lambda2,
            delta=ns.delta,
            omega=ns.omega,
            omega2=ns.omega2,
            n_max=ns.n_max,
            tol=ns.tol,
        )
    except ValueError as exc:
        raise ConfigError(f"argument --delta/--omega/--omega2: {exc}") from None

    extra = {}
    if ns.subcommand in ("purity", "inversion"):
        extra["source"] = ns.source
    if ns.subcommand == "validity":
        if params.delta == 0:
            raise ConfigError("argument --delta: validity needs a nonzero detuning")
        extra.update(
            lambda_dipole=ns.lambda_dipole,
            photon_number=ns.photon_number,
            mapping=ns.mapping,
            exact_report=ns.exact_report,
        )
    return RunConfig(
        ns.subcommand,
        params,
        field=_field(ns.field, params.n_max),
        atom1=_qubit(ns.atom1, "--atom1"),
        atom2=_qubit(ns.atom2, "--atom2"),
        **common,
        **extra,
    )


def _fmt(x: float, precision: int) -> str:
    # + 0.0 folds -0.0 into 0.0 so output is sign-stable
    return f"{round(float(x), precision) + 0.0:.{precision}f}"


def format_csv(header: Sequence[str], columns: Sequence[np.ndarray], precision: int) -> str:
    """Fixed-point CSV text, one row per grid point, ``\\n`` line endings."""
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(_fmt(v, precision) for v in row))
    return "\n".join(lines) + "\n"


def _scenario(cfg: RunConfig) -> sweep.Scenario:
    return sweep.Scenario(cfg.params, cfg.field, cfg.atom1, cfg.atom2)


def _dataset(cfg: RunConfig):
    times = cfg.grid.times
    if cfg.subcommand == "figure":
        return ("t", "zeta1", "zeta2"), sweep.figure_dataset(cfg.figure, cfg.grid)

    scen = _scenario(cfg)
    if cfg.subcommand == "purity":
        cols = [sweep.trace_purity(cfg.source, s, cfg.grid, scen).values for s in ("atom1", "atom2", "field")]
        return ("t", "zeta1", "zeta2", "zeta_field"), [times, *cols]

    if cfg.subcommand == "inversion":
        cols = [sweep.trace_inversion(cfg.source, cfg.grid, scen, s) for s in ("atom1", "atom2")]
        return ("t", "inversion1", "inversion2"), [times, *cols]

    # compare: closed-form amplitudes vs. brute-force propagation, both traced to atom 1
    closed = analytic.evolve_analytic_many(scen.initial, times, cfg.params)
    brute = numeric.propagate_many(numeric.build_hamiltonian("interaction", cfg.params), scen.initial, times)
    z_a = np.array([purity_deficit(partial_trace(JointKet(s), "atom1")) for s in closed])
    z_n = np.array([purity_deficit(partial_trace(JointKet(s), "atom1")) for s in brute])
    return ("t", "zeta1_analytic", "zeta1_numeric", "delta"), [times, z_a, z_n, np.abs(z_a - z_n)]


def _validity_text(cfg: RunConfig) -> str:
    ratio = numeric.dispersive_validity(cfg.params, cfg.lambda_dipole, cfg.photon_number)
    verdict = "PASS" if ratio < VALIDITY_THRESHOLD else "WARN"
    text = f"{ratio:.{cfg.precision}g} {verdict}\n"
    if cfg.exact_report:
        report = numeric.compare_dispersive_vs_exact(
            cfg.params, cfg.lambda_dipole, _scenario(cfg).initial, cfg.grid.times, mapping=cfg.mapping
        )
        text += report.summary() + "\n"
    return text


def run(cfg: RunConfig, stdout: Optional[TextIO] = None) -> int:
    """Execute a parsed configuration; returns the exit status."""
    stdout = stdout or sys.stdout
    try:
        if cfg.subcommand == "validity":
            text = _validity_text(cfg)
        else:
            header, columns = _dataset(cfg)
            text = format_csv(header, columns, cfg.precision)
    except ValueError as exc:
        print(f"twoatom: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (TruncationError, numeric.PropagationError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"twoatom: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    if cfg.output:
        with open(cfg.output, "w", newline="\n", encoding="ascii") as fh:
            fh.write(text)
    else:
        try:
            stdout.write(text)
            stdout.flush()
        except BrokenPipeError:
            # downstream reader (e.g. head) closed early; not an error for us
            sys.stderr.close()
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except ConfigError as exc:
        print(f"twoatom: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
