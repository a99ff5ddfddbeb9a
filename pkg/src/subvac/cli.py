"""``subvac`` command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 domain error (for example a
non-diagonalizable operator), 3 verification failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import math
import sys
from pathlib import Path

import numpy as np

from . import core, fieldmodel, sampling, states, verify
from .errors import SubvacError

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return value


def even_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 2 or value % 2:
        raise argparse.ArgumentTypeError(f"must be a positive even integer >= 2: {text!r}")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def float_list(text: str) -> list[float]:
    return [finite_float(part) for part in text.split(",") if part.strip()]


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def emit_csv(header: list[str], rows, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])


def _operator(args) -> core.QuadraticOperator:
    if args.A is None:
        raise UsageError("--A is required")
    try:
        return core.QuadraticOperator(args.A, complex(args.B_re, args.B_im))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _grid(lo: float, hi: float, points: int, log: bool) -> np.ndarray:
    if not (lo < hi) or (log and lo <= 0):
        raise UsageError(f"bad grid: need {'0 < ' if log else ''}lo < hi, got lo={lo}, hi={hi}")
    return np.geomspace(lo, hi, points) if log else np.linspace(lo, hi, points)


def cmd_diagonalize(args, out):
    op = _operator(args)
    bt, spec = core.diagonalize(op)
    header = ["A", "B_re", "B_im", "alpha", "beta_abs", "beta_arg", "omega", "lambda0", "n0", "qi_bound"]
    row = [
        op.a_coeff, op.b_coeff.real, op.b_coeff.imag, bt.alpha, abs(bt.beta), core.beta_phase(bt),
        spec.omega, spec.lambda0, core.mean_photon_number(op), core.qi_bound(op),
    ]
    emit_csv(header, [row], out)


def cmd_eigenstate(args, out):
    op = _operator(args)
    bt, _ = core.diagonalize(op)
    psi = core.lowest_eigenstate(bt, args.nmax, args.tolerance)
    print(f"# truncation deficit {psi.deficit:.3e}", file=sys.stderr)
    header = ["n", "c_re", "c_im", "prob"]
    cols = [psi.coeffs]
    if args.oracle:
        from . import oracle

        ref = oracle.ground_vector(oracle.build_sector(op, "even", args.nmax))
        header += ["oracle_re", "oracle_im"]
        cols.append(ref.coeffs)
    rows = []
    for n in range(args.nmax + 1):
        c = psi.coeffs[n]
        row = [n, c.real, c.imag, abs(c) ** 2]
        if args.oracle:
            row += [cols[1][n].real, cols[1][n].imag]
        rows.append(row)
    emit_csv(header, rows, out)


def cmd_expect(args, out):
    header = ["family", "expectation", "mean_photons", "negative"]
    if args.paper_formula:
        header.append("expectation_paper_formula")
    rows = []
    for family in args.family or ["vacuum-plus-two"]:
        extra = ""
        if family == "squeezed":
            sq = states.SqueezeParameter(args.r, args.delta)
            value = states.expect_squeezed(_operator(args), sq)
            photons = states.mean_photons_squeezed(sq)
        elif family == "vacuum-plus-two":
            op = _operator(args)
            st = states.VacuumPlusTwo(args.epsilon)
            value = states.expect_vacuum_plus_two(op, st)
            photons = states.mean_photons_vacuum_plus_two(st)
            extra = states.expect_vacuum_plus_two_as_printed(op, st)
        elif family == "fock":
            psi = core.StateVector.fock(args.n, max(args.n, 2))
            value = states.expect_state(_operator(args), psi)
            photons = float(args.n)
        elif family == "instant-e2":
            mode = fieldmodel.ModeConfig.real(args.f2, args.omega)
            value = fieldmodel.instant_e2_squeezed(mode, args.r, args.t)
            photons = states.mean_photons_squeezed(states.SqueezeParameter(args.r))
        else:
            raise UsageError(f"unknown state family {family!r}")
        row = [family, value, photons, value < 0]
        if args.paper_formula:
            row.append(extra)
        rows.append(row)
    emit_csv(header, rows, out)


def cmd_fig1(args, out):
    rows = []
    for x in _grid(args.lo, args.hi, args.points, log=True):
        printed, derived = sampling.mean_photons_lorentzian(float(x))
        rows.append([x, printed, derived])
    emit_csv(["tau_over_T", "n0_paper_formula", "n0_derived_formula"], rows, out)


def cmd_fig2(args, out):
    g = sampling.compact_bump(1.0)
    grid = _grid(args.lo, args.hi, args.points, log=False)
    emit_csv(["t_over_tau", "g_times_tau"], zip(grid, g(grid)), out)


def fig3_rows(lo: float, hi: float, points: int, omega_zero: bool = False) -> list[list]:
    """Compact-bump averaging rows, with Lorentzian n0 alongside (tau = 1)."""
    g = sampling.compact_bump(1.0)
    rows = []
    for x in _grid(lo, hi, points, log=True):
        x = float(x)
        lorentz = sampling.mean_photons_lorentzian(x)[1]
        if omega_zero:
            ghat = sampling.fourier_transform(g, 0.0)
            rows.append([x, ghat, math.inf, math.inf, lorentz, True])
            continue
        mode = fieldmodel.ModeConfig.real(1.0, 2.0 * math.pi * x)
        op = fieldmodel.build_averaged_operator(mode, g)
        ghat = op.b_coeff.real
        n0 = core.mean_photon_number(op)
        rows.append([x, ghat, n0, sampling.excess_photons(ghat), lorentz, n0 >= lorentz])
    return rows


FIG3_HEADER = [
    "tau_over_T", "g_hat_2omega", "n0_from_eq49", "n0_paper_variant", "n0_lorentzian",
    "compact_exceeds_lorentzian",
]


def cmd_fig3(args, out):
    emit_csv(FIG3_HEADER, fig3_rows(args.lo, args.hi, args.points, args.debug_omega_zero), out)


def cmd_sampling_ft(args, out):
    if args.kind == "lorentzian":
        g = sampling.lorentzian(args.tau)
    elif args.kind == "compact":
        g = sampling.compact_bump(args.tau)
    else:
        if not args.file:
            raise UsageError("--file is required for --kind tabulated")
        g = sampling.load_tabulated(args.file, args.tau)
    header = ["omega", "g_hat"]
    if g.kind is sampling.Kind.LORENTZIAN:
        header.append("g_hat_quadrature")
    rows = []
    for w in _grid(args.omega_lo, args.omega_hi, args.points, log=False):
        row = [w, sampling.fourier_transform(g, w)]
        if g.kind is sampling.Kind.LORENTZIAN:
            row.append(sampling.lorentzian_transform_by_quadrature(g.width, w))
        rows.append(row)
    emit_csv(header, rows, out)


def cmd_limit_sequence(args, out):
    mode = fieldmodel.ModeConfig.real(args.f2, args.omega)
    try:
        rows = fieldmodel.limit_sequence_instant(mode, args.r_values)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    emit_csv(["r", "value", "bound_gap"], rows, out)


def cmd_verify(args, out):
    report = verify.run(
        n_max=args.nmax,
        grid_max_ratio=args.grid_max_ratio,
        grid_points=args.grid_points,
        seed=args.seed,
        samples=args.samples,
    )
    for line in report.lines():
        print(line, file=out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def _add_operator_args(p):
    p.add_argument("--A", type=finite_float, default=None, help="coefficient of a^dag a")
    p.add_argument("--B-re", dest="B_re", type=finite_float, default=0.0)
    p.add_argument("--B-im", dest="B_im", type=finite_float, default=0.0)


def _add_grid_args(p, lo, hi, points):
    p.add_argument("--lo", type=finite_float, default=lo)
    p.add_argument("--hi", type=finite_float, default=hi)
    p.add_argument("--points", type=positive_int, default=points)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")
    common.add_argument("--config", type=Path, default=None, help="key = value file; flags override it")

    parser = _Parser(prog="subvac", description="Optimal subvacuum bounds for single-mode quadratic operators.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("diagonalize", parents=[common], help="Bogoliubov diagonalization of (A, B)")
    _add_operator_args(p)
    p.set_defaults(func=cmd_diagonalize)

    p = sub.add_parser("eigenstate", parents=[common], help="Fock coefficients of the lowest eigenstate")
    _add_operator_args(p)
    p.add_argument("--nmax", type=even_int, default=100)
    p.add_argument("--tol", dest="tolerance", type=finite_float, default=core.DEFAULT_TRUNCATION_TOL)
    p.add_argument("--oracle", action="store_true", help="add the matrix-oracle ground vector")
    p.set_defaults(func=cmd_eigenstate)

    p = sub.add_parser("expect", parents=[common], help="expectation values in named states")
    _add_operator_args(p)
    p.add_argument(
        "--family", action="append",
        help="squeezed, vacuum-plus-two, fock or instant-e2 (repeatable)",
    )
    p.add_argument("--r", type=finite_float, default=0.0)
    p.add_argument("--delta", type=finite_float, default=0.0)
    p.add_argument("--epsilon", type=finite_float, default=0.0)
    p.add_argument("--n", type=int, default=1, help="Fock level for --family fock")
    p.add_argument("--f2", type=finite_float, default=1.0)
    p.add_argument("--omega", type=finite_float, default=1.0)
    p.add_argument("--t", type=finite_float, default=0.0)
    p.add_argument("--paper-formula", action="store_true", help="also print the original vacuum-plus-two bracket")
    p.set_defaults(func=cmd_expect)

    p = sub.add_parser("fig1", parents=[common], help="n0 for Lorentzian averaging versus tau/T")
    _add_grid_args(p, 0.02, 2.0, 100)
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("fig2", parents=[common], help="the compact bump g(t) tau versus t/tau")
    _add_grid_args(p, -0.6, 0.6, 241)
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("fig3", parents=[common], help="n0 for compact-bump averaging versus tau/T")
    _add_grid_args(p, 0.02, 2.0, 100)
    p.add_argument("--debug-omega-zero", action="store_true", help="evaluate the transform at omega = 0")
    p.set_defaults(func=cmd_fig3)

    p = sub.add_parser("sampling-ft", parents=[common], help="cosine transform of a sampling function")
    p.add_argument("--kind", choices=["lorentzian", "compact", "tabulated"], default="lorentzian")
    p.add_argument("--tau", type=finite_float, default=1.0)
    p.add_argument("--file", type=Path, default=None, help="two-column (t, g) samples")
    p.add_argument("--omega-lo", type=finite_float, default=0.0)
    p.add_argument("--omega-hi", type=finite_float, default=20.0)
    p.add_argument("--points", type=positive_int, default=41)
    p.set_defaults(func=cmd_sampling_ft)

    p = sub.add_parser("limit-sequence", parents=[common], help="instant-time field along increasing r")
    p.add_argument("--f2", type=finite_float, default=1.0)
    p.add_argument("--omega", type=finite_float, default=1.0)
    p.add_argument("--r-values", type=float_list, default=[0.0, 1.0, 2.0, 3.0, 4.0])
    p.set_defaults(func=cmd_limit_sequence)

    p = sub.add_parser("verify", parents=[common], help="closed forms versus the Fock-matrix oracle")
    p.add_argument("--nmax", type=even_int, default=None)
    p.add_argument("--grid-max-ratio", type=finite_float, default=0.9)
    p.add_argument("--grid-points", type=positive_int, default=50)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--samples", type=positive_int, default=1000)
    p.set_defaults(func=cmd_verify)
    return parser


def read_config(path: Path) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            key, _, value = line.partition(" ")
        key = key.strip().lstrip("-").replace("-", "_")
        if not key:
            raise UsageError(f"{path}:{lineno}: cannot parse {raw!r}")
        values[key] = value.strip()
    return values


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", type=Path)
    known, _ = pre.parse_known_args(argv)
    if known.config is None:
        return
    try:
        values = read_config(known.config)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for key, value in values.items():
        hit = False
        for sp in subparsers.choices.values():
            for action in sp._actions:
                if action.dest.lower() != key.lower():
                    continue
                hit = True
                if isinstance(action, argparse._StoreTrueAction):
                    sp.set_defaults(**{action.dest: value.lower() in ("1", "true", "yes", "on")})
                elif isinstance(action, argparse._AppendAction):
                    sp.set_defaults(**{action.dest: [v.strip() for v in value.split(",")]})
                else:
                    # argparse runs ``type`` on string defaults, so validation still applies
                    sp.set_defaults(**{action.dest: value})
        if not hit:
            raise UsageError(f"unknown config key {key!r}")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"subvac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)

    buf = io.StringIO()
    try:
        status = args.func(args, buf)
    except UsageError as exc:
        print(f"subvac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SubvacError as exc:
        print(f"subvac: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = buf.getvalue()
    if args.out is not None:
        args.out.write_text(text)
    else:
        with contextlib.suppress(BrokenPipeError):
            sys.stdout.write(text)
    return EXIT_OK if status is None else status


if __name__ == "__main__":
    sys.exit(main())
