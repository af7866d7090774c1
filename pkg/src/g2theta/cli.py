"""Command-line interface: verify suites, print moduli, invert a point.

Exit codes: 0 success (every selected suite passed), 1 bad configuration,
2 numerical failure (suite over tolerance or a divisor/singularity error),
3 degenerate period matrix.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigInvalid, DegenerateTau, G2ThetaError
from .harness import (
    SUITE_ORDER,
    VERSION,
    config_from_sources,
    parse_complex_pair,
    parse_config_file,
    report_to_json,
    run_suites,
)
from .inversion import parameterization_residuals, recover_pair
from .moduli import moduli_consistency_residuals, moduli_from_tau
from .theta import DEFAULT_TAU, PeriodMatrix, Point2

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are config errors, exit code 1
        raise ConfigInvalid(message)


def _fmt(z: complex) -> str:
    return f"{z.real:.15g}{z.imag:+.15g}i"


def _add_tau_flags(sub) -> None:
    sub.add_argument("--tau1", type=parse_complex_pair, metavar="RE,IM", default=None)
    sub.add_argument("--tau2", type=parse_complex_pair, metavar="RE,IM", default=None)
    sub.add_argument("--tau12", type=parse_complex_pair, metavar="RE,IM", default=None)


def _tau_from_flags(args) -> PeriodMatrix:
    return PeriodMatrix(
        args.tau1 if args.tau1 is not None else DEFAULT_TAU.tau1,
        args.tau2 if args.tau2 is not None else DEFAULT_TAU.tau2,
        args.tau12 if args.tau12 is not None else DEFAULT_TAU.tau12,
    )


def _cmd_verify(args) -> int:
    file_values = parse_config_file(args.config) if args.config else None
    cfg = config_from_sources(
        file_values,
        tau1=args.tau1,
        tau2=args.tau2,
        tau12=args.tau12,
        seed=args.seed,
        samples=args.samples,
        suites=args.suite,
    )
    report = run_suites(cfg)
    text = report_to_json(report)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
        for s in report.suites:
            verdict = "pass" if s.passed else "FAIL"
            print(
                f"{s.name:<18} {verdict}  max {s.max_residual:.3e}  "
                f"mean {s.mean_residual:.3e}  samples {s.samples_run}  skipped {s.skipped}"
            )
        print(f"report written to {args.json}")
        print(f"overall: {'pass' if report.passed else 'FAIL'}")
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 2


def _cmd_moduli(args) -> int:
    tau = _tau_from_flags(args)
    ms = moduli_from_tau(tau)
    print(f"tau1  = {_fmt(tau.tau1)}")
    print(f"tau2  = {_fmt(tau.tau2)}")
    print(f"tau12 = {_fmt(tau.tau12)}")
    print("squared moduli:")
    for name in ("k0_sq", "k1_sq", "k2_sq", "kp0_sq", "kp1_sq", "kp2_sq",
                 "k01_sq", "k02_sq", "k12_sq"):
        print(f"  {name:<7} = {_fmt(getattr(ms, name))}")
    print("principal roots:")
    for name in ("k0", "k1", "k2", "kp0", "kp1", "kp2", "k01", "k02", "k12"):
        print(f"  {name:<7} = {_fmt(getattr(ms, name))}")
    print("consistency residuals:")
    for label, value in moduli_consistency_residuals(tau):
        print(f"  {label:<24} {value:.3e}")
    collapse = max(abs(ms.k0_sq - ms.k1_sq), abs(ms.k0_sq - ms.k2_sq))
    if collapse / (1.0 + abs(ms.k0_sq)) < 1e-10:
        print("note: moduli collapse, k0^2 = k1^2 = k2^2 within 1e-10 (split period matrix)")
    return 0


def _cmd_invert(args) -> int:
    tau = _tau_from_flags(args)
    point = Point2(args.u, args.v)
    pair = recover_pair(point, tau)
    print(f"x1     = {_fmt(pair.x1)}")
    print(f"x2     = {_fmt(pair.x2)}")
    print(f"sigma1 = {_fmt(pair.sigma1)}")
    print(f"sigma2 = {_fmt(pair.sigma2)}")
    print(f"sign class flipped from principal: {pair.sign_flipped}")
    print("parameterization residuals:")
    for label, value in parameterization_residuals(point, tau):
        print(f"  {label:<10} {value:.3e}")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="g2theta",
        description="Genus-2 theta toolkit: verification suites, moduli, Jacobi inversion.",
    )
    parser.add_argument("--version", action="version", version=f"g2theta {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    verify = sub.add_parser("verify", help="run verification suites and emit a JSON report")
    verify.add_argument(
        "--suite", action="append", choices=SUITE_ORDER, default=None,
        help="suite to run (repeatable; default: all)",
    )
    verify.add_argument("--config", metavar="PATH", default=None,
                        help="key = value config file; flags override it")
    _add_tau_flags(verify)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--samples", type=int, default=None)
    verify.add_argument("--json", metavar="PATH", default=None,
                        help="write the JSON report here and print a summary instead")
    verify.set_defaults(func=_cmd_verify)

    moduli = sub.add_parser("moduli", help="print the nine squared moduli and consistency residuals")
    _add_tau_flags(moduli)
    moduli.set_defaults(func=_cmd_moduli)

    invert = sub.add_parser("invert", help="recover the point pair {x1, x2} at (u, v)")
    _add_tau_flags(invert)
    invert.add_argument("--u", type=parse_complex_pair, metavar="RE,IM", required=True)
    invert.add_argument("--v", type=parse_complex_pair, metavar="RE,IM", required=True)
    invert.set_defaults(func=_cmd_invert)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigInvalid as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DegenerateTau as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except G2ThetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
