"""Run every verification suite and print a one-line-per-suite table.

Thin driver over g2theta.harness for quick interactive runs; the CLI's
`g2theta verify` is the supported interface and uses the same machinery.
"""

import argparse
import sys

from g2theta.harness import (
    SUITE_ORDER,
    RunConfig,
    report_to_json,
    run_suites,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--suite", action="append", choices=SUITE_ORDER, default=None)
    ap.add_argument("--json", metavar="PATH", default=None,
                    help="also write the full JSON report here")
    args = ap.parse_args()

    cfg = RunConfig(
        seed=args.seed,
        samples=args.samples,
        suites=tuple(args.suite) if args.suite else SUITE_ORDER,
    )
    report = run_suites(cfg)

    print(f"{'suite':<18} {'result':<6} {'max':>10} {'mean':>10} {'run':>5} {'skip':>5}  worst check")
    for s in report.suites:
        verdict = "pass" if s.passed else "FAIL"
        print(
            f"{s.name:<18} {verdict:<6} {s.max_residual:>10.3e} "
            f"{s.mean_residual:>10.3e} {s.samples_run:>5} {s.skipped:>5}  {s.worst_check}"
        )
    print(f"overall: {'pass' if report.passed else 'FAIL'}")

    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report_to_json(report))
        print(f"report written to {args.json}")
    return 0 if report.passed else 2


if __name__ == "__main__":
    sys.exit(main())
