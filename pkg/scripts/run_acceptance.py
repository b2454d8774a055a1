"""
Acceptance run: every built-in scenario against the published numbers.
Run from repo root with PYTHONPATH=src or after pip install -e .

  python scripts/run_acceptance.py

Prints one line per target with the observed value and whether it falls in tolerance.
Nothing here fails the process; tests/test_published_targets.py asserts the same numbers.
"""

import logging
import sys
from pathlib import Path

# Ensure package is importable
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s %(message)s")

from rollroller.config import DEFAULT_CONFIG  # noqa: E402
from rollroller.dynamics.oracle import oracle_report, summarize_report  # noqa: E402
from rollroller.scenarios import (  # noqa: E402
    mass_ratio_sweep,
    run_case1,
    run_case3,
    run_case4,
    run_forward_locomotion,
)


def _print_targets(targets) -> None:
    for t in targets:
        observed = "n/a" if t.observed is None else "%.4f" % t.observed
        print("  %-24s target %9.4f +-%2.0f%%  observed %9s  %s"
              % (t.name, t.target, 100 * t.tolerance, observed, "ok" if t.within else "MISS"))


def main() -> None:
    print("Oracle (1000 states):")
    summary = summarize_report(oracle_report(DEFAULT_CONFIG.params, n_states=1000))
    for mode, err in summary["derived_max_rel_err_by_mode"].items():
        print("  %s derived max rel err %.3g" % (mode, err))

    print("Case 1 directions:")
    for run in run_case1():
        print("  %-18s final theta %8.4f  %s" % (run.label, run.metrics.final_theta, run.direction()))

    print("Case 3 thresholds:")
    case3 = run_case3()
    print("  negative %s  positive %s  monotone %s" % (case3.negative_threshold, case3.positive_threshold, case3.monotone))
    _print_targets(case3.targets)

    print("Case 4:")
    case4 = run_case4()
    _print_targets(case4.targets)
    print("  rest gaps MM %.4f GB %.4f  inequality %s" % (case4.rest_gap_mm, case4.rest_gap_gb, case4.gb_inequality_holds))

    print("Mass sweep:")
    sweep = mass_ratio_sweep()
    for p in sweep.points:
        print("  m*=%.3f  %-20s ripple %.4f" % (p.m_star, p.classification, p.ripple))
        _print_targets(p.run.metrics.targets)
    print("  boundaries: %s .. %s" % (sweep.lower_boundary, sweep.upper_boundary))

    print("Forward locomotion:")
    _print_targets(run_forward_locomotion().targets)


if __name__ == "__main__":
    main()
