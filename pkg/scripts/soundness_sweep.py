"""Randomized axiom-schema soundness sweep over small structures.

Draws seeded random instances of each axiom schema and checks validity
in exhaustively enumerated size-1 structures plus sampled structures of
sizes 2..max-size.  A single failure line would pinpoint the schema,
the instance, and the falsifying environment.
"""

import argparse
import time

from clonelogic.checks import soundness_survey
from clonelogic.syntax import format_formula


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=200, help="instances per schema")
    parser.add_argument("--max-size", type=int, default=3)
    args = parser.parse_args()

    start = time.monotonic()
    report = soundness_survey(
        seed=args.seed, per_schema=args.count, max_size=args.max_size
    )
    elapsed = time.monotonic() - start
    for axiom, count in report.per_axiom:
        print(f"{axiom}: {count} instances")
    for failure in report.failures:
        print(
            f"FAIL {failure.axiom} at env prefix {failure.env_prefix}: "
            f"{format_formula(failure.instance)}"
        )
    print(
        f"{report.structures_checked} structure checks, "
        f"{len(report.failures)} failures, {elapsed:.1f}s"
    )
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
