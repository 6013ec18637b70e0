"""Quantifier-algebra law sweep over function algebras on small domains.

For each (domain size, truth-value algebra) cell, interprets one binary
predicate over the domain, exhaustively when the table count is small
and by seeded sampling otherwise, and checks the laws Q1-Q5 on a
depth-bounded formula fragment.
"""

import argparse
import time

from clonelogic.checks import qa_survey


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--rank-bound", type=int, default=2)
    parser.add_argument("--sizes", type=int, nargs="+", default=[1, 2, 3])
    parser.add_argument(
        "--exhaustive-cap",
        type=int,
        default=64,
        help="enumerate all predicate tables when a cell has at most this many",
    )
    parser.add_argument("--sampled", type=int, default=8, help="tables per sampled cell")
    args = parser.parse_args()

    start = time.monotonic()
    report = qa_survey(
        seed=args.seed,
        sizes=tuple(args.sizes),
        rank_bound=args.rank_bound,
        exhaustive_cap=args.exhaustive_cap,
        sampled_count=args.sampled,
    )
    elapsed = time.monotonic() - start
    for cell in report.cells:
        mode = "exhaustive" if cell.exhaustive else "sampled"
        verdict = "ok" if cell.ok else f"FAIL {cell.failing_law}"
        print(
            f"size={cell.size} values={1 << cell.atom_bits} "
            f"tables={cell.structures} ({mode}): {verdict}"
        )
    print(f"all ok: {report.ok}, {elapsed:.1f}s")
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
