"""Filter/valuation survey over a corpus of small proposition algebras.

Prints one verdict line per algebra: whether the table is Boolean, how
many filters and valuations it has, and whether every filter is an
intersection of valuations while maximal filters coincide with
valuations.
"""

import argparse

from clonelogic.checks import completeness_survey, prop_corpus


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--total", type=int, default=20, help="corpus size")
    args = parser.parse_args()

    corpus = prop_corpus(seed=args.seed, total=args.total)
    report = completeness_survey(corpus)
    for index, verdict in enumerate(report.verdicts):
        print(
            f"algebra {index:2d}: size={verdict.carrier} "
            f"boolean={verdict.boolean} "
            f"filters={verdict.filters} valuations={verdict.valuations} "
            f"intersections={verdict.filters_are_intersections} "
            f"maximal=valuations={verdict.maximal_filters_match_valuations}"
        )
    print(f"total {len(report.verdicts)} algebras, all ok: {report.ok}")
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
