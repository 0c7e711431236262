#!/usr/bin/env python3
"""Run the next-query policy experiment and write report files.

Usage: python scripts/run_suggestion_experiment.py [--seeds N] [--out PREFIX]
"""

import argparse
from pathlib import Path

from projsearch.sim import SUGGESTION_POLICIES, SuggestionSimConfig, run_suggestion_experiment


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("--first-seed", type=int, default=0)
    parser.add_argument("--threshold", type=float, default=50.0)
    parser.add_argument("--noise", type=float, default=0.0)
    parser.add_argument("--policies", default=",".join(SUGGESTION_POLICIES))
    parser.add_argument("--out", default="reports/suggestion")
    args = parser.parse_args()

    report = run_suggestion_experiment(
        policies=[p.strip() for p in args.policies.split(",") if p.strip()],
        seeds=range(args.first_seed, args.first_seed + args.seeds),
        config=SuggestionSimConfig(threshold=args.threshold, noise=args.noise),
    )
    print(report.to_table())

    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{prefix}.json").write_text(report.to_json() + "\n", "utf-8")
    Path(f"{prefix}.txt").write_text(report.to_table() + "\n", "utf-8")
    rows = "\n".join("\t".join(str(v) for v in row) for row in report.plot_rows())
    Path(f"{prefix}.tsv").write_text(rows + "\n", "utf-8")
    print(f"\nwrote {prefix}.json, {prefix}.txt, {prefix}.tsv")


if __name__ == "__main__":
    main()
