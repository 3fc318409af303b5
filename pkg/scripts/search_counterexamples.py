"""Search for consistency violations of several rules and save the certificates.

    python3 scripts/search_counterexamples.py --out results/ --seed 0

Margin-space search is used for the pairwise rules, profile-space search
for Bucklin and STV.  A found certificate is written as two ballot files and
a summary; "none" rows mean the budget ran out.
"""

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from votemle.consistency import search_violation
from votemle.rules import BORDA, BUCKLIN, COPELAND, MAXIMIN, RANKED_PAIRS, STV, Rule


@dataclass(frozen=True)
class SearchJob:
    rule: Rule
    kind: str
    m: int
    strategy: str
    max_votes: int = 4
    max_weight: int = 6
    exhaustive: bool = False

    @property
    def label(self) -> str:
        return f"{self.rule.name}-{self.kind}-m{self.m}"


JOBS = [
    SearchJob(COPELAND, "ranking", 5, "margins", max_weight=6),
    SearchJob(COPELAND, "winner", 5, "margins", max_weight=6),
    SearchJob(MAXIMIN, "ranking", 4, "margins", max_weight=12),
    SearchJob(MAXIMIN, "winner", 4, "margins", max_weight=12),
    SearchJob(RANKED_PAIRS, "ranking", 4, "margins", max_weight=20),
    SearchJob(RANKED_PAIRS, "winner", 4, "margins", max_weight=20),
    SearchJob(BUCKLIN, "ranking", 5, "profiles", max_votes=4),
    SearchJob(BUCKLIN, "winner", 4, "profiles", max_votes=6),
    SearchJob(STV, "winner", 4, "profiles", max_votes=9),
    SearchJob(STV, "ranking", 3, "profiles", max_votes=4, exhaustive=True),
    SearchJob(BORDA, "ranking", 3, "profiles", max_votes=4, exhaustive=True),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, help="directory for certificates")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget", type=int, default=None, help="samples per random search")
    args = parser.parse_args()
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    for job in JOBS:
        start = time.perf_counter()
        cert = search_violation(job.rule, job.kind, job.m, strategy=job.strategy,
                                max_votes=job.max_votes, max_weight=job.max_weight,
                                exhaustive=job.exhaustive, seed=args.seed,
                                budget=None if job.exhaustive else args.budget)
        elapsed = time.perf_counter() - start
        if cert is None:
            print(f"{job.label:28} none  [{elapsed:.2f}s]")
            continue
        print(f"{job.label:28} found V1 {cert.v1.n} votes, V2 {cert.v2.n} votes  [{elapsed:.2f}s]")
        if args.out:
            cert.write(args.out / f"{job.label}-")
            (args.out / f"{job.label}.txt").write_text(cert.summary() + "\n", encoding="utf-8")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
