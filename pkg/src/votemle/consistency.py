"""Consistency (reinforcement) violations.

A rule that is a maximum likelihood estimator under i.i.d. votes must give
the union of two electorates the outcome both electorates got separately.
:func:`check_violation` certifies a failure of that property,
:func:`known_counterexamples` holds the two fully specified counterexamples for
Bucklin and STV, and :func:`search_violation` looks for new ones.

Certificates never depend on tie-breaking: both halves must admit exactly one
outcome under every tie-break, and the union must exclude that outcome under
every tie-break.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product
from pathlib import Path
from typing import Iterator

from .core import (CandidateSet, MarginGraph, Outcome, Profile, RankingOutcome,
                   Winner, parse_profile, render_profile)
from .mle import random_profile
from .rules import BUCKLIN, STV, Kind, Rule
from .synth import random_even_graph, realize_margin_graph


def _wrap(raw, kind: Kind) -> Outcome:
    return Winner(raw) if kind == "winner" else RankingOutcome(raw)


def format_outcome(outcome: Outcome, candidates: CandidateSet) -> str:
    if isinstance(outcome, Winner):
        return candidates.names[outcome.candidate]
    return candidates.format(outcome.order)


@dataclass(frozen=True)
class ViolationCertificate:
    rule: str
    kind: Kind
    v1: Profile
    v2: Profile
    outcome_v1: Outcome
    outcome_v2: Outcome
    outcome_combined: Outcome
    # unique outcome under every tie-break on V1 / V2; on V1+V2 the common
    # outcome is impossible under every tie-break
    strict_v1: bool
    strict_v2: bool
    strict_combined: bool
    # informational: the union needed no tie-breaking at all
    combined_tie_free: bool

    def __post_init__(self):
        if self.v1.candidates != self.v2.candidates:
            raise ValueError("certificate profiles use different candidate sets")
        if self.outcome_v1 != self.outcome_v2 or self.outcome_v1 == self.outcome_combined:
            raise ValueError("certificate outcomes must agree on V1, V2 and differ on V1+V2")
        if not (self.strict_v1 and self.strict_v2 and self.strict_combined):
            raise ValueError("certificate outcomes must not depend on tie-breaking")

    @property
    def combined(self) -> Profile:
        return self.v1 + self.v2

    def summary(self) -> str:
        names = self.v1.candidates
        yes = {True: "yes", False: "no"}
        return "\n".join([
            f"consistency violation: rule {self.rule}, kind {self.kind}",
            f"V1 ({self.v1.n} votes): {format_outcome(self.outcome_v1, names)}",
            f"V2 ({self.v2.n} votes): {format_outcome(self.outcome_v2, names)}",
            f"V1+V2 ({self.v1.n + self.v2.n} votes): "
            f"{format_outcome(self.outcome_combined, names)}",
            f"tie-independent: V1 {yes[self.strict_v1]}, V2 {yes[self.strict_v2]}, "
            f"V1+V2 {yes[self.strict_combined]} (V1+V2 tie-free: {yes[self.combined_tie_free]})",
        ])

    def render(self) -> str:
        return (self.summary() + "\n# V1\n" + render_profile(self.v1)
                + "# V2\n" + render_profile(self.v2))

    def write(self, prefix: str | Path) -> tuple[Path, Path]:
        """Write ``<prefix>v1.votes`` and ``<prefix>v2.votes``."""
        prefix = str(prefix)
        paths = (Path(prefix + "v1.votes"), Path(prefix + "v2.votes"))
        for path, profile in zip(paths, (self.v1, self.v2)):
            path.write_text(render_profile(profile), encoding="utf-8")
        return paths


def check_violation(rule: Rule, kind: Kind, v1: Profile, v2: Profile
                    ) -> ViolationCertificate | None:
    if v1.candidates != v2.candidates:
        raise ValueError("V1 and V2 must share a candidate set")
    first = rule.outcomes(v1, kind)
    if first is None or len(first) != 1 or rule.outcomes(v2, kind) != first:
        return None
    (common,) = first
    combined = v1 + v2
    possible = rule.outcomes(combined, kind)
    if possible is None or common in possible:
        return None
    result = rule(combined)
    got = result.winner if kind == "winner" else result.strict
    outcome = _wrap(common, kind)
    return ViolationCertificate(rule.name, kind, v1, v2, outcome, outcome, _wrap(got, kind),
                                True, True, True, len(possible) == 1)


# -- fixtures ----------------------------------------------------------------

@dataclass(frozen=True)
class Fixture:
    name: str
    rule: Rule
    kind: Kind
    v1: Profile
    v2: Profile
    expected: Outcome  # on V1 and on V2
    expected_combined: Outcome | None  # None when only "differs" is claimed
    excluded_combined: Outcome


_BUCKLIN_V1 = """\
candidates: a,b,c,d,e
2: a>b>c>d>e
1: b>a>c>d>e
"""
_BUCKLIN_V2 = """\
candidates: a,b,c,d,e
2: b>d>a>c>e
1: c>e>a>b>d
1: c>a>b>d>e
"""
_STV_V1 = """\
candidates: a,b,c
3: c>a>b
4: a>b>c
6: b>a>c
"""
_STV_V2 = """\
candidates: a,b,c
3: b>a>c
4: a>c>b
6: c>a>b
"""


def known_counterexamples() -> list[Fixture]:
    """The Bucklin (ranking) and STV (winner) counterexamples with their outcomes."""
    identity = RankingOutcome((0, 1, 2, 3, 4))
    return [
        Fixture("bucklin-ranking", BUCKLIN, "ranking",
                parse_profile(_BUCKLIN_V1), parse_profile(_BUCKLIN_V2),
                identity, RankingOutcome((1, 0, 2, 3, 4)), identity),
        Fixture("stv-winner", STV, "winner",
                parse_profile(_STV_V1), parse_profile(_STV_V2),
                Winner(0), None, Winner(0)),
    ]


# -- search ------------------------------------------------------------------

DEFAULT_RANDOM_BUDGET = 5000
POOL_LIMIT = 1500


class _Space:
    """How to evaluate, combine and realize samples in one search space."""

    def __init__(self, rule: Rule, kind: Kind):
        self.rule, self.kind = rule, kind

    def outcomes(self, item) -> frozenset | None:
        return self.rule.outcomes(item, self.kind)

    def combined_outcomes(self, x, y) -> frozenset | None:
        return self.rule.outcomes(x + y, self.kind)

    def relabel(self, item, perm):
        return item.relabel(perm)

    def realize(self, item) -> Profile:
        return item


class _MarginSpace(_Space):
    def outcomes(self, graph: MarginGraph):
        return self.rule.matrix_outcome_set(graph.as_matrix(), self.kind)

    def combined_outcomes(self, g, h):
        n = g.vote_count() + h.vote_count()
        return self.rule.matrix_outcome_set((g + h).as_matrix(n), self.kind)

    def realize(self, graph: MarginGraph) -> Profile:
        return realize_margin_graph(graph)


def _canonical_perm(outcome, kind: Kind, m: int) -> list[int]:
    if kind == "winner":
        perm = list(range(m))
        perm[0], perm[outcome] = outcome, 0
        return perm
    perm = [0] * m
    for k, c in enumerate(outcome):
        perm[c] = k
    return perm


def _profile_samples(m: int, max_votes: int, exhaustive: bool, rng: random.Random
                     ) -> Iterator[Profile]:
    names = CandidateSet.default(m)
    if exhaustive:
        rankings = list(permutations(range(m)))
        for size in range(1, max_votes + 1):
            for multiset in combinations_with_replacement(rankings, size):
                yield Profile.from_rankings(names, multiset)
        return
    while True:
        yield random_profile(rng, m, rng.randint(1, max_votes))


def _margin_samples(m: int, max_weight: int, exhaustive: bool, rng: random.Random
                    ) -> Iterator[MarginGraph]:
    names = CandidateSet.default(m)
    if exhaustive:
        pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
        values = range(-(max_weight // 2) * 2, max_weight + 1, 2)
        for weights in product(values, repeat=len(pairs)):
            edges = {}
            for (a, b), w in zip(pairs, weights):
                if w:
                    edges[(a, b) if w > 0 else (b, a)] = abs(w)
            yield MarginGraph.from_edges(names, edges)
        return
    while True:
        yield random_even_graph(rng, m, max_weight, names)


def search_violation(rule: Rule, kind: Kind, m: int, *, strategy: str = "profiles",
                     max_votes: int = 4, max_weight: int = 6, budget: int | None = None,
                     exhaustive: bool = False, seed: int = 0,
                     pool_limit: int = POOL_LIMIT) -> ViolationCertificate | None:
    """Look for V1, V2 certifying a consistency violation.

    ``strategy="profiles"`` draws profiles of 1..``max_votes`` votes;
    ``strategy="margins"`` draws even margin graphs with weights in
    ``[-max_weight, max_weight]`` and realizes them as profiles, which is only
    valid for rules determined by the pairwise matrix.  ``exhaustive``
    enumerates the space in lexicographic order instead of sampling.

    Samples are processed in order; each one with a tie-independent outcome is
    paired with every earlier sample having the same outcome (up to
    ``pool_limit`` of them).  In random mode samples are first relabelled so
    their outcome is candidate 0 / the identity ranking, which lets every
    sample pair with every other.  The first pair found, in this order, is
    returned.  ``budget`` caps the number of samples (default: unlimited when
    exhaustive, otherwise 5000).
    """
    if m < 2:
        raise ValueError("search needs at least two candidates")
    if strategy == "margins":
        if not rule.pairwise:
            raise ValueError(f"rule {rule.name} is not determined by pairwise margins; "
                             "use the profiles strategy")
        space: _Space = _MarginSpace(rule, kind)
    elif strategy == "profiles":
        space = _Space(rule, kind)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if budget is None:
        budget = None if exhaustive else DEFAULT_RANDOM_BUDGET
    rng = random.Random(seed)
    if strategy == "margins":
        samples = _margin_samples(m, max_weight, exhaustive, rng)
    else:
        samples = _profile_samples(m, max_votes, exhaustive, rng)

    pools: dict[object, list] = {}
    for index, item in enumerate(samples):
        if budget is not None and index >= budget:
            break
        found = space.outcomes(item)
        if found is None or len(found) != 1:
            continue
        (outcome,) = found
        if not exhaustive:
            item = space.relabel(item, _canonical_perm(outcome, kind, m))
            found = space.outcomes(item)
            if found is None or len(found) != 1:
                continue
            (outcome,) = found
        pool = pools.setdefault(outcome, [])
        if len(pool) < pool_limit:
            pool.append(item)
        for earlier in pool:
            both = space.combined_outcomes(earlier, item)
            if both is None or outcome in both:
                continue
            cert = check_violation(rule, kind, space.realize(earlier), space.realize(item))
            if cert is None:
                raise RuntimeError("search found a pair that does not verify on realized profiles")
            return cert
    return None
