"""Exhaustive maximum-likelihood estimation and rule-equivalence checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable

from .core import CandidateSet, Profile, Ranking, RankingOutcome, Winner
from .noise import Likelihood, NoiseModel, StvLex
from .rules import Rule, ScoreVector

MLE_MAX_CANDIDATES = 8


def _argmax(model: NoiseModel, outcomes, profile: Profile) -> tuple[frozenset, Likelihood]:
    best = None
    winners: list = []
    for outcome in outcomes:
        value = model._wrap(model._profile_raw(outcome, profile))
        if best is None or best < value:
            best, winners = value, [outcome]
        elif value == best:
            winners.append(outcome)
    return frozenset(winners), best


def mle_winners(model: NoiseModel, profile: Profile) -> frozenset[int]:
    """Every candidate whose likelihood as the correct winner is maximal."""
    if model.kind != "winner":
        raise ValueError(f"{model} does not estimate winners")
    return _argmax(model, range(profile.m), profile)[0]


def mle_rankings(model: NoiseModel, profile: Profile,
                 max_candidates: int = MLE_MAX_CANDIDATES) -> frozenset[Ranking]:
    """Every ranking whose likelihood as the correct ranking is maximal (brute force)."""
    if model.kind != "ranking":
        raise ValueError(f"{model} does not estimate rankings")
    if profile.m > max_candidates:
        raise ValueError(f"ranking MLE limited to {max_candidates} candidates, got {profile.m}")
    return _argmax(model, permutations(range(profile.m)), profile)[0]


def likelihood_table(model: NoiseModel, profile: Profile,
                     max_candidates: int = MLE_MAX_CANDIDATES) -> list[tuple[object, Likelihood]]:
    """``(outcome, likelihood)`` for every candidate outcome, in index order."""
    if model.kind == "winner":
        outcomes = [Winner(c) for c in range(profile.m)]
    else:
        if profile.m > max_candidates:
            raise ValueError(f"ranking MLE limited to {max_candidates} candidates, got {profile.m}")
        outcomes = [RankingOutcome(r) for r in permutations(range(profile.m))]
    return [(o, model._wrap(model._profile_raw(model._raw_outcome(o), profile)))
            for o in outcomes]


def random_profile(rng: random.Random, m: int, n: int) -> Profile:
    """``n`` i.i.d. uniformly random rankings over ``m`` default-labelled candidates."""
    rankings = []
    for _ in range(n):
        r = list(range(m))
        rng.shuffle(r)
        rankings.append(tuple(r))
    return Profile.from_rankings(CandidateSet.default(m), rankings)


def random_score_vector(rng: random.Random, m: int, low: int = -3, high: int = 6) -> ScoreVector:
    return ScoreVector(tuple(sorted((rng.randint(low, high) for _ in range(m)), reverse=True)))


@dataclass
class Failure:
    trial: int
    profile: Profile
    mle: frozenset
    predicted: frozenset | None


@dataclass
class EquivalenceReport:
    model: str
    rule: str
    trials: int = 0
    agreed: int = 0
    skipped: int = 0
    # among skipped (tied) profiles: how often the MLE set equals the set of
    # all tie-break outcomes of the rule; recorded, never asserted
    skipped_matching_all_branches: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def failed(self) -> int:
        return len(self.failures)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def first_failure(self) -> Failure | None:
        return self.failures[0] if self.failures else None

    def summary(self) -> str:
        line = f"{self.model} vs {self.rule}: {self.agreed}/{self.trials} agree"
        if self.skipped:
            line += (f", {self.skipped} tied profiles skipped"
                     f" ({self.skipped_matching_all_branches} matched all tie-breaks)")
        return line


ModelSpec = NoiseModel | Callable[[int], NoiseModel]
RuleSpec = Rule | Callable[[int], Rule]


def mle_equivalence_report(model: ModelSpec, rule: RuleSpec, trials: int,
                           m_range: tuple[int, int] = (2, 5),
                           n_range: tuple[int, int] = (1, 7),
                           seed: int = 0,
                           strict_only: bool | None = None,
                           max_attempts: int | None = None) -> EquivalenceReport:
    """Compare MLE argmax sets with a rule on seeded random profiles.

    ``model`` and ``rule`` may be callables taking ``m`` for families whose
    parameters depend on the number of candidates.  The rule's prediction is
    the set of outcomes it admits under any tie-breaking.  With
    ``strict_only`` (the default for the STV model) profiles where the rule
    needs tie-breaking are skipped and replaced, so ``trials`` comparisons are
    still made.
    """
    rng = random.Random(seed)
    make_model = model if callable(model) and not isinstance(model, NoiseModel) else (lambda m: model)
    make_rule = rule if callable(rule) and not isinstance(rule, Rule) else (lambda m: rule)
    sample_model = make_model(m_range[0])
    if strict_only is None:
        strict_only = isinstance(sample_model, StvLex)
    report = EquivalenceReport(str(sample_model), make_rule(m_range[0]).name)
    if max_attempts is None:
        max_attempts = 50 * trials + 100
    attempts = 0
    while report.trials < trials and attempts < max_attempts:
        attempts += 1
        m = rng.randint(*m_range)
        n = rng.randint(*n_range)
        profile = random_profile(rng, m, n)
        noise, voting = make_model(m), make_rule(m)
        if noise.kind == "winner":
            found = mle_winners(noise, profile)
        else:
            found = mle_rankings(noise, profile)
        predicted = voting.outcomes(profile, noise.kind)
        if strict_only and (predicted is None or len(predicted) != 1):
            report.skipped += 1
            report.skipped_matching_all_branches += found == predicted
            continue
        report.trials += 1
        if found == predicted:
            report.agreed += 1
        else:
            report.failures.append(Failure(report.trials - 1, profile, found, predicted))
    return report
