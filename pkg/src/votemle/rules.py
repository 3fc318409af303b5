"""Voting rules.

Every rule returns a :class:`RuleOutcome` carrying the tie-faithful weak
order together with a strict ranking obtained by breaking the remaining ties
in favour of the lower candidate index.  Rules also know which outcomes they
*could* have produced under any tie-breaking (:meth:`Rule.outcomes`); the
consistency checker relies on that to certify violations that do not depend
on tie-breaking.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Literal, Sequence

from .core import (PairwiseMatrix, Profile, Ranking, WeakOrder,
                   pairwise_matrix)

Kind = Literal["winner", "ranking"]
KINDS: tuple[Kind, ...] = ("winner", "ranking")

KEMENY_MAX_CANDIDATES = 8


@dataclass(frozen=True)
class ScoreVector:
    """Points per rank position, nonincreasing."""

    alpha: tuple[int, ...]

    def __post_init__(self):
        alpha = tuple(self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if not alpha:
            raise ValueError("score vector must not be empty")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in alpha):
            raise ValueError("score vector entries must be integers")
        if any(x < y for x, y in zip(alpha, alpha[1:])):
            raise ValueError(f"score vector {alpha} is not nonincreasing")

    @classmethod
    def plurality(cls, m: int) -> ScoreVector:
        return cls((1,) + (0,) * (m - 1))

    @classmethod
    def borda(cls, m: int) -> ScoreVector:
        return cls(tuple(range(m - 1, -1, -1)))

    @classmethod
    def veto(cls, m: int) -> ScoreVector:
        return cls((1,) * (m - 1) + (0,))

    @classmethod
    def parse(cls, text: str) -> ScoreVector:
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError as exc:
            raise ValueError(f"bad score vector {text!r}: {exc}") from None

    def __len__(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class RuleOutcome:
    weak: WeakOrder
    strict: Ranking
    scores: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "strict", tuple(self.strict))
        if not self.weak.admits(self.strict) or len(self.strict) != self.weak.m:
            raise ValueError("strict ranking must extend the weak order")

    @classmethod
    def from_weak(cls, weak: WeakOrder, scores: tuple | None = None) -> RuleOutcome:
        return cls(weak, weak.linearize(), scores)

    @property
    def winner(self) -> int:
        return self.strict[0]


def _weak_outcomes(weak: WeakOrder, kind: Kind) -> frozenset:
    if kind == "winner":
        return frozenset(weak.top)
    return frozenset(weak.linear_extensions())


# -- scoring rules ---------------------------------------------------------

def scoring_scores(profile: Profile, alpha: ScoreVector) -> tuple[int, ...]:
    if len(alpha) != profile.m:
        raise ValueError(f"score vector has length {len(alpha)}, expected {profile.m}")
    scores = [0] * profile.m
    for ranking, count in profile.votes:
        for pos, c in enumerate(ranking):
            scores[c] += count * alpha.alpha[pos]
    return tuple(scores)


def scoring(profile: Profile, alpha: ScoreVector) -> RuleOutcome:
    scores = scoring_scores(profile, alpha)
    return RuleOutcome.from_weak(WeakOrder.from_keys(scores), scores)


# -- STV -------------------------------------------------------------------

@dataclass(frozen=True)
class StvRound:
    remaining: tuple[int, ...]
    tallies: dict[int, int]
    eliminated: int
    tied: bool


def _first_choice_tallies(profile: Profile, remaining: Sequence[int]) -> dict[int, int]:
    alive = set(remaining)
    tallies = {c: 0 for c in remaining}
    for ranking, count in profile.votes:
        for c in ranking:
            if c in alive:
                tallies[c] += count
                break
    return tallies


def stv_rounds(profile: Profile) -> list[StvRound]:
    """The m-1 elimination rounds; ties eliminate the lowest index."""
    if profile.n < 1:
        raise ValueError("STV needs at least one vote")
    remaining = list(range(profile.m))
    rounds = []
    while len(remaining) > 1:
        tallies = _first_choice_tallies(profile, remaining)
        low = min(tallies.values())
        losers = [c for c in remaining if tallies[c] == low]
        rounds.append(StvRound(tuple(remaining), tallies, losers[0], len(losers) > 1))
        remaining.remove(losers[0])
    return rounds


def stv(profile: Profile) -> RuleOutcome:
    rounds = stv_rounds(profile)
    eliminated = [r.eliminated for r in rounds]
    survivor = [c for c in range(profile.m) if c not in eliminated]
    ranking = tuple(survivor + eliminated[::-1])
    first = rounds[0].tallies if rounds else {0: profile.n}
    scores = tuple(first[c] for c in range(profile.m))
    return RuleOutcome(WeakOrder.from_ranking(ranking), ranking, scores)


def stv_all_rankings(profile: Profile) -> frozenset[Ranking]:
    """STV rankings reachable under every possible elimination tie-break."""
    if profile.n < 1:
        raise ValueError("STV needs at least one vote")
    memo: dict[frozenset, frozenset] = {}

    def branch(remaining: frozenset) -> frozenset:
        if len(remaining) == 1:
            return frozenset({tuple(remaining)})
        if remaining in memo:
            return memo[remaining]
        tallies = _first_choice_tallies(profile, sorted(remaining))
        low = min(tallies.values())
        found = set()
        for loser in (c for c in remaining if tallies[c] == low):
            for rest in branch(remaining - {loser}):
                found.add(rest + (loser,))
        memo[remaining] = frozenset(found)
        return memo[remaining]

    return branch(frozenset(range(profile.m)))


def stv_is_strict(profile: Profile) -> bool:
    return not any(r.tied for r in stv_rounds(profile))


def _stv_outcomes(profile: Profile, kind: Kind) -> frozenset:
    rankings = stv_all_rankings(profile)
    if kind == "winner":
        return frozenset(r[0] for r in rankings)
    return rankings


# -- Bucklin ---------------------------------------------------------------

def bucklin_scores(profile: Profile) -> tuple[tuple[int, int], ...]:
    """Per candidate ``(l, B(c, l))`` for the smallest l with B(c, l) > n/2."""
    n, m = profile.n, profile.m
    if n < 1:
        raise ValueError("Bucklin needs at least one vote")
    # approvals[c][l] = votes ranking c exactly at position l (0-based)
    approvals = [[0] * m for _ in range(m)]
    for ranking, count in profile.votes:
        for pos, c in enumerate(ranking):
            approvals[c][pos] += count
    scores = []
    for c in range(m):
        total = 0
        for level in range(m):
            total += approvals[c][level]
            if 2 * total > n:
                scores.append((level + 1, total))
                break
    return tuple(scores)


def bucklin(profile: Profile) -> RuleOutcome:
    scores = bucklin_scores(profile)
    weak = WeakOrder.from_keys([(level, -margin) for level, margin in scores], reverse=False)
    return RuleOutcome.from_weak(weak, scores)


# -- pairwise rules ----------------------------------------------------------

def maximin_scores(pm: PairwiseMatrix) -> tuple[int, ...]:
    m = pm.m
    if m == 1:
        return (pm.n,)
    return tuple(min(pm.counts[c][d] for d in range(m) if d != c) for c in range(m))


def maximin_matrix(pm: PairwiseMatrix) -> RuleOutcome:
    scores = maximin_scores(pm)
    return RuleOutcome.from_weak(WeakOrder.from_keys(scores), scores)


def maximin(profile: Profile) -> RuleOutcome:
    return maximin_matrix(pairwise_matrix(profile))


def copeland_scores(pm: PairwiseMatrix) -> tuple[int, ...]:
    n = pm.counts
    scores = []
    for c in range(pm.m):
        wins = sum(1 for d in range(pm.m) if n[c][d] > n[d][c])
        losses = sum(1 for d in range(pm.m) if n[c][d] < n[d][c])
        scores.append(wins - losses)
    return tuple(scores)


def copeland_matrix(pm: PairwiseMatrix) -> RuleOutcome:
    scores = copeland_scores(pm)
    return RuleOutcome.from_weak(WeakOrder.from_keys(scores), scores)


def copeland(profile: Profile) -> RuleOutcome:
    return copeland_matrix(pairwise_matrix(profile))


@dataclass(frozen=True)
class Lock:
    a: int
    b: int
    count: int
    locked: bool


def _lock_pairs(pm: PairwiseMatrix) -> tuple[list[Lock], list[list[bool]]]:
    m = pm.m
    pairs = sorted(((a, b) for a in range(m) for b in range(m) if a != b),
                   key=lambda ab: (-pm.counts[ab[0]][ab[1]], ab))
    # above[x][y]: x is already placed above y, transitively closed
    above = [[False] * m for _ in range(m)]
    log = []
    for a, b in pairs:
        if above[b][a] or above[a][b]:
            log.append(Lock(a, b, pm.counts[a][b], False))
            continue
        uppers = [x for x in range(m) if x == a or above[x][a]]
        lowers = [y for y in range(m) if y == b or above[b][y]]
        for x in uppers:
            for y in lowers:
                above[x][y] = True
        log.append(Lock(a, b, pm.counts[a][b], True))
    return log, above


def ranked_pairs_locks(pm: PairwiseMatrix) -> list[Lock]:
    """Ordered pairs by descending N(a, b), ties by (a, b), with lock decisions.

    A pair whose order is already implied by earlier locks is reported as
    not locked, whichever direction it points.
    """
    return _lock_pairs(pm)[0]


def ranked_pairs_matrix(pm: PairwiseMatrix) -> RuleOutcome:
    _, above = _lock_pairs(pm)
    ranking = tuple(sorted(range(pm.m), key=lambda c: -sum(above[c])))
    return RuleOutcome(WeakOrder.from_ranking(ranking), ranking)


def ranked_pairs(profile: Profile) -> RuleOutcome:
    return ranked_pairs_matrix(pairwise_matrix(profile))


def ranked_pairs_distinct(pm: PairwiseMatrix) -> bool:
    """Whether no two decisive pairs share an N value.

    Only pairs with N(a, b) >= N(b, a) can influence the locked order, so the
    outcome is independent of how equal N values are ordered exactly when
    those values are pairwise distinct.
    """
    m = pm.m
    values = [pm.counts[a][b] for a in range(m) for b in range(m)
              if a != b and pm.counts[a][b] >= pm.counts[b][a]]
    return len(values) == len(set(values))


def _ranked_pairs_matrix_outcomes(pm: PairwiseMatrix, kind: Kind) -> frozenset | None:
    if not ranked_pairs_distinct(pm):
        return None
    ranking = ranked_pairs_matrix(pm).strict
    return frozenset({ranking[0] if kind == "winner" else ranking})


# -- Kemeny ----------------------------------------------------------------

def kemeny_agreement(pm: PairwiseMatrix, ranking: Sequence[int]) -> int:
    n = pm.counts
    return sum(n[a][b] for i, a in enumerate(ranking) for b in ranking[i + 1:])


def kemeny_matrix(pm: PairwiseMatrix, max_candidates: int = KEMENY_MAX_CANDIDATES
                  ) -> frozenset[Ranking]:
    if pm.m > max_candidates:
        raise ValueError(f"Kemeny enumeration limited to {max_candidates} candidates, got {pm.m}")
    best, winners = -1, []
    for ranking in permutations(range(pm.m)):
        score = kemeny_agreement(pm, ranking)
        if score > best:
            best, winners = score, [ranking]
        elif score == best:
            winners.append(ranking)
    return frozenset(winners)


def kemeny(profile: Profile, max_candidates: int = KEMENY_MAX_CANDIDATES) -> frozenset[Ranking]:
    """All rankings maximizing total pairwise agreement, by brute force."""
    return kemeny_matrix(pairwise_matrix(profile), max_candidates)


def _common_weak_order(rankings: frozenset[Ranking]) -> WeakOrder:
    """Coarsest weak order of which every ranking in the set is an extension."""
    first = min(rankings)
    m = len(first)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pos = [[0] * m for _ in rankings]
    for row, r in zip(pos, rankings):
        for i, c in enumerate(r):
            row[c] = i
    for a in range(m):
        for b in range(a + 1, m):
            if len({row[a] < row[b] for row in pos}) > 1:
                parent[find(a)] = find(b)
    tiers: list[list[int]] = []
    seen: dict[int, int] = {}
    for c in first:
        root = find(c)
        if root not in seen:
            seen[root] = len(tiers)
            tiers.append([])
        tiers[seen[root]].append(c)
    return WeakOrder(tuple(tuple(t) for t in tiers))


def kemeny_matrix_outcome(pm: PairwiseMatrix) -> RuleOutcome:
    rankings = kemeny_matrix(pm)
    best = kemeny_agreement(pm, next(iter(rankings)))
    return RuleOutcome(_common_weak_order(rankings), min(rankings), (best,))


def _kemeny_matrix_outcomes(pm: PairwiseMatrix, kind: Kind) -> frozenset:
    rankings = kemeny_matrix(pm)
    if kind == "winner":
        return frozenset(r[0] for r in rankings)
    return rankings


# -- rule objects ------------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    """A named rule plus the set of outcomes it admits under any tie-breaking.

    ``outcome_set(profile, kind)`` returns winners (ints) or rankings
    (tuples), or ``None`` when the rule cannot say (ranked pairs with equal
    decisive counts).  Rules whose result depends on the pairwise matrix only
    also provide ``matrix_apply`` / ``matrix_outcome_set``.
    """

    name: str
    apply: Callable[[Profile], RuleOutcome]
    outcome_set: Callable[[Profile, Kind], frozenset | None]
    matrix_apply: Callable[[PairwiseMatrix], RuleOutcome] | None = None
    matrix_outcome_set: Callable[[PairwiseMatrix, Kind], frozenset | None] | None = None

    def __call__(self, profile: Profile) -> RuleOutcome:
        return self.apply(profile)

    def outcomes(self, profile: Profile, kind: Kind) -> frozenset | None:
        return self.outcome_set(profile, kind)

    @property
    def pairwise(self) -> bool:
        return self.matrix_apply is not None


def _weak_rule(name: str, apply: Callable[[Profile], RuleOutcome]) -> Rule:
    return Rule(name, apply, lambda p, kind: _weak_outcomes(apply(p).weak, kind))


def _pairwise_rule(name: str, matrix_apply, matrix_outcome_set=None) -> Rule:
    if matrix_outcome_set is None:
        def matrix_outcome_set(pm, kind):
            return _weak_outcomes(matrix_apply(pm).weak, kind)
    return Rule(name,
                lambda p: matrix_apply(pairwise_matrix(p)),
                lambda p, kind: matrix_outcome_set(pairwise_matrix(p), kind),
                matrix_apply, matrix_outcome_set)


def scoring_rule(alpha: ScoreVector | Sequence[int], name: str | None = None) -> Rule:
    if not isinstance(alpha, ScoreVector):
        alpha = ScoreVector(tuple(alpha))
    return _weak_rule(name or f"scoring({','.join(map(str, alpha.alpha))})",
                      lambda p: scoring(p, alpha))


def _preset(name: str, make: Callable[[int], ScoreVector]) -> Rule:
    return _weak_rule(name, lambda p: scoring(p, make(p.m)))


def hybrid(profile: Profile, winner_rule: Rule, rest_rule: Rule) -> RuleOutcome:
    """Winner from ``winner_rule``, the others ranked by ``rest_rule``."""
    w = winner_rule(profile).winner
    if profile.m == 1:
        return RuleOutcome(WeakOrder(((w,),)), (w,))
    rest = [c for c in range(profile.m) if c != w]
    sub = rest_rule(profile.restrict(rest))
    weak = WeakOrder(((w,),) + tuple(tuple(rest[c] for c in t) for t in sub.weak.tiers))
    return RuleOutcome(weak, (w,) + tuple(rest[c] for c in sub.strict))


def hybrid_rule(winner_rule: Rule, rest_rule: Rule) -> Rule:
    def outcome_set(p: Profile, kind: Kind):
        winners = winner_rule.outcomes(p, "winner")
        if kind == "winner" or winners is None:
            return winners
        found = set()
        for w in winners:
            rest = [c for c in range(p.m) if c != w]
            if not rest:
                found.add((w,))
                continue
            tails = rest_rule.outcomes(p.restrict(rest), "ranking")
            if tails is None:
                return None
            found.update((w,) + tuple(rest[c] for c in t) for t in tails)
        return frozenset(found)

    return Rule(f"hybrid({winner_rule.name},{rest_rule.name})",
                lambda p: hybrid(p, winner_rule, rest_rule), outcome_set)


PLURALITY = _preset("plurality", ScoreVector.plurality)
BORDA = _preset("borda", ScoreVector.borda)
VETO = _preset("veto", ScoreVector.veto)
STV = Rule("stv", stv, _stv_outcomes)
BUCKLIN = _weak_rule("bucklin", bucklin)
MAXIMIN = _pairwise_rule("maximin", maximin_matrix)
COPELAND = _pairwise_rule("copeland", copeland_matrix)
RANKED_PAIRS = _pairwise_rule("ranked-pairs", ranked_pairs_matrix, _ranked_pairs_matrix_outcomes)
KEMENY = _pairwise_rule("kemeny", kemeny_matrix_outcome, _kemeny_matrix_outcomes)

RULES: dict[str, Rule] = {r.name: r for r in (
    PLURALITY, BORDA, VETO, STV, BUCKLIN, MAXIMIN, COPELAND, RANKED_PAIRS, KEMENY)}

RULE_NAMES = tuple(RULES) + ("scoring", "hybrid")


def get_rule(name: str, score_vector: ScoreVector | Sequence[int] | None = None,
             winner_rule: str | None = None, rest_rule: str | None = None) -> Rule:
    """Look a rule up by its command-line name."""
    if name == "scoring":
        if score_vector is None:
            raise ValueError("the scoring rule needs a score vector")
        return scoring_rule(score_vector)
    if name == "hybrid":
        if not winner_rule or not rest_rule:
            raise ValueError("the hybrid rule needs a winner rule and a rest rule")
        return hybrid_rule(get_rule(winner_rule, score_vector),
                           get_rule(rest_rule, score_vector))
    try:
        return RULES[name]
    except KeyError:
        raise ValueError(f"unknown rule {name!r}; choose from {', '.join(RULE_NAMES)}") from None


__all__ = [
    "BORDA", "BUCKLIN", "COPELAND", "KEMENY", "KINDS", "MAXIMIN", "PLURALITY",
    "RANKED_PAIRS", "RULES", "RULE_NAMES", "STV", "VETO", "Kind", "Lock", "Rule",
    "RuleOutcome", "ScoreVector", "StvRound", "bucklin", "bucklin_scores",
    "copeland", "copeland_scores", "get_rule", "hybrid", "hybrid_rule", "kemeny",
    "kemeny_agreement", "kemeny_matrix", "maximin", "maximin_scores", "ranked_pairs",
    "ranked_pairs_distinct", "ranked_pairs_locks", "scoring", "scoring_rule",
    "scoring_scores", "stv", "stv_all_rankings", "stv_is_strict", "stv_rounds",
]
