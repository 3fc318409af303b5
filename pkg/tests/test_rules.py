import random
from itertools import permutations

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from votemle.core import (CandidateSet, MarginGraph, Profile, margins, pairwise_matrix,
                          parse_profile)
from votemle.rules import (BORDA, BUCKLIN, COPELAND, KEMENY, MAXIMIN, PLURALITY, RANKED_PAIRS,
                           RULES, STV, VETO, ScoreVector, bucklin, copeland, copeland_scores,
                           get_rule, hybrid, hybrid_rule, kemeny, maximin, ranked_pairs,
                           ranked_pairs_distinct, scoring, scoring_rule, stv, stv_all_rankings,
                           stv_is_strict, stv_rounds)
from votemle.synth import realize_margin_graph

from .conftest import profiles

STV_V1 = parse_profile("candidates: a,b,c\n3: c>a>b\n4: a>b>c\n6: b>a>c")
STV_V2 = parse_profile("candidates: a,b,c\n3: b>a>c\n4: a>c>b\n6: c>a>b")
BUCKLIN_V1 = parse_profile("candidates: a,b,c,d,e\n2: a>b>c>d>e\n1: b>a>c>d>e")
BUCKLIN_V2 = parse_profile("candidates: a,b,c,d,e\n2: b>d>a>c>e\n1: c>e>a>b>d\n1: c>a>b>d>e")
CYCLE = Profile.from_rankings(3, [(0, 1, 2), (1, 2, 0), (2, 0, 1)])

ALL_RULES = list(RULES.values()) + [hybrid_rule(PLURALITY, BUCKLIN), hybrid_rule(STV, COPELAND)]


def kendall_agreement(ranking, profile):
    """Pairs ordered as in ``ranking``, counted vote by vote."""
    total = 0
    for vote, k in profile.votes:
        for i, a in enumerate(ranking):
            for b in ranking[i + 1:]:
                total += k * (vote.index(a) < vote.index(b))
    return total


def brute_kemeny(profile):
    scored = {r: kendall_agreement(r, profile) for r in permutations(range(profile.m))}
    best = max(scored.values())
    return {r for r, s in scored.items() if s == best}, best


# -- scoring ---------------------------------------------------------------

def test_plurality_stv_example():
    out = scoring(STV_V1, ScoreVector.plurality(3))
    assert out.scores == (4, 6, 3)
    assert out.weak.tiers == ((1,), (0,), (2,))


def test_borda_hand_tally():
    p = Profile.from_rankings(3, [(0, 1, 2), (0, 2, 1)])
    out = scoring(p, ScoreVector.borda(3))
    assert out.scores == (4, 1, 1)
    assert out.weak.tiers == ((0,), (1, 2))
    assert out.strict == (0, 1, 2)


def test_presets():
    assert ScoreVector.borda(4).alpha == (3, 2, 1, 0)
    assert ScoreVector.plurality(4).alpha == (1, 0, 0, 0)
    assert ScoreVector.veto(4).alpha == (1, 1, 1, 0)


def test_score_vector_validation():
    with pytest.raises(ValueError):
        ScoreVector((0, 1))
    with pytest.raises(ValueError):
        scoring(STV_V1, ScoreVector((2, 1)))
    with pytest.raises(ValueError):
        ScoreVector.parse("3,x")


# -- STV -------------------------------------------------------------------

def test_stv_stv_v1():
    out = stv(STV_V1)
    assert out.winner == 0 and out.strict == (0, 1, 2)


def test_stv_union_eliminates_a_first():
    rounds = stv_rounds(STV_V1 + STV_V2)
    assert rounds[0].tallies == {0: 8, 1: 9, 2: 9}
    assert rounds[0].eliminated == 0 and not rounds[0].tied
    assert stv(STV_V1 + STV_V2).winner != 0


def test_stv_union_lowest_index_tiebreak():
    rounds = stv_rounds(STV_V1 + STV_V2)
    assert rounds[1].tallies == {1: 13, 2: 13} and rounds[1].tied
    assert stv(STV_V1 + STV_V2).strict == (2, 1, 0)
    assert stv_all_rankings(STV_V1 + STV_V2) == {(2, 1, 0), (1, 2, 0)}


def test_stv_needs_votes():
    with pytest.raises(ValueError):
        stv(Profile(CandidateSet.default(3)))


# -- Bucklin -----------------------------------------------------------------

def test_bucklin_bucklin_example():
    assert bucklin(BUCKLIN_V1).strict == (0, 1, 2, 3, 4)
    assert bucklin(BUCKLIN_V2).strict == (0, 1, 2, 3, 4)
    both = bucklin(BUCKLIN_V1 + BUCKLIN_V2)
    assert both.strict == (1, 0, 2, 3, 4) and both.weak.is_strict()
    assert both.scores[1] == (2, 5) and both.scores[0] == (2, 4)


def test_bucklin_needs_votes():
    with pytest.raises(ValueError):
        bucklin(Profile(CandidateSet.default(2)))


def test_bucklin_equal_margin_falls_through_to_index():
    p = Profile.from_rankings(2, [(0, 1), (1, 0)])
    out = bucklin(p)
    assert out.weak.tiers == ((0, 1),) and out.strict == (0, 1)


# -- pairwise rules ----------------------------------------------------------

def test_maximin_examples():
    assert maximin(CYCLE).weak.tiers == ((0, 1, 2),)
    assert maximin(CYCLE).scores == (1, 1, 1)
    out = maximin(STV_V1)
    assert out.scores == (7, 6, 3) and out.strict == (0, 1, 2)
    assert maximin(Profile.from_rankings(1, [(0,)])).weak.tiers == ((0,),)


def test_copeland_examples():
    assert copeland(CYCLE).scores == (0, 0, 0)
    out = copeland(STV_V1)
    assert out.scores == (2, 0, -2) and out.strict == (0, 1, 2)
    assert copeland(Profile.from_rankings(4, [(2, 0, 3, 1)])).scores[2] == 3


def test_ranked_pairs_locking_example():
    g = MarginGraph.from_edges(3, {(0, 1): 2, (1, 2): 2, (2, 0): 4})
    p = realize_margin_graph(g)
    assert ranked_pairs(p).strict == (2, 0, 1)


def test_ranked_pairs_stv_example():
    assert ranked_pairs(STV_V1).strict == (0, 1, 2)
    assert not ranked_pairs_distinct(pairwise_matrix(STV_V1))


def test_kemeny_examples():
    single = Profile.from_rankings(4, [(3, 1, 0, 2)])
    assert kemeny(single) == {(3, 1, 0, 2)}
    p = Profile.from_counts(3, {(0, 1, 2): 2, (1, 2, 0): 1})
    assert kemeny(p) == {(0, 1, 2)}
    assert brute_kemeny(p) == ({(0, 1, 2)}, 7)
    assert kemeny(CYCLE) == {(0, 1, 2), (1, 2, 0), (2, 0, 1)}
    assert brute_kemeny(CYCLE)[1] == 5


def test_kemeny_bound():
    with pytest.raises(ValueError):
        kemeny(Profile.from_rankings(9, [tuple(range(9))]))


@settings(max_examples=60)
@given(profiles(min_m=1, max_m=5, max_n=8))
def test_kemeny_matches_vote_by_vote_oracle(p):
    assert kemeny(p) == brute_kemeny(p)[0]


def test_kemeny_rule_weak_order_is_common_coarsening():
    out = KEMENY(CYCLE)
    assert out.weak.tiers == ((0, 1, 2),)
    p = Profile.from_rankings(3, [(0, 1, 2), (0, 2, 1)])
    assert KEMENY.outcomes(p, "ranking") == {(0, 1, 2), (0, 2, 1)}
    assert KEMENY(p).weak.tiers == ((0,), (1, 2))


# -- hybrid -----------------------------------------------------------------

def test_hybrid_plurality_bucklin_stv_example():
    out = hybrid(STV_V1, PLURALITY, BUCKLIN)
    assert out.strict == (1, 0, 2)


def test_hybrid_single_candidate():
    p = Profile.from_rankings(1, [(0,), (0,)])
    assert hybrid(p, STV, BORDA).strict == (0,)
    assert hybrid_rule(STV, BORDA).outcomes(p, "ranking") == {(0,)}


def test_get_rule():
    assert get_rule("borda") is BORDA
    assert get_rule("scoring", (2, 1, 0))(STV_V1).scores == scoring(STV_V1, ScoreVector.borda(3)).scores
    assert get_rule("hybrid", winner_rule="plurality", rest_rule="bucklin").name == \
        "hybrid(plurality,bucklin)"
    for bad in (("nope",), ("scoring",), ("hybrid",)):
        with pytest.raises(ValueError):
            get_rule(*bad)


# -- properties ---------------------------------------------------------------

# Rules whose points or pairwise scores cannot separate the candidates below
# the top on a unanimous profile (plurality, veto, maximin, STV) leave them
# tied and the strict output falls back to index order.  For those only the
# weak order and the tie-independent outcome set can be held to unanimity.
UNANIMOUS_STRICT = [BORDA, BUCKLIN, COPELAND, RANKED_PAIRS, KEMENY,
                    hybrid_rule(PLURALITY, BUCKLIN), hybrid_rule(STV, COPELAND)]
UNANIMOUS_TIED = [PLURALITY, VETO, MAXIMIN, STV]


@pytest.mark.parametrize("rule", UNANIMOUS_STRICT, ids=lambda r: r.name)
@given(ranking=st.permutations(range(5)), k=st.integers(1, 4))
def test_unanimity(rule, ranking, k):
    p = Profile.from_counts(5, {tuple(ranking): k})
    assert rule(p).strict == tuple(ranking)
    # ranked pairs: equal N on every pair, so the conservative gate abstains
    assert rule.outcomes(p, "ranking") in ({tuple(ranking)}, None)


@pytest.mark.parametrize("rule", UNANIMOUS_TIED, ids=lambda r: r.name)
@given(ranking=st.permutations(range(5)), k=st.integers(1, 4))
def test_unanimity_up_to_ties(rule, ranking, k):
    p = Profile.from_counts(5, {tuple(ranking): k})
    out = rule(p)
    if rule is not STV:  # STV's weak order is its tie-broken ranking
        assert out.weak.admits(tuple(ranking))
    if rule is not VETO:  # veto ties the top m-1 candidates
        assert out.winner == ranking[0]
    assert tuple(ranking) in rule.outcomes(p, "ranking")


def test_unanimity_fails_strictly_for_plurality():
    p = Profile.from_rankings(3, [(0, 2, 1)])
    assert PLURALITY(p).strict == (0, 1, 2)


@pytest.mark.parametrize("rule", ALL_RULES, ids=lambda r: r.name)
@settings(max_examples=40)
@given(p=profiles(min_m=1, max_m=4, min_n=1, max_n=8), seed=st.integers(0, 10**6))
def test_anonymity(rule, p, seed):
    lines = list(p.votes)
    random.Random(seed).shuffle(lines)
    assert rule(Profile(p.candidates, tuple(lines))) == rule(p)


WEAK_RULES = [PLURALITY, BORDA, VETO, BUCKLIN, MAXIMIN, COPELAND]


@pytest.mark.parametrize("rule", WEAK_RULES, ids=lambda r: r.name)
@settings(max_examples=60)
@given(p=profiles(min_m=1, max_m=5, min_n=1, max_n=8), data=st.data())
def test_neutrality_weak_order(rule, p, data):
    sigma = data.draw(st.permutations(range(p.m)))
    before, after = rule(p), rule(p.relabel(sigma))
    assert after.weak == before.weak.relabel(sigma)
    if before.weak.is_strict():
        assert after.strict == tuple(sigma[c] for c in before.strict)


@pytest.mark.parametrize("rule", [STV, RANKED_PAIRS, KEMENY], ids=lambda r: r.name)
@settings(max_examples=60)
@given(p=profiles(min_m=1, max_m=5, min_n=1, max_n=8), data=st.data())
def test_neutrality_of_tie_independent_outcomes(rule, p, data):
    sigma = data.draw(st.permutations(range(p.m)))
    before, after = rule.outcomes(p, "ranking"), rule.outcomes(p.relabel(sigma), "ranking")
    if before is None:
        assert after is None
    else:
        assert after == {tuple(sigma[c] for c in r) for r in before}
    if rule is STV and stv_is_strict(p):
        assert stv(p.relabel(sigma)).strict == tuple(sigma[c] for c in stv(p).strict)


@given(profiles(min_m=1, max_m=6, max_n=12))
def test_copeland_scores_sum_to_zero(p):
    assert sum(copeland_scores(pairwise_matrix(p))) == 0


@settings(max_examples=60)
@given(profiles(min_m=2, max_m=5, min_n=1, max_n=8), st.permutations(range(5)))
def test_pairwise_rules_depend_only_on_matrix(p, filler):
    p = p.scaled(2)  # even n, so margins are even and realizable
    q = realize_margin_graph(margins(pairwise_matrix(p)))
    pad = tuple(c for c in filler if c < p.m)
    cancel = Profile.from_rankings(p.candidates, [pad, pad[::-1]])
    while q.n < p.n:
        q = q + cancel
    while p.n < q.n:
        p = p + cancel
    assert pairwise_matrix(p) == pairwise_matrix(q)
    for rule in (MAXIMIN, COPELAND):
        assert rule(p).weak == rule(q).weak


@settings(max_examples=150, suppress_health_check=[HealthCheck.filter_too_much])
@given(v1=profiles(min_m=2, max_m=4, min_n=1, max_n=6),
       v2=profiles(min_m=4, max_m=4, min_n=1, max_n=6), seed=st.integers(0, 10**6))
def test_scoring_consistency(v1, v2, seed):
    rng = random.Random(seed)
    alpha = ScoreVector(tuple(sorted((rng.randint(0, 4) for _ in range(v1.m)), reverse=True)))
    v2 = v2.restrict(range(v1.m))
    w1, w2 = scoring(v1, alpha).weak, scoring(v2, alpha).weak
    assume(w1.is_strict() and w2.is_strict())
    # relabel V2 so that its ranking coincides with V1's
    sigma = [0] * v1.m
    for a, b in zip(w2.linearize(), w1.linearize()):
        sigma[a] = b
    v2 = v2.relabel(sigma)
    assert scoring(v2, alpha).weak == w1
    assert scoring(v1 + v2, alpha).weak == w1


def test_scoring_consistency_on_a_constructed_pair():
    v1 = Profile.from_counts(3, {(0, 1, 2): 2, (0, 2, 1): 1})
    v2 = Profile.from_counts(3, {(0, 1, 2): 2, (1, 0, 2): 1})
    alpha = ScoreVector.borda(3)
    assert scoring(v1, alpha).weak == scoring(v2, alpha).weak
    assert scoring(v1 + v2, alpha).weak == scoring(v1, alpha).weak
