"""Voting rules as maximum likelihood estimators: rules, noise models, exact
MLE, consistency-violation search and margin-graph realization."""

from .core import (CandidateSet, MarginGraph, PairwiseMatrix, ParseError, Profile,
                   RankingOutcome, WeakOrder, Winner, margins, pairwise_matrix,
                   parse_profile, render_profile)
from .rules import RuleOutcome, ScoreVector, get_rule, kemeny

__all__ = [
    "CandidateSet", "MarginGraph", "PairwiseMatrix", "ParseError", "Profile",
    "RankingOutcome", "RuleOutcome", "ScoreVector", "WeakOrder", "Winner", "get_rule",
    "kemeny", "margins", "pairwise_matrix", "parse_profile", "render_profile",
]
