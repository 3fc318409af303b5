"""Noise models: conditional vote distributions given the correct outcome.

Weights are unnormalized (``vote_weight`` is proportional to the probability
of a vote) and exact.  Two kinds of likelihood value exist:

* :class:`Exact` holds an arbitrary-precision rational.
* :class:`LexExponents` holds the exponent vector ``(e_1, ..., e_m)`` of a
  product ``k_1^e_1 * ... * k_m^e_m`` in the limit where every ``k_{i+1}`` is
  infinitely smaller than ``k_i``.  Fewer factors of the smallest constant
  always wins, so comparison is lexicographic on ``(e_m, ..., e_1)`` with
  smaller being more likely.

For both, ``x < y`` means "x is less likely than y" and ``x * y`` is the
likelihood of two independent observations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import permutations
from numbers import Rational
from typing import Literal, Sequence, Union

from .core import Outcome, Profile, Ranking, RankingOutcome, Winner, positions
from .rules import ScoreVector

NORMALIZER_MAX_CANDIDATES = 8


@total_ordering
@dataclass(frozen=True)
class Exact:
    value: Fraction

    def __post_init__(self):
        value = Fraction(self.value)
        if value < 0:
            raise ValueError("likelihood must be nonnegative")
        object.__setattr__(self, "value", value)

    def __mul__(self, other: Exact) -> Exact:
        if not isinstance(other, Exact):
            return NotImplemented
        return Exact(self.value * other.value)

    def __pow__(self, k: int) -> Exact:
        return Exact(self.value ** k)

    def __lt__(self, other: Exact) -> bool:
        if not isinstance(other, Exact):
            raise TypeError("cannot compare Exact with " + type(other).__name__)
        return self.value < other.value

    def __str__(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"


@total_ordering
@dataclass(frozen=True)
class LexExponents:
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(self.exponents)
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be nonnegative")
        object.__setattr__(self, "exponents", exps)

    @property
    def _rank_key(self) -> tuple[int, ...]:
        # larger key = more likely
        return tuple(-e for e in reversed(self.exponents))

    def __mul__(self, other: LexExponents) -> LexExponents:
        if not isinstance(other, LexExponents):
            return NotImplemented
        if len(other.exponents) != len(self.exponents):
            raise ValueError("exponent vectors differ in length")
        return LexExponents(tuple(x + y for x, y in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> LexExponents:
        return LexExponents(tuple(k * e for e in self.exponents))

    def __lt__(self, other: LexExponents) -> bool:
        if not isinstance(other, LexExponents):
            raise TypeError("cannot compare LexExponents with " + type(other).__name__)
        if len(other.exponents) != len(self.exponents):
            raise ValueError("exponent vectors differ in length")
        return self._rank_key < other._rank_key

    def __str__(self) -> str:
        return "k^(" + ", ".join(map(str, self.exponents)) + ")"


Likelihood = Union[Exact, LexExponents]


def _as_fraction(text: str | Rational | Fraction) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


class NoiseModel:
    """Base class; subclasses implement ``_weight`` on raw outcomes.

    ``kind`` says which outcomes the model conditions on.  ``_weight`` takes
    a candidate index (winner models) or a ranking tuple (ranking models) and
    returns an ``int``/``Fraction`` for exact models or an exponent tuple.
    """

    kind: Literal["winner", "ranking"]
    exact = True

    def _weight(self, outcome, vote: Ranking):
        raise NotImplementedError

    def _raw_outcome(self, outcome: Outcome):
        if self.kind == "winner":
            if not isinstance(outcome, Winner):
                raise ValueError(f"{self} conditions on a winner, got {outcome!r}")
            return outcome.candidate
        if not isinstance(outcome, RankingOutcome):
            raise ValueError(f"{self} conditions on a ranking, got {outcome!r}")
        return outcome.order

    def _wrap(self, raw) -> Likelihood:
        return Exact(raw) if self.exact else LexExponents(raw)

    def _profile_raw(self, outcome, profile: Profile):
        if self.exact:
            total = 1
            for vote, count in profile.votes:
                total *= self._weight(outcome, vote) ** count
            return total
        total = [0] * profile.m
        for vote, count in profile.votes:
            for i, e in enumerate(self._weight(outcome, vote)):
                total[i] += count * e
        return tuple(total)


@dataclass(frozen=True)
class ScoringWinner(NoiseModel):
    """A vote placing the correct winner at rank r has weight ``2^s(r)``."""

    alpha: ScoreVector
    kind = "winner"

    def _weight(self, winner: int, vote: Ranking):
        s = self.alpha.alpha[vote.index(winner)]
        return 2 ** s if s >= 0 else Fraction(1, 2 ** -s)

    def __str__(self) -> str:
        return f"scoring-winner({','.join(map(str, self.alpha.alpha))})"


@dataclass(frozen=True)
class ScoringRanking(NoiseModel):
    """Weight ``prod_i (m+1-i)^s(rank of c_i in the vote)`` for truth c_1 > ... > c_m."""

    alpha: ScoreVector
    kind = "ranking"

    def _weight(self, truth: Ranking, vote: Ranking):
        m = len(vote)
        pos = positions(vote)
        alpha = self.alpha.alpha
        num, den = 1, 1
        for i, c in enumerate(truth):
            s = alpha[pos[c]]
            if s >= 0:
                num *= (m - i) ** s
            else:
                den *= (m - i) ** -s
        return num if den == 1 else Fraction(num, den)

    def __str__(self) -> str:
        return f"scoring-ranking({','.join(map(str, self.alpha.alpha))})"


@dataclass(frozen=True)
class StvLex(NoiseModel):
    """Exponent of k_i is 1 when everything above c_i in the vote ranks below c_i in the truth."""

    kind = "ranking"
    exact = False

    def _weight(self, truth: Ranking, vote: Ranking) -> tuple[int, ...]:
        true_pos = positions(truth)
        delta = [0] * len(truth)
        best_above = len(truth)  # smallest true position among candidates seen so far
        for c in vote:
            if best_above > true_pos[c]:
                delta[true_pos[c]] = 1
            best_above = min(best_above, true_pos[c])
        return tuple(delta)

    def __str__(self) -> str:
        return "stv-lex"


@dataclass(frozen=True)
class Condorcet(NoiseModel):
    """Each pair is ordered as in the truth with probability p, independently."""

    p: Fraction
    kind = "ranking"

    def __post_init__(self):
        p = _as_fraction(self.p)
        if not Fraction(1, 2) < p < 1:
            raise ValueError(f"Condorcet p must lie strictly between 1/2 and 1, got {p}")
        object.__setattr__(self, "p", p)

    def _weight(self, truth: Ranking, vote: Ranking):
        pos = positions(vote)
        agree = 0
        for i, a in enumerate(truth):
            pa = pos[a]
            for b in truth[i + 1:]:
                if pa < pos[b]:
                    agree += 1
        m = len(truth)
        disagree = m * (m - 1) // 2 - agree
        return self.p ** agree * (1 - self.p) ** disagree

    def __str__(self) -> str:
        return f"condorcet(p={self.p.numerator}/{self.p.denominator})"


def vote_weight(model: NoiseModel, outcome: Outcome, vote: Sequence[int]) -> Likelihood:
    return model._wrap(model._weight(model._raw_outcome(outcome), tuple(vote)))


def profile_likelihood(model: NoiseModel, outcome: Outcome, profile: Profile) -> Likelihood:
    """Product of the vote weights (i.i.d. votes), multiplicities as powers."""
    return model._wrap(model._profile_raw(model._raw_outcome(outcome), profile))


def normalizer(model: NoiseModel, outcome: Outcome, m: int,
               max_candidates: int = NORMALIZER_MAX_CANDIDATES) -> Exact:
    """Sum of ``vote_weight`` over all m! votes."""
    if not model.exact:
        raise ValueError(f"{model} has no finite normalizer")
    if m > max_candidates:
        raise ValueError(f"normalizer enumeration limited to {max_candidates} candidates")
    raw = model._raw_outcome(outcome)
    return Exact(sum(Fraction(model._weight(raw, vote)) for vote in permutations(range(m))))


def parse_model(name: str, m: int, score_vector: ScoreVector | None = None,
                p: str | Fraction | None = None) -> NoiseModel:
    """Build a model from its command-line name for ``m`` candidates.

    Scoring models default to Borda when no score vector is given.
    """
    if name in ("scoring-winner", "scoring-ranking"):
        alpha = score_vector or ScoreVector.borda(m)
        if len(alpha) != m:
            raise ValueError(f"score vector has length {len(alpha)}, expected {m}")
        return ScoringWinner(alpha) if name == "scoring-winner" else ScoringRanking(alpha)
    if name == "stv-lex":
        return StvLex()
    if name == "condorcet":
        if p is None:
            raise ValueError("the condorcet model needs --p")
        return Condorcet(_as_fraction(p))
    raise ValueError(f"unknown model {name!r}")


MODEL_NAMES = ("scoring-winner", "scoring-ranking", "stv-lex", "condorcet")
