"""Candidates, rankings, profiles and pairwise tallies.

Candidates are referred to by dense index ``0..m-1`` everywhere inside the
package; labels only matter when reading or writing ballot files.  A ranking
is a plain tuple of indices, most preferred first.
"""

from __future__ import annotations

import re
import string
from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Mapping, Sequence

Ranking = tuple[int, ...]

_LABEL_RE = re.compile(r"^[^\s,>:#]+$")


class ParseError(ValueError):
    """Malformed ballot or margin file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class CandidateSet:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("at least one candidate is required")
        for name in names:
            if not isinstance(name, str) or not _LABEL_RE.match(name):
                raise ValueError(f"invalid candidate label {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate candidate labels in {names}")

    @classmethod
    def default(cls, m: int) -> CandidateSet:
        """Labels ``a, b, c, ...`` (``c0, c1, ...`` past 26 candidates)."""
        if m <= 26:
            return cls(tuple(string.ascii_lowercase[:m]))
        return cls(tuple(f"c{i}" for i in range(m)))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, label: str) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            raise KeyError(label) from None

    def format(self, ranking: Sequence[int], sep: str = " > ") -> str:
        return sep.join(self.names[c] for c in ranking)


def check_ranking(order: Sequence[int], m: int) -> Ranking:
    order = tuple(order)
    if sorted(order) != list(range(m)):
        raise ValueError(f"{order} is not a permutation of 0..{m - 1}")
    return order


def all_rankings(m: int) -> Iterator[Ranking]:
    """Every ranking of ``m`` candidates in lexicographic order."""
    return permutations(range(m))


def positions(ranking: Sequence[int]) -> list[int]:
    """``positions(r)[c]`` is the 0-based rank of candidate ``c`` in ``r``."""
    pos = [0] * len(ranking)
    for i, c in enumerate(ranking):
        pos[c] = i
    return pos


@dataclass(frozen=True)
class Winner:
    candidate: int


@dataclass(frozen=True)
class RankingOutcome:
    order: Ranking

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))


Outcome = Winner | RankingOutcome


@dataclass(frozen=True)
class Profile:
    """A multiset of rankings over a fixed candidate set.

    ``votes`` holds ``(ranking, multiplicity)`` pairs in the order they were
    given; the same ranking may appear on several lines.  Use
    :meth:`canonical` to merge and sort.
    """

    candidates: CandidateSet
    votes: tuple[tuple[Ranking, int], ...] = ()

    def __post_init__(self):
        m = len(self.candidates)
        votes = []
        for ranking, count in self.votes:
            if not isinstance(count, int) or isinstance(count, bool) or count < 1:
                raise ValueError(f"multiplicity must be a positive integer, got {count!r}")
            votes.append((check_ranking(ranking, m), count))
        object.__setattr__(self, "votes", tuple(votes))

    @classmethod
    def from_rankings(cls, candidates: CandidateSet | int,
                      rankings: Iterable[Sequence[int]]) -> Profile:
        """One vote per ranking, equal rankings merged in first-seen order."""
        if isinstance(candidates, int):
            candidates = CandidateSet.default(candidates)
        counts: Counter[Ranking] = Counter(tuple(r) for r in rankings)
        return cls(candidates, tuple(counts.items()))

    @classmethod
    def from_counts(cls, candidates: CandidateSet | int,
                    counts: Mapping[Sequence[int], int] | Iterable[tuple[Sequence[int], int]]
                    ) -> Profile:
        if isinstance(candidates, int):
            candidates = CandidateSet.default(candidates)
        items = counts.items() if isinstance(counts, Mapping) else counts
        return cls(candidates, tuple((tuple(r), c) for r, c in items))

    @property
    def m(self) -> int:
        return len(self.candidates)

    @property
    def n(self) -> int:
        return sum(count for _, count in self.votes)

    def __add__(self, other: Profile) -> Profile:
        if not isinstance(other, Profile):
            return NotImplemented
        if other.candidates != self.candidates:
            raise ValueError("profiles are over different candidate sets")
        return Profile(self.candidates, self.votes + other.votes)

    def counter(self) -> Counter[Ranking]:
        counts: Counter[Ranking] = Counter()
        for ranking, count in self.votes:
            counts[ranking] += count
        return counts

    def canonical(self) -> Profile:
        """Equal rankings merged, sorted lexicographically by index tuple."""
        return Profile(self.candidates, tuple(sorted(self.counter().items())))

    def same_multiset(self, other: Profile) -> bool:
        return self.candidates == other.candidates and self.counter() == other.counter()

    def scaled(self, factor: int) -> Profile:
        if factor < 1:
            raise ValueError("scale factor must be a positive integer")
        return Profile(self.candidates, tuple((r, c * factor) for r, c in self.votes))

    def restrict(self, keep: Sequence[int]) -> Profile:
        """Profile over the candidates ``keep`` only, re-indexed in that order.

        Candidate ``keep[i]`` becomes index ``i``; everyone else is deleted
        from every vote.
        """
        keep = tuple(keep)
        new_index = {c: i for i, c in enumerate(keep)}
        if len(new_index) != len(keep) or not keep:
            raise ValueError("keep must list distinct candidates")
        names = CandidateSet(tuple(self.candidates.names[c] for c in keep))
        counts: dict[Ranking, int] = {}
        for ranking, count in self.votes:
            reduced = tuple(new_index[c] for c in ranking if c in new_index)
            counts[reduced] = counts.get(reduced, 0) + count
        return Profile(names, tuple(counts.items()))

    def relabel(self, perm: Sequence[int]) -> Profile:
        """Map candidate ``c`` to ``perm[c]`` in every vote; labels stay put."""
        check_ranking(perm, self.m)
        return Profile(self.candidates,
                       tuple((tuple(perm[c] for c in r), k) for r, k in self.votes))


def _parse_ranking(text: str, candidates: CandidateSet, line: int) -> Ranking:
    order = []
    for token in text.split(">"):
        label = token.strip()
        if not label:
            raise ParseError("empty candidate in ranking", line)
        try:
            order.append(candidates.index(label))
        except KeyError:
            raise ParseError(f"unknown candidate {label!r}", line) from None
    if len(set(order)) != len(order):
        dup = next(candidates.names[c] for c in order if order.count(c) > 1)
        raise ParseError(f"candidate {dup!r} listed twice", line)
    if len(order) != len(candidates):
        missing = [n for i, n in enumerate(candidates.names) if i not in order]
        raise ParseError(f"vote does not rank {', '.join(missing)}", line)
    return tuple(order)


def parse_candidates_line(text: str, line: int) -> CandidateSet:
    key, sep, rest = text.partition(":")
    if not sep or key.strip() != "candidates":
        raise ParseError("expected 'candidates: <label>,...'", line)
    labels = [token.strip() for token in rest.split(",")]
    try:
        return CandidateSet(tuple(labels))
    except ValueError as exc:
        raise ParseError(str(exc), line) from None


def content_lines(text: str) -> Iterator[tuple[int, str]]:
    """Non-blank, non-comment lines with their 1-based line numbers."""
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield number, stripped


def parse_profile(text: str) -> Profile:
    lines = content_lines(text)
    try:
        number, header = next(lines)
    except StopIteration:
        raise ParseError("missing 'candidates:' line") from None
    candidates = parse_candidates_line(header, number)
    votes = []
    for number, body in lines:
        count_text, sep, ranking_text = body.partition(":")
        if not sep:
            raise ParseError("expected '<count>: <ranking>'", number)
        count_text = count_text.strip()
        if not count_text.isdigit() or int(count_text) < 1:
            raise ParseError(f"multiplicity must be a positive integer, got {count_text!r}",
                             number)
        votes.append((_parse_ranking(ranking_text, candidates, number), int(count_text)))
    return Profile(candidates, tuple(votes))


def render_profile(profile: Profile) -> str:
    lines = ["candidates: " + ",".join(profile.candidates.names)]
    for ranking, count in profile.canonical().votes:
        lines.append(f"{count}: {profile.candidates.format(ranking, '>')}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PairwiseMatrix:
    """``counts[a][b]`` is N(a, b), the number of votes ranking a above b."""

    candidates: CandidateSet
    n: int
    counts: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.counts)

    def __getitem__(self, pair: tuple[int, int]) -> int:
        a, b = pair
        return self.counts[a][b]


def pairwise_matrix(profile: Profile) -> PairwiseMatrix:
    m = profile.m
    counts = [[0] * m for _ in range(m)]
    for ranking, k in profile.votes:
        for i, a in enumerate(ranking):
            row = counts[a]
            for b in ranking[i + 1:]:
                row[b] += k
    return PairwiseMatrix(profile.candidates, profile.n, tuple(map(tuple, counts)))


@dataclass(frozen=True)
class MarginGraph:
    """Antisymmetric margins: ``weight[a][b] = N(a, b) - N(b, a)``."""

    candidates: CandidateSet
    weight: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        weight = tuple(tuple(row) for row in self.weight)
        object.__setattr__(self, "weight", weight)
        m = len(self.candidates)
        if len(weight) != m or any(len(row) != m for row in weight):
            raise ValueError(f"margin matrix must be {m}x{m}")
        for a in range(m):
            if weight[a][a] != 0:
                raise ValueError("diagonal margins must be zero")
            for b in range(a + 1, m):
                if weight[a][b] != -weight[b][a]:
                    raise ValueError(f"margins not antisymmetric at ({a}, {b})")

    @classmethod
    def from_edges(cls, candidates: CandidateSet | int,
                   edges: Mapping[tuple[int, int], int]) -> MarginGraph:
        """Build from directed edges ``(a, b) -> w``; unlisted pairs are 0."""
        if isinstance(candidates, int):
            candidates = CandidateSet.default(candidates)
        m = len(candidates)
        weight = [[0] * m for _ in range(m)]
        for (a, b), w in edges.items():
            if a == b:
                raise ValueError("self-loop in margin graph")
            if weight[a][b] or weight[b][a]:
                raise ValueError(f"pair ({a}, {b}) given twice")
            weight[a][b], weight[b][a] = w, -w
        return cls(candidates, weight)

    @property
    def m(self) -> int:
        return len(self.weight)

    def __getitem__(self, pair: tuple[int, int]) -> int:
        a, b = pair
        return self.weight[a][b]

    def __add__(self, other: MarginGraph) -> MarginGraph:
        if other.candidates != self.candidates:
            raise ValueError("graphs are over different candidate sets")
        return MarginGraph(self.candidates,
                           [[x + y for x, y in zip(r, s)] for r, s in zip(self.weight, other.weight)])

    def relabel(self, perm: Sequence[int]) -> MarginGraph:
        check_ranking(perm, self.m)
        m = self.m
        weight = [[0] * m for _ in range(m)]
        for a in range(m):
            for b in range(m):
                weight[perm[a]][perm[b]] = self.weight[a][b]
        return MarginGraph(self.candidates, weight)

    def positive_edges(self) -> list[tuple[int, int, int]]:
        return [(a, b, w) for a, row in enumerate(self.weight)
                for b, w in enumerate(row) if w > 0]

    def vote_count(self) -> int:
        """Number of votes the gadget realization uses."""
        return sum(w for _, _, w in self.positive_edges())

    def as_matrix(self, n: int | None = None) -> PairwiseMatrix:
        """Pairwise counts ``(n + w) / 2`` consistent with these margins.

        ``n`` defaults to :meth:`vote_count`, i.e. the matrix of the profile
        the gadget realization would produce.
        """
        if n is None:
            n = self.vote_count()
        m = self.m
        counts = []
        for a in range(m):
            row = []
            for b in range(m):
                if a == b:
                    row.append(0)
                    continue
                twice = n + self.weight[a][b]
                if twice % 2 or twice < 0:
                    raise ValueError(f"margin {self.weight[a][b]} impossible with {n} votes")
                row.append(twice // 2)
            counts.append(tuple(row))
        return PairwiseMatrix(self.candidates, n, tuple(counts))


def margins(pm: PairwiseMatrix) -> MarginGraph:
    m = pm.m
    return MarginGraph(pm.candidates,
                       [[pm.counts[a][b] - pm.counts[b][a] for b in range(m)] for a in range(m)])


@dataclass(frozen=True)
class WeakOrder:
    """Ordered tiers of tied candidates, best tier first."""

    tiers: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        tiers = tuple(tuple(sorted(t)) for t in self.tiers)
        if any(not t for t in tiers):
            raise ValueError("empty tier")
        flat = sorted(c for t in tiers for c in t)
        if flat != list(range(len(flat))) or not flat:
            raise ValueError("tiers must partition 0..m-1")
        object.__setattr__(self, "tiers", tiers)

    @classmethod
    def from_keys(cls, keys: Sequence, reverse: bool = True) -> WeakOrder:
        """Group candidates by equal key; higher keys first when ``reverse``."""
        groups: dict = {}
        for c, key in enumerate(keys):
            groups.setdefault(key, []).append(c)
        return cls(tuple(tuple(groups[k]) for k in sorted(groups, reverse=reverse)))

    @classmethod
    def from_ranking(cls, ranking: Sequence[int]) -> WeakOrder:
        return cls(tuple((c,) for c in ranking))

    @property
    def m(self) -> int:
        return sum(len(t) for t in self.tiers)

    @property
    def top(self) -> tuple[int, ...]:
        return self.tiers[0]

    def is_strict(self) -> bool:
        return len(self.tiers) == self.m

    def linearize(self) -> Ranking:
        """Break ties by ascending candidate index."""
        return tuple(c for t in self.tiers for c in t)

    def admits(self, ranking: Sequence[int]) -> bool:
        """Whether ``ranking`` is a linear extension of this weak order."""
        level = {c: i for i, t in enumerate(self.tiers) for c in t}
        return all(level[a] <= level[b] for a, b in zip(ranking, ranking[1:]))

    def linear_extensions(self) -> Iterator[Ranking]:
        def extend(i: int, prefix: Ranking):
            if i == len(self.tiers):
                yield prefix
                return
            for block in permutations(self.tiers[i]):
                yield from extend(i + 1, prefix + block)
        return extend(0, ())

    def relabel(self, perm: Sequence[int]) -> WeakOrder:
        return WeakOrder(tuple(tuple(perm[c] for c in t) for t in self.tiers))

    def format(self, candidates: CandidateSet) -> str:
        parts = []
        for tier in self.tiers:
            names = [candidates.names[c] for c in tier]
            parts.append(names[0] if len(names) == 1 else "{" + ", ".join(names) + "}")
        return " > ".join(parts)
