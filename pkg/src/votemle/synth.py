"""Realize an even-weighted margin graph as a profile of votes.

Each unit of margin is produced by a pair of votes that agree on the
contested pair and cancel out on every other pair.
"""

from __future__ import annotations

from typing import Sequence

from .core import (CandidateSet, MarginGraph, ParseError, Profile, Ranking,
                   content_lines, parse_candidates_line)


class OddWeightError(ValueError):
    def __init__(self, a: str, b: str, weight: int):
        self.pair = (a, b)
        self.weight = weight
        super().__init__(f"odd weight {weight} on {a} -> {b}; only even margins can be realized")


def gadget_pair(a: int, b: int, others: Sequence[int]) -> tuple[Ranking, Ranking]:
    """Two votes raising margin(a, b) by 2 and leaving every other margin alone.

    ``a > b > c_1 > ... > c_k`` and ``c_k > ... > c_1 > a > b``.
    """
    others = tuple(others)
    m = len(others) + 2
    if a == b or sorted((a, b) + others) != list(range(m)):
        raise ValueError("others must list every candidate except a and b exactly once")
    return (a, b) + others, others[::-1] + (a, b)


def realize_margin_graph(graph: MarginGraph) -> Profile:
    """A profile whose pairwise margins are exactly ``graph``.

    Edges are processed in ascending (a, b) order and the filler candidates
    in each gadget are in ascending index order, so the output is canonical.
    Uses ``sum of positive weights`` votes in total.
    """
    names = graph.candidates.names
    for a, b, w in graph.positive_edges():
        if w % 2:
            raise OddWeightError(names[a], names[b], w)
    counts: dict[Ranking, int] = {}
    for a, b, w in graph.positive_edges():
        others = [c for c in range(graph.m) if c not in (a, b)]
        for vote in gadget_pair(a, b, others):
            counts[vote] = counts.get(vote, 0) + w // 2
    return Profile(graph.candidates, tuple(counts.items()))


def parse_margins(text: str) -> MarginGraph:
    """Read a margin file: ``candidates:`` line, then ``<from> <to> <weight>`` lines."""
    lines = content_lines(text)
    try:
        number, header = next(lines)
    except StopIteration:
        raise ParseError("missing 'candidates:' line") from None
    candidates = parse_candidates_line(header, number)
    edges: dict[tuple[int, int], int] = {}
    for number, body in lines:
        parts = body.split()
        if len(parts) != 3:
            raise ParseError("expected '<from> <to> <weight>'", number)
        try:
            a, b = candidates.index(parts[0]), candidates.index(parts[1])
        except KeyError as exc:
            raise ParseError(f"unknown candidate {exc.args[0]!r}", number) from None
        if a == b:
            raise ParseError("an edge needs two different candidates", number)
        if not parts[2].isdigit() or int(parts[2]) < 1:
            raise ParseError(f"weight must be a positive integer, got {parts[2]!r}", number)
        if (a, b) in edges or (b, a) in edges:
            raise ParseError(f"pair {parts[0]}, {parts[1]} listed twice", number)
        edges[(a, b)] = int(parts[2])
    return MarginGraph.from_edges(candidates, edges)


def render_margins(graph: MarginGraph) -> str:
    names = graph.candidates.names
    lines = ["candidates: " + ",".join(names)]
    lines += [f"{names[a]} {names[b]} {w}" for a, b, w in graph.positive_edges()]
    return "\n".join(lines) + "\n"


def random_even_graph(rng, m: int, max_weight: int,
                      candidates: CandidateSet | None = None) -> MarginGraph:
    """Uniform even weight in ``[-max_weight, max_weight]`` on every pair."""
    top = max_weight // 2
    edges = {}
    for a in range(m):
        for b in range(a + 1, m):
            w = 2 * rng.randint(-top, top)
            if w > 0:
                edges[(a, b)] = w
            elif w < 0:
                edges[(b, a)] = -w
    return MarginGraph.from_edges(candidates or CandidateSet.default(m), edges)
