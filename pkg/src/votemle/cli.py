"""Command-line interface.

Exit codes: 0 success / nothing found, 1 violation found or odd margin,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .consistency import (DEFAULT_RANDOM_BUDGET, check_violation, format_outcome,
                          search_violation)
from .core import (CandidateSet, ParseError, Profile, margins, pairwise_matrix,
                   parse_profile, render_profile)
from .mle import MLE_MAX_CANDIDATES, likelihood_table
from .noise import MODEL_NAMES, parse_model
from .rules import (KINDS, RULE_NAMES, Rule, ScoreVector, bucklin_scores, get_rule,
                    kemeny, ranked_pairs_locks, stv_rounds)
from .synth import OddWeightError, parse_margins, realize_margin_graph


class UsageError(Exception):
    pass


def _read_profile(path: str) -> Profile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_profile(text)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _rule(args) -> Rule:
    vector = ScoreVector.parse(args.score_vector) if args.score_vector else None
    return get_rule(args.rule, vector, args.winner_rule, args.rest_rule)


def _matrix_lines(profile: Profile) -> list[str]:
    pm = pairwise_matrix(profile)
    mg = margins(pm)
    names = profile.candidates.names
    width = max(max(map(len, names)), len(str(pm.n)) + 1, 3)

    def table(title, rows):
        out = [title, " " * width + "".join(f" {x:>{width}}" for x in names)]
        for a, row in enumerate(rows):
            cells = ["-" if a == b else str(v) for b, v in enumerate(row)]
            out.append(f"{names[a]:>{width}}" + "".join(f" {x:>{width}}" for x in cells))
        return out

    return (table("pairwise counts N(row, col):", pm.counts)
            + table("margins N(row, col) - N(col, row):", mg.weight))


def _format_score(value) -> str:
    if isinstance(value, tuple):
        return "(" + ",".join(map(str, value)) + ")"
    return str(value)


def cmd_tally(args) -> int:
    rule = _rule(args)
    profile = _read_profile(args.profile)
    names = profile.candidates
    outcome = rule(profile)
    lines = [f"rule: {rule.name}",
             f"candidates: {', '.join(names.names)}",
             f"votes: {profile.n}",
             f"winner: {names.names[outcome.winner]}",
             f"ranking: {names.format(outcome.strict)}",
             f"weak order: {outcome.weak.format(names)}"]
    if rule.name == "stv":
        for i, r in enumerate(stv_rounds(profile), start=1):
            tallies = " ".join(f"{names.names[c]}={r.tallies[c]}" for c in r.remaining)
            tie = " (tie, lowest index)" if r.tied else ""
            lines.append(f"round {i}: {tallies}, eliminated {names.names[r.eliminated]}{tie}")
    elif rule.name == "bucklin":
        lines.append("scores (level, votes at level): " + " ".join(
            f"{names.names[c]}={_format_score(s)}" for c, s in enumerate(bucklin_scores(profile))))
    elif rule.name == "ranked-pairs":
        for lock in ranked_pairs_locks(pairwise_matrix(profile)):
            if lock.count * 2 >= profile.n:
                verb = "locked" if lock.locked else "skipped"
                lines.append(f"{verb} {names.names[lock.a]} > {names.names[lock.b]} "
                             f"(N={lock.count})")
    elif rule.name == "kemeny":
        optimal = sorted(kemeny(profile))
        lines.append(f"agreement: {outcome.scores[0]}")
        lines.append(f"optimal rankings ({len(optimal)}):")
        lines += [f"  {names.format(r)}" for r in optimal]
    elif outcome.scores is not None:
        lines.append("scores: " + " ".join(
            f"{names.names[c]}={_format_score(s)}" for c, s in enumerate(outcome.scores)))
    if args.pairwise:
        lines += _matrix_lines(profile)
    print("\n".join(lines))
    return 0


def cmd_pairwise(args) -> int:
    profile = _read_profile(args.profile)
    print(f"votes: {profile.n}")
    print("\n".join(_matrix_lines(profile)))
    return 0


def cmd_mle(args) -> int:
    profile = _read_profile(args.profile)
    if profile.m > MLE_MAX_CANDIDATES:
        raise UsageError(f"MLE enumeration limited to {MLE_MAX_CANDIDATES} candidates")
    vector = ScoreVector.parse(args.score_vector) if args.score_vector else None
    model = parse_model(args.model, profile.m, vector, args.p)
    names = profile.candidates
    table = likelihood_table(model, profile)
    best = max(value for _, value in table)
    argmax = [(o, v) for o, v in table if v == best]

    def show(outcome):
        return format_outcome(outcome, names)

    noun = "candidates" if model.kind == "winner" else "rankings"
    lines = [f"model: {model}",
             f"candidates: {', '.join(names.names)}",
             f"votes: {profile.n}",
             f"argmax ({len(argmax)} of {len(table)} {noun}):"]
    lines += [f"  {show(o)}  likelihood {v}" for o, v in argmax]
    if args.all:
        lines.append("all outcomes:")
        lines += [f"  {show(o)}  likelihood {v}" for o, v in table]
    print("\n".join(lines))
    return 0


def cmd_consistency(args) -> int:
    rule = _rule(args)
    v1, v2 = _read_profile(args.v1), _read_profile(args.v2)
    if v1.candidates != v2.candidates:
        raise UsageError("the two profiles must list the same candidates in the same order")
    cert = check_violation(rule, args.kind, v1, v2)
    if cert is not None:
        print(cert.render(), end="")
        return 1
    names = v1.candidates
    lines = [f"rule: {rule.name}, kind: {args.kind}"]
    for label, profile in (("V1", v1), ("V2", v2), ("V1+V2", v1 + v2)):
        result = rule(profile)
        shown = names.names[result.winner] if args.kind == "winner" else names.format(result.strict)
        possible = rule.outcomes(profile, args.kind)
        if possible is None:
            note = "depends on tie-breaking"
        elif len(possible) == 1:
            note = "unique"
        else:
            note = f"tie-broken, {len(possible)} possible"
        lines.append(f"{label}: {shown} ({note})")
    lines.append("no violation")
    print("\n".join(lines))
    return 0


def cmd_search(args) -> int:
    rule = _rule(args)
    budget = args.budget
    lines = [f"search: rule {rule.name}, kind {args.kind}, {args.candidates} candidates, "
             f"strategy {args.strategy}, "
             + (f"max weight {args.max_weight}" if args.strategy == "margins"
                else f"max votes {args.max_votes}")
             + (", exhaustive" if args.exhaustive else f", seed {args.seed}")
             + (f", budget {budget}" if budget is not None else "")]
    cert = search_violation(rule, args.kind, args.candidates, strategy=args.strategy,
                            max_votes=args.max_votes, max_weight=args.max_weight,
                            budget=budget, exhaustive=args.exhaustive, seed=args.seed)
    if cert is None:
        lines.append("no violation found")
        print("\n".join(lines))
        return 0
    lines.append(cert.render().rstrip("\n"))
    if args.output:
        for path in cert.write(args.output):
            lines.append(f"wrote {path}")
    print("\n".join(lines))
    return 1


def cmd_realize(args) -> int:
    try:
        text = Path(args.margins).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.margins}: {exc.strerror}") from None
    try:
        graph = parse_margins(text)
    except ParseError as exc:
        raise UsageError(f"{args.margins}: {exc}") from None
    try:
        profile = realize_margin_graph(graph)
    except OddWeightError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    ballot = render_profile(profile)
    if args.output:
        Path(args.output).write_text(ballot, encoding="utf-8")
    else:
        print(ballot, end="")
    return 0


def _add_rule_options(parser, required=True):
    parser.add_argument("--rule", required=required, choices=RULE_NAMES)
    parser.add_argument("--score-vector", help="comma-separated points, e.g. 3,1,0")
    parser.add_argument("--winner-rule", help="winner rule for --rule hybrid")
    parser.add_argument("--rest-rule", help="rule ranking the rest for --rule hybrid")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="votemle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tally", help="run a voting rule on a ballot file")
    _add_rule_options(p)
    p.add_argument("--pairwise", action="store_true", help="also print the pairwise matrix")
    p.add_argument("profile")
    p.set_defaults(func=cmd_tally)

    p = sub.add_parser("pairwise", help="print pairwise counts and margins")
    p.add_argument("profile")
    p.set_defaults(func=cmd_pairwise)

    p = sub.add_parser("mle", help="maximum likelihood outcomes under a noise model")
    p.add_argument("--model", required=True, choices=MODEL_NAMES)
    p.add_argument("--score-vector", help="for scoring models (default Borda)")
    p.add_argument("--p", help="Condorcet accuracy as a rational, e.g. 3/5")
    p.add_argument("--all", action="store_true", help="list every outcome's likelihood")
    p.add_argument("profile")
    p.set_defaults(func=cmd_mle)

    p = sub.add_parser("consistency", help="check two profiles for a consistency violation")
    _add_rule_options(p)
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("v1")
    p.add_argument("v2")
    p.set_defaults(func=cmd_consistency)

    p = sub.add_parser("search", help="search for a consistency violation")
    _add_rule_options(p)
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--candidates", "-m", type=int, required=True)
    p.add_argument("--strategy", choices=("profiles", "margins"), default="profiles")
    p.add_argument("--max-votes", type=int, default=4, help="votes per side (profiles)")
    p.add_argument("--max-weight", type=int, default=6, help="largest |margin| (margins)")
    p.add_argument("--budget", type=int, default=None,
                   help=f"samples to draw (default {DEFAULT_RANDOM_BUDGET}, "
                        "unlimited with --exhaustive)")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("-o", "--output", help="write the certificate to <OUTPUT>v1.votes / v2.votes")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("realize", help="build votes realizing an even margin graph")
    p.add_argument("margins")
    p.add_argument("-o", "--output", help="ballot file to write (default stdout)")
    p.set_defaults(func=cmd_realize)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
