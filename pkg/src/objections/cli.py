"""Command-line front end.

One subcommand per concept: validate a file, query objections or
probabilities, dump world tables, run the irrelevance (Markov) suite, rank
sentences, compare the two quantifications, or decompose a world's
objection.  Objections are printed in canonical minterm DNF; ``--pretty``
adds a labeled cosmetic simplification.  Exit codes: 0 success, 1 domain
errors (rejected evidence, failed validation), 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import netfile, network as network_mod, pcn as pcn_mod, plots
from ._simplify import simplify
from .belief import ObjectionState, OrderingVerdict
from .errors import DomainError, InputError
from .logic import Sentence, Vocabulary, parse_sentence, render, truth_table
from .netfile import NetworkDocument, StateDocument

_BUNDLED = ("grass.ocn", "grass.pcn", "birdfly.obs")


def _resolve(path_text: str) -> Path:
    path = Path(path_text)
    if path.exists():
        return path
    if path_text in _BUNDLED:
        bundled = netfile.bundled_path(path_text)
        if bundled.exists():
            return bundled
    raise InputError(f"no such file: {path_text}")


def _load(args) -> NetworkDocument | StateDocument:
    return netfile.load_path(_resolve(args.file))


def _state_of(document: NetworkDocument | StateDocument) -> ObjectionState:
    if isinstance(document, StateDocument):
        return document.state
    if document.objections is None:
        raise DomainError("file carries no objection rows")
    return network_mod.assemble_state(document.network, document.objections)


def _domain_vocabulary(document) -> Vocabulary:
    if isinstance(document, StateDocument):
        return document.state.domain_vocabulary
    return document.network.vocabulary


def _objection_vocabulary(document) -> Vocabulary:
    if isinstance(document, StateDocument):
        return document.state.objection_vocabulary
    return document.objection_vocabulary


def _require_network(document, need_probs: bool = False, need_objections: bool = False):
    if isinstance(document, StateDocument):
        raise InputError("this subcommand needs a network file, not a state file")
    if need_objections and document.objections is None:
        raise DomainError("file carries no objection rows")
    if need_probs and document.probabilities is None:
        raise DomainError("file carries no prob rows")
    return document


def _parse(document, text: str) -> Sentence:
    return parse_sentence(text, _domain_vocabulary(document))


def _evidence(document, args) -> Sentence | None:
    return _parse(document, args.given) if args.given else None


def _pretty(sentence: Sentence, vocabulary: Vocabulary) -> str:
    return render(simplify(truth_table(sentence, vocabulary), vocabulary))


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def _coverage(sentence: Sentence, vocabulary: Vocabulary) -> float:
    return plots.coverage(truth_table(sentence, vocabulary), vocabulary.world_count)


# -- subcommands ------------------------------------------------------------


def _cmd_validate(args) -> int:
    document = _load(args)
    if isinstance(document, StateDocument):
        # A state file that loads at all has already passed its checks.
        _emit(args, {"kind": "state", "ok": True, "issues": []}, ["ok: state is consistent"])
        return 0
    issues = []
    checked = 0
    if document.objections is not None:
        report = network_mod.validate_ocn(document.network, document.objections)
        issues.extend(report.issues)
        checked += report.checked_pairs
        if report.ok:
            try:
                network_mod.assemble_state(document.network, document.objections)
            except DomainError as exc:
                issues.append(
                    network_mod.ValidationIssue("assembly", "-", "-", str(exc))
                )
    if document.probabilities is not None:
        report = pcn_mod.validate_pcn(document.network, document.probabilities)
        issues.extend(report.issues)
        checked += report.checked_pairs
    remedies = ()
    if args.remedy:
        if document.objections is None:
            raise DomainError("--remedy needs objection rows")
        remedies = network_mod.remedy_report(document.network, document.objections)

    lines = []
    ok = not issues and not remedies
    payload = {
        "kind": "network",
        "ok": ok,
        "checked_rows": checked,
        "issues": [
            {
                "kind": issue.kind,
                "node": issue.node,
                "condition": issue.condition,
                "message": issue.message,
                "witness": issue.witness,
            }
            for issue in issues
        ],
    }
    for issue in issues:
        lines.append(str(issue))
    if args.remedy:
        payload["remedy"] = [
            {
                "node": entry.instantiation.node,
                "condition": str(entry.instantiation),
                "literal": entry.instantiation.node if entry.positive else f"!{entry.instantiation.node}",
                "given": render(entry.given),
                "condition_objection": render(entry.condition_objection),
                "repaired": render(entry.repaired),
            }
            for entry in remedies
        ]
        for entry in remedies:
            literal = entry.instantiation.node if entry.positive else f"!{entry.instantiation.node}"
            lines.append(
                f"product-precondition: {literal} | {entry.instantiation} | "
                f"given {render(entry.given)} does not rule out "
                f"{render(entry.condition_objection)} | repaired: {render(entry.repaired)}"
            )
    lines.append(f"{'ok' if ok else 'FAILED'}: {checked} rows checked, {len(issues) + len(remedies)} issues")
    _emit(args, payload, lines)
    return 0 if ok else 1


def _cmd_query(args) -> int:
    document = _load(args)
    state = _state_of(document)
    evidence = _evidence(document, args)
    if evidence is not None:
        state = state.conditionalize(evidence)
    sentence = _parse(document, args.formula)
    objection = state.objection_of(sentence)
    payload = {
        "query": args.formula,
        "evidence": args.given,
        "objection": render(objection),
        "rejected": state.rejects(sentence),
    }
    lines = [render(objection)]
    if args.pretty:
        pretty = _pretty(objection, state.objection_vocabulary)
        payload["pretty"] = pretty
        lines.append(f"pretty: {pretty}")
    _emit(args, payload, lines)
    return 0


def _cmd_prob(args) -> int:
    document = _require_network(_load(args), need_probs=True)
    sentence = _parse(document, args.formula)
    evidence = _evidence(document, args)
    probability = pcn_mod.prob_query(
        document.network, document.probabilities, sentence, evidence
    )
    payload = {"query": args.formula, "evidence": args.given, "probability": probability}
    lines = [str(probability)]
    if args.trace:
        vocabulary = document.network.vocabulary
        mask = truth_table(sentence, vocabulary)
        if mask.bit_count() != 1:
            raise InputError("--trace needs a query that pins down exactly one world")
        world = vocabulary.world(mask.bit_length() - 1)
        steps = pcn_mod.factor_trace(document.network, document.probabilities, world)
        payload["trace"] = [
            {
                "node": step.node,
                "literal": step.node if step.positive else f"!{step.node}",
                "condition": str(step.instantiation),
                "probability": step.probability,
            }
            for step in steps
        ]
        for step in steps:
            literal = step.node if step.positive else f"!{step.node}"
            lines.append(f"factor {literal} | {step.instantiation} : {step.probability}")
    _emit(args, payload, lines)
    return 0


def _cmd_worlds(args) -> int:
    document = _load(args)
    state: ObjectionState | None = None
    joint = None
    if isinstance(document, StateDocument):
        state = document.state
        vocabulary = state.domain_vocabulary
    else:
        vocabulary = document.network.vocabulary
        if document.objections is not None:
            state = network_mod.assemble_state(document.network, document.objections)
        if document.probabilities is not None:
            joint = pcn_mod.assemble_joint(document.network, document.probabilities)
        if state is None and joint is None:
            raise DomainError("file carries no quantification rows")

    rows = []
    for world in vocabulary.worlds():
        row: dict = {"world": str(world)}
        if state is not None:
            row["objection"] = render(state.objection_at(world))
            if args.pretty:
                row["pretty"] = _pretty(
                    state.objection_at(world), state.objection_vocabulary
                )
        if joint is not None:
            row["probability"] = joint.at(world)
        rows.append(row)

    header = ["world"]
    if state is not None:
        header.append("objection")
        if args.pretty:
            header.append("pretty")
    if joint is not None:
        header.append("probability")
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(str(row[column]) for column in header))
    _emit(args, {"worlds": rows}, lines)

    if args.plot:
        labels = [row["world"] for row in rows]
        coverages = None
        if state is not None:
            coverages = [
                _coverage(state.objection_at(world), state.objection_vocabulary)
                for world in vocabulary.worlds()
            ]
        probabilities = [row["probability"] for row in rows] if joint is not None else None
        plots.world_table_figure(labels, coverages, probabilities, args.plot)
        print(f"wrote figure: {args.plot}", file=sys.stderr)
    return 0


def _cmd_markov(args) -> int:
    document = _require_network(_load(args), need_objections=True)
    report = network_mod.markov_check(document.network, document.objections)
    counts = report.counts()
    entries_payload = []
    lines = []
    for entry in report.entries:
        literal = entry.node if entry.positive else f"!{entry.node}"
        record = {
            "status": entry.status,
            "literal": literal,
            "parents": render(entry.parent_condition),
            "context": render(entry.context_condition),
        }
        line = (
            f"{entry.status}: {literal} | {render(entry.parent_condition)}"
            f" | context {render(entry.context_condition)}"
        )
        if entry.status == "violated":
            record["local"] = render(entry.local)
            record["contextual"] = render(entry.contextual)
            line += f" | local {render(entry.local)} vs contextual {render(entry.contextual)}"
        entries_payload.append(record)
        lines.append(line)
    summary = (
        f"verified {counts['verified']} vacuous {counts['vacuous']} "
        f"violated {counts['violated']}"
    )
    lines.append(summary)
    _emit(args, {"counts": counts, "entries": entries_payload}, lines)
    if args.plot:
        by_node: dict[str, dict[str, int]] = {}
        for entry in report.entries:
            by_node.setdefault(entry.node, {})
            by_node[entry.node][entry.status] = by_node[entry.node].get(entry.status, 0) + 1
        plots.markov_figure(by_node, args.plot)
        print(f"wrote figure: {args.plot}", file=sys.stderr)
    return 0 if report.ok else 1


def _cmd_ignorance(args) -> int:
    document = _load(args)
    state = _state_of(document)
    evidence = _evidence(document, args)
    if evidence is not None:
        state = state.conditionalize(evidence)
    sentence = _parse(document, args.formula)
    result = state.ignorance(sentence)
    payload = {
        "query": args.formula,
        "evidence": args.given,
        "ignorance": render(result),
    }
    lines = [render(result)]
    if args.pretty:
        pretty = _pretty(result, state.objection_vocabulary)
        payload["pretty"] = pretty
        lines.append(f"pretty: {pretty}")
    _emit(args, payload, lines)
    return 0


def _verdict_payload(verdict: OrderingVerdict) -> dict:
    return {
        "relation": verdict.relation,
        "checks": [
            {
                "premise": render(check.premise),
                "conclusion": render(check.conclusion),
                "holds": check.holds,
            }
            for check in verdict.checks
        ],
    }


def _cmd_order(args) -> int:
    document = _load(args)
    state = _state_of(document)
    evidence = _evidence(document, args)
    if evidence is not None:
        state = state.conditionalize(evidence)
    a = _parse(document, args.a)
    b = _parse(document, args.b)
    verdicts = {
        "no_more_objectionable": state.no_more_objectionable(a, b),
        "no_more_believed": state.no_more_believed(a, b),
        "no_more_ignorant": state.no_more_ignorant(a, b),
    }
    payload = {
        "a": args.a,
        "b": args.b,
        "evidence": args.given,
        "relations": {name: _verdict_payload(v) for name, v in verdicts.items()},
    }
    def show(sentence: Sentence) -> str:
        if args.pretty:
            return _pretty(sentence, state.objection_vocabulary)
        return render(sentence)

    lines = []
    for name, verdict in verdicts.items():
        lines.append(f"{name}: {verdict.relation}")
        for check in verdict.checks:
            outcome = "holds" if check.holds else "fails"
            lines.append(
                f"  {show(check.premise)} entails {show(check.conclusion)}: {outcome}"
            )
    _emit(args, payload, lines)
    return 0


def _cmd_compare(args) -> int:
    document = _require_network(_load(args), need_probs=True, need_objections=True)
    sentence = _parse(document, args.formula)
    evidence = _evidence(document, args)
    record = pcn_mod.compare(
        document.network,
        document.objections,
        document.probabilities,
        sentence,
        evidence,
    )
    payload = {
        "query": args.formula,
        "evidence": args.given,
        "objection": render(record.objection),
        "probability": record.probability,
        "rejected": record.rejected,
        "probability_zero": record.probability_zero,
        "extremes_agree": record.extremes_agree,
    }
    lines = [
        f"objection: {render(record.objection)}",
        f"probability: {record.probability}",
        f"rejected: {str(record.rejected).lower()}",
        f"probability_zero: {str(record.probability_zero).lower()}",
        f"extremes_agree: {str(record.extremes_agree).lower()}",
    ]
    if args.pretty:
        pretty = _pretty(record.objection, document.objection_vocabulary)
        payload["pretty"] = pretty
        lines.insert(1, f"pretty: {pretty}")
    _emit(args, payload, lines)

    if args.plot:
        state = network_mod.assemble_state(document.network, document.objections)
        joint = pcn_mod.assemble_joint(document.network, document.probabilities)
        evidence_probability = 1.0
        if evidence is not None:
            state = state.conditionalize(evidence)
            evidence_probability = joint.probability_of(evidence)
        vocabulary = document.network.vocabulary
        evidence_mask = (
            truth_table(evidence, vocabulary)
            if evidence is not None
            else (1 << vocabulary.world_count) - 1
        )
        labels, coverages, probabilities = [], [], []
        for world in vocabulary.worlds():
            labels.append(str(world))
            coverages.append(
                _coverage(state.objection_at(world), state.objection_vocabulary)
            )
            inside = bool((evidence_mask >> world.index) & 1)
            probabilities.append(joint.at(world) / evidence_probability if inside else 0.0)
        plots.comparison_figure(labels, coverages, probabilities, args.plot)
        print(f"wrote figure: {args.plot}", file=sys.stderr)
    return 0


def _cmd_explain(args) -> int:
    document = _require_network(_load(args), need_objections=True)
    vocabulary = document.network.vocabulary
    sentence = _parse(document, args.formula)
    mask = truth_table(sentence, vocabulary)
    if mask.bit_count() != 1:
        raise InputError("explain needs a formula that pins down exactly one world")
    world = vocabulary.world(mask.bit_length() - 1)
    steps = network_mod.explain(document.network, document.objections, world)
    state = network_mod.assemble_state(document.network, document.objections)
    objection = state.objection_at(world)

    payload: dict = {
        "world": str(world),
        "steps": [
            {
                "node": step.node,
                "literal": step.node if step.positive else f"!{step.node}",
                "condition": str(step.instantiation),
                "support": render(step.support),
            }
            for step in steps
        ],
        "objection": render(objection),
    }
    lines = []
    for step in steps:
        literal = step.node if step.positive else f"!{step.node}"
        lines.append(f"{literal} | {step.instantiation} : {render(step.support)}")
    lines.append(f"objection: {render(objection)}")
    if document.probabilities is not None:
        factors = pcn_mod.factor_trace(document.network, document.probabilities, world)
        joint = pcn_mod.assemble_joint(document.network, document.probabilities)
        payload["factors"] = [
            {
                "node": step.node,
                "literal": step.node if step.positive else f"!{step.node}",
                "condition": str(step.instantiation),
                "probability": step.probability,
            }
            for step in factors
        ]
        payload["probability"] = joint.at(world)
        for step in factors:
            literal = step.node if step.positive else f"!{step.node}"
            lines.append(f"factor {literal} | {step.instantiation} : {step.probability}")
        lines.append(f"probability: {joint.at(world)}")
    _emit(args, payload, lines)
    return 0


# -- wiring -----------------------------------------------------------------


def _add_common(subparser, formula: bool = False, given: bool = True, pretty: bool = False, plot: bool = False):
    subparser.add_argument("file", help="network (.ocn/.pcn) or state (.obs) file; bundled names resolve automatically")
    if formula:
        subparser.add_argument("formula", help="domain-language formula")
    if given:
        subparser.add_argument("--given", metavar="FORMULA", help="evidence to condition on")
    subparser.add_argument("--format", choices=("text", "json"), default="text")
    if pretty:
        subparser.add_argument("--pretty", action="store_true", help="add a cosmetically simplified form")
    if plot:
        subparser.add_argument("--plot", metavar="PATH", help="also render a figure to PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ocn",
        description="Objection-based causal networks: validate, query, and compare.",
        epilog="Bundled example files: " + ", ".join(_BUNDLED),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("validate", help="check quantification consistency")
    sub.add_argument("file")
    sub.add_argument("--remedy", action="store_true",
                     help="also flag conditional objections that contradict their condition's objection, with repairs")
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.set_defaults(handler=_cmd_validate)

    sub = commands.add_parser("query", help="objection to a sentence")
    _add_common(sub, formula=True, pretty=True)
    sub.set_defaults(handler=_cmd_query)

    sub = commands.add_parser("prob", help="probability of a sentence")
    _add_common(sub, formula=True)
    sub.add_argument("--trace", action="store_true", help="show per-node factors (single-world queries)")
    sub.set_defaults(handler=_cmd_prob)

    sub = commands.add_parser("worlds", help="dump the world table")
    _add_common(sub, given=False, pretty=True, plot=True)
    sub.set_defaults(handler=_cmd_worlds)

    sub = commands.add_parser("markov", help="run the irrelevance checks")
    _add_common(sub, given=False, plot=True)
    sub.set_defaults(handler=_cmd_markov)

    sub = commands.add_parser("ignorance", help="ignorance about a sentence")
    _add_common(sub, formula=True, pretty=True)
    sub.set_defaults(handler=_cmd_ignorance)

    sub = commands.add_parser("order", help="objectionability, belief and ignorance orderings")
    sub.add_argument("file")
    sub.add_argument("a", help="first formula")
    sub.add_argument("b", help="second formula")
    sub.add_argument("--given", metavar="FORMULA")
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--pretty", action="store_true",
                     help="display the recorded objections cosmetically simplified")
    sub.set_defaults(handler=_cmd_order)

    sub = commands.add_parser("compare", help="objection and probability side by side")
    _add_common(sub, formula=True, pretty=True, plot=True)
    sub.set_defaults(handler=_cmd_compare)

    sub = commands.add_parser("explain", help="chain-rule decomposition of one world")
    _add_common(sub, formula=True, given=False)
    sub.set_defaults(handler=_cmd_explain)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except BrokenPipeError:
        # Downstream consumer (head, less) closed the pipe; not an error.
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
