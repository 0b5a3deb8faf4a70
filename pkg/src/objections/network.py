"""Causal networks quantified with objections.

A causal network is a DAG over domain atoms.  Quantifying it means giving,
for every node and every complete instantiation of that node's parents, an
objection to the node and an objection to its negation.  Assembly turns a
quantified network into a full state of belief: the objection to a world is
the disjunction, over all nodes, of the table entry selected by the node's
sign and its parents' signs in that world.

The irrelevance (Markov) checker verifies what the DAG claims: given a full
parent instantiation, fixing the remaining non-descendants does not change a
node's conditional objection.  Conditional objections are only determined up
to the conditioning context's own objection (the product rule pins down
their disjunction with it, not the sentences themselves), so the two
conditionals are compared after disjoining each with the objection to the
richer context.  Instantiations whose conditioning sentence is rejected are
reported as vacuous, not as failures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping

from . import logic
from .belief import ObjectionState, normalize_conditional
from .errors import (
    ConsistencyViolation,
    EnumerationLimitError,
    InputError,
    InvalidQuantification,
    VocabularyMismatchError,
)
from .logic import (
    And,
    Atom,
    Not,
    Or,
    Sentence,
    Vocabulary,
    World,
    canonical_form,
    conjoin,
    render,
    truth_table,
)

MAX_NODES = 16


@dataclass(frozen=True)
class CausalNetwork:
    """An unquantified DAG: domain vocabulary plus a parent list per node.

    The vocabulary order is the canonical world-enumeration order; parent
    lists are ordered and define the instantiation enumeration per node.
    """

    vocabulary: Vocabulary
    parents: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        if self.vocabulary.atoms and self.vocabulary.tag != logic.DOMAIN:
            raise InputError("network nodes must be domain-language atoms")
        if len(self.vocabulary) > MAX_NODES:
            raise EnumerationLimitError(
                f"{len(self.vocabulary)} nodes exceed the {MAX_NODES}-node limit"
            )
        names = set(self.vocabulary.names)
        normalized = {}
        for node in self.vocabulary.names:
            node_parents = tuple(self.parents.get(node, ()))
            unknown = [p for p in node_parents if p not in names]
            if unknown:
                raise InputError(
                    f"node {node!r} lists undeclared parents: {', '.join(unknown)}"
                )
            if len(set(node_parents)) != len(node_parents):
                raise InputError(f"node {node!r} lists a parent twice")
            if node in node_parents:
                raise InputError(f"node {node!r} cannot be its own parent")
            normalized[node] = node_parents
        stray = set(self.parents) - names
        if stray:
            raise InputError(f"parent lists for undeclared nodes: {', '.join(sorted(stray))}")
        object.__setattr__(self, "parents", normalized)
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        state: dict[str, int] = {}

        def visit(node: str, trail: tuple[str, ...]) -> None:
            mark = state.get(node)
            if mark == 2:
                return
            if mark == 1:
                cycle = " -> ".join(trail + (node,))
                raise InputError(f"parent relation contains a cycle: {cycle}")
            state[node] = 1
            for parent in self.parents[node]:
                visit(parent, trail + (node,))
            state[node] = 2

        for node in self.vocabulary.names:
            visit(node, ())

    # -- structure ------------------------------------------------------

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.vocabulary.names

    def atom(self, name: str) -> Atom:
        return self.vocabulary.atom(name)

    def children(self, node: str) -> tuple[str, ...]:
        return tuple(n for n in self.nodes if node in self.parents[n])

    def descendants(self, node: str) -> frozenset[str]:
        out: set[str] = set()
        stack = list(self.children(node))
        while stack:
            current = stack.pop()
            if current not in out:
                out.add(current)
                stack.extend(self.children(current))
        return frozenset(out)

    def non_descendants(self, node: str) -> tuple[str, ...]:
        """All nodes other than the node itself and its descendants."""
        below = self.descendants(node)
        return tuple(n for n in self.nodes if n != node and n not in below)

    # -- instantiations ---------------------------------------------------

    def instantiations(self, node: str) -> Iterator["ParentInstantiation"]:
        """All parent instantiations of a node, in enumeration order."""
        node_parents = self.parents[node]
        for bits in itertools.product((False, True), repeat=len(node_parents)):
            yield ParentInstantiation(
                node,
                tuple((self.atom(p), bit) for p, bit in zip(node_parents, bits)),
            )

    def instantiation_at(self, node: str, world: World) -> "ParentInstantiation":
        """The parent instantiation a world selects for a node."""
        return ParentInstantiation(
            node,
            tuple((self.atom(p), world.value(self.atom(p))) for p in self.parents[node]),
        )


@dataclass(frozen=True)
class ParentInstantiation:
    """One signed conjunction over a node's parents (empty for roots)."""

    node: str
    signs: tuple[tuple[Atom, bool], ...]

    def sentence(self) -> Sentence:
        """The instantiation as a conjunction; ``true`` for roots."""
        return conjoin(atom if sign else Not(atom) for atom, sign in self.signs)

    def __str__(self) -> str:
        if not self.signs:
            return "-"
        return " & ".join(
            atom.name if sign else f"!{atom.name}" for atom, sign in self.signs
        )


@dataclass(frozen=True, eq=False)
class OcnQuantification:
    """Objection table: per instantiation, objections for and against the node."""

    objection_vocabulary: Vocabulary
    entries: Mapping[ParentInstantiation, tuple[Sentence, Sentence]]

    def entry(self, instantiation: ParentInstantiation) -> tuple[Sentence, Sentence] | None:
        return self.entries.get(instantiation)

    def support(self, instantiation: ParentInstantiation, positive: bool) -> Sentence:
        pair = self.entries.get(instantiation)
        if pair is None:
            raise InvalidQuantification(
                f"no objection row for {instantiation.node} | {instantiation}"
            )
        return pair[0] if positive else pair[1]

    def replace(
        self, updates: Mapping[ParentInstantiation, tuple[Sentence, Sentence]]
    ) -> "OcnQuantification":
        merged = dict(self.entries)
        merged.update(updates)
        return OcnQuantification(self.objection_vocabulary, merged)


@dataclass(frozen=True)
class ValidationIssue:
    kind: str
    node: str
    condition: str
    message: str
    witness: str | None = None

    def __str__(self) -> str:
        parts = [f"{self.kind}: node {self.node}"]
        if self.condition != "-":
            parts.append(f"given {self.condition}")
        parts.append(self.message)
        if self.witness is not None:
            parts.append(f"witness: {self.witness}")
        return " | ".join(parts)


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...]
    checked_pairs: int

    @property
    def ok(self) -> bool:
        return not self.issues


def validate_ocn(network: CausalNetwork, quantification: OcnQuantification) -> ValidationReport:
    """Check coverage and pairwise consistency of an objection table.

    Every instantiation must carry a pair of objections whose conjunction is
    unsatisfiable; violations are reported with a satisfying
    objection-language assignment as witness.
    """
    vocabulary = quantification.objection_vocabulary
    issues: list[ValidationIssue] = []
    checked = 0
    expected: set[ParentInstantiation] = set()
    for node in network.nodes:
        for instantiation in network.instantiations(node):
            expected.add(instantiation)
            pair = quantification.entry(instantiation)
            if pair is None:
                issues.append(
                    ValidationIssue(
                        "missing-row", node, str(instantiation), "no objection row"
                    )
                )
                continue
            positive, negative = pair
            try:
                both = truth_table(positive, vocabulary) & truth_table(negative, vocabulary)
            except VocabularyMismatchError as exc:
                issues.append(
                    ValidationIssue("foreign-atoms", node, str(instantiation), str(exc))
                )
                continue
            checked += 1
            if both:
                witness = (both & -both).bit_length() - 1
                issues.append(
                    ValidationIssue(
                        "inconsistent-pair",
                        node,
                        str(instantiation),
                        f"objections for and against {node} are satisfiable together: "
                        f"({render(positive)}) & ({render(negative)})",
                        witness=logic.assignment_description(vocabulary, witness),
                    )
                )
    for instantiation in quantification.entries:
        if instantiation not in expected:
            issues.append(
                ValidationIssue(
                    "extra-row",
                    instantiation.node,
                    str(instantiation),
                    "row does not match any node instantiation of this network",
                )
            )
    order = {name: i for i, name in enumerate(network.nodes)}
    issues.sort(key=lambda issue: (order.get(issue.node, len(order)), issue.condition, issue.kind))
    return ValidationReport(tuple(issues), checked)


def assemble_state(network: CausalNetwork, quantification: OcnQuantification) -> ObjectionState:
    """Chain-rule assembly of the full state of belief.

    The objection to each world is the disjunction over nodes of the table
    entry selected by the world; the per-world disjunction is a fixed set, so
    any node ordering yields an equivalent table.  Table entries are used
    verbatim; see :func:`apply_remedy` for the opt-in repair of elicited
    conditionals.
    """
    report = validate_ocn(network, quantification)
    if not report.ok:
        summary = "; ".join(str(issue) for issue in report.issues[:3])
        raise InvalidQuantification(f"quantification fails validation: {summary}")
    vocabulary = network.vocabulary
    objection_vocab = quantification.objection_vocabulary
    masks = []
    for world in vocabulary.worlds():
        mask = 0
        for node in network.nodes:
            instantiation = network.instantiation_at(node, world)
            support = quantification.support(instantiation, world.value(network.atom(node)))
            mask |= truth_table(support, objection_vocab)
        masks.append(mask)
    try:
        return ObjectionState(vocabulary, objection_vocab, tuple(masks))
    except ConsistencyViolation as exc:
        raise InvalidQuantification(
            f"assembled state is inconsistent: {exc}"
        ) from exc


def query(
    network: CausalNetwork,
    quantification: OcnQuantification,
    sentence: Sentence,
    evidence: Sentence | None = None,
) -> Sentence:
    """Objection to a sentence, optionally after conditioning on evidence."""
    state = assemble_state(network, quantification)
    if evidence is not None:
        state = state.conditionalize(evidence)
    return state.objection_of(sentence)


@dataclass(frozen=True)
class ExplanationStep:
    """One chain-rule disjunct: which table entry a world picked for a node."""

    node: str
    instantiation: ParentInstantiation
    positive: bool
    support: Sentence


def explain(
    network: CausalNetwork, quantification: OcnQuantification, world: World
) -> tuple[ExplanationStep, ...]:
    """Decompose a world's objection into its per-node table entries."""
    report = validate_ocn(network, quantification)
    if not report.ok:
        summary = "; ".join(str(issue) for issue in report.issues[:3])
        raise InvalidQuantification(f"quantification fails validation: {summary}")
    steps = []
    for node in network.nodes:
        instantiation = network.instantiation_at(node, world)
        positive = world.value(network.atom(node))
        steps.append(
            ExplanationStep(
                node, instantiation, positive, quantification.support(instantiation, positive)
            )
        )
    return tuple(steps)


@dataclass(frozen=True)
class MarkovEntry:
    node: str
    positive: bool
    parent_condition: Sentence
    context_condition: Sentence
    status: str
    local: Sentence | None = None
    contextual: Sentence | None = None


@dataclass(frozen=True)
class MarkovReport:
    entries: tuple[MarkovEntry, ...]

    @property
    def violations(self) -> tuple[MarkovEntry, ...]:
        return tuple(e for e in self.entries if e.status == "violated")

    @property
    def ok(self) -> bool:
        return not self.violations

    def counts(self) -> dict[str, int]:
        out = {"verified": 0, "violated": 0, "vacuous": 0}
        for entry in self.entries:
            out[entry.status] += 1
        return out


def markov_check(network: CausalNetwork, quantification: OcnQuantification) -> MarkovReport:
    """Verify the irrelevance claims the DAG makes, on the assembled state.

    For every node, sign, parent instantiation and instantiation of the
    remaining non-descendants, the conditional objection given the parents is
    compared with the conditional objection given parents plus context, each
    disjoined with the context's own objection.  Entries whose conditioning
    sentence is rejected are vacuous: conditionalization is undefined there.
    """
    state = assemble_state(network, quantification)
    entries: list[MarkovEntry] = []
    for node in network.nodes:
        atom = network.atom(node)
        others = tuple(
            n for n in network.non_descendants(node) if n not in network.parents[node]
        )
        for positive in (True, False):
            literal: Sentence = atom if positive else Not(atom)
            for instantiation in network.instantiations(node):
                parent_sentence = instantiation.sentence()
                parent_rejected = state.rejects(parent_sentence)
                local = (
                    None
                    if parent_rejected
                    else state.conditional_objection(parent_sentence, literal)
                )
                for bits in itertools.product((False, True), repeat=len(others)):
                    context_parts = [
                        network.atom(n) if bit else Not(network.atom(n))
                        for n, bit in zip(others, bits)
                    ]
                    context_sentence = conjoin(
                        ([parent_sentence] + context_parts)
                        if instantiation.signs
                        else context_parts
                    )
                    if parent_rejected or state.rejects(context_sentence):
                        entries.append(
                            MarkovEntry(
                                node, positive, parent_sentence, context_sentence, "vacuous"
                            )
                        )
                        continue
                    contextual = state.conditional_objection(context_sentence, literal)
                    context_objection = state.objection_of(context_sentence)
                    local_in_context = Or(local, context_objection)
                    contextual_in_context = Or(contextual, context_objection)
                    if logic.equivalent(local_in_context, contextual_in_context):
                        entries.append(
                            MarkovEntry(
                                node, positive, parent_sentence, context_sentence, "verified"
                            )
                        )
                    else:
                        vocabulary = state.objection_vocabulary
                        entries.append(
                            MarkovEntry(
                                node,
                                positive,
                                parent_sentence,
                                context_sentence,
                                "violated",
                                local=canonical_form(local_in_context, vocabulary),
                                contextual=canonical_form(contextual_in_context, vocabulary),
                            )
                        )
    return MarkovReport(tuple(entries))


@dataclass(frozen=True)
class RemedyEntry:
    """A conditional objection the repair would actually change."""

    instantiation: ParentInstantiation
    positive: bool
    given: Sentence
    condition_objection: Sentence
    repaired: Sentence


def remedy_report(
    network: CausalNetwork, quantification: OcnQuantification
) -> tuple[RemedyEntry, ...]:
    """Entries whose given objection contradicts the condition's objection.

    An elicited conditional objection should entail the negation of the
    objection to its condition; entries that do not are listed along with
    the repaired sentence (the entry conjoined with that negation).  The
    condition's objection is taken from the assembled state.
    """
    state = assemble_state(network, quantification)
    out = []
    for node in network.nodes:
        for instantiation in network.instantiations(node):
            condition_objection = state.objection_of(instantiation.sentence())
            if logic.is_tautology(condition_objection):
                continue
            for positive in (True, False):
                given = quantification.support(instantiation, positive)
                if logic.is_tautology(given):
                    continue
                if logic.is_contradiction(And(given, condition_objection)):
                    continue
                out.append(
                    RemedyEntry(
                        instantiation,
                        positive,
                        given,
                        condition_objection,
                        And(given, Not(condition_objection)),
                    )
                )
    return tuple(out)


def apply_remedy(
    network: CausalNetwork, quantification: OcnQuantification
) -> OcnQuantification:
    """Reinterpret every conditional entry so the product rule applies to it.

    Entries already consistent with their condition's objection are unchanged
    up to equivalence; assembly itself never applies this silently.
    """
    state = assemble_state(network, quantification)
    updates: dict[ParentInstantiation, tuple[Sentence, Sentence]] = {}
    for node in network.nodes:
        for instantiation in network.instantiations(node):
            condition_objection = state.objection_of(instantiation.sentence())
            if logic.is_tautology(condition_objection):
                continue
            positive, negative = quantification.entries[instantiation]
            updates[instantiation] = (
                normalize_conditional(positive, condition_objection),
                normalize_conditional(negative, condition_objection),
            )
    return quantification.replace(updates)
