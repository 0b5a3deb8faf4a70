"""Probabilistic mirror of an objection-quantified network.

The same DAG can be quantified with conditional probabilities instead of
objections.  This module builds the factorized joint by brute-force
enumeration (no variable elimination or sampling; the networks are desk
scale) and answers probability queries, so objection answers and probability
answers to the same question can be laid side by side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import logic
from .errors import InvalidQuantification, ZeroProbabilityEvidence
from .network import (
    CausalNetwork,
    OcnQuantification,
    ParentInstantiation,
    ValidationIssue,
    ValidationReport,
    query as objection_query,
)
from .logic import Sentence, Vocabulary, World, render, truth_table

TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class PcnQuantification:
    """Probability table: per instantiation, chances for and against the node.

    Both numbers are stored; loaders derive the complement when a source
    provides only the positive one.
    """

    entries: Mapping[ParentInstantiation, tuple[float, float]]

    def entry(self, instantiation: ParentInstantiation) -> tuple[float, float] | None:
        return self.entries.get(instantiation)

    def probability(self, instantiation: ParentInstantiation, positive: bool) -> float:
        pair = self.entries.get(instantiation)
        if pair is None:
            raise InvalidQuantification(
                f"no probability row for {instantiation.node} | {instantiation}"
            )
        return pair[0] if positive else pair[1]


@dataclass(frozen=True)
class JointDistribution:
    """Explicit world-to-probability map over the network vocabulary."""

    vocabulary: Vocabulary
    probabilities: tuple[float, ...]

    def __post_init__(self):
        if len(self.probabilities) != self.vocabulary.world_count:
            raise InvalidQuantification("joint size does not match the vocabulary")
        if any(p < 0 for p in self.probabilities):
            raise InvalidQuantification("joint contains a negative probability")
        total = sum(self.probabilities)
        if abs(total - 1.0) > TOLERANCE:
            raise InvalidQuantification(f"joint sums to {total!r}, not 1")

    def probability_of(self, sentence: Sentence) -> float:
        mask = truth_table(sentence, self.vocabulary)
        total = 0.0
        index = 0
        while mask:
            if mask & 1:
                total += self.probabilities[index]
            mask >>= 1
            index += 1
        return total

    def at(self, world: World) -> float:
        return self.probabilities[world.index]


def validate_pcn(network: CausalNetwork, quantification: PcnQuantification) -> ValidationReport:
    """Check coverage, ranges, and the complement-sum condition per row."""
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
                        "missing-row", node, str(instantiation), "no probability row"
                    )
                )
                continue
            positive, negative = pair
            checked += 1
            for label, value in (("chance for", positive), ("chance against", negative)):
                if not 0.0 <= value <= 1.0:
                    issues.append(
                        ValidationIssue(
                            "range",
                            node,
                            str(instantiation),
                            f"{label} {node} is {value!r}, outside [0, 1]",
                        )
                    )
            if abs(positive + negative - 1.0) > TOLERANCE:
                issues.append(
                    ValidationIssue(
                        "complement-sum",
                        node,
                        str(instantiation),
                        f"chances sum to {positive + negative!r}, not 1",
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


def assemble_joint(network: CausalNetwork, quantification: PcnQuantification) -> JointDistribution:
    """Factorized joint: each world's probability is the product of its rows."""
    report = validate_pcn(network, quantification)
    if not report.ok:
        summary = "; ".join(str(issue) for issue in report.issues[:3])
        raise InvalidQuantification(f"quantification fails validation: {summary}")
    probabilities = []
    for world in network.vocabulary.worlds():
        value = 1.0
        for node in network.nodes:
            instantiation = network.instantiation_at(node, world)
            value *= quantification.probability(
                instantiation, world.value(network.atom(node))
            )
        probabilities.append(value)
    return JointDistribution(network.vocabulary, tuple(probabilities))


def prob_query(
    network: CausalNetwork,
    quantification: PcnQuantification,
    sentence: Sentence,
    evidence: Sentence | None = None,
) -> float:
    """Probability of a sentence, optionally given evidence."""
    joint = assemble_joint(network, quantification)
    if evidence is None:
        return joint.probability_of(sentence)
    denominator = joint.probability_of(evidence)
    if denominator == 0.0:
        raise ZeroProbabilityEvidence(
            f"evidence {render(evidence)!r} has probability zero"
        )
    return joint.probability_of(logic.And(sentence, evidence)) / denominator


@dataclass(frozen=True)
class FactorStep:
    """One factor of a single world's probability."""

    node: str
    instantiation: ParentInstantiation
    positive: bool
    probability: float


def factor_trace(
    network: CausalNetwork, quantification: PcnQuantification, world: World
) -> tuple[FactorStep, ...]:
    """The per-node factors whose product is the world's joint probability."""
    report = validate_pcn(network, quantification)
    if not report.ok:
        summary = "; ".join(str(issue) for issue in report.issues[:3])
        raise InvalidQuantification(f"quantification fails validation: {summary}")
    steps = []
    for node in network.nodes:
        instantiation = network.instantiation_at(node, world)
        positive = world.value(network.atom(node))
        steps.append(
            FactorStep(
                node,
                instantiation,
                positive,
                quantification.probability(instantiation, positive),
            )
        )
    return tuple(steps)


@dataclass(frozen=True)
class ComparisonRecord:
    """Objection and probability for one query, with extreme-value flags.

    Rejection (a tautologous objection) and zero probability are the two
    formalisms' extremes; whether they agree is reported, never asserted.
    """

    query: Sentence
    evidence: Sentence | None
    objection: Sentence
    probability: float
    rejected: bool
    probability_zero: bool

    @property
    def extremes_agree(self) -> bool:
        return self.rejected == self.probability_zero


def compare(
    network: CausalNetwork,
    ocn: OcnQuantification,
    pcn: PcnQuantification,
    sentence: Sentence,
    evidence: Sentence | None = None,
) -> ComparisonRecord:
    """Answer the same query through both quantifications of one DAG."""
    objection = objection_query(network, ocn, sentence, evidence)
    probability = prob_query(network, pcn, sentence, evidence)
    return ComparisonRecord(
        query=sentence,
        evidence=evidence,
        objection=objection,
        probability=probability,
        rejected=logic.is_tautology(objection),
        probability_zero=probability == 0.0,
    )
