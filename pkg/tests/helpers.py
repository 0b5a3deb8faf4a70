"""Test-side brute-force oracles and random generators.

The evaluators here are deliberately independent of the library's semantics:
sentences are walked directly against explicit name-to-bool assignments, so
equivalence and entailment checks in tests do not share code with the truth
tables they verify.
"""

from __future__ import annotations

import itertools
import random

from objections.belief import ObjectionState
from objections.logic import (
    And,
    Atom,
    Const,
    Implies,
    Not,
    Or,
    Sentence,
    Vocabulary,
    conjoin,
)
from objections.network import CausalNetwork, OcnQuantification, ParentInstantiation


def holds(sentence: Sentence, assignment: dict[str, bool]) -> bool:
    if isinstance(sentence, Const):
        return sentence.value
    if isinstance(sentence, Atom):
        return assignment[sentence.name]
    if isinstance(sentence, Not):
        return not holds(sentence.operand, assignment)
    if isinstance(sentence, And):
        return holds(sentence.left, assignment) and holds(sentence.right, assignment)
    if isinstance(sentence, Or):
        return holds(sentence.left, assignment) or holds(sentence.right, assignment)
    if isinstance(sentence, Implies):
        return (not holds(sentence.left, assignment)) or holds(sentence.right, assignment)
    raise TypeError(sentence)


def assignments(names: tuple[str, ...]) -> list[dict[str, bool]]:
    return [
        dict(zip(names, bits))
        for bits in itertools.product((False, True), repeat=len(names))
    ]


def sat_set(sentence: Sentence, names: tuple[str, ...]) -> frozenset[int]:
    return frozenset(
        i for i, a in enumerate(assignments(names)) if holds(sentence, a)
    )


def brute_equivalent(a: Sentence, b: Sentence, names: tuple[str, ...]) -> bool:
    return sat_set(a, names) == sat_set(b, names)


def brute_entails(a: Sentence, b: Sentence, names: tuple[str, ...]) -> bool:
    return sat_set(a, names) <= sat_set(b, names)


def brute_unsat(a: Sentence, names: tuple[str, ...]) -> bool:
    return not sat_set(a, names)


def brute_taut(a: Sentence, names: tuple[str, ...]) -> bool:
    return len(sat_set(a, names)) == len(assignments(names))


# -- random generators -------------------------------------------------------


def random_sentence(rng: random.Random, atoms: list[Atom], depth: int = 3) -> Sentence:
    if depth <= 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.08:
            return Const(True)
        if roll < 0.16:
            return Const(False)
        return rng.choice(atoms)
    kind = rng.randrange(4)
    if kind == 0:
        return Not(random_sentence(rng, atoms, depth - 1))
    left = random_sentence(rng, atoms, depth - 1)
    right = random_sentence(rng, atoms, depth - 1)
    return [And, Or, Implies][kind - 1](left, right)


def random_state(
    rng: random.Random, domain_names: tuple[str, ...], objection_names: tuple[str, ...]
) -> ObjectionState:
    """A valid random state: random objections, patched to stay consistent."""
    domain = Vocabulary.of(domain_names, tag="L")
    objection_atoms = [Atom(n, "O") for n in objection_names]
    entries = {
        world: random_sentence(rng, objection_atoms, depth=rng.randrange(1, 4))
        for world in domain.worlds()
    }
    if rng.random() < 0.25:
        victim = rng.choice(list(entries))
        entries[victim] = Const(False)
    total = conjoin(entries.values())
    if sat_set(total, objection_names):
        victim = rng.choice(list(entries))
        entries[victim] = And(entries[victim], Not(total))
    return ObjectionState.from_world_table(
        entries, Vocabulary.of(objection_names, tag="O")
    )


def random_consistent_pair(
    rng: random.Random, atoms: list[Atom], names: tuple[str, ...]
) -> tuple[Sentence, Sentence]:
    """Two objection sentences whose conjunction is unsatisfiable."""
    roll = rng.random()
    if roll < 0.1:
        return Const(True), Const(False)
    if roll < 0.2:
        return Const(False), Const(False)
    positive = random_sentence(rng, atoms, depth=2)
    negative = And(random_sentence(rng, atoms, depth=2), Not(positive))
    if rng.random() < 0.5:
        return positive, negative
    return negative, positive


def random_network(
    rng: random.Random, node_count: int, objection_names: tuple[str, ...]
) -> tuple[CausalNetwork, OcnQuantification, dict[int, Sentence]]:
    """A random DAG with a pairwise-consistent quantification.

    Also returns the expected world-objection sentences computed here by
    direct chain-rule disjunction, as an assembly oracle.
    """
    node_names = [f"P{i + 1}" for i in range(node_count)]
    parents: dict[str, tuple[str, ...]] = {}
    for i, node in enumerate(node_names):
        pool = node_names[:i]
        count = rng.randrange(0, min(len(pool), 2) + 1)
        parents[node] = tuple(rng.sample(pool, count))
    domain = Vocabulary.of(node_names, tag="L")
    network = CausalNetwork(domain, parents)
    objection_atoms = [Atom(n, "O") for n in objection_names]

    table: dict[ParentInstantiation, tuple[Sentence, Sentence]] = {}
    for node in network.nodes:
        for instantiation in network.instantiations(node):
            table[instantiation] = random_consistent_pair(
                rng, objection_atoms, objection_names
            )
    quantification = OcnQuantification(Vocabulary.of(objection_names, tag="O"), table)

    expected: dict[int, Sentence] = {}
    for world in domain.worlds():
        parts = []
        for node in network.nodes:
            instantiation = network.instantiation_at(node, world)
            positive, negative = table[instantiation]
            parts.append(positive if world.value(network.atom(node)) else negative)
        disjunction: Sentence = parts[0]
        for part in parts[1:]:
            disjunction = Or(disjunction, part)
        expected[world.index] = disjunction
    return network, quantification, expected
