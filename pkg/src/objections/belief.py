"""Objection-based states of belief and the calculus over them.

A state of belief maps every sentence of the domain language to an objection:
a sentence of the objection language describing the conditions under which
the state lacks complete confidence in the queried sentence.  A tautologous
objection means the sentence is rejected outright; a contradictory objection
means there is no objection at all.

The canonical representation is a world table: one objection per complete
truth assignment of the domain vocabulary.  The objection to an arbitrary
sentence is the conjunction of the objections to its satisfying worlds, which
makes the disjunction rule (the objection to ``A | B`` is the conjunction of
the objections to ``A`` and to ``B``) and invariance under logical
equivalence structural rather than checked.  The one condition that remains
to verify is that the tautology's objection is contradictory; constructors
enforce it and report a satisfying objection-language assignment when it
fails.

Objections to contradictions follow the empty-conjunction convention: the
objection to ``false`` is ``true``, so contradictions are always rejected.
Everywhere in this module equality of objections means logical equivalence,
never syntactic identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from . import logic
from .errors import (
    ConsistencyViolation,
    ContradictoryAssessment,
    InputError,
    RejectedCondition,
    RejectedEvidence,
    VocabularyMismatchError,
    WorldTableError,
)
from .logic import (
    And,
    Not,
    Or,
    Sentence,
    Vocabulary,
    World,
    atoms_of,
    from_truth_table,
    render,
    truth_table,
)


@dataclass(frozen=True)
class EntailmentCheck:
    """One recorded entailment between two objection sentences."""

    premise: Sentence
    conclusion: Sentence
    holds: bool


@dataclass(frozen=True)
class OrderingVerdict:
    """Outcome of an ordering comparison, with its witnessing checks.

    The verdict is reproducible: it holds exactly when every recorded
    entailment check holds.
    """

    holds: bool
    checks: tuple[EntailmentCheck, ...]

    @property
    def relation(self) -> str:
        return "holds" if self.holds else "fails"


def _check(premise: Sentence, conclusion: Sentence) -> EntailmentCheck:
    return EntailmentCheck(premise, conclusion, logic.entails(premise, conclusion))


@dataclass(frozen=True)
class ObjectionState:
    """A state of belief stored as objections per domain world.

    ``objection_masks[i]`` is the truth table (over the objection vocabulary)
    of the objection to domain world ``i``.  Use :meth:`from_world_table` to
    build a state from sentences; direct construction is for callers that
    already hold masks.
    """

    domain_vocabulary: Vocabulary
    objection_vocabulary: Vocabulary
    objection_masks: tuple[int, ...]

    def __post_init__(self):
        if self.domain_vocabulary.atoms and self.domain_vocabulary.tag != logic.DOMAIN:
            raise InputError("state requires a domain-language vocabulary")
        if self.objection_vocabulary.atoms and self.objection_vocabulary.tag != logic.OBJECTION:
            raise InputError("state requires an objection-language vocabulary")
        overlap = set(self.domain_vocabulary.names) & set(self.objection_vocabulary.names)
        if overlap:
            raise InputError(
                f"domain and objection vocabularies share names: {', '.join(sorted(overlap))}"
            )
        expected = self.domain_vocabulary.world_count
        if len(self.objection_masks) != expected:
            raise WorldTableError(
                f"world table has {len(self.objection_masks)} rows, expected {expected}"
            )
        full = self._full
        for mask in self.objection_masks:
            if not 0 <= mask <= full:
                raise InputError("objection mask out of range for the vocabulary")
        conjunction = full
        for mask in self.objection_masks:
            conjunction &= mask
        if conjunction != 0:
            witness = (conjunction & -conjunction).bit_length() - 1
            raise ConsistencyViolation(
                "the tautology's objection is satisfiable, not contradictory; "
                f"satisfying assignment: {logic.assignment_description(self.objection_vocabulary, witness)}",
                witness=self.objection_vocabulary.world(witness),
            )

    # -- construction -------------------------------------------------

    @classmethod
    def from_world_table(
        cls,
        entries: Mapping[World, Sentence],
        objection_vocabulary: Vocabulary | None = None,
    ) -> "ObjectionState":
        """Build a state from a complete world-to-objection mapping.

        The objection vocabulary is inferred from the entries (atoms sorted
        by name) unless given explicitly.
        """
        if not entries:
            raise WorldTableError("empty world table")
        domains = {world.vocabulary for world in entries}
        if len(domains) != 1:
            raise WorldTableError("world table mixes vocabularies")
        domain = next(iter(domains))
        if objection_vocabulary is None:
            atoms = set()
            for sentence in entries.values():
                atoms |= atoms_of(sentence)
            bad = sorted(a.name for a in atoms if a.tag != logic.OBJECTION)
            if bad:
                raise VocabularyMismatchError(
                    f"objection entries use non-objection atoms: {', '.join(bad)}"
                )
            objection_vocabulary = Vocabulary(tuple(sorted(atoms, key=lambda a: a.name)))

        seen: dict[int, Sentence] = {}
        for world, sentence in entries.items():
            if world.index in seen:
                raise WorldTableError(f"duplicate world: {world}")
            seen[world.index] = sentence
        missing = [i for i in range(domain.world_count) if i not in seen]
        if missing:
            shown = ", ".join(str(domain.world(i)) for i in missing[:4])
            raise WorldTableError(f"missing worlds: {shown}")

        masks = tuple(
            truth_table(seen[i], objection_vocabulary) for i in range(domain.world_count)
        )
        return cls(domain, objection_vocabulary, masks)

    # -- internals ----------------------------------------------------

    @property
    def _full(self) -> int:
        return (1 << self.objection_vocabulary.world_count) - 1

    def _domain_mask(self, sentence: Sentence) -> int:
        return truth_table(sentence, self.domain_vocabulary)

    def _objection_mask(self, sentence: Sentence) -> int:
        """Truth table of the objection to ``sentence``.

        Conjunction over satisfying worlds; the empty conjunction (an
        unsatisfiable sentence) is tautologous.
        """
        worlds = self._domain_mask(sentence)
        out = self._full
        index = 0
        while worlds:
            if worlds & 1:
                out &= self.objection_masks[index]
            worlds >>= 1
            index += 1
        return out

    def _as_sentence(self, mask: int) -> Sentence:
        return from_truth_table(mask, self.objection_vocabulary)

    # -- the calculus ---------------------------------------------------

    def objection_of(self, sentence: Sentence) -> Sentence:
        """The objection to a domain sentence, in canonical form."""
        return self._as_sentence(self._objection_mask(sentence))

    def rejects(self, sentence: Sentence) -> bool:
        """Whether the objection to the sentence is tautologous."""
        return self._objection_mask(sentence) == self._full

    def accepts(self, sentence: Sentence) -> bool:
        """Whether the state rejects the sentence's negation."""
        return self.rejects(Not(sentence))

    def objects_under(self, sentence: Sentence, premise: Sentence) -> bool:
        """Whether ``premise`` entails the objection to ``sentence``."""
        premise_mask = truth_table(premise, self.objection_vocabulary)
        return premise_mask & ~self._objection_mask(sentence) == 0

    def admits_under(self, sentence: Sentence, premise: Sentence) -> bool:
        """Whether ``premise`` entails the negated objection to ``sentence``."""
        premise_mask = truth_table(premise, self.objection_vocabulary)
        return premise_mask & self._objection_mask(sentence) == 0

    def conditionalize(self, evidence: Sentence) -> "ObjectionState":
        """The state after observing non-rejected evidence.

        Per world: the new objection is tautologous for worlds that falsify
        the evidence (their conjunction with the evidence is contradictory,
        hence rejected), and otherwise the old objection conjoined with the
        negation of the evidence's objection, with a tautology escape branch
        for worlds that were already rejected.
        """
        phi_evidence = self._objection_mask(evidence)
        full = self._full
        if phi_evidence == full:
            raise RejectedEvidence(
                f"evidence {render(evidence)!r} is rejected by the state"
            )
        keep = full ^ phi_evidence
        evidence_worlds = self._domain_mask(evidence)
        masks = []
        for index, mask in enumerate(self.objection_masks):
            if not (evidence_worlds >> index) & 1 or mask == full:
                masks.append(full)
            else:
                masks.append(mask & keep)
        return ObjectionState(
            self.domain_vocabulary, self.objection_vocabulary, tuple(masks)
        )

    def conditional_objection(self, evidence: Sentence, sentence: Sentence) -> Sentence:
        """The objection to ``sentence`` after observing ``evidence``.

        Sentence-level form of conditionalization: tautologous when the
        objection to evidence-and-sentence is tautologous, otherwise that
        objection conjoined with the negation of the evidence's objection.
        Agrees with ``conditionalize(evidence).objection_of(sentence)``.
        """
        phi_evidence = self._objection_mask(evidence)
        full = self._full
        if phi_evidence == full:
            raise RejectedEvidence(
                f"evidence {render(evidence)!r} is rejected by the state"
            )
        both = self._objection_mask(And(evidence, sentence))
        if both == full:
            return self._as_sentence(full)
        return self._as_sentence(both & (full ^ phi_evidence))

    def ignorance(self, sentence: Sentence) -> Sentence:
        """How ignorant the state is about a sentence.

        The conjunction of the negated objections to the sentence and to its
        negation: tautologous means maximal ignorance, contradictory means
        minimal.  Symmetric in the sentence and its negation.
        """
        full = self._full
        positive = self._objection_mask(sentence)
        negative = self._objection_mask(Not(sentence))
        return self._as_sentence((full ^ positive) & (full ^ negative))

    def no_more_objectionable(self, a: Sentence, b: Sentence) -> OrderingVerdict:
        """Whether the objection to ``a`` entails the objection to ``b``."""
        check = _check(self.objection_of(a), self.objection_of(b))
        return OrderingVerdict(check.holds, (check,))

    def no_more_believed(self, a: Sentence, b: Sentence) -> OrderingVerdict:
        """Whether ``a`` is believed no more strongly than ``b``.

        Two conditions, neither redundant: ``b`` is no more objectionable
        than ``a``, and the negation of ``a`` is no more objectionable than
        the negation of ``b``.
        """
        first = _check(self.objection_of(b), self.objection_of(a))
        second = _check(self.objection_of(Not(a)), self.objection_of(Not(b)))
        return OrderingVerdict(first.holds and second.holds, (first, second))

    def no_more_ignorant(self, a: Sentence, b: Sentence) -> OrderingVerdict:
        """Whether ignorance about ``a`` entails ignorance about ``b``."""
        check = _check(self.ignorance(a), self.ignorance(b))
        return OrderingVerdict(check.holds, (check,))

    # -- inspection -----------------------------------------------------

    def worlds(self) -> Iterator[World]:
        return self.domain_vocabulary.worlds()

    def objection_at(self, world: World) -> Sentence:
        """Canonical objection to one world."""
        if world.vocabulary != self.domain_vocabulary:
            raise VocabularyMismatchError("world is not over this state's vocabulary")
        return self._as_sentence(self.objection_masks[world.index])

    def table(self) -> dict[World, Sentence]:
        """The world table with canonical objection sentences."""
        return {world: self.objection_at(world) for world in self.worlds()}


def state_from_world_table(
    entries: Mapping[World, Sentence],
    objection_vocabulary: Vocabulary | None = None,
) -> ObjectionState:
    """Build and validate a state of belief from a world table."""
    return ObjectionState.from_world_table(entries, objection_vocabulary)


def product(condition_objection: Sentence, conditional_objection: Sentence) -> Sentence:
    """Recover the objection to a conjunction from conditional assessments.

    Given the objection to a condition and the conditional objection to a
    second sentence under that condition, their disjunction is the objection
    to the conjunction of the two sentences.  The rule only applies when the
    condition is not rejected, and when the conditional objection is either
    tautologous or consistent with the condition's objection being false;
    otherwise the two assessments cannot describe one state of belief.
    """
    if logic.is_tautology(condition_objection):
        raise RejectedCondition("the condition is rejected (tautologous objection)")
    if not logic.is_tautology(conditional_objection) and not logic.is_contradiction(
        And(conditional_objection, condition_objection)
    ):
        raise ContradictoryAssessment(
            f"conditional objection {render(conditional_objection)!r} does not rule "
            f"out the condition's objection {render(condition_objection)!r}"
        )
    return Or(conditional_objection, condition_objection)


def normalize_conditional(
    conditional_objection: Sentence, condition_objection: Sentence
) -> Sentence:
    """Repair an elicited conditional objection so the product rule applies.

    A non-tautologous conditional objection is reinterpreted as itself
    conjoined with the negation of the condition's objection.  Tautologous
    input is returned unchanged: rejection under the condition needs no
    repair.
    """
    if logic.is_tautology(conditional_objection):
        return conditional_objection
    return And(conditional_objection, Not(condition_objection))
