"""Propositional sentences with exact truth-table semantics.

Sentences are immutable ASTs over named atoms.  Every atom belongs to one of
two disjoint vocabularies: the domain language (tag ``L``) that causal
networks are built from, and the objection language (tag ``O``) that degrees
of support are written in.  All semantic operations (entailment, equivalence,
canonical forms) work by exhaustive enumeration of truth assignments, which
is exact and fast at the intended scale; vocabularies are capped at
``MAX_ATOMS`` atoms to keep that honest.

Internally a sentence's semantics over a vocabulary is a bitmask with one bit
per world, so entailment and equivalence are integer operations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import (
    EnumerationLimitError,
    FormulaSyntaxError,
    InputError,
    UnknownAtomError,
    VocabularyMismatchError,
)

DOMAIN = "L"
OBJECTION = "O"
TAGS = (DOMAIN, OBJECTION)

MAX_ATOMS = 20

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = ("true", "false")


class Sentence:
    """Base class for propositional formula nodes.

    Nodes are frozen dataclasses, so sentences are hashable values; the
    operators ``~``, ``&`` and ``|`` build negations, conjunctions and
    disjunctions.
    """

    __slots__ = ()

    def __invert__(self) -> "Sentence":
        return Not(self)

    def __and__(self, other: "Sentence") -> "Sentence":
        return And(self, other)

    def __or__(self, other: "Sentence") -> "Sentence":
        return Or(self, other)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Const(Sentence):
    value: bool


@dataclass(frozen=True, slots=True)
class Atom(Sentence):
    name: str
    tag: str = DOMAIN

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise InputError(f"invalid atom name {self.name!r}")
        if self.name in _RESERVED:
            raise InputError(f"atom name {self.name!r} is a reserved word")
        if self.tag not in TAGS:
            raise InputError(f"unknown vocabulary tag {self.tag!r}")


@dataclass(frozen=True, slots=True)
class Not(Sentence):
    operand: Sentence


@dataclass(frozen=True, slots=True)
class And(Sentence):
    left: Sentence
    right: Sentence


@dataclass(frozen=True, slots=True)
class Or(Sentence):
    left: Sentence
    right: Sentence


@dataclass(frozen=True, slots=True)
class Implies(Sentence):
    """Material implication; surface syntax ``=>``."""

    left: Sentence
    right: Sentence


TRUE = Const(True)
FALSE = Const(False)


def atoms_of(sentence: Sentence) -> frozenset[Atom]:
    """All atoms occurring in a sentence."""
    found: set[Atom] = set()
    stack = [sentence]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            found.add(node)
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or, Implies)):
            stack.append(node.left)
            stack.append(node.right)
    return frozenset(found)


def conjoin(parts: Iterable[Sentence]) -> Sentence:
    """Left-associated conjunction; the empty conjunction is ``true``."""
    out: Sentence | None = None
    for part in parts:
        out = part if out is None else And(out, part)
    return TRUE if out is None else out


def disjoin(parts: Iterable[Sentence]) -> Sentence:
    """Left-associated disjunction; the empty disjunction is ``false``."""
    out: Sentence | None = None
    for part in parts:
        out = part if out is None else Or(out, part)
    return FALSE if out is None else out


@dataclass(frozen=True, slots=True)
class Vocabulary:
    """An ordered atom list over one language tag.

    The order fixes world enumeration for good: world ``i`` assigns the
    first-listed atom the most significant bit of ``i``, so worlds run in
    counting order from all-false to all-true.
    """

    atoms: tuple[Atom, ...]

    def __post_init__(self):
        if len(self.atoms) > MAX_ATOMS:
            raise EnumerationLimitError(
                f"vocabulary of {len(self.atoms)} atoms exceeds the "
                f"{MAX_ATOMS}-atom enumeration limit"
            )
        tags = {atom.tag for atom in self.atoms}
        if len(tags) > 1:
            raise InputError("vocabulary mixes domain and objection atoms")
        names = [atom.name for atom in self.atoms]
        if len(set(names)) != len(names):
            dup = sorted(name for name in names if names.count(name) > 1)
            raise InputError(f"duplicate atom names: {', '.join(dup)}")

    @classmethod
    def of(cls, names: Iterable[str], tag: str = DOMAIN) -> "Vocabulary":
        return cls(tuple(Atom(name, tag) for name in names))

    @property
    def tag(self) -> str:
        return self.atoms[0].tag if self.atoms else DOMAIN

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(atom.name for atom in self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __contains__(self, atom: Atom) -> bool:
        return atom in self.atoms

    def index(self, atom: Atom) -> int:
        return self.atoms.index(atom)

    def atom(self, name: str) -> Atom:
        for candidate in self.atoms:
            if candidate.name == name:
                return candidate
        raise UnknownAtomError(name)

    @property
    def world_count(self) -> int:
        return 1 << len(self.atoms)

    def world(self, index: int) -> "World":
        if not 0 <= index < self.world_count:
            raise IndexError(f"world index {index} out of range")
        n = len(self.atoms)
        bits = tuple(bool((index >> (n - 1 - j)) & 1) for j in range(n))
        return World(self, bits)

    def worlds(self) -> Iterator["World"]:
        for index in range(self.world_count):
            yield self.world(index)


@dataclass(frozen=True, slots=True)
class World:
    """One complete truth assignment over a vocabulary."""

    vocabulary: Vocabulary
    bits: tuple[bool, ...]

    def __post_init__(self):
        if len(self.bits) != len(self.vocabulary):
            raise InputError("world bits do not match the vocabulary size")

    @property
    def index(self) -> int:
        out = 0
        for bit in self.bits:
            out = (out << 1) | int(bit)
        return out

    def value(self, atom: Atom) -> bool:
        try:
            return self.bits[self.vocabulary.index(atom)]
        except ValueError:
            raise VocabularyMismatchError(
                f"atom {atom.name!r} is not in this world's vocabulary"
            ) from None

    def sentence(self) -> Sentence:
        """The world as a conjunction of signed atoms, in vocabulary order."""
        return conjoin(
            atom if bit else Not(atom)
            for atom, bit in zip(self.vocabulary.atoms, self.bits)
        )

    def __str__(self) -> str:
        return render(self.sentence())


# ---------------------------------------------------------------------------
# Parsing and printing
#
# Grammar: atoms are identifiers; `!` not, `&` and, `|` or, `=>` implies;
# parentheses; literals `true`/`false`.  Precedence ! > & > | > =>, with
# `=>` right-associative.


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<implies>=>)|(?P<punct>[!&|()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            at = len(text) - len(rest)
            raise FormulaSyntaxError(f"unexpected character {rest[0]!r}", at + 1)
        if match.group("name"):
            tokens.append(("name", match.group("name"), match.start("name") + 1))
        elif match.group("implies"):
            tokens.append(("op", "=>", match.start("implies") + 1))
        else:
            tokens.append(("op", match.group("punct"), match.start("punct") + 1))
        pos = match.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, vocabulary: Vocabulary):
        self.tokens = _tokenize(text)
        self.vocabulary = vocabulary
        self.at = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.at]

    def take(self) -> tuple[str, str, int]:
        token = self.tokens[self.at]
        self.at += 1
        return token

    def expect_op(self, op: str) -> None:
        kind, value, pos = self.take()
        if kind != "op" or value != op:
            raise FormulaSyntaxError(f"expected {op!r}", pos)

    def parse(self) -> Sentence:
        sentence = self.implication()
        kind, value, pos = self.peek()
        if kind != "end":
            raise FormulaSyntaxError(f"unexpected {value!r}", pos)
        return sentence

    def implication(self) -> Sentence:
        left = self.disjunction()
        kind, value, _ = self.peek()
        if kind == "op" and value == "=>":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Sentence:
        out = self.conjunction()
        while self.peek()[:2] == ("op", "|"):
            self.take()
            out = Or(out, self.conjunction())
        return out

    def conjunction(self) -> Sentence:
        out = self.unary()
        while self.peek()[:2] == ("op", "&"):
            self.take()
            out = And(out, self.unary())
        return out

    def unary(self) -> Sentence:
        kind, value, _ = self.peek()
        if kind == "op" and value == "!":
            self.take()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Sentence:
        kind, value, pos = self.take()
        if kind == "op" and value == "(":
            inner = self.implication()
            self.expect_op(")")
            return inner
        if kind == "name":
            if value == "true":
                return TRUE
            if value == "false":
                return FALSE
            try:
                return self.vocabulary.atom(value)
            except UnknownAtomError:
                raise UnknownAtomError(value, pos) from None
        raise FormulaSyntaxError(
            f"expected an atom, constant or '(', got {value!r}" if value else "unexpected end of formula",
            pos,
        )


def parse_sentence(text: str, vocabulary: Vocabulary) -> Sentence:
    """Parse formula text against a vocabulary.

    Raises :class:`FormulaSyntaxError` with a 1-based position for malformed
    text and :class:`UnknownAtomError` for undeclared atoms.
    """
    return _Parser(text, vocabulary).parse()


_LEVEL_IMPLIES, _LEVEL_OR, _LEVEL_AND, _LEVEL_NOT = range(4)


def render(sentence: Sentence) -> str:
    """Print a sentence in the surface grammar with minimal parentheses."""

    def go(node: Sentence, level: int) -> str:
        if isinstance(node, Const):
            return "true" if node.value else "false"
        if isinstance(node, Atom):
            return node.name
        if isinstance(node, Not):
            return "!" + go(node.operand, _LEVEL_NOT)
        if isinstance(node, And):
            text = f"{go(node.left, _LEVEL_AND)} & {go(node.right, _LEVEL_AND + 1)}"
            return f"({text})" if level > _LEVEL_AND else text
        if isinstance(node, Or):
            text = f"{go(node.left, _LEVEL_OR)} | {go(node.right, _LEVEL_OR + 1)}"
            return f"({text})" if level > _LEVEL_OR else text
        if isinstance(node, Implies):
            text = f"{go(node.left, _LEVEL_IMPLIES + 1)} => {go(node.right, _LEVEL_IMPLIES)}"
            return f"({text})" if level > _LEVEL_IMPLIES else text
        raise TypeError(f"not a sentence: {node!r}")

    return go(sentence, _LEVEL_IMPLIES)


# ---------------------------------------------------------------------------
# Exact semantics


def evaluate(sentence: Sentence, world: World) -> bool:
    """Classical truth value of a sentence at one world."""
    if isinstance(sentence, Const):
        return sentence.value
    if isinstance(sentence, Atom):
        return world.value(sentence)
    if isinstance(sentence, Not):
        return not evaluate(sentence.operand, world)
    if isinstance(sentence, And):
        return evaluate(sentence.left, world) and evaluate(sentence.right, world)
    if isinstance(sentence, Or):
        return evaluate(sentence.left, world) or evaluate(sentence.right, world)
    if isinstance(sentence, Implies):
        return (not evaluate(sentence.left, world)) or evaluate(sentence.right, world)
    raise TypeError(f"not a sentence: {sentence!r}")


def _require_within(sentence: Sentence, vocabulary: Vocabulary) -> None:
    stray = [atom for atom in atoms_of(sentence) if atom not in vocabulary]
    if stray:
        names = ", ".join(sorted(atom.name for atom in stray))
        raise VocabularyMismatchError(f"atoms not in vocabulary: {names}")


@lru_cache(maxsize=None)
def _atom_mask(size: int, position: int) -> int:
    # Alternating runs of 2^k zeros then 2^k ones, where k counts positions
    # from the least significant (last-listed) atom.
    k = size - 1 - position
    run = 1 << k
    block = ((1 << run) - 1) << run
    period = run * 2
    repeats = (1 << size) // period
    return block * (((1 << (period * repeats)) - 1) // ((1 << period) - 1))


@lru_cache(maxsize=None)
def truth_table(sentence: Sentence, vocabulary: Vocabulary) -> int:
    """Bitmask of satisfying worlds; bit ``i`` is world ``i``."""
    _require_within(sentence, vocabulary)
    full = (1 << vocabulary.world_count) - 1

    def go(node: Sentence) -> int:
        if isinstance(node, Const):
            return full if node.value else 0
        if isinstance(node, Atom):
            return _atom_mask(len(vocabulary), vocabulary.index(node))
        if isinstance(node, Not):
            return full ^ go(node.operand)
        if isinstance(node, And):
            return go(node.left) & go(node.right)
        if isinstance(node, Or):
            return go(node.left) | go(node.right)
        if isinstance(node, Implies):
            return (full ^ go(node.left)) | go(node.right)
        raise TypeError(f"not a sentence: {node!r}")

    return go(sentence)


def models(sentence: Sentence, vocabulary: Vocabulary) -> list[World]:
    """All satisfying worlds over the vocabulary, in enumeration order."""
    mask = truth_table(sentence, vocabulary)
    return [
        vocabulary.world(index)
        for index in range(vocabulary.world_count)
        if (mask >> index) & 1
    ]


def _joint_vocabulary(a: Sentence, b: Sentence) -> Vocabulary:
    atoms = atoms_of(a) | atoms_of(b)
    tags = {atom.tag for atom in atoms}
    if len(tags) > 1:
        raise VocabularyMismatchError(
            "cannot compare sentences across the domain and objection languages"
        )
    if len(atoms) > MAX_ATOMS:
        raise EnumerationLimitError(
            f"{len(atoms)} combined atoms exceed the {MAX_ATOMS}-atom limit"
        )
    return Vocabulary(tuple(sorted(atoms, key=lambda atom: atom.name)))


def entails(a: Sentence, b: Sentence) -> bool:
    """Whether every assignment satisfying ``a`` satisfies ``b``."""
    vocabulary = _joint_vocabulary(a, b)
    return truth_table(a, vocabulary) & ~truth_table(b, vocabulary) == 0


def equivalent(a: Sentence, b: Sentence) -> bool:
    """Whether ``a`` and ``b`` have the same truth table."""
    vocabulary = _joint_vocabulary(a, b)
    return truth_table(a, vocabulary) == truth_table(b, vocabulary)


def is_tautology(sentence: Sentence, vocabulary: Vocabulary | None = None) -> bool:
    if vocabulary is None:
        return equivalent(sentence, TRUE)
    full = (1 << vocabulary.world_count) - 1
    return truth_table(sentence, vocabulary) == full


def is_contradiction(sentence: Sentence, vocabulary: Vocabulary | None = None) -> bool:
    if vocabulary is None:
        return equivalent(sentence, FALSE)
    return truth_table(sentence, vocabulary) == 0


def from_truth_table(mask: int, vocabulary: Vocabulary) -> Sentence:
    """The sorted-minterm disjunctive normal form of a truth-table mask."""
    full = (1 << vocabulary.world_count) - 1
    if mask == 0:
        return FALSE
    if mask == full:
        return TRUE
    minterms = [
        vocabulary.world(index).sentence()
        for index in range(vocabulary.world_count)
        if (mask >> index) & 1
    ]
    return disjoin(minterms)


def canonical_form(sentence: Sentence, vocabulary: Vocabulary) -> Sentence:
    """A unique representative of the sentence's equivalence class.

    Full-vocabulary sorted-minterm DNF; ``true``/``false`` for valid and
    unsatisfiable input.  Canonical forms are for deterministic output only;
    comparisons should always go through :func:`equivalent`.
    """
    return from_truth_table(truth_table(sentence, vocabulary), vocabulary)


def assignment_description(vocabulary: Vocabulary, index: int) -> str:
    """Human-readable description of one truth assignment, for diagnostics."""
    world = vocabulary.world(index)
    return render(world.sentence())
