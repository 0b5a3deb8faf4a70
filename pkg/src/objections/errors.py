"""Exception hierarchy shared across the package.

Two branches matter to callers: ``InputError`` covers malformed input
(syntax, unknown atoms, size limits, bad files) and ``DomainError`` covers
semantically invalid operations on well-formed input (rejected evidence,
inconsistent tables, zero-probability conditioning).  The CLI maps them to
exit codes 2 and 1 respectively.
"""

from __future__ import annotations


class ObjectionError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ObjectionError):
    """Malformed input: syntax, vocabulary, limits, file format."""


class DomainError(ObjectionError):
    """Well-formed input that is semantically invalid for the operation."""


class FormulaSyntaxError(InputError):
    """Formula text that does not parse; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownAtomError(InputError):
    """Formula mentions an atom that the vocabulary does not declare."""

    def __init__(self, name: str, position: int | None = None):
        where = f" (at position {position})" if position is not None else ""
        super().__init__(f"unknown atom {name!r}{where}")
        self.name = name
        self.position = position


class VocabularyMismatchError(InputError):
    """Sentence atoms fall outside the vocabulary an operation expects."""


class EnumerationLimitError(InputError):
    """An exact-enumeration operation would exceed the atom limit."""


class NetworkFormatError(InputError):
    """A network or state file that violates the file format."""

    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
        self.line = line


class WorldTableError(DomainError):
    """World table with missing or duplicate world rows."""


class ConsistencyViolation(DomainError):
    """State of belief whose objections fail a consistency condition.

    The tautology must carry a contradictory objection; when it does not, the
    satisfying objection-language assignment is kept as a counterexample.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class RejectedEvidence(DomainError):
    """Conditionalization on a sentence the state rejects."""


class RejectedCondition(DomainError):
    """Product rule applied with a tautologous objection to the condition."""


class ContradictoryAssessment(DomainError):
    """Conditional objection that contradicts the condition's objection.

    A non-tautologous conditional objection must rule out every situation in
    which the condition itself is objected to; otherwise the two assessments
    cannot come from one state of belief.
    """


class ZeroProbabilityEvidence(DomainError):
    """Probabilistic conditioning on evidence with probability zero."""


class InvalidQuantification(DomainError):
    """Network quantification unusable for assembly or probability queries."""
