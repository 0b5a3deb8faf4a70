"""Objection calculus, objection-based causal networks, and a probabilistic mirror.

States of belief map domain sentences to objections (sentences of a second,
disjoint language); causal networks quantify a DAG with per-node conditional
objections and assemble into full states.  The same DAG quantified with
probabilities gives the probabilistic mirror for side-by-side comparison.
"""

from . import belief, logic, netfile, network, pcn
from .belief import (
    EntailmentCheck,
    ObjectionState,
    OrderingVerdict,
    normalize_conditional,
    product,
    state_from_world_table,
)
from .errors import (
    ConsistencyViolation,
    ContradictoryAssessment,
    DomainError,
    EnumerationLimitError,
    FormulaSyntaxError,
    InputError,
    InvalidQuantification,
    NetworkFormatError,
    ObjectionError,
    RejectedCondition,
    RejectedEvidence,
    UnknownAtomError,
    VocabularyMismatchError,
    WorldTableError,
    ZeroProbabilityEvidence,
)
from .logic import (
    Atom,
    Const,
    FALSE,
    Implies,
    Not,
    And,
    Or,
    Sentence,
    TRUE,
    Vocabulary,
    World,
    canonical_form,
    entails,
    equivalent,
    evaluate,
    models,
    parse_sentence,
    render,
)
from .netfile import (
    NetworkDocument,
    StateDocument,
    bundled_path,
    dump_state,
    load_path,
    loads,
)
from .network import (
    CausalNetwork,
    MarkovReport,
    OcnQuantification,
    ParentInstantiation,
    ValidationReport,
    apply_remedy,
    assemble_state,
    explain,
    markov_check,
    query,
    remedy_report,
    validate_ocn,
)
from .pcn import (
    ComparisonRecord,
    JointDistribution,
    PcnQuantification,
    assemble_joint,
    compare,
    factor_trace,
    prob_query,
    validate_pcn,
)

__version__ = "0.1.0"
