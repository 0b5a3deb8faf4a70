import pytest
from hypothesis import given, settings, strategies as st

from objections import logic
from objections.errors import (
    EnumerationLimitError,
    FormulaSyntaxError,
    UnknownAtomError,
    VocabularyMismatchError,
)
from objections.logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    Implies,
    Not,
    Or,
    Vocabulary,
    canonical_form,
    entails,
    equivalent,
    evaluate,
    models,
    parse_sentence,
    render,
)

from helpers import brute_entails, brute_equivalent, sat_set

O_VOCAB = Vocabulary.of(["O1", "O2", "O3", "O4", "O5"], tag="O")
L_VOCAB = Vocabulary.of(["P1", "P2", "P3", "P4", "P5"], tag="L")


def o(name):
    return O_VOCAB.atom(name)


class TestParsing:
    def test_disjunction_shape(self):
        sentence = parse_sentence("O4 | O3 | O1", O_VOCAB)
        assert sentence == Or(Or(o("O4"), o("O3")), o("O1"))

    def test_constants(self):
        assert parse_sentence("true", O_VOCAB) == TRUE
        assert parse_sentence("false", O_VOCAB) == FALSE

    def test_unknown_atom(self):
        with pytest.raises(UnknownAtomError) as err:
            parse_sentence("P1 & (P9)", L_VOCAB)
        assert err.value.name == "P9"

    def test_syntax_error_has_position(self):
        with pytest.raises(FormulaSyntaxError) as err:
            parse_sentence("P1 & & P2", L_VOCAB)
        assert err.value.position == 6

    def test_trailing_garbage(self):
        with pytest.raises(FormulaSyntaxError):
            parse_sentence("P1 )", L_VOCAB)
        with pytest.raises(FormulaSyntaxError):
            parse_sentence("", L_VOCAB)
        with pytest.raises(FormulaSyntaxError):
            parse_sentence("P1 ~ P2", L_VOCAB)

    def test_precedence(self):
        sentence = parse_sentence("!P1 & P2 | P3 => P4", L_VOCAB)
        assert sentence == Implies(
            Or(And(Not(L_VOCAB.atom("P1")), L_VOCAB.atom("P2")), L_VOCAB.atom("P3")),
            L_VOCAB.atom("P4"),
        )

    def test_implies_right_associative(self):
        sentence = parse_sentence("P1 => P2 => P3", L_VOCAB)
        assert sentence == Implies(
            L_VOCAB.atom("P1"), Implies(L_VOCAB.atom("P2"), L_VOCAB.atom("P3"))
        )

    def test_parentheses(self):
        grouped = parse_sentence("(P1 | P2) & P3", L_VOCAB)
        flat = parse_sentence("P1 | P2 & P3", L_VOCAB)
        assert not equivalent(grouped, flat)


class TestEvaluate:
    def test_implication_truth_table(self):
        vocab = Vocabulary.of(["bird", "fly"], tag="L")
        sentence = Implies(vocab.atom("bird"), vocab.atom("fly"))
        world = vocab.world(0b10)
        assert world.value(vocab.atom("bird")) is True
        assert evaluate(sentence, world) is False

    def test_false_everywhere(self):
        for world in L_VOCAB.worlds():
            assert evaluate(FALSE, world) is False

    def test_negative_conjunction_entry(self):
        sentence = And(Not(o("O1")), Not(o("O5")))
        all_false = O_VOCAB.world(0)
        assert evaluate(sentence, all_false) is True

    def test_vocabulary_mismatch(self):
        stray = Atom("Q9", "L")
        with pytest.raises(VocabularyMismatchError):
            evaluate(stray, L_VOCAB.world(0))


class TestModels:
    def test_tautology_has_all_worlds(self):
        vocab = Vocabulary.of(["a", "b"], tag="L")
        assert len(models(TRUE, vocab)) == 4

    def test_contradiction_has_none(self):
        assert models(FALSE, L_VOCAB) == []

    def test_minterm_has_one(self):
        vocab = Vocabulary.of(["P1", "P2"], tag="L")
        sentence = And(vocab.atom("P1"), Not(vocab.atom("P2")))
        found = models(sentence, vocab)
        assert len(found) == 1
        assert found[0].bits == (True, False)

    def test_enumeration_order(self):
        vocab = Vocabulary.of(["a", "b"], tag="L")
        assert [w.bits for w in models(TRUE, vocab)] == [
            (False, False),
            (False, True),
            (True, False),
            (True, True),
        ]


class TestEntailment:
    def test_false_entails_false(self):
        assert entails(FALSE, FALSE)

    def test_false_entails_anything(self):
        normal = Atom("normal", "O")
        assert entails(FALSE, Not(normal))

    def test_strictness_witness(self):
        normal = Atom("normal", "O")
        assert not entails(Not(normal), FALSE)

    def test_equivalences(self):
        a, b = Atom("a", "L"), Atom("b", "L")
        assert equivalent(Implies(a, b), Or(Not(a), b))
        assert equivalent(And(o("O1"), Not(o("O1"))), FALSE)
        normal = Atom("normal", "O")
        assert equivalent(And(Not(normal), normal), FALSE)

    def test_cross_language_comparison_rejected(self):
        with pytest.raises(VocabularyMismatchError):
            entails(Atom("a", "L"), Atom("x", "O"))


class TestCanonicalForm:
    def test_de_morgan(self):
        vocab = Vocabulary.of(["O1", "O2"], tag="O")
        sentence = Not(Or(vocab.atom("O1"), vocab.atom("O2")))
        canonical = canonical_form(sentence, vocab)
        assert canonical == And(Not(vocab.atom("O1")), Not(vocab.atom("O2")))

    def test_tautology_collapses(self):
        a = Atom("a", "L")
        vocab = Vocabulary.of(["a"], tag="L")
        assert canonical_form(Or(a, Not(a)), vocab) == TRUE
        assert canonical_form(And(a, Not(a)), vocab) == FALSE

    def test_unique_per_equivalence_class(self):
        vocab = Vocabulary.of(["a", "b"], tag="L")
        a, b = vocab.atom("a"), vocab.atom("b")
        left = canonical_form(Implies(a, b), vocab)
        right = canonical_form(Or(Not(a), b), vocab)
        assert left == right


class TestLimits:
    def test_vocabulary_cap(self):
        with pytest.raises(EnumerationLimitError):
            Vocabulary.of([f"A{i}" for i in range(21)], tag="L")

    def test_vocabulary_at_cap_is_fine(self):
        vocab = Vocabulary.of([f"A{i}" for i in range(20)], tag="L")
        assert vocab.world_count == 1 << 20

    def test_duplicate_names_rejected(self):
        with pytest.raises(Exception):
            Vocabulary.of(["a", "a"], tag="L")


ATOMS = [Atom(name, "L") for name in ("a", "b", "c", "d", "e", "f")]
NAMES = tuple(atom.name for atom in ATOMS)


def sentences(max_leaves=10):
    leaves = st.sampled_from(ATOMS + [TRUE, FALSE])
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            st.builds(Not, kids),
            st.builds(And, kids, kids),
            st.builds(Or, kids, kids),
            st.builds(Implies, kids, kids),
        ),
        max_leaves=max_leaves,
    )


class TestProperties:
    @settings(max_examples=150, deadline=None)
    @given(sentences())
    def test_truth_table_matches_direct_evaluation(self, sentence):
        vocab = Vocabulary(tuple(ATOMS))
        mask = logic.truth_table(sentence, vocab)
        expected = sat_set(sentence, NAMES)
        assert {i for i in range(vocab.world_count) if (mask >> i) & 1} == set(expected)

    @settings(max_examples=100, deadline=None)
    @given(sentences(), sentences())
    def test_entails_matches_brute_force(self, a, b):
        assert entails(a, b) == brute_entails(a, b, NAMES)

    @settings(max_examples=100, deadline=None)
    @given(sentences())
    def test_entails_reflexive(self, a):
        assert entails(a, a)

    @settings(max_examples=80, deadline=None)
    @given(sentences(6), sentences(6), sentences(6))
    def test_entails_transitive(self, a, b, c):
        if entails(a, b) and entails(b, c):
            assert entails(a, c)

    @settings(max_examples=100, deadline=None)
    @given(sentences(), sentences())
    def test_equivalent_is_mutual_entailment(self, a, b):
        assert equivalent(a, b) == (entails(a, b) and entails(b, a))

    @settings(max_examples=100, deadline=None)
    @given(sentences())
    def test_canonical_form_is_equivalent(self, sentence):
        vocab = Vocabulary(tuple(ATOMS))
        canonical = canonical_form(sentence, vocab)
        assert brute_equivalent(canonical, sentence, NAMES)
        for world in list(vocab.worlds())[:: max(1, vocab.world_count // 8)]:
            assert evaluate(canonical, world) == evaluate(sentence, world)

    @settings(max_examples=150, deadline=None)
    @given(sentences())
    def test_render_round_trip(self, sentence):
        vocab = Vocabulary(tuple(ATOMS))
        again = parse_sentence(render(sentence), vocab)
        assert equivalent(again, sentence)
        assert render(again) == render(sentence)
