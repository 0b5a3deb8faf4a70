import random

import pytest

from objections.errors import (
    InputError,
    InvalidQuantification,
    RejectedEvidence,
)
from objections.logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    Not,
    Or,
    Vocabulary,
    equivalent,
    parse_sentence,
    render,
)
from objections.network import (
    CausalNetwork,
    OcnQuantification,
    apply_remedy,
    assemble_state,
    explain,
    markov_check,
    query,
    remedy_report,
    validate_ocn,
)

from helpers import brute_equivalent, random_network, sat_set

O_NAMES = ("O1", "O2", "O3", "O4", "O5")


def parse_o(doc, text):
    return parse_sentence(text, doc.objection_vocabulary)


def parse_l(doc, text):
    return parse_sentence(text, doc.network.vocabulary)


def verbatim_variant(doc):
    """The grass quantification with the disjunctive against-P4 entry."""
    vocabulary = doc.objection_vocabulary
    target = None
    for instantiation in doc.network.instantiations("P4"):
        if instantiation.signs and instantiation.signs[0][1]:
            target = instantiation
    positive, _ = doc.objections.entries[target]
    replaced = doc.objections.replace(
        {target: (positive, parse_sentence("!O3 | !O5", vocabulary))}
    )
    return replaced, target


class TestStructure:
    def test_grass_shape(self, grass_doc):
        net = grass_doc.network
        assert net.nodes == ("P1", "P2", "P3", "P4", "P5")
        assert net.parents["P3"] == ("P1", "P2")
        assert net.parents["P5"] == ("P3",)
        assert net.descendants("P3") == {"P4", "P5"}
        assert net.non_descendants("P5") == ("P1", "P2", "P3", "P4")
        assert net.non_descendants("P1") == ("P2",)

    def test_cycle_detection(self):
        vocab = Vocabulary.of(["a", "b"], tag="L")
        with pytest.raises(InputError):
            CausalNetwork(vocab, {"a": ("b",), "b": ("a",)})

    def test_unknown_parent(self):
        vocab = Vocabulary.of(["a"], tag="L")
        with pytest.raises(InputError):
            CausalNetwork(vocab, {"a": ("zzz",)})

    def test_node_limit(self):
        names = [f"N{i}" for i in range(17)]
        with pytest.raises(Exception):
            CausalNetwork(Vocabulary.of(names, tag="L"), {})

    def test_instantiation_enumeration(self, grass_doc):
        net = grass_doc.network
        instantiations = list(net.instantiations("P3"))
        assert len(instantiations) == 4
        assert [str(i) for i in instantiations] == [
            "!P1 & !P2",
            "!P1 & P2",
            "P1 & !P2",
            "P1 & P2",
        ]
        roots = list(net.instantiations("P1"))
        assert len(roots) == 1 and str(roots[0]) == "-"


class TestValidation:
    def test_grass_table_is_clean(self, grass_doc):
        report = validate_ocn(grass_doc.network, grass_doc.objections)
        assert report.ok
        assert report.checked_pairs == 10

    def test_disjunctive_variant_is_flagged_with_witness(self, grass_doc):
        replaced, target = verbatim_variant(grass_doc)
        report = validate_ocn(grass_doc.network, replaced)
        assert not report.ok
        issue = report.issues[0]
        assert issue.kind == "inconsistent-pair"
        assert issue.node == "P4"
        assert issue.witness is not None
        # The witness really does satisfy both entries at once.
        assignment_sentence = parse_o(grass_doc, issue.witness)
        positive, negative = replaced.entries[target]
        names = grass_doc.objection_vocabulary.names
        witness_models = sat_set(assignment_sentence, names)
        assert len(witness_models) == 1
        both = sat_set(And(positive, negative), names)
        assert witness_models <= both

    def test_missing_row_reported(self, grass_doc):
        entries = dict(grass_doc.objections.entries)
        removed = next(iter(grass_doc.network.instantiations("P5")))
        del entries[removed]
        partial = OcnQuantification(grass_doc.objection_vocabulary, entries)
        report = validate_ocn(grass_doc.network, partial)
        assert any(issue.kind == "missing-row" for issue in report.issues)

    def test_extra_row_reported(self, grass_doc):
        from objections.network import ParentInstantiation

        bogus = ParentInstantiation("P1", ((grass_doc.network.atom("P2"), True),))
        extra = grass_doc.objections.replace({bogus: (FALSE, FALSE)})
        report = validate_ocn(grass_doc.network, extra)
        assert any(issue.kind == "extra-row" for issue in report.issues)

    def test_prior_false_pair_is_consistent(self, grass_doc):
        report = validate_ocn(grass_doc.network, grass_doc.objections)
        assert not any(issue.node in ("P1", "P2") for issue in report.issues)


class TestAssembly:
    def test_worked_example_world(self, grass_doc):
        state = assemble_state(grass_doc.network, grass_doc.objections)
        world_sentence = parse_l(grass_doc, "P1 & !P2 & P3 & P4 & P5")
        objection = state.objection_of(world_sentence)
        assert equivalent(objection, parse_o(grass_doc, "O4 | O3 | O1"))

    def test_all_negative_world_draws_no_objection(self, grass_doc):
        state = assemble_state(grass_doc.network, grass_doc.objections)
        world_sentence = parse_l(grass_doc, "!P1 & !P2 & !P3 & !P4 & !P5")
        assert equivalent(state.objection_of(world_sentence), FALSE)

    def test_spontaneously_wet_grass_is_rejected(self, grass_doc):
        state = assemble_state(grass_doc.network, grass_doc.objections)
        for suffix in ("P4 & P5", "P4 & !P5", "!P4 & P5", "!P4 & !P5"):
            sentence = parse_l(grass_doc, f"!P1 & !P2 & P3 & {suffix}")
            assert state.rejects(sentence)

    def test_condition_one_holds(self, grass_doc):
        state = assemble_state(grass_doc.network, grass_doc.objections)
        assert equivalent(state.objection_of(TRUE), FALSE)

    def test_inconsistent_quantification_refused(self, grass_doc):
        replaced, _ = verbatim_variant(grass_doc)
        with pytest.raises(InvalidQuantification):
            assemble_state(grass_doc.network, replaced)

    def test_node_order_does_not_matter(self, grass_doc):
        # Same DAG with the declaration order reversed: per-assignment
        # objections must agree even though world indexing differs.
        reversed_names = tuple(reversed(grass_doc.network.nodes))
        vocab = Vocabulary.of(reversed_names, tag="L")
        net = CausalNetwork(vocab, dict(grass_doc.network.parents))
        remap = {}
        for instantiation, pair in grass_doc.objections.entries.items():
            from objections.network import ParentInstantiation

            remap[
                ParentInstantiation(
                    instantiation.node,
                    tuple((vocab.atom(a.name), s) for a, s in instantiation.signs),
                )
            ] = pair
        quant = OcnQuantification(grass_doc.objection_vocabulary, remap)
        state_a = assemble_state(grass_doc.network, grass_doc.objections)
        state_b = assemble_state(net, quant)
        for world in state_a.worlds():
            mirrored = {atom.name: world.value(atom) for atom in world.vocabulary.atoms}
            bits = tuple(mirrored[name] for name in reversed_names)
            from objections.logic import World

            twin = World(vocab, bits)
            assert equivalent(state_a.objection_at(world), state_b.objection_at(twin))

    def test_assembly_matches_brute_force_oracle(self):
        rng = random.Random(99)
        for _ in range(10):
            net, quant, expected = random_network(rng, 4, O_NAMES[:3])
            state = assemble_state(net, quant)
            for world in net.vocabulary.worlds():
                assert brute_equivalent(
                    state.objection_at(world), expected[world.index], O_NAMES[:3]
                )


class TestQuery:
    def test_worked_example(self, grass_doc):
        result = query(
            grass_doc.network,
            grass_doc.objections,
            parse_l(grass_doc, "P5 & P4 & P3 & !P2 & P1"),
        )
        assert equivalent(result, parse_o(grass_doc, "O4 | O3 | O1"))

    def test_tautology(self, grass_doc):
        assert equivalent(
            query(grass_doc.network, grass_doc.objections, TRUE), FALSE
        )

    def test_wet_shoes_given_wet_grass(self, grass_doc):
        # Conditionalization subtracts the evidence's own objection, so the
        # answer is the table entry minus the grass-cover objection.
        result = query(
            grass_doc.network,
            grass_doc.objections,
            parse_l(grass_doc, "P5"),
            evidence=parse_l(grass_doc, "P3"),
        )
        assert equivalent(result, parse_o(grass_doc, "O4 & !O1"))

    def test_rejected_evidence(self, grass_doc):
        with pytest.raises(RejectedEvidence):
            query(
                grass_doc.network,
                grass_doc.objections,
                parse_l(grass_doc, "P5"),
                evidence=parse_l(grass_doc, "!P1 & !P2 & P3"),
            )

    def test_priors_are_maximally_ignorant(self, grass_doc):
        state = assemble_state(grass_doc.network, grass_doc.objections)
        for name in ("P1", "P2"):
            atom = grass_doc.network.atom(name)
            assert equivalent(state.objection_of(atom), FALSE)
            assert equivalent(state.ignorance(atom), TRUE)


class TestMarkov:
    def test_grass_reports_no_violations(self, grass_doc):
        report = markov_check(grass_doc.network, grass_doc.objections)
        assert report.ok
        counts = report.counts()
        assert counts["violated"] == 0
        assert counts["verified"] > 0
        assert counts["vacuous"] > 0
        assert all(e.status in ("verified", "vacuous") for e in report.entries)

    def test_rejected_context_family_is_vacuous(self, grass_doc):
        report = markov_check(grass_doc.network, grass_doc.objections)
        rejected_family = parse_l(grass_doc, "!P1 & !P2 & P3")
        from objections.logic import entails

        family = [
            entry
            for entry in report.entries
            if entails(entry.context_condition, rejected_family)
        ]
        assert family
        assert all(entry.status == "vacuous" for entry in family)

    def test_root_node_contexts_verified(self, grass_doc):
        report = markov_check(grass_doc.network, grass_doc.objections)
        p1_entries = [entry for entry in report.entries if entry.node == "P1"]
        assert len(p1_entries) == 4  # two signs x two P2 contexts
        assert all(entry.status == "verified" for entry in p1_entries)

    def test_coverage(self, grass_doc):
        report = markov_check(grass_doc.network, grass_doc.objections)
        # Per node: 2 signs x 2^(parents) x 2^(other non-descendants).
        assert len(report.entries) == 4 + 4 + 8 + 32 + 32

    def test_random_valid_networks_never_violate(self):
        rng = random.Random(5)
        for _ in range(8):
            net, quant, _ = random_network(rng, 4, O_NAMES[:3])
            assert markov_check(net, quant).ok


class TestExplain:
    def test_worked_example_steps(self, grass_doc):
        vocab = grass_doc.network.vocabulary
        world_mask = parse_l(grass_doc, "P1 & !P2 & P3 & P4 & P5")
        from objections.logic import truth_table

        index = truth_table(world_mask, vocab).bit_length() - 1
        steps = explain(grass_doc.network, grass_doc.objections, vocab.world(index))
        assert [s.node for s in steps] == ["P1", "P2", "P3", "P4", "P5"]
        assert [str(s.instantiation) for s in steps] == ["-", "-", "P1 & !P2", "P3", "P3"]
        assert [render(s.support) for s in steps] == ["false", "false", "O1", "O3", "O4"]
        disjunction = steps[0].support
        for step in steps[1:]:
            disjunction = Or(disjunction, step.support)
        assert equivalent(disjunction, parse_o(grass_doc, "O1 | O3 | O4"))

    def test_all_negative_world(self, grass_doc):
        vocab = grass_doc.network.vocabulary
        steps = explain(grass_doc.network, grass_doc.objections, vocab.world(0))
        assert all(render(s.support) == "false" for s in steps)

    def test_single_node_network(self):
        vocab = Vocabulary.of(["p"], tag="L")
        net = CausalNetwork(vocab, {})
        o1 = Atom("O1", "O")
        (instantiation,) = net.instantiations("p")
        quant = OcnQuantification(
            Vocabulary.of(["O1"], tag="O"), {instantiation: (o1, Not(o1))}
        )
        steps = explain(net, quant, vocab.world(1))
        assert len(steps) == 1
        assert steps[0].node == "p" and steps[0].support == o1


class TestRemedy:
    def test_flagged_entries_are_the_wet_grass_children(self, grass_doc):
        entries = remedy_report(grass_doc.network, grass_doc.objections)
        described = sorted(
            (e.instantiation.node, str(e.instantiation), e.positive) for e in entries
        )
        assert described == [
            ("P4", "P3", False),
            ("P4", "P3", True),
            ("P5", "P3", False),
            ("P5", "P3", True),
        ]
        for entry in entries:
            assert equivalent(
                entry.repaired, And(entry.given, Not(entry.condition_objection))
            )

    def test_remedied_network_assembles_to_the_same_state(self, grass_doc):
        # Disjunction absorbs the repair terms here, so the assembled joint
        # is unchanged; the repair only matters for elicitation hygiene.
        repaired = apply_remedy(grass_doc.network, grass_doc.objections)
        original = assemble_state(grass_doc.network, grass_doc.objections)
        state = assemble_state(grass_doc.network, repaired)
        assert state.objection_masks == original.objection_masks

    def test_repaired_entries_satisfy_the_product_precondition(self, grass_doc):
        repaired = apply_remedy(grass_doc.network, grass_doc.objections)
        assert remedy_report(grass_doc.network, repaired) == ()
