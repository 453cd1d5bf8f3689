import logging
from dataclasses import replace

from django.test import SimpleTestCase

from checkers.budget import CheckBudget
from checkers.certificates import verify_certificate, verify_report
from checkers.circuits import circuits_without_entry
from checkers.exceptions import CertificateError
from checkers.freeness import (
    fixes_cylinder_pointwise,
    is_slack,
    pointwise_implies_slack,
    topologically_free,
)
from checkers.hausdorff import is_hausdorff, minimal_strongly_fixed
from checkers.pipeline import check_property
from checkers.prepared import prepare
from checkers.transitivity import weakly_G_transitive
from checkers.verdicts import Status, Verdict, conjunction, proven, refuted, unknown
from graphs.graph import Edge, Graph
from symmetry.groups import FiniteTableGroup
from symmetry.triple import Triple
from tests.utils import corpus_triple, small_budget, z2_identity_triple
from triples.exceptions import UnknownProperty
from utils.exceptions import ExitCode

logging.disable(logging.CRITICAL)


class TestVerdicts(SimpleTestCase):
    def test_exit_codes(self):
        """Test that each status maps to its process exit code"""
        self.assertEqual(proven("p", {}).exit_code, ExitCode.OK)
        self.assertEqual(refuted("p", {}).exit_code, ExitCode.REFUTED)
        self.assertEqual(unknown("p", "budget").exit_code, ExitCode.UNKNOWN)

    def test_conjunction_prefers_refutation(self):
        """Test that a refuted part wins over an unknown one"""
        parts = [unknown("a", "open"), refuted("b", {}, "broken"), proven("c", {})]
        verdict = conjunction("all", parts)
        self.assertEqual(verdict.status, Status.REFUTED)
        self.assertEqual(verdict.reason, "broken")
        self.assertEqual(conjunction("all", parts[:1] + parts[2:]).status, Status.UNKNOWN)
        self.assertTrue(conjunction("all", parts[2:]).is_proven)

    def test_from_dict_rebuilds_children(self):
        """Test that a serialized verdict tree comes back unchanged"""
        verdict = conjunction("all", [proven("c", {"kind": "identity"}), unknown("a", "open")])
        self.assertEqual(Verdict.from_dict(verdict.to_dict()), verdict)
        self.assertEqual(verdict.lines()[1], "  c: PROVEN")

    def test_budget_doubling(self):
        """Test that doubling scales every budget"""
        budget = CheckBudget(word=1, lasso=2, circuit=3, family=4, states=5, depth=6)
        self.assertEqual(budget.doubled().as_dict()["states"], 10)
        self.assertEqual(budget.doubled().depth, 12)


class TestHausdorff(SimpleTestCase):
    def setUp(self):
        self.budget = small_budget()

    def test_trivial_cocycle_has_two_minimal_strongly_fixed_paths(self):
        """Test that e0 and e1 are the minimal strongly fixed paths of s at v"""
        prepared = prepare(z2_identity_triple("1"), self.budget)
        s = prepared.group.parse("s")
        result = minimal_strongly_fixed(prepared, s, "v", self.budget)
        self.assertEqual(sorted(str(p) for p in result.paths), ["e0", "e1"])
        self.assertEqual(result.count, 2)
        self.assertTrue(is_hausdorff(prepared, self.budget).is_proven)

    def test_sigma_cocycle_is_hausdorff(self):
        """Test that a twist stuck at s gives no strongly fixed paths at all"""
        prepared = prepare(z2_identity_triple("s"), self.budget)
        verdict = is_hausdorff(prepared, self.budget)
        self.assertTrue(verdict.is_proven)
        self.assertEqual(verdict.certificate["pairs"][0]["count"], 0)

    def test_integers_stay_unknown(self):
        """Test that the integers cannot be proven Hausdorff within a budget"""
        prepared = prepare(corpus_triple("integers_odometer"), self.budget)
        self.assertTrue(is_hausdorff(prepared, self.budget).is_unknown)


class TestFreeness(SimpleTestCase):
    def setUp(self):
        self.budget = small_budget()

    def test_sigma_cocycle_fixes_pointwise_without_slack(self):
        """Test that s fixes Z(v) pointwise but no prefix is strongly fixed"""
        prepared = prepare(z2_identity_triple("s"), self.budget)
        s = prepared.group.parse("s")
        self.assertTrue(fixes_cylinder_pointwise(prepared, s, "v", self.budget).is_proven)
        slack = is_slack(prepared, s, "v", self.budget)
        self.assertTrue(slack.is_refuted)
        self.assertEqual(slack.kind, "twist-cycle")
        self.assertTrue(topologically_free(prepared, self.budget).is_refuted)

    def test_trivial_cocycle_is_slack(self):
        """Test that s is slack at v once the twist drops to the identity"""
        prepared = prepare(z2_identity_triple("1"), self.budget)
        s = prepared.group.parse("s")
        self.assertTrue(is_slack(prepared, s, "v", self.budget).is_proven)
        self.assertTrue(topologically_free(prepared, self.budget).is_proven)

    def test_swap_moves_edges(self):
        """Test that the swap does not fix Z(v) pointwise"""
        prepared = prepare(corpus_triple("z2_swap_two_loops"), self.budget)
        s = prepared.group.parse("s")
        pointwise = fixes_cylinder_pointwise(prepared, s, "v", self.budget)
        self.assertTrue(pointwise.is_refuted)

    def test_single_loop_circuit_has_no_entry(self):
        """Test that the loop e is a circuit without entry"""
        prepared = prepare(corpus_triple("one_loop"), self.budget)
        verdict = circuits_without_entry(prepared, self.budget)
        self.assertTrue(verdict.is_refuted)
        self.assertEqual(verdict.reason, "circuit without entry: e")

    def test_odometer_circuits_and_freeness(self):
        """Test the circuit check and the open freeness question for the integers"""
        prepared = prepare(corpus_triple("integers_odometer"), self.budget)
        self.assertTrue(circuits_without_entry(prepared, self.budget).is_proven)
        self.assertTrue(topologically_free(prepared, self.budget).is_unknown)


class TestTransitivity(SimpleTestCase):
    def test_disjoint_components_are_not_minimal(self):
        """Test that two loops nobody connects refute weak transitivity"""
        graph = Graph(["u", "w"], [Edge("a", "u", "u"), Edge("b", "w", "w")])
        budget = small_budget()
        prepared = prepare(Triple(graph, FiniteTableGroup.trivial()), budget)
        verdict = weakly_G_transitive(prepared, budget)
        self.assertTrue(verdict.is_refuted)
        self.assertEqual(verdict.kind, "disjoint-orbit")
        self.assertTrue(verify_certificate(prepared, verdict))

    def test_swapped_components_are_minimal(self):
        """Test that the group joins components the graph keeps apart"""
        budget = small_budget()
        prepared = prepare(corpus_triple("z2_swapped_components"), budget)
        verdict = weakly_G_transitive(prepared, budget)
        self.assertTrue(verdict.is_proven)
        self.assertTrue(verify_certificate(prepared, verdict))


class TestPipeline(SimpleTestCase):
    def setUp(self):
        self.budget = small_budget()

    def test_unknown_property_is_rejected(self):
        """Test that an unrecognized property name raises instead of checking tightness"""
        with self.assertRaises(UnknownProperty) as raised:
            check_property(corpus_triple("two_loops"), "tight", self.budget)
        self.assertEqual(raised.exception.exit_code, ExitCode.USAGE)

    def test_simple_and_purely_infinite(self):
        """Test the end to end verdicts on the corpus"""
        expected = {
            ("two_loops", "simple"): Status.PROVEN,
            ("two_loops", "pureinf"): Status.PROVEN,
            ("one_loop", "simple"): Status.REFUTED,
            ("source_example", "simple"): Status.PROVEN,
            ("source_example", "pureinf"): Status.REFUTED,
            ("receiver_loop_family", "simple"): Status.PROVEN,
            ("receiver_loop_family", "pureinf"): Status.PROVEN,
        }
        for (name, prop), status in expected.items():
            with self.subTest(triple=name, property=prop):
                report = check_property(corpus_triple(name), prop, self.budget)
                self.assertEqual(report.verdict.status, status)

    def test_truncation_depth_is_reported(self):
        """Test that singular triples are checked on a folded truncation"""
        report = check_property(corpus_triple("source_example"), "pureinf", self.budget)
        self.assertGreaterEqual(report.as_dict()["truncation_depth"], self.budget.depth)
        regular = check_property(corpus_triple("two_loops"), "simple", self.budget)
        self.assertEqual(regular.as_dict()["truncation_depth"], 0)

    def test_relations_property(self):
        """Test that the relations property reports its instances"""
        budget = replace(self.budget, depth=3)
        report = check_property(corpus_triple("z2_swap_two_loops"), "relations", budget)
        self.assertTrue(report.verdict.is_proven)
        self.assertGreater(report.as_dict()["records"]["checked"], 0)

    def test_unamenable_group_leaves_simplicity_open(self):
        """Test that simplicity needs the amenability hypothesis"""
        triple = corpus_triple("two_loops")
        triple.group.amenable = False
        report = check_property(triple, "simple", self.budget)
        self.assertTrue(report.verdict.is_unknown)
        self.assertIn("hypothesis not established", report.verdict.reason)


class TestCertificates(SimpleTestCase):
    def setUp(self):
        self.budget = small_budget()

    def test_reports_verify(self):
        """Test that every decided verdict carries a certificate that replays"""
        for name in ("two_loops", "one_loop", "source_example", "receiver_loop_family"):
            for prop in ("hausdorff", "minimal", "topfree", "pureinf"):
                report = check_property(corpus_triple(name), prop, self.budget)
                with self.subTest(triple=name, property=prop):
                    self.assertTrue(verify_report(report))

    def test_tampered_strongly_fixed_count_is_rejected(self):
        """Test that a wrong path count in a Hausdorff certificate is caught"""
        prepared = prepare(z2_identity_triple("1"), self.budget)
        verdict = is_hausdorff(prepared, self.budget)
        pairs = [dict(pair) for pair in verdict.certificate["pairs"]]
        pairs[0]["count"] += 1
        forged = replace(verdict, certificate={**verdict.certificate, "pairs": pairs})
        with self.assertRaises(CertificateError):
            verify_certificate(prepared, forged)

    def test_not_slack_refutation_verifies(self):
        """Test that a genuine pointwise-but-not-slack pair replays"""
        prepared = prepare(z2_identity_triple("s"), self.budget)
        verdict = pointwise_implies_slack(prepared, self.budget)
        self.assertEqual(verdict.kind, "not-slack")
        self.assertTrue(verify_certificate(prepared, verdict))

    def test_forged_not_slack_is_rejected(self):
        """Test that a not-slack claim without matching children is caught"""
        for cocycle in ("s", "1"):
            prepared = prepare(z2_identity_triple(cocycle), self.budget)
            bare = refuted("pointwise-slack", {"kind": "not-slack", "g": "s", "x": "nowhere"})
            with self.subTest(cocycle=cocycle, forgery="unknown vertex"):
                with self.assertRaises(CertificateError):
                    verify_certificate(prepared, bare)
            (vertex,) = prepared.vertices()
            childless = refuted("pointwise-slack", {"kind": "not-slack", "g": "s", "x": vertex})
            with self.subTest(cocycle=cocycle, forgery="no children"):
                with self.assertRaises(CertificateError):
                    verify_certificate(prepared, childless)

    def test_not_slack_children_must_match_the_pair(self):
        """Test that children about the identity do not support a claim about s"""
        prepared = prepare(z2_identity_triple("s"), self.budget)
        genuine = pointwise_implies_slack(prepared, self.budget)
        pointwise, _ = genuine.children
        (vertex,) = prepared.vertices()
        identity = proven("slack", {"kind": "identity", "g": "1", "x": vertex})
        forged = replace(genuine, children=(pointwise, identity))
        with self.assertRaises(CertificateError):
            verify_certificate(prepared, forged)

    def test_forged_circuit_is_rejected(self):
        """Test that an entry-free circuit claim on two loops is rejected"""
        prepared = prepare(corpus_triple("one_loop"), self.budget)
        verdict = circuits_without_entry(prepared, self.budget)
        other = prepare(corpus_triple("two_loops"), self.budget)
        with self.assertRaises(CertificateError):
            verify_certificate(other, verdict)
