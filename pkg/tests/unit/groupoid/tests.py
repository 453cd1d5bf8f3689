import logging

from django.test import SimpleTestCase

from graphs.paths import EdgeRef, LassoPath, Path
from groupoid.exceptions import HypothesisViolated, InvalidFilter, InvalidGerm
from groupoid.filters import ChainFilter, filter_of_lasso, is_ultrafilter
from groupoid.germs import Bisection, Germ, compose_germs, germ_equal, germ_range, invert_germ
from groupoid.relations import CoverKind, check_cover, verify_relations, verify_tightness
from semigroup.elements import InverseSemigroup
from tests.utils import corpus_payload, corpus_triple, z2_identity_triple
from triples.documents import triple_from_payload

logging.disable(logging.CRITICAL)


def loop_lasso(triple, *names: str) -> LassoPath:
    cycle = triple.graph.path("v", [EdgeRef(n) for n in names])
    return LassoPath(Path.empty("v"), cycle)


class TestGerms(SimpleTestCase):
    def test_germ_needs_a_point_in_the_domain(self):
        """Test that a germ outside Z(β) is rejected"""
        triple = corpus_triple("two_loops")
        semigroup = InverseSemigroup(triple)
        s = semigroup.idempotent(triple.graph.path("v", [EdgeRef("e0")]))
        with self.assertRaises(InvalidGerm):
            Germ(s, loop_lasso(triple, "e1"))

    def test_trivial_cocycle_germ_becomes_a_unit(self):
        """Test that s acting trivially with trivial cocycle has the unit germ"""
        triple = z2_identity_triple("1")
        semigroup = InverseSemigroup(triple)
        omega = loop_lasso(triple, "e0")
        g = Germ(semigroup.unitary(triple.group.parse("s"), "v"), omega)
        unit = Germ(semigroup.vertex_projection("v"), omega)
        self.assertTrue(germ_equal(g, unit))

    def test_sigma_cocycle_germ_never_becomes_a_unit(self):
        """Test that a twist stuck at the generator keeps the germs apart"""
        triple = z2_identity_triple("s")
        semigroup = InverseSemigroup(triple)
        omega = loop_lasso(triple, "e0", "e1")
        g = Germ(semigroup.unitary(triple.group.parse("s"), "v"), omega)
        unit = Germ(semigroup.vertex_projection("v"), omega)
        self.assertFalse(germ_equal(g, unit))

    def test_inverse_composes_to_a_unit(self):
        """Test that a germ composed with its inverse is a unit at its source"""
        triple = corpus_triple("z2_swap_two_loops")
        semigroup = InverseSemigroup(triple)
        s = semigroup.element(
            triple.graph.path("v", [EdgeRef("e1")]),
            triple.group.parse("s"),
            triple.graph.path("v", [EdgeRef("e0")]),
        )
        g = Germ(s, loop_lasso(triple, "e0"))
        self.assertEqual(str(germ_range(g)), "e1.e1(e0)^inf")
        unit = compose_germs(invert_germ(g), g)
        self.assertTrue(unit.is_unit())
        self.assertEqual(unit.point, g.point)

    def test_composition_needs_matching_points(self):
        """Test that germs only compose when the range meets the next point"""
        triple = corpus_triple("two_loops")
        semigroup = InverseSemigroup(triple)
        p = semigroup.vertex_projection("v")
        with self.assertRaises(InvalidGerm):
            compose_germs(Germ(p, loop_lasso(triple, "e0")), Germ(p, loop_lasso(triple, "e1")))

    def test_bisection_domain(self):
        """Test the domain root and membership of a bisection"""
        triple = corpus_triple("two_loops")
        semigroup = InverseSemigroup(triple)
        e0 = triple.graph.path("v", [EdgeRef("e0")])
        e0e1 = triple.graph.path("v", [EdgeRef("e0"), EdgeRef("e1")])
        bisection = Bisection(semigroup.idempotent(e0), e0e1)
        self.assertEqual(bisection.domain_root, e0e1)
        self.assertTrue(Bisection(semigroup.idempotent(e0), e0e1.drop(1)).is_empty())
        lassos = triple.graph.enumerate_lassos(3)
        germs = bisection.germs(lassos)
        self.assertTrue(germs)
        self.assertTrue(all(bisection.contains(g) for g in germs))


class TestFilters(SimpleTestCase):
    def test_lasso_filters_are_ultrafilters(self):
        """Test that F_ω is an ultrafilter on every row-finite source-free corpus triple"""
        for name in ("one_loop", "two_loops", "z2_swap_two_loops", "z2_swapped_components"):
            triple = corpus_triple(name)
            for omega in triple.graph.enumerate_lassos(3):
                with self.subTest(triple=name, omega=str(omega)):
                    self.assertTrue(is_ultrafilter(triple, filter_of_lasso(omega), 6).ultrafilter)

    def test_finite_chain_extends(self):
        """Test that a finite prefix chain is never an ultrafilter"""
        triple = corpus_triple("two_loops")
        semigroup = InverseSemigroup(triple)
        chain = ChainFilter(
            (
                semigroup.vertex_projection("v"),
                semigroup.idempotent(triple.graph.path("v", [EdgeRef("e1")])),
            )
        )
        result = is_ultrafilter(triple, chain, 4)
        self.assertFalse(result.ultrafilter)
        self.assertEqual(str(result.witness.alpha), "e1.e0")

    def test_chain_must_be_nested(self):
        """Test that incomparable idempotents do not form a chain"""
        triple = corpus_triple("two_loops")
        semigroup = InverseSemigroup(triple)
        e0 = semigroup.idempotent(triple.graph.path("v", [EdgeRef("e0")]))
        e1 = semigroup.idempotent(triple.graph.path("v", [EdgeRef("e1")]))
        with self.assertRaises(InvalidFilter):
            ChainFilter((e0, e1))

    def test_filters_need_row_finite_graphs_without_sources(self):
        """Test that singular graphs are refused by the filter analysis"""
        triple = corpus_triple("source_example")
        semigroup = InverseSemigroup(triple)
        chain = ChainFilter((semigroup.vertex_projection("x"),))
        with self.assertRaises(HypothesisViolated):
            is_ultrafilter(triple, chain, 2)


class TestRelations(SimpleTestCase):
    def test_relations_hold_on_corpus(self):
        """Test that every relation instance passes on sealed corpus triples"""
        for name in ("two_loops", "z2_swap_two_loops", "z2_swapped_components"):
            with self.subTest(triple=name):
                report = verify_relations(corpus_triple(name), 3)
                self.assertTrue(report.ok, [str(r) for r in report.failures])
                self.assertTrue(report.records)

    def test_relations_hold_on_receivers(self):
        """Test the relations with a family cut at a finite index"""
        report = verify_relations(corpus_triple("receiver_loop_family"), 2, family_bound=3)
        self.assertTrue(report.ok, [str(r) for r in report.failures])

    def test_corrupted_cocycle_breaks_relation_d(self):
        """Test that a cocycle violating compatibility fails u_g s_a = s_ga u_φ(g,a)"""
        payload = corpus_payload("z2_swapped_components")
        payload["cocycle"] = {"s": {"edges": {"a": "1", "b": "1"}}}
        triple = triple_from_payload(payload, strict=False)
        self.assertFalse(triple.sealed)
        report = verify_relations(triple, 3)
        self.assertFalse(report.ok)
        self.assertIn("(d)", {record.relation for record in report.failures})
        self.assertEqual(report.as_dict()["failed"], len(report.failures))

    def test_tightness_on_two_loops(self):
        """Test that one-level covers are partitions"""
        report = verify_tightness(corpus_triple("two_loops"), 3)
        self.assertTrue(report.ok)

    def test_check_cover_classifies(self):
        """Test partition, overlap and non-cover classification"""
        triple = corpus_triple("two_loops")
        semigroup = InverseSemigroup(triple)
        path = lambda *names: triple.graph.path("v", [EdgeRef(n) for n in names])
        root = semigroup.vertex_projection("v")
        e0, e1 = semigroup.idempotent(path("e0")), semigroup.idempotent(path("e1"))
        e0e0 = semigroup.idempotent(path("e0", "e0"))
        self.assertEqual(check_cover(triple, root, [e0, e1], 3).kind, CoverKind.PARTITION)
        self.assertEqual(check_cover(triple, root, [e0, e0e0, e1], 3).kind, CoverKind.OVERLAP)
        self.assertEqual(check_cover(triple, root, [e0], 3).kind, CoverKind.NON_COVER)
