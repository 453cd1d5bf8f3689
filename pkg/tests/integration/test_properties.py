"""
Cross checks of the property checkers over the whole corpus: brute force
agreement, certificate replay, budget monotonicity and contraction
witnesses.
"""

import logging
import random

import networkx as nx
from django.test import SimpleTestCase

from checkers.certificates import verify_report
from checkers.contraction import contraction_witness
from checkers.hausdorff import is_hausdorff
from checkers.pipeline import check_property
from checkers.prepared import prepare
from graphs.graph import Edge, Graph
from semigroup.elements import ZERO, InverseSemigroup
from symmetry.groups import FiniteTableGroup
from symmetry.triple import Triple
from tests.utils import CORPUS_NAMES, FINITE_CORPUS, corpus_triple, small_budget

logging.disable(logging.CRITICAL)

DECIDABLE = ("hausdorff", "minimal", "topfree", "simple", "pureinf")

BRUTE_FORCE_LENGTH = 4


def strongly_fixed(triple, g, path) -> bool:
    image, twist = triple.act_and_cocycle(g, path)
    return image == path and twist == triple.identity


def minimal_strongly_fixed_by_enumeration(triple, g, x, max_length):
    found = set()
    for length in range(max_length + 1):
        for path in triple.graph.extend_paths(x, length):
            if not strongly_fixed(triple, g, path):
                continue
            if any(strongly_fixed(triple, g, path.prefix(n)) for n in range(length)):
                continue
            found.add(str(path))
    return found


class TestBruteForceAgreement(SimpleTestCase):
    def test_strongly_fixed_paths_match_enumeration(self):
        """Test that short minimal strongly fixed paths agree with enumeration"""
        budget = small_budget()
        for name in FINITE_CORPUS:
            prepared = prepare(corpus_triple(name), budget)
            verdict = is_hausdorff(prepared, budget)
            if not verdict.is_proven:
                continue
            triple = prepared.triple
            for pair in verdict.certificate["pairs"]:
                listed = pair["paths"]
                if len(listed) != pair["count"]:
                    continue
                if any(len(text.split(".")) >= BRUTE_FORCE_LENGTH for text in listed):
                    continue
                g = triple.group.parse(pair["g"])
                with self.subTest(triple=name, g=pair["g"], x=pair["x"]):
                    self.assertEqual(
                        minimal_strongly_fixed_by_enumeration(
                            triple, g, pair["x"], BRUTE_FORCE_LENGTH
                        ),
                        {text for text in listed if not text.startswith("@")},
                    )


class TestCertificates(SimpleTestCase):
    def test_every_decided_verdict_replays(self):
        """Test that the independent verifier accepts every corpus certificate"""
        budget = small_budget()
        for name in FINITE_CORPUS:
            for prop in DECIDABLE:
                report = check_property(corpus_triple(name), prop, budget)
                with self.subTest(triple=name, property=prop):
                    self.assertTrue(verify_report(report))


class TestMonotonicity(SimpleTestCase):
    def test_decided_verdicts_survive_larger_budgets(self):
        """Test that doubling every budget never changes a decided verdict"""
        budget = small_budget()
        for name in CORPUS_NAMES:
            for prop in DECIDABLE:
                small = check_property(corpus_triple(name), prop, budget).verdict
                if small.is_unknown:
                    continue
                large = check_property(corpus_triple(name), prop, budget.doubled()).verdict
                with self.subTest(triple=name, property=prop):
                    self.assertEqual(large.status, small.status)


class TestContractionWitnesses(SimpleTestCase):
    def test_witnesses_for_vertex_idempotents(self):
        """Test that every vertex projection of a purely infinite triple contracts"""
        budget = small_budget()
        for name in ("two_loops", "z2_swap_two_loops", "receiver_loop_family"):
            prepared = prepare(corpus_triple(name), budget)
            semigroup = InverseSemigroup(prepared.triple, budget.states)
            for v in prepared.vertices():
                e = semigroup.idempotent(prepared.path(v, []))
                witness = contraction_witness(prepared, e, budget)
                with self.subTest(triple=name, vertex=v):
                    self.assertIsNotNone(witness)
                    s, f0, f1 = witness.s, witness.f0, witness.f1
                    self.assertEqual(semigroup.multiply(semigroup.star(s), s), f1)
                    self.assertTrue(semigroup.leq(f1, e))
                    self.assertIs(semigroup.multiply(f0, s), ZERO)

    def test_no_witness_without_an_anchor(self):
        """Test that a vertex fed only by a tail has no witness"""
        budget = small_budget()
        prepared = prepare(corpus_triple("source_example"), budget)
        semigroup = InverseSemigroup(prepared.triple, budget.states)
        e = semigroup.idempotent(prepared.path("x", []))
        self.assertIsNone(contraction_witness(prepared, e, budget))


def random_source_free_graph(rng: random.Random) -> Graph:
    """
    At most six vertices and twelve edges; every vertex receives an edge.
    """
    vertices = [f"v{i}" for i in range(rng.randint(1, 6))]
    ends = [(v, rng.choice(vertices)) for v in vertices]
    for _ in range(rng.randint(0, 12 - len(vertices))):
        ends.append((rng.choice(vertices), rng.choice(vertices)))
    edges = [Edge(f"e{i}", r, s) for i, (r, s) in enumerate(ends)]
    return Graph(vertices, edges)


def every_cycle_has_an_entry(graph: Graph) -> bool:
    in_degree = {v: 0 for v in graph.vertices}
    arrows = nx.DiGraph()
    for edge in graph.edges.values():
        in_degree[edge.range] += 1
        arrows.add_edge(edge.range, edge.source)
    return not any(
        all(in_degree[v] == 1 for v in cycle) for cycle in nx.simple_cycles(arrows)
    )


def is_cofinal(graph: Graph) -> bool:
    """
    Every vertex reaches every strongly connected component that carries a
    cycle, following edges from range to source.
    """
    arrows = nx.DiGraph()
    arrows.add_nodes_from(graph.vertices)
    for edge in graph.edges.values():
        arrows.add_edge(edge.range, edge.source)
    cyclic = [
        component
        for component in nx.strongly_connected_components(arrows)
        if len(component) > 1 or any(arrows.has_edge(v, v) for v in component)
    ]
    for v in graph.vertices:
        reached = {v} | nx.descendants(arrows, v)
        if any(not (reached & component) for component in cyclic):
            return False
    return True


class TestTrivialGroupCrossValidation(SimpleTestCase):
    def test_random_graphs_agree_with_graph_conditions(self):
        """Test topfree against cycle entries and minimal against cofinality"""
        rng = random.Random(1729)
        budget = small_budget()
        for n in range(100):
            graph = random_source_free_graph(rng)
            triple = Triple(graph, FiniteTableGroup.trivial())
            topfree = check_property(triple, "topfree", budget).verdict
            minimal = check_property(triple, "minimal", budget).verdict
            with self.subTest(graph=n, edges=sorted(graph.edges)):
                self.assertFalse(topfree.is_unknown)
                self.assertFalse(minimal.is_unknown)
                self.assertEqual(topfree.is_proven, every_cycle_has_an_entry(graph))
                self.assertEqual(minimal.is_proven, is_cofinal(graph))
