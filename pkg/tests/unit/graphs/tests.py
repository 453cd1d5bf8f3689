import logging

from django.test import SimpleTestCase

from graphs.dot import to_dot
from graphs.exceptions import (
    FamiliesPresent,
    InvalidGraph,
    PathMismatch,
    UnboundedFamilyRequest,
    UnknownEdge,
)
from graphs.graph import Edge, EdgeFamily, Graph, VertexClass
from graphs.paths import EdgeRef, LassoPath, Path, lasso_normalize
from tests.utils import loops_graph, receiver_graph
from utils.sequences import EventuallyPeriodic

logging.disable(logging.CRITICAL)


class TestGraphConstruction(SimpleTestCase):
    def test_edges_must_name_known_vertices(self):
        """Test that an edge into an unknown vertex is rejected"""
        with self.assertRaises(InvalidGraph):
            Graph(["v"], [Edge("e", "w", "v")])

    def test_edge_and_family_ids_must_be_distinct(self):
        """Test that an edge and a family cannot share an id"""
        family = receiver_graph().families["F"]
        with self.assertRaises(InvalidGraph):
            Graph(["x"], [Edge("F", "x", "x")], [family])

    def test_vertex_classes(self):
        """Test the source, regular and infinite receiver classification"""
        graph = Graph(
            ["x", "y", "z"],
            [Edge("a", "x", "y")],
            [EdgeFamily("F", "z", EventuallyPeriodic.constant("x"))],
        )
        self.assertEqual(graph.vertex_class("y"), VertexClass.SOURCE)
        self.assertEqual(graph.vertex_class("x"), VertexClass.REGULAR)
        self.assertEqual(graph.vertex_class("z"), VertexClass.INFINITE_RECEIVER)
        self.assertEqual(graph.singular_vertices(), ["y", "z"])
        self.assertFalse(graph.is_row_finite())

    def test_boundary_vertices_are_not_sources(self):
        """Test that stub vertices are not sources while a vertex emitting nothing is a sink"""
        graph = Graph(["x", "y"], [Edge("a", "x", "y")], [], ["y"])
        self.assertEqual(graph.sources(), [])
        self.assertEqual(graph.sinks(), ["x"])


class TestIncomingEdges(SimpleTestCase):
    def test_plain_edges_come_first_then_family_members(self):
        """Test the canonical enumeration of incoming edges"""
        graph = receiver_graph(("x", "w"))
        graph = Graph(
            graph.vertices, [Edge("b", "x", "w")], list(graph.families.values())
        )
        refs = graph.incoming_prefix("x", 4)
        self.assertEqual([str(r) for r in refs], ["b", "F[1]", "F[2]", "F[3]"])
        self.assertEqual(graph.incoming_position("x", EdgeRef("F", 3)), 4)
        self.assertEqual(graph.source_of(EdgeRef("F", 2)), "w")

    def test_families_need_an_index_bound(self):
        """Test that a receiver cannot be enumerated without a bound"""
        graph = receiver_graph()
        with self.assertRaises(UnboundedFamilyRequest):
            graph.incoming_finite("x")
        self.assertEqual(len(graph.incoming_bounded("x", 3)), 3)

    def test_incoming_sources_is_eventually_periodic(self):
        """Test that the source sequence of a receiver interleaves its families"""
        graph = receiver_graph(("x", "w"))
        self.assertEqual(graph.incoming_sources("x"), EventuallyPeriodic.of([], ["x", "w"]))


class TestPaths(SimpleTestCase):
    def setUp(self):
        self.graph = Graph(["x", "y"], [Edge("a", "x", "y"), Edge("b", "y", "y")])

    def test_paths_are_read_range_first(self):
        """Test that a path starts at the range of its first edge"""
        path = self.graph.path("x", [EdgeRef("a"), EdgeRef("b")])
        self.assertEqual(path.range, "x")
        self.assertEqual(path.source, "y")
        self.assertEqual(str(path), "a.b")

    def test_mismatched_edges_raise(self):
        """Test that edges which do not meet cannot form a path"""
        with self.assertRaises(PathMismatch):
            self.graph.path("x", [EdgeRef("b")])
        with self.assertRaises(UnknownEdge):
            self.graph.path("x", [EdgeRef("nope")])

    def test_strip_prefix(self):
        """Test that stripping a prefix returns the rest of the path"""
        path = self.graph.path("x", [EdgeRef("a"), EdgeRef("b"), EdgeRef("b")])
        prefix = self.graph.path("x", [EdgeRef("a")])
        self.assertEqual(str(path.strip_prefix(prefix)), "b.b")
        self.assertIsNone(prefix.strip_prefix(path))

    def test_lasso_normal_form(self):
        """Test that equal infinite paths get equal canonical lassos"""
        b = self.graph.path("y", [EdgeRef("b")])
        bb = b.concat(b)
        self.assertEqual(lasso_normalize(LassoPath(b, bb)), LassoPath(Path.empty("y"), b))
        omega = self.graph.lasso(self.graph.path("x", [EdgeRef("a")]), b)
        self.assertEqual(str(omega), "a(b)^inf")
        self.assertEqual(omega.drop(3), LassoPath(Path.empty("y"), b))

    def test_lasso_enumeration_is_bounded_by_description_size(self):
        """Test that enumerated lassos respect the size bound and are distinct"""
        lassos = loops_graph("e0", "e1").enumerate_lassos(3)
        self.assertTrue(all(omega.description_size <= 3 for omega in lassos))
        self.assertEqual(len(lassos), len(set(lassos)))
        loop = loops_graph("e0").path("v", [EdgeRef("e0")])
        self.assertIn(LassoPath(Path.empty("v"), loop), lassos)


class TestCyclesAndDot(SimpleTestCase):
    def test_simple_cycles_start_at_least_vertex(self):
        """Test that cycles are rotated to their least vertex"""
        graph = Graph(["x", "y"], [Edge("a", "x", "y"), Edge("b", "y", "x"), Edge("c", "y", "y")])
        cycles = [str(c) for c in graph.simple_cycles()]
        self.assertEqual(cycles, ["c", "a.b"])
        self.assertTrue(all(c.range == min(c.vertices) for c in graph.simple_cycles()))

    def test_simple_cycles_need_a_row_finite_graph(self):
        """Test that families cannot be materialized"""
        with self.assertRaises(FamiliesPresent):
            receiver_graph().simple_cycles()

    def test_dot_draws_arrows_from_source_to_range(self):
        """Test that DOT arrows point from s(e) to r(e) and families are dashed"""
        dot = to_dot(Graph(["x", "y"], [Edge("a", "x", "y")]), name="E")
        self.assertIn('"y" -> "x" [label="a"];', dot)
        self.assertIn("style=dashed", to_dot(receiver_graph()))
