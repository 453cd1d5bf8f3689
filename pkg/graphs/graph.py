import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import count, product
from math import lcm
from typing import Optional

import networkx as nx

from graphs.exceptions import (
    FamiliesPresent,
    InvalidGraph,
    PathMismatch,
    UnboundedFamilyRequest,
    UnknownEdge,
    UnknownVertex,
)
from graphs.paths import EdgeRef, LassoPath, Path, lasso_normalize
from utils.security import validate_identifier
from utils.sequences import EventuallyPeriodic

logger = logging.getLogger(__name__)


class VertexClass(str, Enum):
    SOURCE = "source"
    INFINITE_RECEIVER = "infinite_receiver"
    REGULAR = "regular"


@dataclass(frozen=True)
class Edge:
    name: str
    range: str
    source: str


@dataclass(frozen=True)
class EdgeFamily:
    """
    Countably many edges ``name[1], name[2], ...`` sharing one range vertex;
    member ``i`` has source ``sources.at(i)``.
    """

    name: str
    range: str
    sources: EventuallyPeriodic


class Graph:
    """
    Finitely many vertices, finitely many plain edges and finitely many
    symbolic infinite edge families.

    ``boundary`` flags stub vertices left behind by a truncation. They are
    ignored by source and singularity questions.
    """

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Iterable[Edge] = (),
        families: Iterable[EdgeFamily] = (),
        boundary: Iterable[str] = (),
    ):
        self.vertices = tuple(sorted(set(vertices)))
        self.edges = {edge.name: edge for edge in edges}
        self.families = {family.name: family for family in families}
        self.boundary = frozenset(boundary)
        self._validate()

        self._plain_in: dict[str, list[str]] = {v: [] for v in self.vertices}
        self._families_in: dict[str, list[str]] = {v: [] for v in self.vertices}
        for edge in self.edges.values():
            self._plain_in[edge.range].append(edge.name)
        for family in self.families.values():
            self._families_in[family.range].append(family.name)
        for v in self.vertices:
            self._plain_in[v].sort()
            self._families_in[v].sort()

        self._has_outgoing = {edge.source for edge in self.edges.values()}
        for family in self.families.values():
            self._has_outgoing |= family.sources.values()

    def _validate(self):
        vertex_set = set(self.vertices)
        for v in self.vertices:
            validate_identifier(v, "vertex")
        clash = set(self.edges) & set(self.families)
        if clash:
            raise InvalidGraph(f"Edge and family ids must be unique, repeated: {sorted(clash)}")
        for edge in self.edges.values():
            validate_identifier(edge.name, "edge")
            for end in (edge.range, edge.source):
                if end not in vertex_set:
                    raise InvalidGraph(f"Edge {edge.name} names unknown vertex {end}")
        for family in self.families.values():
            validate_identifier(family.name, "family")
            if family.range not in vertex_set:
                raise InvalidGraph(f"Family {family.name} names unknown vertex {family.range}")
            unknown = family.sources.values() - vertex_set
            if unknown:
                raise InvalidGraph(
                    f"Family {family.name} has sources outside the graph: {sorted(unknown)}"
                )
        unknown_boundary = self.boundary - vertex_set
        if unknown_boundary:
            raise InvalidGraph(f"Unknown boundary vertices: {sorted(unknown_boundary)}")

    # Lookups

    def _check_vertex(self, v: str):
        if v not in self._plain_in:
            raise UnknownVertex(f"Unknown vertex: {v}")

    def has_ref(self, ref: EdgeRef) -> bool:
        if ref.index is None:
            return ref.name in self.edges
        return ref.name in self.families and ref.index >= 1

    def range_of(self, ref: EdgeRef) -> str:
        if ref.index is None:
            if ref.name not in self.edges:
                raise UnknownEdge(f"Unknown edge: {ref}")
            return self.edges[ref.name].range
        if ref.name not in self.families or ref.index < 1:
            raise UnknownEdge(f"Unknown family member: {ref}")
        return self.families[ref.name].range

    def source_of(self, ref: EdgeRef) -> str:
        if ref.index is None:
            if ref.name not in self.edges:
                raise UnknownEdge(f"Unknown edge: {ref}")
            return self.edges[ref.name].source
        if ref.name not in self.families or ref.index < 1:
            raise UnknownEdge(f"Unknown family member: {ref}")
        return self.families[ref.name].sources.at(ref.index)

    @property
    def has_families(self) -> bool:
        return bool(self.families)

    # Classification

    def vertex_class(self, v: str) -> VertexClass:
        self._check_vertex(v)
        if self._families_in[v]:
            return VertexClass.INFINITE_RECEIVER
        if not self._plain_in[v]:
            return VertexClass.SOURCE
        return VertexClass.REGULAR

    def is_sink(self, v: str) -> bool:
        self._check_vertex(v)
        return v not in self._has_outgoing

    def is_boundary(self, v: str) -> bool:
        return v in self.boundary

    def sources(self) -> list[str]:
        return [
            v
            for v in self.vertices
            if v not in self.boundary and self.vertex_class(v) == VertexClass.SOURCE
        ]

    def infinite_receivers(self) -> list[str]:
        return [v for v in self.vertices if self._families_in[v]]

    def singular_vertices(self) -> list[str]:
        receivers = set(self.infinite_receivers()) - self.boundary
        return sorted(set(self.sources()) | receivers)

    def sinks(self) -> list[str]:
        return [v for v in self.vertices if self.is_sink(v) and v not in self.boundary]

    def is_row_finite(self) -> bool:
        return not self.families

    # Incoming edges

    def incoming(self, v: str) -> Iterator[EdgeRef]:
        """
        Canonical enumeration of r^-1(v): plain edges in id order, then family
        members diagonally (index 1 of every family in id order, then index
        2, and so on). Infinite when v receives a family.
        """
        self._check_vertex(v)
        for name in self._plain_in[v]:
            yield EdgeRef(name)
        families = self._families_in[v]
        if not families:
            return
        for index in count(1):
            for name in families:
                yield EdgeRef(name, index)

    def incoming_prefix(self, v: str, n: int) -> list[EdgeRef]:
        result = []
        for ref in self.incoming(v):
            if len(result) >= n:
                break
            result.append(ref)
        return result

    def incoming_bounded(self, v: str, bound: Optional[int] = None) -> list[EdgeRef]:
        """
        r^-1(v) with family members restricted to index <= ``bound``.
        """
        self._check_vertex(v)
        plain = [EdgeRef(name) for name in self._plain_in[v]]
        families = self._families_in[v]
        if not families:
            return plain
        if bound is None:
            raise UnboundedFamilyRequest(
                f"Vertex {v} receives families {families}; an index bound is required"
            )
        members = [EdgeRef(name, i) for i in range(1, bound + 1) for name in families]
        return plain + members

    def incoming_finite(self, v: str) -> list[EdgeRef]:
        return self.incoming_bounded(v, None)

    def incoming_position(self, v: str, ref: EdgeRef) -> int:
        """
        1-based position of ``ref`` in the canonical enumeration of r^-1(v).
        """
        self._check_vertex(v)
        plain = self._plain_in[v]
        if ref.index is None:
            if ref.name not in plain:
                raise UnknownEdge(f"{ref} does not end at {v}")
            return plain.index(ref.name) + 1
        families = self._families_in[v]
        if ref.name not in families:
            raise UnknownEdge(f"{ref} does not end at {v}")
        return len(plain) + (ref.index - 1) * len(families) + families.index(ref.name) + 1

    def incoming_sources(self, v: str) -> EventuallyPeriodic:
        """
        The sequence j -> s(a_j) over the canonical enumeration of r^-1(v).
        """
        self._check_vertex(v)
        families = self._families_in[v]
        if not families:
            raise FamiliesPresent(f"Vertex {v} has finitely many incoming edges")
        plain = [self.edges[name].source for name in self._plain_in[v]]
        sequences = [self.families[name].sources for name in families]
        threshold = max(seq.threshold for seq in sequences)
        period = 1
        for seq in sequences:
            period = lcm(period, len(seq.period))
        rounds = threshold + period
        values = [seq.at(i) for i in range(1, rounds + 1) for seq in sequences]
        cut = threshold * len(families)
        return EventuallyPeriodic(tuple(plain + values[:cut]), tuple(values[cut:]))

    # Paths

    def path(self, range_vertex: str, refs: Iterable[EdgeRef]) -> Path:
        self._check_vertex(range_vertex)
        vertices = [range_vertex]
        edges = []
        for ref in refs:
            if self.range_of(ref) != vertices[-1]:
                raise PathMismatch(
                    f"Edge {ref} has range {self.range_of(ref)}, expected {vertices[-1]}"
                )
            edges.append(ref)
            vertices.append(self.source_of(ref))
        return Path(tuple(vertices), tuple(edges))

    def edge_path(self, ref: EdgeRef) -> Path:
        return Path((self.range_of(ref), self.source_of(ref)), (ref,))

    def lasso(self, head: Path, cycle: Path) -> LassoPath:
        return lasso_normalize(LassoPath(head, cycle))

    def extend_paths(
        self, start: str, length: int, bound: Optional[int] = None
    ) -> list[Path]:
        """
        All paths α with r(α) = ``start`` and |α| = ``length``, family
        indices limited to ``bound``.
        """
        self._check_vertex(start)
        if length < 0:
            raise PathMismatch(f"Path length must be non-negative, got {length}")
        frontier = [Path.empty(start)]
        for _ in range(length):
            extended = []
            for path in frontier:
                for ref in self.incoming_bounded(path.source, bound):
                    extended.append(
                        Path(path.vertices + (self.source_of(ref),), path.edges + (ref,))
                    )
            frontier = extended
        return frontier

    def closed_paths(self, v: str, length: int, bound: Optional[int] = None) -> list[Path]:
        return [p for p in self.extend_paths(v, length, bound) if p.source == v]

    def enumerate_lassos(
        self,
        max_size: int,
        bound: Optional[int] = None,
        roots: Optional[Iterable[str]] = None,
    ) -> list[LassoPath]:
        """
        Canonical lassos with |head| + |cycle| <= ``max_size`` whose range is
        in ``roots`` (every vertex by default), in a deterministic order.
        """
        closed: dict[tuple[str, int], list[Path]] = {}
        found: dict[LassoPath, None] = {}
        for root in sorted(roots) if roots is not None else self.vertices:
            for head_length in range(max_size):
                for head in self.extend_paths(root, head_length, bound):
                    for cycle_length in range(1, max_size - head_length + 1):
                        key = (head.source, cycle_length)
                        if key not in closed:
                            closed[key] = self.closed_paths(head.source, cycle_length, bound)
                        for cycle in closed[key]:
                            found.setdefault(lasso_normalize(LassoPath(head, cycle)), None)
        return list(found)

    # networkx views

    def to_networkx(self) -> nx.MultiDiGraph:
        """
        Plain edges as arrows r(e) -> s(e), the direction paths are read in.
        """
        if self.families:
            raise FamiliesPresent("Families cannot be materialized as a finite graph")
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for edge in self.edges.values():
            graph.add_edge(edge.range, edge.source, key=edge.name)
        return graph

    @cached_property
    def _cycles(self) -> list[Path]:
        collapsed = nx.DiGraph(self.to_networkx())
        cycles = []
        for nodes in nx.simple_cycles(collapsed):
            pivot = nodes.index(min(nodes))
            nodes = nodes[pivot:] + nodes[:pivot]
            closed = nodes + [nodes[0]]
            choices = [
                sorted(
                    name
                    for name in self._plain_in[a]
                    if self.edges[name].source == b
                )
                for a, b in zip(closed, closed[1:])
            ]
            for names in product(*choices):
                cycles.append(Path(tuple(closed), tuple(EdgeRef(n) for n in names)))
        cycles.sort(key=lambda p: (len(p), p.vertices, tuple(str(e) for e in p.edges)))
        return cycles

    def simple_cycles(self) -> list[Path]:
        """
        Every simple cycle, rotated to start at its least vertex.
        """
        if self.families:
            raise FamiliesPresent("simple_cycles needs a graph without families")
        return list(self._cycles)

    def __repr__(self):
        return (
            f"Graph(vertices={len(self.vertices)}, edges={len(self.edges)}, "
            f"families={len(self.families)})"
        )

