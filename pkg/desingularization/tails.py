"""
Equivariant tails at sources and infinite receivers.

Every vertex y of a singular orbit with representative x gets a tail

    y <-e1- y~v1 <-e2- y~v2 <- ...

and, when y is an infinite receiver, the incoming edges b_j = g_y·a_j of y
are replaced by edges y~f{j} from s(b_j) into y~v{j-1}. Here a_1, a_2, ...
is the canonical enumeration of the edges into x and g_y is the least group
element with g_y·x = y. The group moves tails along with their base vertex,
acts trivially on tail indices, and the cocycle is φ̂(k, y~e_i) = k and
φ̂(k, y~f_j) = φ(k, b_j).

Past the threshold P the tails repeat with period π, so a truncation at N
can be folded: the boundary vertex y~v_N behaves like y~v_{N-π}.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from math import lcm
from typing import Optional

from desingularization.exceptions import IncompatibleStabilizer, TruncationTooShallow
from graphs.exceptions import InvalidGraph
from graphs.graph import Edge, Graph, VertexClass
from graphs.paths import EdgeRef, Path
from symmetry.actions import GeneratorSpec
from symmetry.exceptions import InvalidTriple
from symmetry.triple import DEFAULT_WORD_BUDGET, Triple

logger = logging.getLogger(__name__)


def tail_vertex(y: str, i: int) -> str:
    return y if i == 0 else f"{y}~v{i}"


def tail_edge(y: str, i: int) -> str:
    return f"{y}~e{i}"


def tail_family_edge(y: str, j: int) -> str:
    return f"{y}~f{j}"


@dataclass(frozen=True)
class TailCopy:
    vertex: str
    transversal: int


@dataclass(frozen=True)
class TailDescriptor:
    kind: VertexClass
    representative: str
    copies: tuple

    @property
    def is_receiver(self) -> bool:
        return self.kind == VertexClass.INFINITE_RECEIVER


class DesingularizedTriple:
    def __init__(
        self,
        base: Triple,
        tails: list[TailDescriptor],
        threshold: int,
        period: int,
        word_budget: int = DEFAULT_WORD_BUDGET,
    ):
        self.base = base
        self.tails = tuple(tails)
        self.threshold = threshold
        self.period = period
        self.word_budget = word_budget
        self._copies = {
            copy.vertex: (tail, copy) for tail in self.tails for copy in tail.copies
        }
        self._truncations: dict[int, Triple] = {}

    @property
    def is_trivial(self) -> bool:
        return not self.tails

    @property
    def min_depth(self) -> int:
        """
        Smallest truncation whose boundary can be folded.
        """
        return self.threshold + self.period

    @property
    def safe_depth(self) -> int:
        return self.threshold + 2 * self.period + 1

    def copies(self) -> list[tuple[TailDescriptor, TailCopy]]:
        return [self._copies[y] for y in sorted(self._copies)]

    def tail_of(self, y: str) -> tuple[TailDescriptor, TailCopy]:
        return self._copies[y]

    # Removed edges and their replacements

    def incoming_edge(self, x: str, j: int) -> EdgeRef:
        """
        a_j: the j-th edge of the canonical enumeration of r^-1(x).
        """
        return self.base.graph.incoming_prefix(x, j)[j - 1]

    def removed_edge(self, y: str, j: int) -> EdgeRef:
        tail, copy = self._copies[y]
        return self.base.act_edge(copy.transversal, self.incoming_edge(tail.representative, j))

    def family_edge_source(self, y: str, j: int) -> str:
        return self.base.graph.source_of(self.removed_edge(y, j))

    def family_edge_cocycle(self, k: int, y: str, j: int) -> int:
        return self.base.cocycle_edge(k, self.removed_edge(y, j))

    def alpha_names(self, y: str, j: int) -> list[str]:
        return [tail_edge(y, i) for i in range(1, j)] + [tail_family_edge(y, j)]

    def alpha_table(self, depth: int) -> list[dict]:
        rows = []
        for tail, copy in self.copies():
            if not tail.is_receiver:
                continue
            for j in range(1, depth + 1):
                rows.append(
                    {
                        "vertex": copy.vertex,
                        "j": j,
                        "removed": str(self.removed_edge(copy.vertex, j)),
                        "alpha": ".".join(self.alpha_names(copy.vertex, j)),
                    }
                )
        return rows

    # Tail positions and the fold

    def tail_position(self, v: str) -> Optional[tuple[str, int]]:
        head, marker, index = v.rpartition("~v")
        if marker and head in self._copies and index.isdigit():
            return head, int(index)
        return None

    def canonical(self, v: str) -> str:
        """
        The vertex with the same future as ``v`` among the first P + π tail
        positions.
        """
        position = self.tail_position(v)
        if position is None:
            return v
        y, i = position
        limit = self.threshold + self.period
        if i <= limit:
            return v
        return tail_vertex(y, self.threshold + (i - self.threshold - 1) % self.period + 1)

    def fold(self, depth: int) -> dict[str, str]:
        if depth < self.min_depth:
            raise TruncationTooShallow(
                f"Folding needs depth >= {self.min_depth}, got {depth}"
            )
        return {
            tail_vertex(y, depth): tail_vertex(y, depth - self.period)
            for y in sorted(self._copies)
        }

    # Truncation

    def truncate(self, depth: int) -> Triple:
        """
        The finite triple with tail positions 1..``depth``. The last vertex of
        every tail is marked as boundary.
        """
        if depth < 1:
            raise TruncationTooShallow(f"Truncation depth must be >= 1, got {depth}")
        if self.is_trivial:
            return self.base
        if depth in self._truncations:
            return self._truncations[depth]

        graph = self.base.graph
        receivers = {y for y, (tail, _) in self._copies.items() if tail.is_receiver}
        kept = [edge for edge in graph.edges.values() if edge.range not in receivers]
        vertices = list(graph.vertices)
        edges = list(kept)
        boundary = []
        for tail, copy in self.copies():
            y = copy.vertex
            for i in range(1, depth + 1):
                vertices.append(tail_vertex(y, i))
                edges.append(Edge(tail_edge(y, i), tail_vertex(y, i - 1), tail_vertex(y, i)))
            if tail.is_receiver:
                for j in range(1, depth + 1):
                    edges.append(
                        Edge(
                            tail_family_edge(y, j),
                            tail_vertex(y, j - 1),
                            self.family_edge_source(y, j),
                        )
                    )
            boundary.append(tail_vertex(y, depth))

        counts = Counter(edge.name for edge in edges)
        clashes = (set(vertices[len(graph.vertices) :]) & set(graph.vertices)) | {
            name for name, seen in counts.items() if seen > 1
        }
        if clashes:
            logger.error(f"Tail names collide with existing names: {sorted(clashes)}")
            raise InvalidGraph(f"Tail names collide with existing names: {sorted(clashes)}")

        truncated = Graph(vertices, edges, (), boundary)
        generators = {
            k: self._generator_spec(k, depth, kept) for k in self.base.generator_elements()
        }
        meta = {**self.base.meta, "truncation_depth": depth}
        triple = Triple(
            truncated, self.base.group, generators, word_budget=self.word_budget, meta=meta
        )
        logger.debug(
            f"Truncated at depth {depth}: {len(truncated.vertices)} vertices, "
            f"{len(truncated.edges)} edges"
        )
        self._truncations[depth] = triple
        return triple

    def _generator_spec(self, k: int, depth: int, kept: list[Edge]) -> GeneratorSpec:
        base = self.base
        symmetry = base.symmetry
        vertices = {v: symmetry.vertex(k, v) for v in base.graph.vertices}
        edges = {edge.name: symmetry.edge(k, edge.name) for edge in kept}
        cocycle = {edge.name: symmetry.edge_cocycle(k, edge.name) for edge in kept}
        for tail, copy in self.copies():
            y = copy.vertex
            ky = base.act_vertex(k, y)
            for i in range(1, depth + 1):
                vertices[tail_vertex(y, i)] = tail_vertex(ky, i)
                edges[tail_edge(y, i)] = tail_edge(ky, i)
                cocycle[tail_edge(y, i)] = k
            if tail.is_receiver:
                for j in range(1, depth + 1):
                    edges[tail_family_edge(y, j)] = tail_family_edge(ky, j)
                    cocycle[tail_family_edge(y, j)] = self.family_edge_cocycle(k, y, j)
        return GeneratorSpec(vertices=vertices, edges=edges, edge_cocycle=cocycle)

    def alpha_path(self, depth: int, y: str, j: int) -> Path:
        if j > depth:
            raise TruncationTooShallow(f"a_{j} at {y} needs depth >= {j}, got {depth}")
        graph = self.truncate(depth).graph
        return graph.path(y, [EdgeRef(name) for name in self.alpha_names(y, j)])

    def tails_as_dict(self) -> list[dict]:
        name = self.base.group.name_of
        return [
            {
                "kind": tail.kind.value,
                "representative": tail.representative,
                "copies": [
                    {"vertex": copy.vertex, "transversal": name(copy.transversal)}
                    for copy in tail.copies
                ],
                "threshold": self.threshold,
                "period": self.period,
            }
            for tail in self.tails
        ]


def _check_stabilizer(triple: Triple, x: str):
    graph = triple.graph
    symmetry = triple.symmetry
    stabilizer = triple.stabilizer(x)
    plain = [ref for ref in graph.incoming_bounded(x, 1) if not ref.is_indexed]
    families = sorted(f.name for f in graph.families.values() if f.range == x)
    for h in stabilizer.generators(triple.identity):
        for ref in plain:
            if symmetry.edge(h, ref.name) != ref.name:
                raise_incompatible(triple, x, h, graph.incoming_position(x, ref))
        for name in families:
            if symmetry.family(h, name) != name:
                raise_incompatible(
                    triple, x, h, graph.incoming_position(x, EdgeRef(name, 1))
                )


def raise_incompatible(triple: Triple, x: str, h: int, j: int):
    h_name = triple.group.name_of(h)
    logger.error(f"Stabilizer element {h_name} of {x} moves incoming edge a_{j}")
    raise IncompatibleStabilizer(x, h_name, j)


def _receiver_periodicity(triple: Triple, x: str) -> tuple[int, int]:
    """
    Threshold and period of everything the tails of x depend on: sources of
    the removed edges and the cocycle on them.
    """
    graph = triple.graph
    plain = [ref for ref in graph.incoming_bounded(x, 1) if not ref.is_indexed]
    into_x = [f for f in graph.families.values() if f.range == x]
    sequences = [family.sources for family in graph.families.values()]
    for k in triple.generator_elements():
        sequences.extend(
            triple.symmetry.family_cocycle(k, name) for name in graph.families
        )
    threshold = max((seq.threshold for seq in sequences), default=0)
    period = lcm(1, *(len(seq.period) for seq in sequences))
    return len(plain) + len(into_x) * threshold, len(into_x) * period


def desingularize(
    triple: Triple, word_budget: int = DEFAULT_WORD_BUDGET
) -> DesingularizedTriple:
    """
    Attach tails to every vertex of every singular orbit of a sealed triple.
    """
    if not triple.sealed:
        logger.error("Desingularization needs a triple that passed validation")
        raise InvalidTriple(triple.report)

    tails = []
    threshold, period = 0, 1
    for orbit in triple.singular_orbits():
        x = orbit.representative
        copies = tuple(
            TailCopy(y, triple.transversal(x, y)) for y in orbit.vertices
        )
        tail = TailDescriptor(orbit.kind, x, copies)
        if tail.is_receiver:
            _check_stabilizer(triple, x)
            orbit_threshold, orbit_period = _receiver_periodicity(triple, x)
            threshold = max(threshold, orbit_threshold)
            period = lcm(period, orbit_period)
        tails.append(tail)
        logger.debug(f"Tail for {orbit.kind.value} orbit of {x}: {len(copies)} cop(ies)")

    logger.info(
        f"Desingularized: {len(tails)} singular orbit(s), threshold {threshold}, period {period}"
    )
    return DesingularizedTriple(triple, tails, threshold, period, word_budget)
