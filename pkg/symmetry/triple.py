import logging
from dataclasses import dataclass
from typing import Optional

from graphs.graph import Graph, VertexClass
from graphs.paths import EdgeRef, Path
from symmetry.actions import GeneratorSpec, build_symmetry
from symmetry.exceptions import InvalidTriple
from symmetry.groups import GroupBackend

logger = logging.getLogger(__name__)

DEFAULT_WORD_BUDGET = 6


@dataclass(frozen=True)
class Stabilizer:
    """
    Finite groups list the stabilizer; for the integers it is
    ``modulus``·Z.
    """

    elements: Optional[tuple] = None
    modulus: Optional[int] = None

    def contains(self, g: int) -> bool:
        if self.elements is not None:
            return g in self.elements
        return g % self.modulus == 0

    def generators(self, identity: int) -> list[int]:
        if self.elements is not None:
            return [g for g in self.elements if g != identity]
        return [self.modulus]


@dataclass(frozen=True)
class SingularOrbit:
    representative: str
    kind: VertexClass
    vertices: tuple


class Triple:
    """
    A graph, a group acting on it by automorphisms and a 1-cocycle.

    Validation runs on construction. With ``strict`` (the default) a triple
    that violates an axiom is rejected; otherwise it is kept unsealed, which
    is how deliberately broken triples are built for negative checks.
    """

    def __init__(
        self,
        graph: Graph,
        group: GroupBackend,
        generators: Optional[dict] = None,
        *,
        word_budget: int = DEFAULT_WORD_BUDGET,
        strict: bool = True,
        meta: Optional[dict] = None,
    ):
        from symmetry.validation import validate

        self.graph = graph
        self.group = group
        self.generator_data = dict(generators or {})
        self.meta = dict(meta or {})
        self.symmetry = build_symmetry(graph, group, self.generator_data)
        self.report = validate(self, word_budget)
        self.sealed = self.report.ok
        if not self.sealed:
            logger.warning(
                f"Triple failed validation with {len(self.report.violations)} violation(s)"
            )
            if strict:
                raise InvalidTriple(self.report)

    @property
    def identity(self) -> int:
        return self.group.identity

    def generator_elements(self) -> list[int]:
        return sorted(self.symmetry.generators)

    def elements_within(self, budget: int) -> list[int]:
        return self.group.elements_within(budget)

    # Action on vertices, edges and paths

    def act_vertex(self, g: int, v: str) -> str:
        return self.symmetry.vertex(g, v)

    def act_edge(self, g: int, ref: EdgeRef) -> EdgeRef:
        if ref.index is None:
            return EdgeRef(self.symmetry.edge(g, ref.name))
        return EdgeRef(self.symmetry.family(g, ref.name), ref.index)

    def cocycle_edge(self, g: int, ref: EdgeRef) -> int:
        if ref.index is None:
            return self.symmetry.edge_cocycle(g, ref.name)
        return self.symmetry.family_cocycle(g, ref.name).at(ref.index)

    def act_and_cocycle(self, g: int, path: Path) -> tuple[Path, int]:
        """
        The twisted extension g·(aβ) = (g·a)(φ(g,a)·β) together with
        φ(g, path).
        """
        vertices = [self.act_vertex(g, path.range)]
        edges = []
        twist = g
        for ref in path.edges:
            image = self.act_edge(twist, ref)
            edges.append(image)
            vertices.append(self.graph.source_of(image))
            twist = self.cocycle_edge(twist, ref)
        return Path(tuple(vertices), tuple(edges)), twist

    def act_path(self, g: int, path: Path) -> Path:
        return self.act_and_cocycle(g, path)[0]

    def cocycle_path(self, g: int, path: Path) -> int:
        twist = g
        for ref in path.edges:
            twist = self.cocycle_edge(twist, ref)
        return twist

    # Orbits

    def orbit(self, v: str) -> list[str]:
        if self.group.is_finite:
            return sorted({self.act_vertex(g, v) for g in self.group.elements()})
        seen = [v]
        current = self.act_vertex(1, v)
        while current != v:
            seen.append(current)
            current = self.act_vertex(1, current)
        return sorted(seen)

    def stabilizer(self, v: str) -> Stabilizer:
        if self.group.is_finite:
            return Stabilizer(
                elements=tuple(g for g in self.group.elements() if self.act_vertex(g, v) == v)
            )
        return Stabilizer(modulus=len(self.orbit(v)))

    def transversal(self, x: str, y: str) -> Optional[int]:
        """
        The least group element mapping ``x`` to ``y`` (least non-negative
        integer for the integers).
        """
        if self.group.is_finite:
            for g in self.group.elements():
                if self.act_vertex(g, x) == y:
                    return g
            return None
        current = x
        for n in range(len(self.graph.vertices) + 1):
            if current == y:
                return n
            current = self.act_vertex(1, current)
        return None

    def singular_orbits(self) -> list[SingularOrbit]:
        """
        Orbits of sources and infinite receivers, each represented by its
        least vertex. Boundary vertices are never singular.
        """
        result = []
        seen: set[str] = set()
        for v in self.graph.singular_vertices():
            if v in seen:
                continue
            orbit = tuple(self.orbit(v))
            seen.update(orbit)
            result.append(SingularOrbit(orbit[0], self.graph.vertex_class(orbit[0]), orbit))
        return result

    def __repr__(self):
        return f"Triple({self.graph!r}, group={self.group.kind}, sealed={self.sealed})"


__all__ = ["Triple", "Stabilizer", "SingularOrbit", "GeneratorSpec"]
