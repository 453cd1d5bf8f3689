import logging
from itertools import product
from typing import Optional

import networkx as nx

from desingularization.exceptions import TruncationTooShallow
from desingularization.tails import DesingularizedTriple
from graphs.exceptions import PathMismatch
from graphs.graph import VertexClass
from graphs.paths import EdgeRef, LassoPath, Path
from groupoid.relations import RelationChecker, RelationReport
from semigroup.elements import (
    DEFAULT_STATE_BUDGET,
    ZERO,
    Element,
    InverseSemigroup,
    SElement,
)
from semigroup.exceptions import TwistBudgetExceeded

logger = logging.getLogger(__name__)


class CornerMap:
    """
    Translation of paths and elements of the base triple into a truncation
    of its desingularization: a removed edge b_j into a receiver y becomes
    y~e1 ... y~e{j-1} y~f{j}; every other edge is kept.

    ``overrides`` replaces the image of single edges (edge id to a list of
    edge ids), which is how broken corners are built for negative checks.
    """

    def __init__(
        self,
        desingularized: DesingularizedTriple,
        depth: int,
        overrides: Optional[dict] = None,
    ):
        self.desingularized = desingularized
        self.base = desingularized.base
        self.depth = depth
        self.target = desingularized.truncate(depth)
        self.overrides = {
            EdgeRef.parse(key): [EdgeRef.parse(name) for name in value]
            for key, value in (overrides or {}).items()
        }
        self._receivers = {
            copy.vertex: copy
            for tail, copy in desingularized.copies()
            if tail.is_receiver
        }

    @property
    def base_vertices(self) -> tuple:
        return self.base.graph.vertices

    def image(self, ref: EdgeRef) -> Path:
        graph = self.target.graph
        r = self.base.graph.range_of(ref)
        if ref in self.overrides:
            return graph.path(r, self.overrides[ref])
        if r not in self._receivers:
            return graph.edge_path(ref)
        copy = self._receivers[r]
        group = self.base.group
        tail, _ = self.desingularized.tail_of(r)
        pulled = self.base.act_edge(group.inverse(copy.transversal), ref)
        j = self.base.graph.incoming_position(tail.representative, pulled)
        if j > self.depth:
            raise TruncationTooShallow(
                f"{ref} translates to a path through position {j}, beyond depth {self.depth}"
            )
        return self.desingularized.alpha_path(self.depth, r, j)

    def translate_path(self, path: Path) -> Path:
        result = Path.empty(path.range)
        for ref in path.edges:
            result = result.concat(self.image(ref))
        return result

    def translate_lasso(self, omega: LassoPath) -> LassoPath:
        return LassoPath(
            self.translate_path(omega.head), self.translate_path(omega.cycle)
        ).normalized()

    def translate_element(self, s: Element) -> Element:
        if s is ZERO:
            return ZERO
        return SElement(
            self.translate_path(s.alpha), s.g, self.translate_path(s.beta), self.target
        )

    def alpha_table(self) -> list[dict]:
        return self.desingularized.alpha_table(self.depth)


def _edges_of(graph, bound: int) -> list[EdgeRef]:
    refs = [EdgeRef(name) for name in sorted(graph.edges)]
    for name in sorted(graph.families):
        refs.extend(EdgeRef(name, i) for i in range(1, bound + 1))
    return refs


def _reachable_from(graph, roots) -> set[str]:
    view = graph.to_networkx()
    reached = set(roots)
    for root in roots:
        reached |= nx.descendants(view, root)
    return reached


def verify_corner(
    desingularized: DesingularizedTriple,
    corner: CornerMap,
    depth: int,
    lasso_size: Optional[int] = None,
) -> RelationReport:
    """
    Check the corner of the truncated desingularization against the base
    triple: translated Cuntz-Krieger relations on base-rooted lassos, the
    Cuntz-Krieger partition at every vertex of the truncation, the two
    intertwining identities for unitaries, coherence of the cocycle on
    translated edges and fullness of the corner.
    """
    base = desingularized.base
    target = corner.target
    graph = target.graph
    base_graph = base.graph
    size = lasso_size or depth
    base_lassos = graph.enumerate_lassos(size, roots=corner.base_vertices)
    checker = RelationChecker(target, depth, base_lassos, DEFAULT_STATE_BUDGET)
    semigroup: InverseSemigroup = checker.semigroup
    mult, star = semigroup.multiply, semigroup.star
    group = base.group
    name = group.name_of
    report = RelationReport("corner", depth)
    bound = min(depth, corner.depth)
    edges = [
        ref for ref in _edges_of(base_graph, bound) if _translatable(corner, ref)
    ]
    translated = {ref: corner.translate_element(_isometry(base, ref)) for ref in edges}

    for a in edges:
        checker.compare(
            report,
            "T-CK-1",
            lambda a=a: mult(star(translated[a]), translated[a]),
            lambda a=a: checker.p(base_graph.source_of(a)),
            a=a,
        )
        r = base_graph.range_of(a)
        projection = checker.as_map(lambda a=a: mult(translated[a], star(translated[a])))
        checker.compare_maps(
            report,
            "T-CK-2",
            projection,
            lambda omega, r=r, f=projection: (
                None if f(omega) is None else semigroup.apply(checker.p(r), omega)
            ),
            a=a,
        )
    for a, b in product(edges, edges):
        if a == b or base_graph.range_of(a) != base_graph.range_of(b):
            continue
        checker.compare(
            report,
            "T-CK-4",
            lambda a=a, b=b: mult(
                mult(translated[a], star(translated[a])),
                mult(translated[b], star(translated[b])),
            ),
            lambda: ZERO,
            a=a,
            b=b,
        )
    for x in base_graph.vertices:
        if base_graph.is_boundary(x) or base_graph.vertex_class(x) != VertexClass.REGULAR:
            continue
        parts = [
            mult(translated[a], star(translated[a])) for a in base_graph.incoming_finite(x)
        ]
        report.add("T-CK-3", *_partition_witness(semigroup, parts, base_lassos, x), x=x)

    all_lassos = graph.enumerate_lassos(size)
    for v in graph.vertices:
        if graph.is_boundary(v) or graph.vertex_class(v) != VertexClass.REGULAR:
            continue
        parts = [
            mult(checker.s(a), star(checker.s(a))) for a in graph.incoming_finite(v)
        ]
        report.add("F-CK-3", *_partition_witness(semigroup, parts, all_lassos, v), v=v)

    elements = base.elements_within(depth)
    for g, x in product(elements, base_graph.vertices):
        gx = base.act_vertex(g, x)
        checker.compare_maps(
            report,
            "intertwine-1",
            lambda omega, g=g, x=x: _after(
                checker, g, semigroup.apply(checker.p(x), omega)
            ),
            lambda omega, g=g, gx=gx: _via(
                semigroup, checker.p(gx), checker.u_total(g, omega)
            ),
            g=name(g),
            x=x,
        )
    for g, a in product(elements, edges):
        moved = base.act_edge(g, a)
        twist = base.cocycle_edge(g, a)
        if moved not in translated:
            witness = f"{moved} has no image at depth {corner.depth}"
            report.add("intertwine-2", False, witness, g=name(g), a=a)
            continue
        checker.compare_maps(
            report,
            "intertwine-2",
            lambda omega, g=g, a=a: _after(checker, g, semigroup.apply(translated[a], omega)),
            lambda omega, moved=moved, twist=twist: _via(
                semigroup, translated[moved], checker.u_total(twist, omega)
            ),
            g=name(g),
            a=a,
        )
        image = corner.image(a)
        witness = None
        if target.cocycle_path(g, image) != twist:
            witness = (
                f"φ̂({name(g)}, {image}) = {name(target.cocycle_path(g, image))} "
                f"but φ({name(g)}, {a}) = {name(twist)}"
            )
        elif target.act_path(g, image) != corner.image(moved):
            witness = f"{name(g)}·{image} differs from the image of {moved}"
        report.add("cocycle-coherence", witness is None, witness, g=name(g), a=a)

    reached = _reachable_from(graph, corner.base_vertices)
    missing = [v for v in graph.vertices if v not in reached]
    report.add(
        "fullness",
        not missing,
        f"unreachable from the base: {missing}" if missing else None,
        vertices=len(graph.vertices),
    )
    logger.info(
        f"Corner checked: {len(report.records)} instance(s), {len(report.failures)} failure(s)"
    )
    return report


def _translatable(corner: CornerMap, ref: EdgeRef) -> bool:
    try:
        corner.image(ref)
    except TruncationTooShallow:
        return False
    return True


def _isometry(base, ref: EdgeRef) -> SElement:
    return InverseSemigroup(base).edge_isometry(ref)


def _after(checker: RelationChecker, g: int, omega: Optional[LassoPath]):
    return None if omega is None else checker.u_total(g, omega)


def _via(semigroup: InverseSemigroup, element, omega: Optional[LassoPath]):
    return None if omega is None else semigroup.apply(element, omega)


def _partition_witness(semigroup, parts, lassos, root) -> tuple[bool, Optional[str]]:
    for omega in lassos:
        if omega.range != root:
            continue
        try:
            hits = [e for e in parts if semigroup.apply(e, omega) is not None]
        except (PathMismatch, TwistBudgetExceeded) as e:
            return False, f"at {omega}: {e.detail}"
        if len(hits) != 1:
            return False, f"at {omega}: covered {len(hits)} times"
    return True, None
