"""
Verification of the defining relations in the partial bijection model.

Vertex projections, edge isometries and unitaries are modelled by

    p_x     = (∅_x, 1, ∅_x)
    s_a     = (a, 1, ∅_{s(a)})
    u_{g,x} = (∅_{g·x}, g, ∅_x)

and every relation is checked as an identity of partial maps on lassos.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Optional

from graphs.exceptions import PathMismatch
from graphs.graph import VertexClass
from graphs.paths import EdgeRef, LassoPath
from groupoid.filters import require_row_finite_without_sources
from semigroup.elements import DEFAULT_STATE_BUDGET, ZERO, Element, InverseSemigroup
from semigroup.exceptions import TwistBudgetExceeded

logger = logging.getLogger(__name__)

DEFAULT_TIGHTNESS_LASSO_SIZE = 4


@dataclass(frozen=True)
class RelationRecord:
    relation: str
    instance: dict
    passed: bool
    witness: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "relation": self.relation,
            "instance": dict(self.instance),
            "passed": self.passed,
            "witness": self.witness,
        }

    def __str__(self):
        params = " ".join(f"{k}={v}" for k, v in self.instance.items())
        status = "pass" if self.passed else "FAIL"
        text = f"{self.relation:<10} {params:<40} {status}"
        if self.witness:
            text += f"  witness: {self.witness}"
        return text


@dataclass
class RelationReport:
    kind: str
    depth: int
    records: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(record.passed for record in self.records)

    @property
    def failures(self) -> list[RelationRecord]:
        return [record for record in self.records if not record.passed]

    def add(self, relation: str, passed: bool, witness: Optional[str] = None, **instance):
        instance = {key: str(value) for key, value in instance.items()}
        self.records.append(RelationRecord(relation, instance, passed, witness))

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "depth": self.depth,
            "ok": self.ok,
            "checked": len(self.records),
            "failed": len(self.failures),
            "records": [record.as_dict() for record in self.records],
        }

    def lines(self) -> list[str]:
        return [str(record) for record in self.records]


class CoverKind(str, Enum):
    PARTITION = "partition"
    OVERLAP = "overlap"
    NON_COVER = "non_cover"


@dataclass(frozen=True)
class CoverResult:
    kind: CoverKind
    witness: Optional[str] = None


def _render(value) -> str:
    return "undefined" if value is None else str(value)


def _first_disagreement(
    lhs: Callable[[LassoPath], Optional[LassoPath]],
    rhs: Callable[[LassoPath], Optional[LassoPath]],
    lassos: list[LassoPath],
) -> Optional[str]:
    for omega in lassos:
        try:
            left, right = lhs(omega), rhs(omega)
        except (PathMismatch, TwistBudgetExceeded) as e:
            return f"at {omega}: {e.detail}"
        if left != right:
            return f"at {omega}: {_render(left)} vs {_render(right)}"
    return None


class RelationChecker:
    def __init__(self, triple, depth: int, lassos: list[LassoPath], state_budget: int):
        self.triple = triple
        self.graph = triple.graph
        self.group = triple.group
        self.semigroup = InverseSemigroup(triple, state_budget)
        self.depth = depth
        self.lassos = lassos

    def as_map(self, build: Callable[[], Element]):
        """
        The partial map of a lazily built element; building errors surface
        when the map is first applied.
        """
        cache = []

        def apply(omega: LassoPath):
            if not cache:
                cache.append(build())
            return self.semigroup.apply(cache[0], omega)

        return apply

    def p(self, x: str):
        return self.semigroup.vertex_projection(x)

    def s(self, ref: EdgeRef):
        return self.semigroup.edge_isometry(ref)

    def u(self, g: int, x: str):
        return self.semigroup.unitary(g, x)

    def u_total(self, g: int, omega: LassoPath) -> Optional[LassoPath]:
        return self.semigroup.apply(self.u(g, omega.range), omega)

    def compare(self, report, relation, lhs: Callable, rhs: Callable, **instance):
        witness = _first_disagreement(self.as_map(lhs), self.as_map(rhs), self.lassos)
        report.add(relation, witness is None, witness, **instance)

    def compare_maps(self, report, relation, lhs: Callable, rhs: Callable, **instance):
        witness = _first_disagreement(lhs, rhs, self.lassos)
        report.add(relation, witness is None, witness, **instance)


def _edge_refs(graph, bound: int) -> list[EdgeRef]:
    refs = [EdgeRef(name) for name in sorted(graph.edges)]
    for name in sorted(graph.families):
        refs.extend(EdgeRef(name, i) for i in range(1, bound + 1))
    return refs


def verify_relations(
    triple,
    depth: int,
    *,
    lasso_size: Optional[int] = None,
    family_bound: Optional[int] = None,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> RelationReport:
    """
    Check the Cuntz-Krieger relations, the unitary relations (i), (ii),
    (c), (d), (e) and the assembled unitaries u_g on every lasso of
    description size <= ``lasso_size`` (default ``depth``), with edge
    families cut at index ``family_bound`` (default ``depth``).

    A triple that breaks the axioms can still be checked; a path that fails
    to concatenate while evaluating a relation counts as a failure.
    """
    if not triple.sealed:
        logger.warning("Relations requested for a triple that failed validation")
    bound = family_bound or depth
    graph = triple.graph
    lassos = graph.enumerate_lassos(lasso_size or depth, bound=bound)
    checker = RelationChecker(triple, depth, lassos, state_budget)
    semigroup = checker.semigroup
    mult, star = semigroup.multiply, semigroup.star
    group = triple.group
    name = group.name_of
    edges = _edge_refs(graph, bound)
    elements = triple.elements_within(depth)
    report = RelationReport("relations", depth)
    logger.info(
        f"Checking relations on {len(lassos)} lassos, {len(edges)} edges, "
        f"{len(elements)} group elements"
    )

    for x, y in product(graph.vertices, graph.vertices):
        expected = (lambda x=x: checker.p(x)) if x == y else (lambda: ZERO)
        checker.compare(
            report, "CK-0", lambda x=x, y=y: mult(checker.p(x), checker.p(y)), expected, x=x, y=y
        )

    for a in edges:
        source = graph.source_of(a)
        checker.compare(
            report,
            "CK-1",
            lambda a=a: mult(star(checker.s(a)), checker.s(a)),
            lambda source=source: checker.p(source),
            a=a,
        )
        r = graph.range_of(a)
        range_projection = checker.as_map(lambda a=a: mult(checker.s(a), star(checker.s(a))))
        witness = _first_disagreement(
            range_projection,
            lambda omega, r=r, f=range_projection: (
                None if f(omega) is None else semigroup.apply(checker.p(r), omega)
            ),
            lassos,
        )
        report.add("CK-2", witness is None, witness, a=a)

    for x in graph.vertices:
        if graph.is_boundary(x) or graph.vertex_class(x) != VertexClass.REGULAR:
            continue
        projections = [
            (a, mult(checker.s(a), star(checker.s(a)))) for a in graph.incoming_finite(x)
        ]
        witness = None
        for omega in (omega for omega in lassos if omega.range == x):
            hits = [a for a, e in projections if semigroup.apply(e, omega) is not None]
            if len(hits) != 1:
                witness = f"at {omega}: covered by {[str(a) for a in hits]}"
                break
        report.add("CK-3", witness is None, witness, x=x)

    for a, b in product(edges, edges):
        if a == b or graph.range_of(a) != graph.range_of(b):
            continue
        checker.compare(
            report,
            "CK-4",
            lambda a=a, b=b: mult(
                mult(checker.s(a), star(checker.s(a))), mult(checker.s(b), star(checker.s(b)))
            ),
            lambda: ZERO,
            a=a,
            b=b,
        )

    act = triple.act_vertex
    for g, x in product(elements, graph.vertices):
        gx = act(g, x)
        checker.compare(
            report,
            "(i)",
            lambda g=g, x=x: mult(checker.u(g, x), star(checker.u(g, x))),
            lambda gx=gx: checker.p(gx),
            g=name(g),
            x=x,
        )
        checker.compare(
            report,
            "(ii)",
            lambda g=g, x=x: mult(star(checker.u(g, x)), checker.u(g, x)),
            lambda x=x: checker.p(x),
            g=name(g),
            x=x,
        )
        checker.compare(
            report,
            "(e)",
            lambda g=g, x=x: mult(checker.u(g, x), checker.p(x)),
            lambda g=g, x=x, gx=gx: mult(checker.p(gx), checker.u(g, x)),
            g=name(g),
            x=x,
        )

    for g, h, x in product(elements, elements, graph.vertices):
        gh = group.multiply(g, h)
        pulled = act(group.inverse(h), x)
        checker.compare(
            report,
            "(c)",
            lambda gh=gh, pulled=pulled: checker.u(gh, pulled),
            lambda g=g, h=h, x=x, pulled=pulled: mult(checker.u(g, x), checker.u(h, pulled)),
            g=name(g),
            h=name(h),
            x=x,
        )

    for g, a in product(elements, edges):
        checker.compare(
            report,
            "(d)",
            lambda g=g, a=a: mult(checker.u(g, graph.range_of(a)), checker.s(a)),
            lambda g=g, a=a: mult(
                checker.s(triple.act_edge(g, a)),
                checker.u(triple.cocycle_edge(g, a), graph.source_of(a)),
            ),
            g=name(g),
            a=a,
        )

    _check_unitaries(checker, report, elements, edges)
    logger.info(
        f"Relations checked: {len(report.records)} instance(s), {len(report.failures)} failure(s)"
    )
    return report


def _check_unitaries(checker: RelationChecker, report, elements, edges):
    triple = checker.triple
    graph = checker.graph
    group = checker.group
    semigroup = checker.semigroup
    name = group.name_of

    for g in elements:
        witness = None
        for omega in checker.lassos:
            try:
                domains = [
                    x for x in graph.vertices
                    if semigroup.apply(checker.u(g, x), omega) is not None
                ]
                ranges = [
                    x for x in graph.vertices
                    if semigroup.apply(semigroup.star(checker.u(g, x)), omega) is not None
                ]
            except (PathMismatch, TwistBudgetExceeded) as e:
                witness = f"at {omega}: {e.detail}"
                break
            if len(domains) != 1 or len(ranges) != 1:
                witness = f"at {omega}: domains {domains}, ranges {ranges}"
                break
        report.add("R1", witness is None, witness, g=name(g))

    for g, h in product(elements, elements):
        checker.compare_maps(
            report,
            "R2",
            lambda omega, g=g, h=h: _then(checker, g, checker.u_total(h, omega)),
            lambda omega, g=g, h=h: checker.u_total(group.multiply(g, h), omega),
            g=name(g),
            h=name(h),
        )

    for g, x in product(elements, graph.vertices):
        checker.compare_maps(
            report,
            "R3",
            lambda omega, g=g, x=x: semigroup.apply(checker.u(g, x), omega),
            lambda omega, g=g, x=x: checker.u_total(g, omega) if omega.range == x else None,
            g=name(g),
            x=x,
        )

    for g, a in product(elements, edges):
        moved = triple.act_edge(g, a)
        twist = triple.cocycle_edge(g, a)
        checker.compare_maps(
            report,
            "R5",
            lambda omega, g=g, a=a: _then(
                checker, g, semigroup.apply(checker.s(a), omega)
            ),
            lambda omega, moved=moved, twist=twist: _through(
                semigroup, checker.s(moved), checker.u_total(twist, omega)
            ),
            g=name(g),
            a=a,
        )


def _then(checker: RelationChecker, g: int, omega: Optional[LassoPath]):
    return None if omega is None else checker.u_total(g, omega)


def _through(semigroup: InverseSemigroup, element, omega: Optional[LassoPath]):
    return None if omega is None else semigroup.apply(element, omega)


def check_cover(triple, idempotent, cover: list, depth: int) -> CoverResult:
    """
    Classify a finite family of idempotents below ``idempotent`` as a
    partition of its cylinder, an overlapping cover or not a cover, judged
    on the lassos of the cylinder up to description size ``depth``.
    """
    semigroup = InverseSemigroup(triple)
    for f in cover:
        if not semigroup.is_idempotent(f) or not semigroup.leq(f, idempotent):
            return CoverResult(CoverKind.NON_COVER, f"{f} is not below {idempotent}")
    gamma = idempotent.alpha
    lassos = [
        omega.prepend(gamma)
        for omega in triple.graph.enumerate_lassos(depth, bound=depth, roots=[gamma.source])
    ]
    overlap = None
    for omega in lassos:
        hits = [f for f in cover if f is not ZERO and semigroup.apply(f, omega) is not None]
        if not hits:
            return CoverResult(CoverKind.NON_COVER, f"{omega} is not covered")
        if len(hits) > 1 and overlap is None:
            overlap = f"{omega} lies in {', '.join(str(f) for f in hits)}"
    if overlap is None:
        for f, h in product(cover, cover):
            if f is not h and f != h and semigroup.intersects(f, h):
                overlap = f"{f} meets {h}"
                break
    if overlap is not None:
        return CoverResult(CoverKind.OVERLAP, overlap)
    return CoverResult(CoverKind.PARTITION)


def verify_tightness(
    triple, depth: int, lasso_size: int = DEFAULT_TIGHTNESS_LASSO_SIZE
) -> RelationReport:
    """
    For every idempotent (γ, 1, γ) with |γ| < ``depth``, the one-level cover
    {(γa, 1, γa) : a ∈ r^-1(s(γ))} must be mapped to a partition of Z(γ).
    """
    require_row_finite_without_sources(triple)
    semigroup = InverseSemigroup(triple)
    graph = triple.graph
    report = RelationReport("tightness", depth)
    for root in graph.vertices:
        for length in range(depth):
            for gamma in graph.extend_paths(root, length):
                e = semigroup.idempotent(gamma)
                cover = [
                    semigroup.idempotent(gamma.concat(graph.edge_path(a)))
                    for a in graph.incoming_finite(gamma.source)
                ]
                result = check_cover(triple, e, cover, lasso_size)
                report.add(
                    "tight-cover",
                    result.kind == CoverKind.PARTITION,
                    result.witness,
                    idempotent=str(e),
                    cover=len(cover),
                )
    logger.info(f"Tightness checked on {len(report.records)} cover(s)")
    return report
