import logging
from dataclasses import dataclass, field
from itertools import product

from symmetry.actions import Violation

logger = logging.getLogger(__name__)

MAX_VIOLATIONS = 200


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom: str, message: str, **witness):
        if len(self.violations) < MAX_VIOLATIONS:
            self.violations.append(Violation(axiom, witness, message))

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"axiom": v.axiom, "witness": v.witness, "message": v.message}
                for v in self.violations
            ],
            "notes": list(self.notes),
        }


def validate(triple, word_budget: int) -> ValidationReport:
    """
    Check every axiom of a triple and list each violation with a witness.

    Finite groups are checked exhaustively. For the integers the identities
    are checked on all elements of absolute value at most ``word_budget``.
    """
    report = ValidationReport()
    report.violations.extend(triple.symmetry.violations)
    group = triple.group
    graph = triple.graph
    elements = group.elements_within(word_budget)
    name = group.name_of
    mult = group.multiply

    for g in elements:
        _check_automorphism(triple, g, report)
        _check_compatibility(triple, g, report)

    for g, h in product(elements, elements):
        gh = mult(g, h)
        if not group.is_finite and abs(gh) > word_budget:
            continue
        for v in graph.vertices:
            if triple.act_vertex(gh, v) != triple.act_vertex(g, triple.act_vertex(h, v)):
                report.add("action", "(gh)·v differs from g·(h·v)", g=name(g), h=name(h), v=v)
        for a in graph.edges:
            h_a = triple.symmetry.edge(h, a)
            if triple.symmetry.edge(gh, a) != triple.symmetry.edge(g, h_a):
                report.add("action", "(gh)·a differs from g·(h·a)", g=name(g), h=name(h), a=a)
                continue
            lhs = triple.symmetry.edge_cocycle(gh, a)
            rhs = mult(triple.symmetry.edge_cocycle(g, h_a), triple.symmetry.edge_cocycle(h, a))
            if lhs != rhs:
                report.add(
                    "cocycle-identity",
                    f"φ(gh,a) = {name(lhs)} but φ(g,h·a)φ(h,a) = {name(rhs)}",
                    g=name(g),
                    h=name(h),
                    a=a,
                )
        for f in graph.families:
            h_f = triple.symmetry.family(h, f)
            if triple.symmetry.family(gh, f) != triple.symmetry.family(g, h_f):
                report.add("action", "(gh)·F differs from g·(h·F)", g=name(g), h=name(h), a=f)
                continue
            lhs = triple.symmetry.family_cocycle(gh, f)
            rhs = triple.symmetry.family_cocycle(g, h_f).zip_with(
                triple.symmetry.family_cocycle(h, f), mult
            )
            if lhs != rhs:
                report.add(
                    "cocycle-identity",
                    "φ(gh,F_i) differs from φ(g,(h·F)_i)φ(h,F_i)",
                    g=name(g),
                    h=name(h),
                    a=f,
                )

    _check_singular_classes(triple, elements, report)
    if report.ok:
        logger.debug(f"Triple validated with word budget {word_budget}")
    else:
        logger.info(f"Validation found {len(report.violations)} violation(s)")
    return report


def _check_automorphism(triple, g, report):
    graph = triple.graph
    name = triple.group.name_of(g)
    act = triple.act_vertex
    for a, edge in graph.edges.items():
        image = graph.edges.get(triple.symmetry.edge(g, a))
        if image is None:
            report.add("automorphism", "g·a is not an edge", g=name, a=a)
            continue
        if image.range != act(g, edge.range):
            report.add("automorphism", "r(g·a) differs from g·r(a)", g=name, a=a)
        if image.source != act(g, edge.source):
            report.add("automorphism", "s(g·a) differs from g·s(a)", g=name, a=a)
    for f, family in graph.families.items():
        image = graph.families.get(triple.symmetry.family(g, f))
        if image is None:
            report.add("automorphism", "g·F is not a family", g=name, a=f)
            continue
        if image.range != act(g, family.range):
            report.add("automorphism", "r(g·F) differs from g·r(F)", g=name, a=f)
        if image.sources != family.sources.map(lambda v: act(g, v)):
            report.add(
                "automorphism",
                "sources of g·F do not correspond to g·sources of F",
                g=name,
                a=f,
            )


def _check_compatibility(triple, g, report):
    graph = triple.graph
    group = triple.group
    act = triple.act_vertex
    strong_failures = 0
    for a, edge in graph.edges.items():
        twist = triple.symmetry.edge_cocycle(g, a)
        if act(twist, edge.source) != act(g, edge.source):
            report.add(
                "compatibility",
                f"φ(g,a)·s(a) = {act(twist, edge.source)} but g·s(a) = {act(g, edge.source)}",
                g=group.name_of(g),
                a=a,
            )
        if any(act(twist, v) != act(g, v) for v in graph.vertices):
            strong_failures += 1
    for f, family in graph.families.items():
        twists = triple.symmetry.family_cocycle(g, f)
        for i in twists.checkpoints(family.sources):
            source = family.sources.at(i)
            if act(twists.at(i), source) != act(g, source):
                report.add(
                    "compatibility",
                    "φ(g,F_i)·s(F_i) differs from g·s(F_i)",
                    g=group.name_of(g),
                    a=f"{f}[{i}]",
                )
                break
    if strong_failures:
        report.notes.append(
            f"strong compatibility φ(g,a)·x = g·x fails for {strong_failures} edge(s) "
            f"at g={group.name_of(g)}"
        )


def _check_singular_classes(triple, elements, report):
    graph = triple.graph
    for g in elements:
        for v in graph.vertices:
            image = triple.act_vertex(g, v)
            if graph.vertex_class(image) != graph.vertex_class(v):
                report.add(
                    "singular-orbit",
                    f"{v} is {graph.vertex_class(v).value} but g·{v} = {image} is "
                    f"{graph.vertex_class(image).value}",
                    g=triple.group.name_of(g),
                    v=v,
                )
