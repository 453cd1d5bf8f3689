"""
Weak G-transitivity: for every vertex y and every infinite path ω, some
descendant of y lies in the orbit of a vertex visited by ω.

The visited set of an infinite path contains the vertex set of a simple
cycle or the deep part of a tail, so it is enough to test those classes.
"""

import logging
from dataclasses import dataclass

from checkers.budget import CheckBudget
from checkers.prepared import PreparedTriple, labels_of
from checkers.verdicts import Verdict, proven, refuted
from desingularization.tails import tail_vertex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VisitClass:
    label: str
    vertices: frozenset
    cycle: tuple = ()

    def as_dict(self) -> dict:
        return {"label": self.label, "vertices": sorted(self.vertices), "cycle": list(self.cycle)}


def visit_classes(prepared: PreparedTriple) -> list[VisitClass]:
    """
    Inclusion-minimal vertex sets of simple cycles, then one class per tail.
    """
    cycles = prepared.graph.simple_cycles()
    candidates = []
    for cycle in cycles:
        vertices = frozenset(cycle.vertices)
        if any(vertices == other.vertices for other in candidates):
            continue
        candidates.append(VisitClass(f"cycle {cycle}", vertices, tuple(labels_of(cycle))))
    classes = [
        c for c in candidates if not any(o.vertices < c.vertices for o in candidates)
    ]
    for _, copy in prepared.desingularized.copies():
        y = copy.vertex
        vertices = frozenset(tail_vertex(y, i) for i in range(1, prepared.depth))
        classes.append(VisitClass(f"tail of {y}", vertices))
    return classes


def _orbit_hit(prepared: PreparedTriple, w: str, target: frozenset):
    triple = prepared.triple
    for u in triple.orbit(w):
        if u in target:
            return u, triple.transversal(w, u)
    return None


def weakly_G_transitive(prepared: PreparedTriple, budget: CheckBudget) -> Verdict:
    triple = prepared.triple
    name = triple.group.name_of
    classes = visit_classes(prepared)
    witnesses = []
    for y in prepared.vertices():
        descendants = sorted(prepared.descendants(y))
        for visit in classes:
            hit = None
            for w in descendants:
                hit = _orbit_hit(prepared, w, visit.vertices)
                if hit is not None:
                    break
            if hit is None:
                logger.info(f"No descendant of {y} meets the orbit of {visit.label}")
                return refuted(
                    "minimal",
                    {
                        "kind": "disjoint-orbit",
                        "vertex": y,
                        "class": visit.as_dict(),
                        "descendants": descendants,
                    },
                    f"no descendant of {y} meets the orbit of the {visit.label}",
                )
            u, g = hit
            witnesses.append(
                {
                    "vertex": y,
                    "class": visit.label,
                    "path": prepared.walk(y, [w]),
                    "via": w,
                    "g": name(g),
                    "image": u,
                }
            )
    logger.debug(f"Weak transitivity: {len(witnesses)} witness(es) over {len(classes)} class(es)")
    return proven(
        "minimal",
        {
            "kind": "transitivity-witnesses",
            "classes": [visit.as_dict() for visit in classes],
            "witnesses": witnesses,
        },
    )
