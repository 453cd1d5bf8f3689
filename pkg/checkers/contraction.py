"""
Local contractivity: every vertex has a descendant that carries a G-circuit
with an entry.

A vertex w carries one iff w is not the root of an entry-free forced lasso
and some path of positive length leads from w into its own G-orbit.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from checkers.budget import CheckBudget
from checkers.circuits import GCircuit, circuit_lasso, circuit_limit, forced_lasso, has_entry
from checkers.exceptions import CertificateError
from checkers.prepared import PreparedTriple
from checkers.verdicts import Verdict, proven, refuted, unknown
from graphs.paths import EdgeRef
from semigroup.elements import ZERO, InverseSemigroup, SElement
from semigroup.exceptions import TwistBudgetExceeded

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ContractionWitness:
    s: SElement
    f0: SElement
    f1: SElement
    circuit: GCircuit

    def as_dict(self) -> dict:
        return {
            "s": str(self.s),
            "f0": str(self.f0),
            "f1": str(self.f1),
            "circuit": self.circuit.as_dict(),
        }


def anchor_circuit(prepared: PreparedTriple, w: str) -> Optional[GCircuit]:
    """
    A G-circuit rooted at ``w`` built from a shortest path of positive
    length into the orbit of ``w``, or None when there is none.
    """
    triple = prepared.triple
    labels = prepared.walk(w, triple.orbit(w), folded=False, positive=True)
    if labels is None:
        return None
    gamma = prepared.path(w, labels)
    return GCircuit(triple.transversal(gamma.source, w), gamma, triple)


def contracting_vertices(prepared: PreparedTriple) -> dict[str, GCircuit]:
    anchors = {}
    for w in prepared.vertices():
        if forced_lasso(prepared, w) is not None:
            continue
        circuit = anchor_circuit(prepared, w)
        if circuit is not None:
            anchors[w] = circuit
    return anchors


def locally_contracting(prepared: PreparedTriple, budget: CheckBudget) -> Verdict:
    anchors = contracting_vertices(prepared)
    entries: dict[str, Verdict] = {}
    witnesses = []
    for x in prepared.vertices():
        labels = prepared.walk(x, anchors)
        if labels is None:
            descendants = sorted(prepared.descendants(x))
            logger.info(f"No descendant of {x} carries a G-circuit with an entry")
            return refuted(
                "locally_contracting",
                {"kind": "no-contracting-descendant", "vertex": x, "descendants": descendants},
                f"no descendant of {x} carries a G-circuit with an entry",
            )
        w = prepared.follow(x, labels)
        if w not in entries:
            entries[w] = has_entry(anchors[w], budget)
        entry = entries[w]
        if entry.is_unknown:
            return unknown("locally_contracting", entry.reason, budget, children=(entry,))
        if entry.is_refuted:
            detail = f"The circuit {anchors[w]} at {w} has no entry but {w} has no forced lasso"
            logger.error(detail)
            raise CertificateError(
                detail,
                property_name="locally_contracting",
            )
        witnesses.append(
            {"vertex": x, "path": labels, "anchor": w, "entry": entry.certificate}
        )
    return proven(
        "locally_contracting", {"kind": "contracting-anchors", "witnesses": witnesses}
    )


def contraction_witness(
    prepared: PreparedTriple, e: SElement, budget: Optional[CheckBudget] = None
) -> Optional[ContractionWitness]:
    """
    For an idempotent e = (μ, 1, μ) build s, f0 <= f1 <= e with s*s = f1,
    s f1 s* < f1 and f0·s = 0, or return None when no anchor is reachable
    without crossing a tail boundary.
    """
    budget = budget or CheckBudget()
    triple = prepared.triple
    semigroup = InverseSemigroup(triple, budget.states)
    mu = e.alpha
    anchors = contracting_vertices(prepared)
    labels = prepared.walk(mu.source, anchors, folded=False)
    if labels is None:
        return None
    beta = mu.concat(prepared.path(mu.source, labels))
    w = beta.source
    circuit = anchors[w]
    entry = has_entry(circuit, budget)
    if not entry.is_proven:
        return None
    try:
        omega = circuit_lasso(circuit, circuit_limit(circuit, budget))
    except TwistBudgetExceeded:
        return None
    k0 = entry.certificate["position"]
    tau = prepared.graph.edge_path(EdgeRef.parse(entry.certificate["edge"]))
    reps = k0 // len(circuit.gamma) + 1

    t = circuit.iterator()
    power = t
    for _ in range(reps - 1):
        power = semigroup.multiply(power, t)
    b = semigroup.path_isometry(beta)
    s = semigroup.product(b, power, semigroup.star(b))
    f1 = semigroup.idempotent(beta)
    f0 = semigroup.idempotent(beta.concat(omega.prefix_path(k0)).concat(tau))

    _check_witness(semigroup, s, f0, f1)
    return ContractionWitness(s, f0, f1, circuit)


def _check_witness(semigroup: InverseSemigroup, s, f0, f1):
    star = semigroup.star
    mult = semigroup.multiply
    image = semigroup.product(s, f1, star(s))
    failures = []
    if mult(star(s), s) != f1:
        failures.append("s*s != f1")
    if not semigroup.leq(image, f1) or image == f1:
        failures.append("s f1 s* is not strictly below f1")
    if not semigroup.leq(f0, f1):
        failures.append("f0 is not below f1")
    if mult(f0, s) is not ZERO:
        failures.append("f0 s != 0")
    if failures:
        logger.error(f"Contraction witness {s} fails: {', '.join(failures)}")
        raise CertificateError(
            f"Contraction witness {s} fails: {', '.join(failures)}",
            property_name="locally_contracting",
        )
