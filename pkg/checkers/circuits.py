"""
G-circuits (g, γ) with |γ| >= 1 and r(γ) = g·s(γ).

The element t = (γ, g⁻¹, ∅_{r(γ)}) maps Z(r(γ)) into Z(γ); its fixed path
ω = γ·(g⁻¹·ω) satisfies ω[L + k] = ψ_k·ω[k] with ψ_0 = g⁻¹ and
ψ_{k+1} = φ(ψ_k, ω[k]), where L = |γ|.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

from checkers.budget import CheckBudget
from checkers.exceptions import InvalidCircuit
from checkers.prepared import PreparedTriple, labels_of, lasso_as_dict
from checkers.verdicts import Verdict, proven, refuted, unknown
from graphs.paths import LassoPath, Path, lasso_normalize
from semigroup.elements import SElement, twist_lasso
from semigroup.exceptions import TwistBudgetExceeded
from symmetry.triple import Triple

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GCircuit:
    g: int
    gamma: Path
    triple: Triple = field(compare=False, repr=False)

    def __post_init__(self):
        if self.gamma.is_empty():
            raise InvalidCircuit("A G-circuit needs at least one edge")
        if self.triple.act_vertex(self.g, self.gamma.source) != self.gamma.range:
            name = self.triple.group.name_of(self.g)
            raise InvalidCircuit(
                f"r({self.gamma}) = {self.gamma.range} but "
                f"{name}·s({self.gamma}) = {self.triple.act_vertex(self.g, self.gamma.source)}"
            )

    @property
    def root(self) -> str:
        return self.gamma.range

    def iterator(self) -> SElement:
        """
        t = (γ, g⁻¹, ∅_{r(γ)}).
        """
        inverse = self.triple.group.inverse(self.g)
        return SElement(self.gamma, inverse, Path.empty(self.root), self.triple)

    def as_dict(self) -> dict:
        return {
            "g": self.triple.group.name_of(self.g),
            "gamma": labels_of(self.gamma),
            "root": self.root,
        }

    def __str__(self):
        return f"({self.triple.group.name_of(self.g)}, {self.gamma})"


def _iterate(circuit: GCircuit):
    """
    Yield (position, ψ, edges so far) while extending ω edge by edge.
    """
    triple = circuit.triple
    edges = list(circuit.gamma.edges)
    psi = triple.group.inverse(circuit.g)
    k = 0
    while True:
        yield k, psi, edges
        edges.append(triple.act_edge(psi, edges[k]))
        psi = triple.cocycle_edge(psi, edges[k])
        k += 1


def circuit_iterate(circuit: GCircuit, n_edges: int) -> Path:
    edges = circuit.gamma.edges
    for _, _, edges in _iterate(circuit):
        if len(edges) >= n_edges:
            break
    return circuit.triple.graph.path(circuit.root, edges[:n_edges])


def circuit_lasso(circuit: GCircuit, limit: int) -> LassoPath:
    """
    ω as a lasso. The state (ψ_k, ω[k : k + L]) determines the rest of ω,
    so the first repeated state closes the cycle.
    """
    length = len(circuit.gamma)
    seen: dict[tuple, int] = {}
    for k, psi, edges in _iterate(circuit):
        state = (psi, tuple(edges[k : k + length]))
        if state in seen:
            start = seen[state]
            break
        if k >= limit:
            raise TwistBudgetExceeded(f"No period of ω{circuit} within {limit} edge(s)")
        seen[state] = k
    path = circuit.triple.graph.path(circuit.root, edges[:k])
    return lasso_normalize(LassoPath(path.prefix(start), path.drop(start)))


def circuit_limit(circuit: GCircuit, budget: CheckBudget) -> int:
    if circuit.triple.group.is_finite:
        return budget.states
    return budget.circuit * len(circuit.gamma)


def has_entry(circuit: GCircuit, budget: CheckBudget) -> Verdict:
    """
    Some vertex r(ω_k) on one period of ω receives an edge τ ≠ ω_k.
    """
    try:
        omega = circuit_lasso(circuit, circuit_limit(circuit, budget))
    except TwistBudgetExceeded as e:
        return unknown("entry", str(e.detail), budget)
    graph = circuit.triple.graph
    for k in range(omega.description_size):
        alternatives = [
            tau for tau in graph.incoming_finite(omega.vertex_at(k)) if tau != omega.edge_at(k)
        ]
        if alternatives:
            return proven(
                "entry",
                {
                    "kind": "entry",
                    "circuit": circuit.as_dict(),
                    "lasso": lasso_as_dict(omega),
                    "position": k,
                    "edge": str(alternatives[0]),
                },
            )
    return refuted(
        "entry",
        {"kind": "no-entry", "circuit": circuit.as_dict(), "lasso": lasso_as_dict(omega)},
        f"circuit without entry: {circuit.gamma}",
    )


def forced_lasso(prepared: PreparedTriple, v: str) -> Optional[LassoPath]:
    """
    The unique infinite path from ``v`` when it only visits vertices of
    in-degree one and closes up without crossing a tail boundary.
    """
    graph = prepared.graph
    edges = []
    visited = {v: 0}
    current = v
    while not graph.is_boundary(current) and prepared.in_degree(current) == 1:
        a = graph.incoming_finite(current)[0]
        edges.append(a)
        current = graph.source_of(a)
        if current in visited:
            path = graph.path(v, edges)
            start = visited[current]
            return lasso_normalize(LassoPath(path.prefix(start), path.drop(start)))
        visited[current] = len(edges)
    return None


def circuits_without_entry(prepared: PreparedTriple, budget: CheckBudget) -> Verdict:
    """
    Every G-circuit has an entry.

    A circuit without entry lives on a forced lasso ω_v and exists iff
    g⁻¹·ω_v = σⁿ(ω_v) for some n >= 1 and g with g·s(ω_v|n) = v. For the
    integers, g ranges over the word budget and only a refutation is final.
    """
    triple = prepared.triple
    group = triple.group
    name = group.name_of
    checked = []
    for v in prepared.vertices():
        omega = forced_lasso(prepared, v)
        if omega is None:
            continue
        for n in range(1, omega.description_size + 1):
            end = omega.vertex_at(n)
            for g in group.elements_within(budget.word):
                if triple.act_vertex(g, end) != v:
                    continue
                try:
                    image = twist_lasso(triple, group.inverse(g), omega, budget.states)
                except TwistBudgetExceeded:
                    continue
                if image == omega.drop(n):
                    gamma = omega.prefix_path(n)
                    logger.info(f"Circuit ({name(g)}, {gamma}) at {v} has no entry")
                    return refuted(
                        "circuits",
                        {
                            "kind": "circuit-without-entry",
                            "circuit": GCircuit(g, gamma, triple).as_dict(),
                            "lasso": lasso_as_dict(omega),
                        },
                        f"circuit without entry: {gamma}",
                    )
        checked.append({"vertex": v, "lasso": lasso_as_dict(omega)})
    if checked and not group.is_finite:
        return unknown(
            "circuits",
            f"no entry-free circuit within {budget.word} word(s) of the integers",
            budget,
        )
    return proven("circuits", {"kind": "forced-lassos", "checked": checked})
