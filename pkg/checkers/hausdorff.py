"""
Minimal strongly fixed paths and the Hausdorff property.

A path α with r(α) = x is strongly fixed for g when every edge is fixed by
the running twist and the final twist φ(g, α) is 1. In the state graph from
(x, g) these are the arrow sequences ending at a twist 1 node; minimal ones
stop at the first such node.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

import networkx as nx

from checkers.budget import CheckBudget
from checkers.prepared import PreparedTriple
from checkers.state_graph import StateGraph
from checkers.verdicts import Verdict, proven, refuted, unknown
from graphs.paths import Path

logger = logging.getLogger(__name__)

MAX_LISTED_PATHS = 256


class Finiteness(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    UNKNOWN = "unknown"


@dataclass
class StronglyFixedPaths:
    finiteness: Finiteness
    paths: tuple = ()
    count: int = 0
    certificate: dict = field(default_factory=dict)

    @property
    def is_finite(self) -> bool:
        return self.finiteness == Finiteness.FINITE


def minimal_strongly_fixed(
    prepared: PreparedTriple, g: int, x: str, budget: CheckBudget
) -> StronglyFixedPaths:
    triple = prepared.triple
    if g == triple.identity:
        return StronglyFixedPaths(Finiteness.FINITE, (Path.empty(x),), 1)
    if triple.act_vertex(g, x) != x:
        return StronglyFixedPaths(Finiteness.FINITE)

    states = StateGraph(prepared, x, g, budget)
    terminals = set(states.terminals())
    useful = set(terminals)
    for t in terminals:
        useful |= nx.ancestors(states.graph, t)
    core = states.graph.subgraph(useful - terminals)

    if states.start in core and not nx.is_directed_acyclic_graph(core):
        return StronglyFixedPaths(
            Finiteness.INFINITE, certificate=_infinite_certificate(states, core, terminals)
        )
    if states.truncated:
        return StronglyFixedPaths(Finiteness.UNKNOWN)
    if states.start not in core:
        return StronglyFixedPaths(Finiteness.FINITE)

    counts = _count_paths(states, core, terminals)
    paths = tuple(
        prepared.path(x, labels) for labels in _list_paths(states, core, terminals)
    )
    return StronglyFixedPaths(Finiteness.FINITE, paths, counts[states.start])


def _infinite_certificate(states: StateGraph, core, terminals: set) -> dict:
    cycle_edges = nx.find_cycle(core)
    entry = cycle_edges[0][0]
    cycle_nodes = [u for u, _, _ in cycle_edges] + [entry]
    prefix = states.route(entry, through=list(core.nodes))
    routes = nx.single_source_shortest_path(states.graph, entry)
    exit_route = min(
        (routes[t] for t in sorted(terminals, key=states.sort_key) if t in routes), key=len
    )
    return {
        "kind": "infinite-strongly-fixed",
        "start": states.node_as_dict(states.start),
        "prefix": states.labels(prefix),
        "cycle": [key for _, _, key in cycle_edges],
        "exit": states.labels(exit_route),
    }


def _count_paths(states: StateGraph, core, terminals: set) -> dict:
    counts = {t: 1 for t in terminals}
    for node in reversed(list(nx.topological_sort(core))):
        counts[node] = sum(
            counts.get(target, 0)
            for target, _ in states.successors(node)
            if target in terminals or target in core
        )
    return counts


def _list_paths(states: StateGraph, core, terminals: set) -> list[list[str]]:
    found = []
    stack = [(states.start, [])]
    while stack and len(found) < MAX_LISTED_PATHS:
        node, labels = stack.pop()
        if node in terminals:
            found.append(labels)
            continue
        for target, key in reversed(states.successors(node)):
            if target in terminals or target in core:
                stack.append((target, labels + [key]))
    return sorted(found, key=lambda labels: (len(labels), labels))


def is_hausdorff(prepared: PreparedTriple, budget: CheckBudget) -> Verdict:
    """
    Every (g, x) has finitely many minimal strongly fixed paths. Decided for
    finite groups; for the integers only an infinite family within the word
    budget can settle the question.
    """
    triple = prepared.triple
    group = triple.group
    name = group.name_of
    pairs = []
    elements = [g for g in group.elements_within(budget.word) if g != triple.identity]
    undecided = []
    for g in elements:
        for x in prepared.vertices():
            result = minimal_strongly_fixed(prepared, g, x, budget)
            if result.finiteness == Finiteness.INFINITE:
                logger.info(f"{name(g)} has infinitely many minimal strongly fixed paths at {x}")
                certificate = {**result.certificate, "g": name(g), "x": x}
                return refuted(
                    "hausdorff",
                    certificate,
                    f"infinitely many minimal strongly fixed paths for {name(g)} at {x}",
                )
            if result.finiteness == Finiteness.UNKNOWN:
                undecided.append((name(g), x))
                continue
            pairs.append(
                {
                    "g": name(g),
                    "x": x,
                    "count": result.count,
                    "paths": [str(p) for p in result.paths],
                    "listed": len(result.paths),
                }
            )
    if not group.is_finite:
        return unknown(
            "hausdorff",
            f"no infinite family within {budget.word} word(s) of the integers",
            budget,
        )
    if undecided:
        return unknown("hausdorff", f"state graphs truncated at {undecided[0]}", budget)
    return proven("hausdorff", {"kind": "finite-strongly-fixed", "pairs": pairs})
