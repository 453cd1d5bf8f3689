"""
Checkers run on a finite triple: the base triple when it needs no tails,
otherwise a folded truncation of its desingularization.
"""

import logging
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from checkers.budget import CheckBudget
from desingularization.tails import DesingularizedTriple, desingularize
from graphs.exceptions import PathMismatch
from graphs.paths import EdgeRef, LassoPath, Path, lasso_normalize
from symmetry.triple import Triple

logger = logging.getLogger(__name__)

FOLD_KEY = "~fold"


@dataclass
class PreparedTriple:
    original: Triple
    desingularized: DesingularizedTriple
    triple: Triple
    depth: int
    fold: dict = field(default_factory=dict)

    def __post_init__(self):
        self._views: dict[bool, nx.MultiDiGraph] = {}

    @property
    def graph(self):
        return self.triple.graph

    @property
    def group(self):
        return self.triple.group

    def name(self, g: int) -> str:
        return self.group.name_of(g)

    def successor(self, v: str) -> str:
        return self.fold.get(v, v)

    def canonical(self, v: str) -> str:
        return self.desingularized.canonical(v)

    def vertices(self) -> list[str]:
        """
        Non-boundary vertices that are their own canonical representative.
        """
        return [
            v
            for v in self.graph.vertices
            if not self.graph.is_boundary(v) and self.canonical(v) == v
        ]

    def in_degree(self, v: str) -> int:
        return len(self.graph.incoming_finite(v))

    # Reachability

    def view(self, folded: bool = True) -> nx.MultiDiGraph:
        """
        Arrows r(e) -> s(e) keyed by edge id; with ``folded`` every boundary
        vertex also has an arrow to its fold image.
        """
        if folded not in self._views:
            view = self.graph.to_networkx()
            if folded:
                for boundary, image in self.fold.items():
                    view.add_edge(boundary, image, key=FOLD_KEY)
            self._views[folded] = view
        return self._views[folded]

    def descendants(self, v: str, folded: bool = True) -> set[str]:
        return {v} | nx.descendants(self.view(folded), v)

    def walk(
        self,
        start: str,
        targets: Iterable[str],
        *,
        folded: bool = True,
        positive: bool = False,
    ) -> Optional[list[str]]:
        """
        Labels of a shortest walk from ``start`` into ``targets``, or None.
        With ``positive`` the walk has at least one step.
        """
        view = self.view(folded)
        targets = set(targets)
        if not positive and start in targets:
            return []
        parents: dict[str, tuple[str, str]] = {}
        queue = deque()

        def push(u, w, key):
            if w not in parents:
                parents[w] = (u, key)
                queue.append(w)

        for w, key in _out(view, start):
            push(start, w, key)
        while queue:
            u = queue.popleft()
            if u in targets:
                labels = []
                node = u
                while True:
                    parent, key = parents[node]
                    labels.append(key)
                    if parent == start:
                        break
                    node = parent
                return labels[::-1]
            for w, key in _out(view, u):
                push(u, w, key)
        return None

    def follow(self, start: str, labels: list[str]) -> str:
        """
        End vertex of a walk, checking every step.
        """
        v = start
        for key in labels:
            if key == FOLD_KEY:
                if v not in self.fold:
                    raise PathMismatch(f"{v} is not a boundary vertex")
                v = self.fold[v]
                continue
            ref = EdgeRef.parse(key)
            if self.graph.range_of(ref) != v:
                raise PathMismatch(f"Edge {ref} does not leave {v}")
            v = self.graph.source_of(ref)
        return v

    def path(self, start: str, labels: list[str]) -> Path:
        return self.graph.path(start, [EdgeRef.parse(key) for key in labels])

    def lasso(self, data: dict) -> LassoPath:
        head = self.path(data["range"], data["head"])
        cycle = self.path(head.source, data["cycle"])
        return lasso_normalize(LassoPath(head, cycle))


def _out(view: nx.MultiDiGraph, u: str) -> list[tuple[str, str]]:
    return sorted(((w, key) for _, w, key in view.out_edges(u, keys=True)), key=lambda x: x[1])


def lasso_as_dict(omega: LassoPath) -> dict:
    return {
        "range": omega.range,
        "head": [str(e) for e in omega.head.edges],
        "cycle": [str(e) for e in omega.cycle.edges],
        "text": str(omega),
    }


def labels_of(path: Path) -> list[str]:
    return [str(e) for e in path.edges]


def prepare(triple: Triple, budget: CheckBudget) -> PreparedTriple:
    desingularized = desingularize(triple, budget.word)
    if desingularized.is_trivial:
        logger.debug("No singular orbits, checking the triple as given")
        return PreparedTriple(triple, desingularized, triple, 0)
    depth = max(budget.depth, desingularized.safe_depth)
    truncated = desingularized.truncate(depth)
    logger.info(f"Checking a truncation of the desingularization at depth {depth}")
    return PreparedTriple(
        triple, desingularized, truncated, depth, desingularized.fold(depth)
    )
