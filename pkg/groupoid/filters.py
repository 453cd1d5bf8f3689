"""
Filters in the idempotent semilattice E(S).

A lasso ω gives F_ω = {f_{ω|n} : n >= 0} with f_α = (α, 1, α); a finite
prefix chain of idempotents gives a filter that is never an ultrafilter on a
graph without sources, since it can always be extended by one more edge.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Union

from graphs.paths import LassoPath, Path
from groupoid.exceptions import HypothesisViolated, InvalidFilter
from semigroup.elements import InverseSemigroup, SElement

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LassoFilter:
    omega: LassoPath

    def member(self, length: int) -> Path:
        return self.omega.prefix_path(length)

    def contains_path(self, path: Path) -> bool:
        return self.omega.has_prefix(path)

    def __str__(self):
        return f"F[{self.omega}]"


@dataclass(frozen=True)
class ChainFilter:
    """
    The filter generated by finitely many idempotents forming a prefix chain.
    """

    idempotents: tuple

    def __post_init__(self):
        if not self.idempotents:
            raise InvalidFilter("A chain needs at least one idempotent")
        for e in self.idempotents:
            if not isinstance(e, SElement) or not e.is_idempotent():
                raise InvalidFilter(f"{e} is not a nonzero idempotent")
        paths = sorted((e.alpha for e in self.idempotents), key=len)
        for shorter, longer in zip(paths, paths[1:]):
            if not shorter.is_prefix_of(longer):
                raise InvalidFilter(f"{shorter} and {longer} are not nested")
        ordered = tuple(sorted(self.idempotents, key=lambda e: len(e.alpha)))
        object.__setattr__(self, "idempotents", ordered)

    @property
    def longest(self) -> Path:
        return self.idempotents[-1].alpha

    def contains_path(self, path: Path) -> bool:
        return path.is_prefix_of(self.longest)

    def __str__(self):
        return "{" + ", ".join(str(e) for e in self.idempotents) + "}"


FilterBase = Union[LassoFilter, ChainFilter]


@dataclass
class UltrafilterResult:
    ultrafilter: bool
    depth: int
    witness: Optional[SElement] = None
    checked: int = 0
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "ultrafilter": self.ultrafilter,
            "depth": self.depth,
            "witness": None if self.witness is None else str(self.witness),
            "checked": self.checked,
            "notes": list(self.notes),
        }


def filter_of_lasso(omega: LassoPath) -> LassoFilter:
    return LassoFilter(omega.normalized())


def require_row_finite_without_sources(triple):
    graph = triple.graph
    if graph.has_families:
        logger.error("Filter analysis was given a graph with infinite receivers")
        raise HypothesisViolated(
            f"Infinite receivers present: {graph.infinite_receivers()}"
        )
    if graph.sources():
        logger.error("Filter analysis was given a graph with sources")
        raise HypothesisViolated(f"Sources present: {graph.sources()}")


def _widest_level(base: FilterBase) -> int:
    """
    Largest number of distinct members sharing one path length.
    """
    if isinstance(base, LassoFilter):
        return 1
    counts: dict[int, set] = {}
    for e in base.idempotents:
        counts.setdefault(len(e.alpha), set()).add(e.alpha)
    return max(len(paths) for paths in counts.values())


def is_ultrafilter(triple, base: FilterBase, depth: int) -> UltrafilterResult:
    """
    Test whether every idempotent f of path length <= ``depth`` that meets
    every member of the filter belongs to it.

    Lasso filters are tested against all candidates rooted at r(ω). Finite
    chains fail with the one-edge extension (ηa, 1, ηa) of their longest
    member as witness.
    """
    require_row_finite_without_sources(triple)
    semigroup = InverseSemigroup(triple)
    graph = triple.graph
    result = UltrafilterResult(ultrafilter=True, depth=depth)
    if _widest_level(base) > 1:
        result.ultrafilter = False
        result.notes.append("more than one member of the same path length")
        return result

    if isinstance(base, LassoFilter):
        omega = base.omega
        members = [semigroup.idempotent(base.member(n)) for n in range(depth + 1)]
        for length in range(depth + 1):
            for gamma in graph.extend_paths(omega.range, length):
                f = semigroup.idempotent(gamma)
                result.checked += 1
                if all(semigroup.intersects(f, e) for e in members):
                    if not base.contains_path(gamma):
                        result.ultrafilter = False
                        result.witness = f
                        return result
        return result

    eta = base.longest
    a = graph.incoming_prefix(eta.source, 1)[0]
    f = semigroup.idempotent(eta.concat(graph.edge_path(a)))
    result.checked = 1
    meets_all = all(semigroup.intersects(f, e) for e in base.idempotents)
    if meets_all and not base.contains_path(f.alpha):
        result.ultrafilter = False
        result.witness = f
    return result
