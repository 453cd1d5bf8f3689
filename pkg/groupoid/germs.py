import logging
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Optional

from graphs.paths import LassoPath, Path
from groupoid.exceptions import InvalidGerm
from semigroup.elements import DEFAULT_STATE_BUDGET, ZERO, InverseSemigroup, SElement
from semigroup.exceptions import MismatchedTriples

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Germ:
    """
    The germ [s; ω] of a nonzero element s at a point ω of its domain.
    """

    element: SElement
    point: LassoPath

    def __post_init__(self):
        if self.element is ZERO or not isinstance(self.element, SElement):
            raise InvalidGerm("A germ needs a nonzero element")
        if not self.point.has_prefix(self.element.beta):
            raise InvalidGerm(
                f"{self.point} is not in the domain Z({self.element.beta}) of {self.element}"
            )

    @property
    def triple(self):
        return self.element.triple

    def is_unit(self) -> bool:
        return self.element.is_idempotent()

    def __str__(self):
        return f"[{self.element}; {self.point}]"


def germ_source(germ: Germ) -> LassoPath:
    return germ.point


def germ_range(germ: Germ, state_budget: int = DEFAULT_STATE_BUDGET) -> LassoPath:
    return InverseSemigroup(germ.triple, state_budget).apply(germ.element, germ.point)


def _restrict(element: SElement, omega: LassoPath, length: int) -> tuple[Path, int]:
    """
    Range path and twist of s·f_{ω|length}, for length >= |β|.
    """
    rest = omega.prefix_path(length).strip_prefix(element.beta)
    moved, twist = element.triple.act_and_cocycle(element.g, rest)
    return element.alpha.concat(moved), twist


def germ_equal(
    a: Germ, b: Germ, state_budget: int = DEFAULT_STATE_BUDGET
) -> Optional[bool]:
    """
    Decide [s; ω] = [t; ω'].

    The points must agree; then s·f_{ω|n} and t·f_{ω|n} are compared for
    n = max(|β|, |δ|), max + 1, ... Both products share the source ω|n, so
    they agree once their range paths and their twists agree. The range
    paths only grow, so one mismatch is final. Along the cycle of ω the pair
    of twists evolves deterministically, so a repeated (cycle position,
    twists) state without a match means the germs differ.

    Returns None when the state budget runs out before either happens,
    which can only occur for the integers.
    """
    if a.triple is not b.triple:
        raise MismatchedTriples()
    if a.point != b.point:
        return False
    s, t, omega = a.element, b.element, a.point
    if len(s.alpha) - len(s.beta) != len(t.alpha) - len(t.beta):
        return False
    triple = a.triple
    n = max(len(s.beta), len(t.beta))
    range_s, twist_s = _restrict(s, omega, n)
    range_t, twist_t = _restrict(t, omega, n)
    if range_s != range_t:
        return False

    seen = set()
    while twist_s != twist_t:
        if n >= len(omega.head):
            state = ((n - len(omega.head)) % len(omega.cycle), twist_s, twist_t)
            if state in seen:
                return False
            seen.add(state)
            if len(seen) > state_budget:
                logger.info(f"Germ comparison at {omega} exhausted {state_budget} states")
                return None
        ref = omega.edge_at(n)
        if triple.act_edge(twist_s, ref) != triple.act_edge(twist_t, ref):
            return False
        twist_s = triple.cocycle_edge(twist_s, ref)
        twist_t = triple.cocycle_edge(twist_t, ref)
        n += 1
    return True


def compose_germs(
    a: Germ, b: Germ, state_budget: int = DEFAULT_STATE_BUDGET
) -> Germ:
    """
    [s; t·ω][t; ω] = [st; ω].
    """
    if a.triple is not b.triple:
        raise MismatchedTriples()
    semigroup = InverseSemigroup(a.triple, state_budget)
    middle = semigroup.apply(b.element, b.point)
    if middle != a.point:
        raise InvalidGerm(f"Cannot compose: {b} lands at {middle}, not at {a.point}")
    return Germ(semigroup.multiply(a.element, b.element), b.point)


def invert_germ(germ: Germ, state_budget: int = DEFAULT_STATE_BUDGET) -> Germ:
    semigroup = InverseSemigroup(germ.triple, state_budget)
    return Germ(semigroup.star(germ.element), semigroup.apply(germ.element, germ.point))


@dataclass(frozen=True)
class Bisection:
    """
    Θ(α, g, β; Z(γ)): the germs of (α, g, β) at points of Z(β) ∩ Z(γ).
    """

    element: SElement
    constraint: Path

    @property
    def alpha(self) -> Path:
        return self.element.alpha

    @property
    def g(self) -> int:
        return self.element.g

    @property
    def beta(self) -> Path:
        return self.element.beta

    def is_empty(self) -> bool:
        return not self.beta.comparable(self.constraint)

    @property
    def domain_root(self) -> Optional[Path]:
        if self.is_empty():
            return None
        return self.constraint if len(self.constraint) > len(self.beta) else self.beta

    def germs(self, points: Iterable[LassoPath]) -> list[Germ]:
        root = self.domain_root
        if root is None:
            return []
        return [Germ(self.element, omega) for omega in points if omega.has_prefix(root)]

    def contains(
        self, germ: Germ, state_budget: int = DEFAULT_STATE_BUDGET
    ) -> Optional[bool]:
        root = self.domain_root
        if root is None or not germ.point.has_prefix(root):
            return False
        return germ_equal(germ, Germ(self.element, germ.point), state_budget)
