from dataclasses import asdict, dataclass, fields, replace

from semigroup.elements import DEFAULT_STATE_BUDGET
from symmetry.triple import DEFAULT_WORD_BUDGET


@dataclass(frozen=True)
class CheckBudget:
    """
    Bounds shared by the property checkers.

    ``word`` bounds group words for the integers, ``lasso`` the description
    size of enumerated lassos, ``circuit`` the circuit iteration for the
    integers, ``family`` the family index cut, ``states`` the size of state
    graphs and ``depth`` the minimal truncation depth of tails.
    """

    word: int = DEFAULT_WORD_BUDGET
    lasso: int = 4
    circuit: int = 6
    family: int = 6
    states: int = DEFAULT_STATE_BUDGET
    depth: int = 6

    def doubled(self) -> "CheckBudget":
        return replace(self, **{f.name: 2 * getattr(self, f.name) for f in fields(self)})

    def as_dict(self) -> dict:
        return asdict(self)
