"""
Shared test utilities: the corpus documents and small triple builders.
"""

import copy
import json
from pathlib import Path

from checkers.budget import CheckBudget
from graphs.graph import Edge, EdgeFamily, Graph
from symmetry.actions import GeneratorSpec
from symmetry.groups import FiniteTableGroup
from symmetry.triple import Triple
from triples.documents import triple_from_payload
from utils.sequences import EventuallyPeriodic

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"

CORPUS_NAMES = (
    "one_loop",
    "two_loops",
    "z2_swap_two_loops",
    "z2_identity_trivial_cocycle",
    "z2_identity_sigma_cocycle",
    "z2_swapped_components",
    "source_example",
    "receiver_loop_family",
    "integers_odometer",
)

# Row-finite and without sources, so no tails are attached.
REGULAR_CORPUS = (
    "one_loop",
    "two_loops",
    "z2_swap_two_loops",
    "z2_identity_trivial_cocycle",
    "z2_identity_sigma_cocycle",
    "z2_swapped_components",
    "integers_odometer",
)

FINITE_CORPUS = tuple(name for name in CORPUS_NAMES if name != "integers_odometer")


def corpus_path(name: str) -> str:
    return str(CORPUS_DIR / f"{name}.json")


def corpus_payload(name: str) -> dict:
    """
    A fresh copy of the parsed corpus document, safe to mutate.
    """
    with open(corpus_path(name), encoding="utf-8") as handle:
        return copy.deepcopy(json.load(handle))


def corpus_triple(name: str, strict: bool = True) -> Triple:
    return triple_from_payload(corpus_payload(name), strict=strict)


def small_budget() -> CheckBudget:
    return CheckBudget(word=4, lasso=3, circuit=4, family=4, states=512, depth=6)


def loops_graph(*names: str, vertex: str = "v") -> Graph:
    return Graph([vertex], [Edge(name, vertex, vertex) for name in names], [], [])


def z2_identity_triple(cocycle: str = "s") -> Triple:
    """
    Two loops at one vertex, the cyclic group of order two acting trivially,
    with the cocycle constant at ``cocycle``.
    """
    group = FiniteTableGroup.cyclic(2, ["1", "s"])
    s = group.parse("s")
    h = group.parse(cocycle)
    spec = GeneratorSpec(edge_cocycle={"e0": h, "e1": h})
    return Triple(loops_graph("e0", "e1"), group, {s: spec})


def receiver_graph(period=("x",)) -> Graph:
    """
    A single vertex x receiving an infinite family F whose sources cycle
    through ``period``.
    """
    vertices = sorted({"x", *period})
    family = EdgeFamily("F", "x", EventuallyPeriodic.of([], list(period)))
    return Graph(vertices, [], [family], [])
