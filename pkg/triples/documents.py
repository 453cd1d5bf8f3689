"""
Triple documents: UTF-8 JSON with top-level keys ``group``, ``graph``,
``action``, ``cocycle`` and an optional ``meta``.

    {
      "group": {"kind": "finite", "elements": ["1", "s"], "table": [["1", "s"], ["s", "1"]]},
      "graph": {
        "vertices": ["x"],
        "edges": [{"id": "e0", "range": "x", "source": "x"}],
        "families": [{"id": "F", "range": "x", "sources": {"prefix": [], "period": ["x"]}}]
      },
      "action": {"s": {"vertices": {}, "edges": {"e0": "e1"}, "families": {}}},
      "cocycle": {"s": {"edges": {"e0": "1"}, "families": {"F": {"prefix": [], "period": ["s"]}}}}
    }

Group kinds are ``finite``, ``cyclic`` (``order``, optional ``elements``),
``trivial`` and ``integers``. Actions and cocycles are given per generator;
missing entries are fixed by the action and default to the generator in the
cocycle. Documents written by the desingularizer also carry ``tails`` and
``alpha_table``; both are informational and ignored when read back.
"""

import json
import logging
from pathlib import Path as FilePath
from typing import Optional

from graphs.exceptions import UnsupportedVertexSet
from graphs.graph import Edge, EdgeFamily, Graph
from symmetry.actions import GeneratorSpec
from symmetry.exceptions import UnknownGroupElement
from symmetry.groups import FiniteTableGroup, GroupBackend, IntegerGroup
from symmetry.triple import DEFAULT_WORD_BUDGET, Triple
from triples.exceptions import DocumentParseError, DocumentSchemaError, UnreadableInput
from utils.security import sanitize_meta
from utils.sequences import EventuallyPeriodic

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("group", "graph", "action", "cocycle")
OPTIONAL_KEYS = ("meta", "tails", "alpha_table")


# Reading


def read_text(path) -> str:
    try:
        return FilePath(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        logger.error(f"Cannot read {path}: {e}")
        raise UnreadableInput(f"Cannot read {path}: {e}")


def parse_document(text: str) -> dict:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        logger.error(f"Malformed document at line {e.lineno}, column {e.colno}: {e.msg}")
        raise DocumentParseError(e.msg, line=e.lineno, column=e.colno)
    check_payload(payload)
    return payload


def check_payload(payload) -> None:
    if not isinstance(payload, dict):
        raise DocumentSchemaError("the document must be a JSON object", field="$")
    missing = [key for key in REQUIRED_KEYS if key not in payload]
    if missing:
        raise DocumentSchemaError(f"missing key(s) {missing}", field="$")
    unknown = set(payload) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS)
    if unknown:
        raise DocumentSchemaError(f"unknown key(s) {sorted(unknown)}", field="$")


def _expect(value, kind: type, field: str):
    if not isinstance(value, kind):
        raise DocumentSchemaError(f"expected {kind.__name__}, got {type(value).__name__}", field)
    return value


def group_from_dict(data: dict) -> GroupBackend:
    _expect(data, dict, "group")
    kind = data.get("kind", "finite")
    amenable = bool(data.get("amenable", True))
    if kind == "integers":
        group = IntegerGroup(amenable=amenable)
    elif kind == "trivial":
        group = FiniteTableGroup.trivial()
    elif kind == "cyclic":
        order = _expect(data.get("order"), int, "group.order")
        group = FiniteTableGroup.cyclic(order, data.get("elements"))
    elif kind == "finite":
        names = _expect(data.get("elements"), list, "group.elements")
        rows = _expect(data.get("table"), list, "group.table")
        group = FiniteTableGroup.from_names(names, rows)
    else:
        raise DocumentSchemaError(f"unknown group kind {kind!r}", field="group.kind")
    group.amenable = amenable
    return group


def _sequence(data, field: str, render=str) -> EventuallyPeriodic:
    if isinstance(data, str):
        return EventuallyPeriodic.constant(render(data))
    _expect(data, dict, field)
    prefix = _expect(data.get("prefix", []), list, f"{field}.prefix")
    period = _expect(data.get("period"), list, f"{field}.period")
    if not period:
        raise DocumentSchemaError("the period must not be empty", field=f"{field}.period")
    return EventuallyPeriodic.of([render(v) for v in prefix], [render(v) for v in period])


def graph_from_dict(data: dict) -> Graph:
    _expect(data, dict, "graph")
    vertices = data.get("vertices")
    if isinstance(vertices, (dict, str)):
        logger.error(f"Rejected a symbolic vertex set: {vertices!r}")
        raise UnsupportedVertexSet(
            f"graph.vertices must list finitely many vertices, got {vertices!r}"
        )
    _expect(vertices, list, "graph.vertices")
    edges = []
    for i, item in enumerate(_expect(data.get("edges", []), list, "graph.edges")):
        field = f"graph.edges[{i}]"
        _expect(item, dict, field)
        try:
            edges.append(Edge(item["id"], item["range"], item["source"]))
        except KeyError as e:
            raise DocumentSchemaError(f"missing key {e}", field=field)
    families = []
    for i, item in enumerate(_expect(data.get("families", []), list, "graph.families")):
        field = f"graph.families[{i}]"
        _expect(item, dict, field)
        try:
            sources = _sequence(item["sources"], f"{field}.sources")
            families.append(EdgeFamily(item["id"], item["range"], sources))
        except KeyError as e:
            raise DocumentSchemaError(f"missing key {e}", field=field)
    boundary = _expect(data.get("boundary", []), list, "graph.boundary")
    return Graph(vertices, edges, families, boundary)


def _element(group: GroupBackend, token, field: str) -> int:
    try:
        return group.parse(str(token))
    except UnknownGroupElement as e:
        raise DocumentSchemaError(str(e.detail), field=field)


def generators_from_dict(group: GroupBackend, action: dict, cocycle: dict) -> dict:
    _expect(action, dict, "action")
    _expect(cocycle, dict, "cocycle")
    generators = {}
    for name in sorted(set(action) | set(cocycle)):
        g = _element(group, name, f"action.{name}")
        moves = _expect(action.get(name, {}), dict, f"action.{name}")
        values = _expect(cocycle.get(name, {}), dict, f"cocycle.{name}")
        edge_cocycle = {
            a: _element(group, h, f"cocycle.{name}.edges.{a}")
            for a, h in _expect(values.get("edges", {}), dict, f"cocycle.{name}.edges").items()
        }
        family_cocycle = {
            f: _sequence(
                seq,
                f"cocycle.{name}.families.{f}",
                lambda token, f=f: _element(group, token, f"cocycle.{name}.families.{f}"),
            )
            for f, seq in _expect(
                values.get("families", {}), dict, f"cocycle.{name}.families"
            ).items()
        }
        generators[g] = GeneratorSpec(
            vertices=dict(_expect(moves.get("vertices", {}), dict, f"action.{name}.vertices")),
            edges=dict(_expect(moves.get("edges", {}), dict, f"action.{name}.edges")),
            families=dict(_expect(moves.get("families", {}), dict, f"action.{name}.families")),
            edge_cocycle=edge_cocycle,
            family_cocycle=family_cocycle,
        )
    return generators


def triple_from_payload(
    payload: dict, *, strict: bool = True, word_budget: int = DEFAULT_WORD_BUDGET
) -> Triple:
    """
    Build a triple from a parsed document. With ``strict`` an axiom
    violation raises InvalidTriple, otherwise the triple comes back unsealed
    with its validation report.
    """
    check_payload(payload)
    group = group_from_dict(payload["group"])
    graph = graph_from_dict(payload["graph"])
    generators = generators_from_dict(group, payload["action"], payload["cocycle"])
    meta = sanitize_meta(payload.get("meta") or {})
    return Triple(graph, group, generators, word_budget=word_budget, strict=strict, meta=meta)


def load_triple(path, **kwargs) -> Triple:
    return triple_from_payload(parse_document(read_text(path)), **kwargs)


# Writing


def group_to_dict(group: GroupBackend) -> dict:
    return group.describe()


def graph_to_dict(graph: Graph) -> dict:
    data = {
        "vertices": list(graph.vertices),
        "edges": [
            {"id": edge.name, "range": edge.range, "source": edge.source}
            for _, edge in sorted(graph.edges.items())
        ],
        "families": [
            {"id": family.name, "range": family.range, "sources": family.sources.as_dict()}
            for _, family in sorted(graph.families.items())
        ],
    }
    if graph.boundary:
        data["boundary"] = sorted(graph.boundary)
    return data


def _generator_to_dicts(triple: Triple, g: int) -> tuple[dict, dict]:
    """
    The non-default entries of one generator: moved vertices, edges and
    families, and cocycle values other than the generator itself.
    """
    maps = triple.symmetry.generators[g]
    name = triple.group.name_of
    action = {
        "vertices": {v: w for v, w in sorted(maps.vertices.items()) if v != w},
        "edges": {a: b for a, b in sorted(maps.edges.items()) if a != b},
        "families": {f: k for f, k in sorted(maps.families.items()) if f != k},
    }
    constant = EventuallyPeriodic.constant(g)
    cocycle = {
        "edges": {a: name(h) for a, h in sorted(maps.edge_cocycle.items()) if h != g},
        "families": {
            f: seq.as_dict(name)
            for f, seq in sorted(maps.family_cocycle.items())
            if seq != constant
        },
    }
    return action, cocycle


def triple_to_dict(triple: Triple, extra: Optional[dict] = None) -> dict:
    action = {}
    cocycle = {}
    for g in triple.generator_elements():
        key = triple.group.name_of(g)
        action[key], cocycle[key] = _generator_to_dicts(triple, g)
    data = {
        "group": group_to_dict(triple.group),
        "graph": graph_to_dict(triple.graph),
        "action": action,
        "cocycle": cocycle,
    }
    if triple.meta:
        data["meta"] = dict(triple.meta)
    data.update(extra or {})
    return data


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def serialize_triple(triple: Triple, extra: Optional[dict] = None) -> str:
    return dumps(triple_to_dict(triple, extra))


def canonical_payload(payload: dict) -> dict:
    """
    The document as the toolkit would write it, used to key caches: two
    documents that denote the same triple get the same canonical payload.
    """
    return triple_to_dict(triple_from_payload(payload, strict=False))
