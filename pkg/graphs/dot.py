import logging

from graphs.graph import Graph
from utils.security import escape_dot_label

logger = logging.getLogger(__name__)


def to_dot(graph: Graph, name: str = "E") -> str:
    """
    Render ``graph`` in Graphviz DOT.

    Arrows point from s(e) to r(e). Each family is one dashed arrow from its
    first source, labelled ``id[∞]`` with the source sequence.
    """
    lines = [f'digraph "{escape_dot_label(name)}" {{', "  rankdir=RL;"]
    for v in graph.vertices:
        label = escape_dot_label(v)
        if graph.is_boundary(v):
            lines.append(f'  "{label}" [style=dotted, label="{label} (boundary)"];')
        else:
            lines.append(f'  "{label}";')
    for edge_name in sorted(graph.edges):
        edge = graph.edges[edge_name]
        lines.append(
            f'  "{escape_dot_label(edge.source)}" -> "{escape_dot_label(edge.range)}" '
            f'[label="{escape_dot_label(edge.name)}"];'
        )
    for family_name in sorted(graph.families):
        family = graph.families[family_name]
        label = f"{family.name}[∞] sources {family.sources}"
        lines.append(
            f'  "{escape_dot_label(family.sources.at(1))}" -> '
            f'"{escape_dot_label(family.range)}" '
            f'[style=dashed, label="{escape_dot_label(label)}"];'
        )
    lines.append("}")
    logger.debug(f"Rendered DOT for {graph!r}")
    return "\n".join(lines) + "\n"
