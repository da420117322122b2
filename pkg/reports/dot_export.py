"""
DOT export of reduction graphs and pasting diagrams
"""

import networkx as nx

from core.logging_setup import logger
from operations.equivalence import Diagram


def _quote(text):
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _reduction_lines(graph):
    nodes = sorted(graph.nodes, key=lambda s: (len(s), s.gens))
    ids = {s: f"s{i}" for i, s in enumerate(nodes)}
    lines = [f"  {ids[s]} [label={_quote(s.compact())}];" for s in nodes]
    edges = sorted(graph.edges(keys=True, data=True),
                   key=lambda e: (nodes.index(e[0]), nodes.index(e[1]), e[2]))
    lines += [f"  {ids[u]} -> {ids[v]} [label={_quote(key)}];" for u, v, key, _ in edges]
    return lines


def _diagram_lines(diagram):
    lines = [f"  {name} [label={_quote(s.compact())}];" for name, s in diagram.nodes.items()]
    lines += [f"  {u} -> {v} [label={_quote(d)}];" for u, v, d in diagram.edges]
    return lines


def export_dot(graph, name="G"):
    """
    DOT text for a Diagram or a reduction graph (networkx MultiDiGraph of
    TypedStrings); node order is deterministic, an empty graph gives the
    header alone.
    """
    if isinstance(graph, Diagram):
        lines = _diagram_lines(graph)
    elif isinstance(graph, nx.MultiDiGraph):
        lines = _reduction_lines(graph)
    else:
        raise TypeError(f"cannot export {type(graph).__name__} as DOT")
    logger.debug(f"DOT export {name}: {len(lines)} lines")
    return "\n".join([f"digraph {_quote(name)} {{", "  rankdir=LR;"] + lines + ["}"]) + "\n"
