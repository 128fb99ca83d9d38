"""
The domination order on a finite family of models as a networkx DiGraph.
"""

import logging
import re
from typing import List, Set, Tuple

import networkx as nx

from models.linkage import LinkageClassDescriptor, SubschemeModel
from services.domination import relative_theta_from
from services.errors import InvalidInputError
from services.linkage import enumerate_models, invariants

logger = logging.getLogger(__name__)

EDGE_PATTERN = re.compile(r"^\s*(n\d+)\s*->\s*(n\d+)")


def model_family(
    cls: LinkageClassDescriptor, max_height: int, window: Tuple[int, int]
) -> List[SubschemeModel]:
    if max_height < 0:
        raise InvalidInputError(f"max height must be >= 0, got {max_height}")
    return [X for h in range(max_height + 1) for X in enumerate_models(cls, h, window)]


def domination_graph(
    cls: LinkageClassDescriptor, max_height: int, window: Tuple[int, int]
) -> nx.DiGraph:
    """
    Node i is the i-th model of the family; an edge X -> Y means X <=_h Y
    with X != Y and carries h as its height attribute. Edges are read off
    the stored thetas, which are the thetas over the minimal element.
    """
    family = model_family(cls, max_height, window)
    G = nx.DiGraph()
    for i, X in enumerate(family):
        derived = invariants(X)
        G.add_node(
            i, model=X, s0X=derived.s0X, s1X=derived.s1X, degree=derived.degree
        )
    for i, X in enumerate(family):
        for j, Y in enumerate(family):
            if i == j:
                continue
            if relative_theta_from(X.theta, Y.theta, X.h, Y.h) is not None:
                G.add_edge(i, j, height=Y.h - X.h)
    if not nx.is_directed_acyclic_graph(G):
        raise InvalidInputError("domination relation on the family is not acyclic")
    logger.info(f"domination poset: {G.number_of_nodes()} models, {G.number_of_edges()} relations")
    return G


def hasse(G: nx.DiGraph) -> nx.DiGraph:
    reduced = nx.transitive_reduction(G)
    reduced.add_nodes_from(G.nodes(data=True))
    reduced.add_edges_from((u, v, G.edges[u, v]) for u, v in reduced.edges)
    return reduced


def _label(data: dict) -> str:
    X = data["model"]
    return f"h={X.h} theta={X.theta}\\ns0X={data['s0X']} s1X={data['s1X']} deg={data['degree']}"


def to_dot(G: nx.DiGraph, name: str = "domination") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for node in sorted(G.nodes):
        lines.append(f'  n{node} [label="{_label(G.nodes[node])}"];')
    for u, v in sorted(G.edges):
        lines.append(f'  n{u} -> n{v} [label="{G.edges[u, v]["height"]}"];')
    lines.append("}")
    return "\n".join(lines)


def dot_edges(text: str) -> Set[Tuple[int, int]]:
    """Edge set of a DOT document written by to_dot"""
    edges = set()
    for line in text.splitlines():
        match = EDGE_PATTERN.match(line)
        if match:
            edges.add((int(match.group(1)[1:]), int(match.group(2)[1:])))
    return edges


def to_json(G: nx.DiGraph) -> dict:
    return {
        "nodes": [
            {
                "id": node,
                **G.nodes[node]["model"].summary(),
                "s0X": G.nodes[node]["s0X"],
                "s1X": G.nodes[node]["s1X"],
                "degree": G.nodes[node]["degree"],
            }
            for node in sorted(G.nodes)
        ],
        "edges": [
            {"from": u, "to": v, "height": G.edges[u, v]["height"]}
            for u, v in sorted(G.edges)
        ],
    }
