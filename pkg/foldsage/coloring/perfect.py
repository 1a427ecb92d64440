import logging
from typing import List, Optional, Tuple

import networkx as nx

from ..errors import BudgetExceededError, PreconditionError
from ..graphs.graph import Graph, iter_bits
from .chromatic import chromatic_number
from .clique import max_clique

logger = logging.getLogger(__name__)

DEFAULT_ODD_HOLE_MAX_VERTICES = 10

HOLE = "hole"
ANTIHOLE = "antihole"


def violates_P(G: Graph, quad: Tuple[int, int, int, int]) -> bool:
    """Whether disjoint edges (v1,w1), (v2,w2) with v2 ~ v1 break property P"""
    v1, w1, v2, w2 = quad
    if len({v1, w1, v2, w2}) != 4:
        return False
    if not (G.adjacent(v1, w1) and G.adjacent(v2, w2) and G.adjacent(v2, v1)):
        return False
    return not (G.adjacent(w2, v1) or G.adjacent(w2, w1))


def property_P(G: Graph) -> Tuple[bool, Optional[Tuple[int, int, int, int]]]:
    """Scan ordered pairs of disjoint oriented edges; the witness is (v1, w1, v2, w2)"""
    if not G.is_simple():
        raise PreconditionError("property P is defined for simple graphs")
    oriented = G.ordered_edges()
    for v1, w1 in oriented:
        for v2 in iter_bits(G.neighbor_mask(v1)):
            if v2 == w1:
                continue
            # w2 must avoid both v1 and w1 as neighbors
            bad = G.neighbor_mask(v2) & ~G.neighbor_mask(v1) & ~G.neighbor_mask(w1)
            bad &= ~((1 << v1) | (1 << w1))
            if bad:
                w2 = (bad & -bad).bit_length() - 1
                return False, (v1, w1, v2, w2)
    return True, None


def _to_networkx(G: Graph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(G.vertex_count))
    graph.add_edges_from(G.edges())
    return graph


def _normalized(cycle: List[int]) -> List[int]:
    start = cycle.index(min(cycle))
    rotated = cycle[start:] + cycle[:start]
    if len(rotated) > 2 and rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return rotated


def _odd_hole(graph: nx.Graph) -> Optional[List[int]]:
    holes = [c for c in nx.chordless_cycles(graph) if len(c) >= 5 and len(c) % 2 == 1]
    if not holes:
        return None
    return min((_normalized(list(c)) for c in holes), key=lambda c: (len(c), c))


def find_odd_hole_or_antihole(
    G: Graph,
    max_vertices: int = DEFAULT_ODD_HOLE_MAX_VERTICES
) -> Optional[Tuple[List[str], str]]:
    """Shortest odd induced cycle of length >= 5 in G, else in its complement"""
    if G.vertex_count > max_vertices:
        raise BudgetExceededError(
            f"Odd hole search is limited to {max_vertices} vertices",
            required=G.vertex_count,
            budget=max_vertices
        )
    if not G.is_simple():
        raise PreconditionError("Odd hole search needs a simple graph")
    hole = _odd_hole(_to_networkx(G))
    if hole is not None:
        return [G.labels[v] for v in hole], HOLE
    antihole = _odd_hole(_to_networkx(G.complement()))
    if antihole is not None:
        return [G.labels[v] for v in antihole], ANTIHOLE
    return None


def is_perfect_bruteforce(G: Graph) -> Tuple[bool, Optional[List[str]]]:
    """omega = chi on every induced subgraph; returns a violating vertex set"""
    n = G.vertex_count
    for mask in range(1, 1 << n):
        vertices = list(iter_bits(mask))
        sub = G.induced_subgraph(vertices)
        omega, _ = max_clique(sub)
        if chromatic_number(sub, budget_ms=None).value != omega:
            return False, [G.labels[v] for v in vertices]
    return True, None
