import logging
import time
from typing import List, Optional, Tuple

from ..errors import BudgetExceededError
from ..graphs.graph import Graph, iter_bits
from .model import require_loopless

logger = logging.getLogger(__name__)


def _greedy_bound(rows, candidates: int) -> List[Tuple[int, int]]:
    """Greedy color classes over candidates; (vertex, class number) in class order"""
    order: List[Tuple[int, int]] = []
    uncolored = candidates
    color = 0
    while uncolored:
        color += 1
        available = uncolored
        while available:
            v = (available & -available).bit_length() - 1
            available &= ~rows[v] & ~(1 << v)
            uncolored &= ~(1 << v)
            order.append((v, color))
    return order


def max_clique(G: Graph, deadline: Optional[float] = None) -> Tuple[int, List[int]]:
    """Maximum clique by branch and bound with greedy-coloring bounds"""
    require_loopless(G, "max_clique")
    n = G.vertex_count
    if n == 0:
        return 0, []
    rows = G.rows
    best: List[int] = [max(range(n), key=lambda v: (G.degree(v), -v))]
    nodes = 0

    def expand(current: List[int], candidates: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            raise BudgetExceededError("Clique search ran out of time", details={"best": len(best)})
        order = _greedy_bound(rows, candidates)
        for v, bound in reversed(order):
            if len(current) + bound <= len(best):
                return
            current.append(v)
            remaining = candidates & rows[v]
            if remaining:
                expand(current, remaining)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            candidates &= ~(1 << v)

    expand([], (1 << n) - 1)
    best.sort()
    logger.debug(f"Clique number {len(best)} after {nodes} search nodes")
    return len(best), best


def is_clique(G: Graph, vertices: List[int]) -> bool:
    return all(G.adjacent(u, v) for i, u in enumerate(vertices) for v in vertices[i + 1:])
