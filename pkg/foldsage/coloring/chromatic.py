import logging
import time
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional

from ..errors import BudgetExceededError
from ..graphs.graph import Graph, iter_bits
from .clique import max_clique
from .model import Coloring, require_loopless

logger = logging.getLogger(__name__)

DEFAULT_SOLVER_BUDGET_MS = 120_000


class ChromaticStatus(str, Enum):
    EXACT = "exact"
    BRACKET = "bracket"


@dataclass
class ChromaticResult:
    lower: int
    upper: int
    coloring: Coloring
    status: ChromaticStatus = ChromaticStatus.EXACT
    clique: Optional[List[str]] = None

    @property
    def value(self) -> Optional[int]:
        return self.upper if self.status == ChromaticStatus.EXACT else None

    @property
    def is_exact(self) -> bool:
        return self.status == ChromaticStatus.EXACT

    def to_json(self) -> Dict:
        return {
            "chi": self.value,
            "status": self.status.value,
            "bracket": [self.lower, self.upper],
            "clique": self.clique,
            "coloring": self.coloring.to_json(),
        }


class _OutOfTime(Exception):
    pass


def dsatur_coloring(G: Graph) -> List[int]:
    """Greedy DSATUR coloring"""
    n = G.vertex_count
    rows = G.rows
    colors = [-1] * n
    neighbor_colors = [0] * n
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (neighbor_colors[u].bit_count(), G.degree(u), -u)
        )
        c = 0
        while (neighbor_colors[v] >> c) & 1:
            c += 1
        colors[v] = c
        for w in iter_bits(rows[v]):
            neighbor_colors[w] |= 1 << c
    return colors


def _k_coloring(G: Graph, k: int, precolored: List[int], deadline: Optional[float]) -> Optional[List[int]]:
    """Backtracking k-coloring with the given vertices fixed to colors 0, 1, ..."""
    n = G.vertex_count
    rows = G.rows
    colors = [-1] * n
    classes = [0] * k
    for c, v in enumerate(precolored):
        colors[v] = c
        classes[c] |= 1 << v
    nodes = 0

    def saturation(v: int) -> int:
        return sum(1 for c in range(k) if classes[c] & rows[v])

    def solve(remaining: int, used: int) -> bool:
        nonlocal nodes
        if remaining == 0:
            return True
        nodes += 1
        if deadline is not None and nodes % 2048 == 0 and time.monotonic() > deadline:
            raise _OutOfTime()
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (saturation(u), G.degree(u), -u)
        )
        for c in range(min(k, used + 1)):
            if classes[c] & rows[v]:
                continue
            colors[v] = c
            classes[c] |= 1 << v
            if solve(remaining - 1, max(used, c + 1)):
                return True
            classes[c] &= ~(1 << v)
            colors[v] = -1
        return False

    if solve(n - len(precolored), len(precolored)):
        return colors
    return None


def k_colorable(G: Graph, k: int, budget_ms: Optional[int] = None) -> Optional[List[int]]:
    require_loopless(G, "k_colorable")
    if G.vertex_count == 0:
        return []
    if k <= 0:
        return None
    deadline = time.monotonic() + budget_ms / 1000 if budget_ms else None
    try:
        return _k_coloring(G, k, [], deadline)
    except _OutOfTime:
        raise BudgetExceededError("k-coloring search ran out of time", budget=budget_ms)


def chromatic_number(G: Graph, budget_ms: Optional[int] = DEFAULT_SOLVER_BUDGET_MS) -> ChromaticResult:
    """Exact chromatic number with a validated witness coloring.

    The clique bound seeds the search from below, DSATUR from above; each k in
    between is decided by backtracking with the clique pre-colored. Running out
    of time leaves a [lower, upper] bracket instead of an exact value.
    """
    require_loopless(G, "chromatic_number")
    n = G.vertex_count
    if n == 0:
        return ChromaticResult(0, 0, Coloring(0, {}), clique=[])

    start = time.monotonic()
    deadline = start + budget_ms / 1000 if budget_ms else None
    try:
        lower, clique = max_clique(G, deadline)
    except BudgetExceededError:
        lower, clique = 1, [0]
    best = dsatur_coloring(G)
    upper = max(best) + 1
    status = ChromaticStatus.EXACT

    k = lower
    while k < upper:
        try:
            found = _k_coloring(G, k, clique, deadline)
        except _OutOfTime:
            logger.warning(f"Chromatic search timed out with bracket [{k}, {upper}]")
            lower = k
            status = ChromaticStatus.BRACKET
            break
        if found is not None:
            best = found
            upper = k
            break
        k += 1
    if status == ChromaticStatus.EXACT:
        lower = upper

    coloring = Coloring.from_colors(G, best, upper)
    coloring.validate(G)
    elapsed = (time.monotonic() - start) * 1000
    logger.info(f"chi in [{lower}, {upper}] ({status.value}) for {n} vertices in {elapsed:.0f} ms")
    return ChromaticResult(lower, upper, coloring, status, [G.labels[v] for v in clique])


def two_coloring(G: Graph) -> Optional[List[int]]:
    """Proper 2-coloring by BFS, or None when G is not bipartite"""
    n = G.vertex_count
    colors = [-1] * n
    for root in range(n):
        if colors[root] >= 0:
            continue
        colors[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in iter_bits(G.neighbor_mask(v)):
                if colors[w] < 0:
                    colors[w] = 1 - colors[v]
                    queue.append(w)
                elif colors[w] == colors[v]:
                    return None
    return colors
