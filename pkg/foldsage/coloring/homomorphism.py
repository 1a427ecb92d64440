import logging
from typing import List, Optional, Tuple

from ..errors import BudgetExceededError, ConstructionError
from ..graphs.constructions import complete_graph
from ..graphs.graph import Graph, VertexMap, iter_bits
from ..graphs.implicit import ImplicitExponential

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 5_000_000


def _revise(G: Graph, H: Graph, domains: List[int]) -> bool:
    """Arc consistency to a fixpoint; False once some domain is empty"""
    queue = list(range(G.vertex_count))
    pending = set(queue)
    while queue:
        u = queue.pop()
        pending.discard(u)
        for v in iter_bits(G.neighbor_mask(u)):
            support = 0
            for x in iter_bits(domains[u]):
                support |= H.neighbor_mask(x)
            narrowed = domains[v] & support
            if narrowed != domains[v]:
                if not narrowed:
                    return False
                domains[v] = narrowed
                if v not in pending:
                    pending.add(v)
                    queue.append(v)
    return True


def hom_exists(G: Graph, H: Graph, node_budget: int = DEFAULT_NODE_BUDGET) -> Optional[VertexMap]:
    """A homomorphism G -> H found by backtracking with arc consistency, or None"""
    n, k = G.vertex_count, H.vertex_count
    if n == 0:
        return VertexMap(0, k, ())
    if k == 0:
        return None
    looped = 0
    for x in H.loops():
        looped |= 1 << x
    full = (1 << k) - 1
    domains = [looped if G.has_loop(v) else full for v in range(n)]
    if not all(domains) or not _revise(G, H, domains):
        return None
    nodes = 0

    def search(domains: List[int]) -> Optional[List[int]]:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(
                "Homomorphism search exceeded its node budget",
                required=nodes,
                budget=node_budget
            )
        open_vertices = [v for v in range(n) if domains[v].bit_count() > 1]
        if not open_vertices:
            return [(d & -d).bit_length() - 1 for d in domains]
        v = min(open_vertices, key=lambda u: (domains[u].bit_count(), -G.degree(u), u))
        for x in iter_bits(domains[v]):
            trial = list(domains)
            trial[v] = 1 << x
            if _revise(G, H, trial):
                found = search(trial)
                if found is not None:
                    return found
        return None

    table = search(domains)
    if table is None:
        return None
    mapping = VertexMap(n, k, tuple(table))
    if not mapping.is_homomorphism(G, H):
        raise ConstructionError("Homomorphism search returned a non-homomorphism",
                                details={"table": list(table)})
    logger.debug(f"Homomorphism found after {nodes} search nodes")
    return mapping


def evaluation_counterexample(T: Graph, m: int, vertex_budget: int) -> Optional[Tuple[str, List[int], str, List[int]]]:
    """Check that (x, f) -> f(x) maps T x K_m^T homomorphically onto K_m.

    Returns None when every edge ((x,f),(y,g)) satisfies f(x) != g(y),
    otherwise the first offending pair.
    """
    exponential = ImplicitExponential.full(complete_graph(m), T)
    count = exponential.vertex_count()
    if count > vertex_budget:
        raise BudgetExceededError(
            f"K_m^T has {count} vertices, over the budget of {vertex_budget}",
            required=count,
            budget=vertex_budget
        )
    edges = T.ordered_edges()
    for f in exponential.vertices():
        for g in exponential.neighbors(f):
            for x, y in edges:
                if f[x] == g[y]:
                    return T.labels[x], list(f), T.labels[y], list(g)
    return None


def evaluation_homomorphism_holds(T: Graph, m: int, vertex_budget: int = 300_000) -> bool:
    return evaluation_counterexample(T, m, vertex_budget) is None
