import hashlib
import json
import logging
from typing import Dict, List, Optional, Tuple

from ..errors import BudgetExceededError
from .graph import Graph, VertexMap, iter_bits

logger = logging.getLogger(__name__)

DEFAULT_ISO_MAX_VERTICES = 16
DEFAULT_CANONICAL_MAX_VERTICES = 10
DEFAULT_EMBEDDING_NODE_BUDGET = 5_000_000


def _invariant(G: Graph, v: int) -> Tuple[int, int, Tuple[int, ...]]:
    """Loop flag, degree and sorted neighbor degrees"""
    return (
        int(G.has_loop(v)),
        G.degree(v),
        tuple(sorted(G.degree(w) for w in iter_bits(G.neighbor_mask(v)))),
    )


def _connected_order(G: Graph) -> List[int]:
    """Greedy order that keeps each new vertex adjacent to placed ones when possible"""
    order: List[int] = []
    placed = 0
    remaining = set(range(G.vertex_count))
    while remaining:
        frontier = [v for v in remaining if G.neighbor_mask(v) & placed]
        pool = frontier or list(remaining)
        v = max(pool, key=lambda u: ((G.neighbor_mask(u) & placed).bit_count(), G.degree(u), -u))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def find_isomorphism(G: Graph, H: Graph, max_vertices: int = DEFAULT_ISO_MAX_VERTICES) -> Optional[VertexMap]:
    """Isomorphism G -> H by backtracking with degree/loop pruning, or None"""
    n = G.vertex_count
    if max(n, H.vertex_count) > max_vertices:
        raise BudgetExceededError(
            f"Isomorphism search is limited to {max_vertices} vertices",
            required=max(n, H.vertex_count),
            budget=max_vertices
        )
    if n != H.vertex_count or G.edge_count() != H.edge_count() or len(G.loops()) != len(H.loops()):
        return None
    inv_g = [_invariant(G, v) for v in range(n)]
    inv_h = [_invariant(H, v) for v in range(n)]
    if sorted(inv_g) != sorted(inv_h):
        return None

    order = _connected_order(G)
    by_invariant: Dict[Tuple, int] = {}
    for w in range(n):
        by_invariant[inv_h[w]] = by_invariant.get(inv_h[w], 0) | (1 << w)
    image = [-1] * n
    used = 0

    def extend(depth: int) -> bool:
        nonlocal used
        if depth == n:
            return True
        v = order[depth]
        candidates = by_invariant[inv_g[v]] & ~used
        for u in order[:depth]:
            if G.adjacent(v, u):
                candidates &= H.neighbor_mask(image[u])
            else:
                candidates &= ~H.neighbor_mask(image[u])
        for w in iter_bits(candidates):
            image[v] = w
            used |= 1 << w
            if extend(depth + 1):
                return True
            used &= ~(1 << w)
        image[v] = -1
        return False

    if not extend(0):
        return None
    mapping = VertexMap(n, n, tuple(image))
    assert is_isomorphism(G, H, mapping)
    return mapping


def is_isomorphic(G: Graph, H: Graph, max_vertices: int = DEFAULT_ISO_MAX_VERTICES) -> Tuple[bool, Optional[VertexMap]]:
    mapping = find_isomorphism(G, H, max_vertices)
    return mapping is not None, mapping


def is_isomorphism(G: Graph, H: Graph, mapping: VertexMap) -> bool:
    """Check that mapping is a bijection V(G) -> V(H) preserving adjacency both ways"""
    n = G.vertex_count
    if n != H.vertex_count or mapping.domain_size != n or mapping.codomain_size != n:
        return False
    if not mapping.is_injective():
        return False
    image = mapping.table
    for v in range(n):
        mapped = 0
        for w in iter_bits(G.neighbor_mask(v)):
            mapped |= 1 << image[w]
        if mapped != H.neighbor_mask(image[v]):
            return False
    return True


def find_subgraph_embedding(
    pattern: Graph,
    host: Graph,
    node_budget: int = DEFAULT_EMBEDDING_NODE_BUDGET
) -> Optional[VertexMap]:
    """Injective map V(pattern) -> V(host) sending edges to edges and loops to loops"""
    n = pattern.vertex_count
    if n > host.vertex_count:
        return None
    order = _connected_order(pattern)
    host_looped = 0
    for v in host.loops():
        host_looped |= 1 << v
    full = (1 << host.vertex_count) - 1
    image = [-1] * n
    used = 0
    nodes = 0

    def extend(depth: int) -> bool:
        nonlocal used, nodes
        if depth == n:
            return True
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(
                "Subgraph embedding search exceeded its node budget",
                required=nodes,
                budget=node_budget
            )
        v = order[depth]
        candidates = full & ~used
        if pattern.has_loop(v):
            candidates &= host_looped
        for u in order[:depth]:
            if pattern.adjacent(v, u):
                candidates &= host.neighbor_mask(image[u])
        degree = pattern.degree(v)
        for w in iter_bits(candidates):
            if host.degree(w) < degree:
                continue
            image[v] = w
            used |= 1 << w
            if extend(depth + 1):
                return True
            used &= ~(1 << w)
        image[v] = -1
        return False

    if not extend(0):
        return None
    mapping = VertexMap(n, host.vertex_count, tuple(image))
    assert mapping.is_injective() and mapping.is_homomorphism(pattern, host)
    return mapping


def _refined_classes(G: Graph) -> List[Tuple]:
    """Isomorphism-invariant color per vertex after a few refinement rounds"""
    colors = [_invariant(G, v) for v in range(G.vertex_count)]
    for _ in range(G.vertex_count):
        refined = [
            (colors[v], tuple(sorted(colors[w] for w in iter_bits(G.neighbor_mask(v)))))
            for v in range(G.vertex_count)
        ]
        ranks = {c: i for i, c in enumerate(sorted(set(refined)))}
        new_colors = [(ranks[c],) for c in refined]
        if len(set(new_colors)) == len(set(colors)):
            colors = new_colors
            break
        colors = new_colors
    return colors


def _canonical_code(G: Graph) -> Tuple[int, ...]:
    """Lexicographically largest adjacency code over invariant-respecting orderings"""
    n = G.vertex_count
    classes = _refined_classes(G)
    order_key = sorted(range(n), key=lambda v: classes[v], reverse=True)
    cell_of_position = [classes[v] for v in order_key]
    best: List[Optional[Tuple[int, ...]]] = [None]
    chosen: List[int] = []

    def segment(v: int) -> Tuple[int, ...]:
        return tuple(int(G.adjacent(v, u)) for u in chosen) + (int(G.has_loop(v)),)

    def twins(a: int, b: int) -> bool:
        ra = G.neighbor_mask(a) & ~((1 << a) | (1 << b))
        rb = G.neighbor_mask(b) & ~((1 << a) | (1 << b))
        return ra == rb and G.has_loop(a) == G.has_loop(b)

    def extend(depth: int, code: Tuple[int, ...]) -> None:
        if depth == n:
            if best[0] is None or code > best[0]:
                best[0] = code
            return
        cell = cell_of_position[depth]
        representatives: List[int] = []
        for v in range(n):
            if v in chosen or classes[v] != cell:
                continue
            if any(twins(v, w) for w in representatives):
                continue
            representatives.append(v)
        scored = sorted(((segment(v), v) for v in representatives), reverse=True)
        for seg, v in scored:
            candidate = code + seg
            if best[0] is not None and candidate < best[0][:len(candidate)]:
                continue
            chosen.append(v)
            extend(depth + 1, candidate)
            chosen.pop()

    extend(0, ())
    return best[0] or ()


def canonical_key(G: Graph, max_vertices: int = DEFAULT_CANONICAL_MAX_VERTICES) -> bytes:
    """Cache key equal for isomorphic graphs up to max_vertices, labeled beyond"""
    if G.vertex_count <= max_vertices:
        code = _canonical_code(G)
        blob = b"C" + G.vertex_count.to_bytes(4, "big") + bytes(code)
    else:
        blob = b"L" + json.dumps(G.to_json(), sort_keys=True).encode()
    return hashlib.sha256(blob).digest()


def labeled_digest(G: Graph) -> str:
    return hashlib.sha256(json.dumps(G.to_json(), sort_keys=True).encode()).hexdigest()
