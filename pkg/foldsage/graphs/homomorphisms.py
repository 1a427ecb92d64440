import logging
from typing import Iterator

from .graph import Graph, VertexMap, iter_bits

logger = logging.getLogger(__name__)


def iter_homomorphisms(G: Graph, H: Graph) -> Iterator[VertexMap]:
    """Every graph homomorphism G -> H, in lexicographic order of tables"""
    n, k = G.vertex_count, H.vertex_count
    looped = 0
    for v in H.loops():
        looped |= 1 << v
    full = (1 << k) - 1
    table = [-1] * n

    def extend(v: int) -> Iterator[VertexMap]:
        if v == n:
            yield VertexMap(n, k, tuple(table))
            return
        candidates = looped if G.has_loop(v) else full
        for u in iter_bits(G.neighbor_mask(v)):
            if u < v:
                candidates &= H.neighbor_mask(table[u])
        for c in iter_bits(candidates):
            table[v] = c
            yield from extend(v + 1)
        table[v] = -1

    yield from extend(0)


def count_homomorphisms(G: Graph, H: Graph) -> int:
    return sum(1 for _ in iter_homomorphisms(G, H))
