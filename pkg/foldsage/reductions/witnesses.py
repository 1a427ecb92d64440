"""Constructive fold certificates for exponential graphs K_m^T.

Each witness f~ returned here satisfies N(f) within N(f~) in the exponential
graph it lives in. The single-level chain repaints the neighborhood of one
vertex at a time in BFS order; every step is a fold certificate on its own, so
the whole chain can be replayed and checked step by step.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import PreconditionError, ValidationError
from ..graphs.graph import Graph, VertexMap

logger = logging.getLogger(__name__)


@dataclass
class WitnessChain:
    """f = maps[0], f^1, ..., f^k; order[i] is the T-vertex repainted by step i+1"""

    color: int
    maps: List[VertexMap] = field(default_factory=list)
    order: List[str] = field(default_factory=list)

    @property
    def final(self) -> VertexMap:
        return self.maps[-1]

    def to_json(self) -> Dict:
        return {
            "color": self.color,
            "order": list(self.order),
            "maps": [m.to_json() for m in self.maps],
        }


def _check_single_level(T: Graph, m: int, check_property: bool) -> None:
    if not T.is_connected():
        raise PreconditionError("T must be connected")
    if m < 1:
        raise ValidationError("Number of colors must be positive", details={"m": m})
    if check_property:
        from ..coloring.perfect import property_P

        holds, witness = property_P(T)
        if not holds:
            raise PreconditionError(
                "T must satisfy property P",
                details={"witness": [T.labels[v] for v in witness]}
            )


def _edge_indices(T: Graph, edge: Tuple[str, str]) -> Tuple[int, int]:
    v, w = T.index_of(edge[0]), T.index_of(edge[1])
    if v == w or not T.adjacent(v, w):
        raise PreconditionError("Witness edge is not an edge of T", details={"edge": list(edge)})
    return v, w


def _spread(
    T: Graph,
    table: List[int],
    positions: Sequence[int],
    start: int,
    color: int,
    codomain: int,
) -> Tuple[List[VertexMap], List[str]]:
    """Repaint N_T(u) with color for u in BFS order from start.

    ``positions[x]`` is where T-vertex x lives inside ``table``. A step is
    recorded only when it changes the map.
    """
    maps: List[VertexMap] = []
    order: List[str] = []
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        nbrs = T.neighbors(u)
        if any(table[positions[x]] != color for x in nbrs):
            for x in nbrs:
                table[positions[x]] = color
            maps.append(VertexMap(len(table), codomain, tuple(table)))
            order.append(T.labels[u])
        for x in nbrs:
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return maps, order


def fold2_chain(
    f: VertexMap,
    T: Graph,
    m: int,
    edge: Tuple[str, str],
    check_property: bool = True,
) -> WitnessChain:
    """Chain of witnesses in K_m^T from f down to a constant map.

    Needs f(v) = f(w) for the edge (v, w). The first step repaints N(v); each
    later vertex u was painted by its BFS parent, so (u, parent) is again a
    monochromatic edge and the step is a valid fold.
    """
    _check_single_level(T, m, check_property)
    if f.domain_size != T.vertex_count or f.codomain_size != m:
        raise ValidationError("Map is not a vertex of K_m^T", details={"m": m})
    v, w = _edge_indices(T, edge)
    if f(v) != f(w):
        raise PreconditionError(
            "Witness edge is not monochromatic",
            details={"edge": list(edge), "colors": [f(v), f(w)]}
        )
    color = f(v)
    maps, order = _spread(T, list(f.table), list(range(T.vertex_count)), v, color, m)
    chain = WitnessChain(color, [f] + maps, order)
    assert chain.final.is_constant(), "BFS repaint left T partly uncovered"
    logger.debug(f"fold2 chain of length {len(order)} towards color {color}")
    return chain


def fold2_witness(
    f: VertexMap,
    T: Graph,
    m: int,
    edge: Tuple[str, str],
    check_property: bool = True,
) -> VertexMap:
    """The constant map f~ = f(v) with N(f) within N(f~) in K_m^T"""
    return fold2_chain(f, T, m, edge, check_property).final


def level_positions(base: Graph, T: Graph, level: int) -> List[int]:
    """Indices of the copies (x, level) of T inside a cone over T"""
    return [base.index_of(f"({label},{level})") for label in T.labels]


def level_fold_chain(
    f: VertexMap,
    T: Graph,
    base: Graph,
    level: int,
    edge: Tuple[str, str],
    check_property: bool = True,
) -> WitnessChain:
    """The single-level chain run inside level ``level`` of a cone base T_A^r.

    Needs f((v,l)) = f((w,l)); the other levels and the apex are untouched.
    """
    m = f.codomain_size
    _check_single_level(T, m, check_property)
    if f.domain_size != base.vertex_count:
        raise ValidationError("Map is not a vertex of K_m^base")
    positions = level_positions(base, T, level)
    v, w = _edge_indices(T, edge)
    if f(positions[v]) != f(positions[w]):
        raise PreconditionError(
            "Witness edge is not monochromatic on this level",
            details={"edge": list(edge), "level": level}
        )
    color = f(positions[v])
    maps, order = _spread(T, list(f.table), positions, v, color, m)
    return WitnessChain(color, [f] + maps, order)


def level_fold_witness(
    f: VertexMap,
    T: Graph,
    base: Graph,
    level: int,
    edge: Tuple[str, str],
    check_property: bool = True,
) -> VertexMap:
    return level_fold_chain(f, T, base, level, edge, check_property).final


def block_positions(base: Graph, n: int, p: int, q: int) -> List[int]:
    """Indices of the block ((x,p),q), x = 1..n, of M(M(K_n))"""
    return [base.index_of(f"(({x},{p}),{q})") for x in range(1, n + 1)]


def folddouble_witness(f: VertexMap, base: Graph, n: int, p: int, q: int) -> VertexMap:
    """Make block (p, q) constant when it repeats a color.

    The block f_{p,q} : [n] -> [m] must send two distinct vertices i0, i1 to
    the same color c; the witness sets the whole block to c.
    """
    positions = block_positions(base, n, p, q)
    colors = [f(i) for i in positions]
    seen: Dict[int, int] = {}
    collision: Optional[int] = None
    for c in colors:
        if c in seen:
            collision = c
            break
        seen[c] = 1
    if collision is None:
        raise PreconditionError(
            "Block is injective; no fold applies",
            details={"block": [p, q], "colors": colors}
        )
    table = list(f.table)
    for i in positions:
        table[i] = collision
    return VertexMap(f.domain_size, f.codomain_size, tuple(table))


@dataclass(frozen=True)
class GeneralFold:
    witness: VertexMap
    case: str
    pair: Tuple[int, int]


def generalfold_witness(f: VertexMap, base: Graph, n: int) -> Optional[GeneralFold]:
    """Fold for blocks f00, f10 that are both homomorphisms K_n -> K_m.

    If f00(i0) = f10(j0) for some i0 != j0, block (1,0) becomes the constant
    f00(i0). Equal images with f00 != f10, and different images with two or
    more disagreeing vertices, both produce such a pair; the case tag records
    which hypothesis applied. Returns None when no pair exists.
    """
    b00 = [f(i) for i in block_positions(base, n, 0, 0)]
    b10 = block_positions(base, n, 1, 0)
    v10 = [f(i) for i in b10]
    if len(set(b00)) != n or len(set(v10)) != n:
        raise PreconditionError("Blocks (0,0) and (1,0) must both be homomorphisms")
    pair = next(
        ((i0, j0) for i0 in range(n) for j0 in range(n) if i0 != j0 and b00[i0] == v10[j0]),
        None
    )
    if pair is None:
        return None
    if set(b00) == set(v10):
        case = "equal-image"
    elif sum(a != b for a, b in zip(b00, v10)) >= 2:
        case = "spread-image"
    else:
        case = "shared-color"
    table = list(f.table)
    for i in b10:
        table[i] = b00[pair[0]]
    return GeneralFold(VertexMap(f.domain_size, f.codomain_size, tuple(table)), case, pair)
