import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..errors import ValidationError

logger = logging.getLogger(__name__)


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of mask, ascending"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


class Graph:
    """Finite undirected graph with labeled vertices and optional loops.

    Row ``i`` is an int bitset of the neighbors of vertex ``i``; a loop at ``i``
    is bit ``i`` of row ``i``. Instances are immutable.
    """

    __slots__ = ("_labels", "_rows", "_index")

    def __init__(self, labels: Sequence[str], rows: Sequence[int]):
        labels = tuple(str(label) for label in labels)
        rows = tuple(rows)
        if len(labels) != len(rows):
            raise ValidationError(
                "Label and adjacency row counts differ",
                details={"labels": len(labels), "rows": len(rows)}
            )
        index = {label: i for i, label in enumerate(labels)}
        if len(index) != len(labels):
            duplicates = sorted(l for l, count in Counter(labels).items() if count > 1)
            raise ValidationError("Duplicate vertex label", details={"labels": duplicates})
        limit = 1 << len(labels)
        for row in rows:
            if row < 0 or row >= limit:
                raise ValidationError("Adjacency row references unknown vertex")
        self._labels = labels
        self._rows = rows
        self._index = index

    @classmethod
    def from_edges(
        cls,
        labels: Sequence[str],
        edges: Iterable[Tuple[int, int]],
        loops: Iterable[int] = ()
    ) -> "Graph":
        rows = [0] * len(labels)
        for u, v in edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        for v in loops:
            rows[v] |= 1 << v
        return cls(labels, rows)

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    @property
    def rows(self) -> Tuple[int, ...]:
        return self._rows

    @property
    def vertex_count(self) -> int:
        return len(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._labels == other._labels and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._labels, self._rows))

    def __repr__(self) -> str:
        return f"Graph(vertices={self.vertex_count}, edges={self.edge_count()}, loops={len(self.loops())})"

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValidationError(f"Unknown vertex label: {label}", details={"label": label})

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self._rows[u] >> v) & 1)

    def has_loop(self, v: int) -> bool:
        return bool((self._rows[v] >> v) & 1)

    def is_simple(self) -> bool:
        return not any((row >> v) & 1 for v, row in enumerate(self._rows))

    def is_symmetric(self) -> bool:
        for u, row in enumerate(self._rows):
            for v in iter_bits(row):
                if not (self._rows[v] >> u) & 1:
                    return False
        return True

    def neighbor_mask(self, v: int) -> int:
        return self._rows[v]

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self._rows[v]))

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def edges(self) -> List[Tuple[int, int]]:
        """Non-loop edges as (u, v) with u < v"""
        result = []
        for u, row in enumerate(self._rows):
            for v in iter_bits(row >> (u + 1)):
                result.append((u, u + 1 + v))
        return result

    def ordered_edges(self) -> List[Tuple[int, int]]:
        """Every (u, v) with u ~ v, loops included once"""
        return [(u, v) for u, row in enumerate(self._rows) for v in iter_bits(row)]

    def loops(self) -> List[int]:
        return [v for v, row in enumerate(self._rows) if (row >> v) & 1]

    def edge_count(self) -> int:
        return len(self.edges())

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        vertices = list(vertices)
        position = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for w in iter_bits(self._rows[v]):
                if w in position:
                    row |= 1 << position[w]
            rows.append(row)
        return Graph([self._labels[v] for v in vertices], rows)

    def remove_vertices(self, removed: Iterable[int]) -> "Graph":
        removed = set(removed)
        return self.induced_subgraph([v for v in range(self.vertex_count) if v not in removed])

    def remove_vertex(self, v: int) -> "Graph":
        return self.remove_vertices([v])

    def complement(self) -> "Graph":
        """Loopless complement"""
        full = (1 << self.vertex_count) - 1
        rows = [(full & ~row) & ~(1 << v) for v, row in enumerate(self._rows)]
        return Graph(self._labels, rows)

    def relabel(self, labels: Sequence[str]) -> "Graph":
        return Graph(labels, self._rows)

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= self._rows[v]
            frontier = reach & ~seen
            seen |= frontier
        return seen == (1 << self.vertex_count) - 1

    def to_json(self) -> Dict[str, list]:
        return {
            "vertices": list(self._labels),
            "edges": [[self._labels[u], self._labels[v]] for u, v in self.edges()],
            "loops": [self._labels[v] for v in self.loops()],
        }

    @classmethod
    def from_json(cls, data: Dict) -> "Graph":
        """Parse the graph JSON format; duplicate edges are merged"""
        if not isinstance(data, dict) or "vertices" not in data:
            raise ValidationError("Graph JSON must be an object with a 'vertices' list")
        labels = data["vertices"]
        if not isinstance(labels, list) or not all(isinstance(l, (str, int)) for l in labels):
            raise ValidationError("'vertices' must be a list of labels")
        labels = [str(l) for l in labels]
        seen: Dict[str, int] = {}
        for i, label in enumerate(labels):
            if label in seen:
                raise ValidationError("Duplicate vertex label", details={"label": label})
            seen[label] = i

        def lookup(label) -> int:
            label = str(label)
            if label not in seen:
                raise ValidationError(f"Unknown vertex label: {label}", details={"label": label})
            return seen[label]

        rows = [0] * len(labels)
        for edge in data.get("edges", []) or []:
            if not isinstance(edge, (list, tuple)) or len(edge) != 2:
                raise ValidationError("Each edge must be a pair of labels", details={"edge": edge})
            u, v = lookup(edge[0]), lookup(edge[1])
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        for label in data.get("loops", []) or []:
            v = lookup(label)
            rows[v] |= 1 << v
        return cls(labels, rows)


def neighborhood(G: Graph, v: int) -> FrozenSet[int]:
    """N_G(v); contains v iff v carries a loop"""
    return frozenset(iter_bits(G.neighbor_mask(v)))


def common_neighborhood_mask(G: Graph, vertices: Iterable[int]) -> int:
    mask = (1 << G.vertex_count) - 1
    for v in vertices:
        mask &= G.neighbor_mask(v)
    return mask


def common_neighborhood(G: Graph, vertices: Iterable[int]) -> FrozenSet[int]:
    """Vertices adjacent to every member of ``vertices``; all of V(G) for the empty set"""
    return frozenset(iter_bits(common_neighborhood_mask(G, vertices)))


@dataclass(frozen=True)
class VertexMap:
    """A set map V(G) -> V(H) stored by vertex index"""

    domain_size: int
    codomain_size: int
    table: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(x) for x in self.table))
        if len(self.table) != self.domain_size:
            raise ValidationError(
                "Vertex map table length differs from domain size",
                details={"domain_size": self.domain_size, "table": list(self.table)}
            )
        if any(x < 0 or x >= self.codomain_size for x in self.table):
            raise ValidationError(
                "Vertex map entry outside the codomain",
                details={"codomain_size": self.codomain_size, "table": list(self.table)}
            )

    def __call__(self, v: int) -> int:
        return self.table[v]

    @classmethod
    def constant(cls, domain_size: int, codomain_size: int, value: int) -> "VertexMap":
        return cls(domain_size, codomain_size, (value,) * domain_size)

    def encode(self) -> int:
        """Base-|codomain| integer, vertex 0 most significant"""
        code = 0
        for x in self.table:
            code = code * self.codomain_size + x
        return code

    @classmethod
    def decode(cls, code: int, domain_size: int, codomain_size: int) -> "VertexMap":
        if code < 0 or code >= codomain_size ** domain_size:
            raise ValidationError("Code outside the exponential vertex range", details={"code": code})
        table = [0] * domain_size
        for v in range(domain_size - 1, -1, -1):
            code, table[v] = divmod(code, codomain_size)
        return cls(domain_size, codomain_size, tuple(table))

    def is_constant(self) -> bool:
        return len(set(self.table)) <= 1

    def image(self) -> FrozenSet[int]:
        return frozenset(self.table)

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_homomorphism(self, G: Graph, H: Graph) -> bool:
        if G.vertex_count != self.domain_size or H.vertex_count != self.codomain_size:
            return False
        return all(H.adjacent(self.table[u], self.table[v]) for u, v in G.ordered_edges())

    def is_bijection(self) -> bool:
        return self.domain_size == self.codomain_size and self.is_injective()

    def compose(self, inner: "VertexMap") -> "VertexMap":
        """self after inner"""
        return VertexMap(inner.domain_size, self.codomain_size,
                         tuple(self.table[x] for x in inner.table))

    def to_json(self) -> List[int]:
        return list(self.table)


def is_homomorphism(G: Graph, H: Graph, mapping: VertexMap) -> bool:
    return mapping.is_homomorphism(G, H)


def first_bit(mask: int) -> Optional[int]:
    if not mask:
        return None
    return (mask & -mask).bit_length() - 1
