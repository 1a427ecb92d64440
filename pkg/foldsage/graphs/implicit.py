"""Exponential graphs H^G that are never materialized.

The base vertices of G are partitioned into parts. A vertex of the implicit
graph picks one admissible value per part, i.e. one assignment of target
vertices to the part's base vertices. Two vertices f, g are adjacent iff
f(p) ~ g(q) in H for every ordered base edge (p, q); that condition splits
over ordered part pairs, so it is decided from precomputed compatibility
tables, and the neighborhood of f is a product over parts of allowed value
sets (optionally cut down by membership filters).
"""
import itertools
import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import BudgetExceededError, ValidationError
from .graph import Graph, VertexMap, iter_bits

logger = logging.getLogger(__name__)

Vertex = Tuple[int, ...]
MemberFilter = Tuple[Tuple[int, ...], Callable[[Tuple[int, ...]], bool]]


@dataclass(frozen=True)
class Part:
    name: str
    vertices: Tuple[int, ...]
    values: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.values)


def bitset_from_indices(indices: Sequence[int], size: int) -> int:
    if not len(indices):
        return 0
    bits = np.zeros(size, dtype=np.uint8)
    bits[np.asarray(indices, dtype=np.int64)] = 1
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _row_mask(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row.astype(np.uint8), bitorder="little").tobytes(), "little")


def maps_adjacent(H: Graph, G: Graph, f: VertexMap, g: VertexMap) -> bool:
    """Adjacency of f and g in H^G, straight from the edges of G"""
    return all(H.adjacent(f(u), g(v)) for u, v in G.ordered_edges())


class ImplicitExponential:

    def __init__(
        self,
        target: Graph,
        base: Graph,
        parts: Sequence[Part],
        filters: Sequence[MemberFilter] = (),
        label: Optional[Callable[["ImplicitExponential", Vertex], str]] = None,
        _tables: Optional[List[List[Tuple[int, List[int]]]]] = None,
    ):
        self.target = target
        self.base = base
        self.parts = tuple(parts)
        self.filters = tuple(filters)
        self._label = label

        self.part_of = [-1] * base.vertex_count
        self.position = [-1] * base.vertex_count
        for index, part in enumerate(self.parts):
            for pos, v in enumerate(part.vertices):
                if self.part_of[v] != -1:
                    raise ValidationError("Parts overlap", details={"vertex": base.labels[v]})
                self.part_of[v] = index
                self.position[v] = pos
            for value in part.values:
                if len(value) != len(part.vertices):
                    raise ValidationError("Part value has the wrong arity", details={"part": part.name})
        if -1 in self.part_of:
            missing = [base.labels[v] for v, p in enumerate(self.part_of) if p == -1]
            raise ValidationError("Parts do not cover the base graph", details={"missing": missing})

        self.member_parts = tuple(sorted({i for parts_, _ in self.filters for i in parts_}))
        self.free_parts = tuple(i for i in range(len(self.parts)) if i not in self.member_parts)
        self._value_index = [
            {value: i for i, value in enumerate(part.values)} for part in self.parts
        ]
        self._tables = _tables if _tables is not None else self._build_tables()
        self._member_combos: Optional[List[Tuple[int, ...]]] = None

    @classmethod
    def full(cls, target: Graph, base: Graph) -> "ImplicitExponential":
        """H^G with one singleton part per base vertex"""
        values = tuple((c,) for c in range(target.vertex_count))
        parts = [Part(base.labels[v], (v,), values) for v in range(base.vertex_count)]
        return cls(target, base, parts)

    def _build_tables(self) -> List[List[Tuple[int, List[int]]]]:
        adjacency = np.array(
            [[self.target.adjacent(a, b) for b in range(self.target.vertex_count)]
             for a in range(self.target.vertex_count)],
            dtype=bool
        ).reshape(self.target.vertex_count, self.target.vertex_count)
        values = [np.array(part.values, dtype=np.int64).reshape(part.size, len(part.vertices))
                  for part in self.parts]

        edges: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
        for p, q in self.base.ordered_edges():
            key = (self.part_of[p], self.part_of[q])
            edges.setdefault(key, []).append((self.position[p], self.position[q]))

        incoming: List[List[Tuple[int, List[int]]]] = [[] for _ in self.parts]
        for (P, Q), pairs in sorted(edges.items()):
            compat = np.ones((self.parts[P].size, self.parts[Q].size), dtype=bool)
            for p_pos, q_pos in pairs:
                compat &= adjacency[np.ix_(values[P][:, p_pos], values[Q][:, q_pos])]
            incoming[Q].append((P, [_row_mask(row) for row in compat]))
        logger.debug(f"Built {len(edges)} compatibility tables over {len(self.parts)} parts")
        return incoming

    def restrict(self, parts: Sequence[int], predicate: Callable[[Tuple[int, ...]], bool]) -> "ImplicitExponential":
        """Induced subgraph on the vertices whose ``parts`` values satisfy predicate"""
        return self.__class__._from_parent(self, self.filters + ((tuple(parts), predicate),))

    @classmethod
    def _from_parent(cls, parent: "ImplicitExponential", filters) -> "ImplicitExponential":
        clone = cls.__new__(cls)
        clone.__dict__.update(parent.__dict__)
        ImplicitExponential.__init__(
            clone, parent.target, parent.base, parent.parts, filters,
            label=parent._label, _tables=parent._tables
        )
        return clone

    @property
    def part_sizes(self) -> Tuple[int, ...]:
        return tuple(part.size for part in self.parts)

    def accepts(self, f: Vertex) -> bool:
        return all(predicate(tuple(f[i] for i in parts)) for parts, predicate in self.filters)

    def _accepts_member_values(self, combo: Tuple[int, ...]) -> bool:
        lookup = dict(zip(self.member_parts, combo))
        return all(predicate(tuple(lookup[i] for i in parts)) for parts, predicate in self.filters)

    def contains(self, f: Vertex) -> bool:
        if len(f) != len(self.parts):
            return False
        if any(not 0 <= x < part.size for x, part in zip(f, self.parts)):
            return False
        return self.accepts(f)

    def member_combos(self) -> List[Tuple[int, ...]]:
        """Admissible value tuples over the filtered parts"""
        if self._member_combos is None:
            ranges = [range(self.parts[i].size) for i in self.member_parts]
            self._member_combos = [c for c in itertools.product(*ranges) if self._accepts_member_values(c)]
        return self._member_combos

    def vertex_count(self) -> int:
        count = 1
        for i in self.free_parts:
            count *= self.parts[i].size
        if self.member_parts:
            count *= len(self.member_combos())
        return count

    def vertices(self) -> Iterator[Vertex]:
        """All member vertices in lexicographic order"""
        ranges = [range(part.size) for part in self.parts]
        if not self.filters:
            yield from itertools.product(*ranges)
            return
        valid = set(self.member_combos())
        for f in itertools.product(*ranges):
            if tuple(f[i] for i in self.member_parts) in valid:
                yield f

    def allowed_mask(self, f: Vertex, Q: int) -> int:
        mask = (1 << self.parts[Q].size) - 1
        for P, masks in self._tables[Q]:
            mask &= masks[f[P]]
            if not mask:
                break
        return mask

    def allowed_masks(self, f: Vertex) -> List[int]:
        return [self.allowed_mask(f, Q) for Q in range(len(self.parts))]

    def adjacent(self, f: Vertex, g: Vertex) -> bool:
        for Q in range(len(self.parts)):
            for P, masks in self._tables[Q]:
                if not (masks[f[P]] >> g[Q]) & 1:
                    return False
        return True

    def _member_choices(self, masks: List[int]) -> List[Tuple[int, ...]]:
        choices = [list(iter_bits(masks[i])) for i in self.member_parts]
        return [c for c in itertools.product(*choices) if self._accepts_member_values(c)]

    def _assemble(self, member: Tuple[int, ...], free: Tuple[int, ...]) -> Vertex:
        f = [0] * len(self.parts)
        for i, x in zip(self.member_parts, member):
            f[i] = x
        for i, x in zip(self.free_parts, free):
            f[i] = x
        return tuple(f)

    def neighbors(self, f: Vertex) -> Iterator[Vertex]:
        masks = self.allowed_masks(f)
        if not all(masks):
            return
        members = self._member_choices(masks) if self.member_parts else [()]
        free_choices = [list(iter_bits(masks[i])) for i in self.free_parts]
        for member in members:
            for free in itertools.product(*free_choices):
                yield self._assemble(member, free)

    def neighbor_count(self, f: Vertex) -> int:
        masks = self.allowed_masks(f)
        count = 1
        for i in self.free_parts:
            count *= masks[i].bit_count()
            if not count:
                return 0
        if self.member_parts:
            count *= len(self._member_choices(masks))
        return count

    def has_neighbors(self, f: Vertex) -> bool:
        return self.neighbor_count(f) > 0

    def random_vertex(self, rng: random.Random) -> Vertex:
        if self.member_parts:
            combos = self.member_combos()
            if not combos:
                raise ValidationError("Implicit graph has no vertices")
            member = combos[rng.randrange(len(combos))]
        else:
            member = ()
        free = tuple(rng.randrange(self.parts[i].size) for i in self.free_parts)
        return self._assemble(member, free)

    def random_neighbor(self, f: Vertex, rng: random.Random) -> Optional[Vertex]:
        masks = self.allowed_masks(f)
        if not all(masks):
            return None
        if self.member_parts:
            members = self._member_choices(masks)
            if not members:
                return None
            member = members[rng.randrange(len(members))]
        else:
            member = ()
        free = []
        for i in self.free_parts:
            options = list(iter_bits(masks[i]))
            free.append(options[rng.randrange(len(options))])
        return self._assemble(member, tuple(free))

    def to_vertex_map(self, f: Vertex) -> VertexMap:
        table = [0] * self.base.vertex_count
        for part, x in zip(self.parts, f):
            for v, c in zip(part.vertices, part.values[x]):
                table[v] = c
        return VertexMap(self.base.vertex_count, self.target.vertex_count, tuple(table))

    def from_vertex_map(self, mapping: VertexMap) -> Optional[Vertex]:
        """Part-wise value indices of mapping, None if some part value is not admissible"""
        f = []
        for index, part in zip(self._value_index, self.parts):
            x = index.get(tuple(mapping(v) for v in part.vertices))
            if x is None:
                return None
            f.append(x)
        return tuple(f)

    def label(self, f: Vertex) -> str:
        if self._label is not None:
            return self._label(self, f)
        table = self.to_vertex_map(f).table
        return "[" + ",".join(self.target.labels[c] for c in table) + "]"

    def materialize(self, vertex_budget: int) -> Tuple[Graph, List[Vertex]]:
        count = self.vertex_count()
        if count > vertex_budget:
            raise BudgetExceededError(
                f"Implicit graph has {count} vertices, over the budget of {vertex_budget}",
                required=count,
                budget=vertex_budget
            )
        members = list(self.vertices())
        index = {f: i for i, f in enumerate(members)}
        rows = []
        for f in members:
            rows.append(bitset_from_indices([index[g] for g in self.neighbors(f)], count))
        logger.info(f"Materialized implicit graph with {count} vertices")
        return Graph([self.label(f) for f in members], rows), members
