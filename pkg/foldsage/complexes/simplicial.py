import itertools
import logging
from typing import Dict, Iterable, List, Sequence, Tuple

import networkx as nx

from ..errors import BudgetExceededError, ValidationError
from ..graphs.graph import Graph, iter_bits, mask_of

logger = logging.getLogger(__name__)

DEFAULT_FACE_BUDGET = 2_000_000

Face = Tuple[int, ...]


def _maximal(masks: Iterable[int]) -> List[int]:
    """Inclusion-maximal members, deduplicated, largest first then by value"""
    unique = sorted(set(masks), key=lambda m: (-m.bit_count(), m))
    kept: List[int] = []
    for mask in unique:
        if not any(mask & ~other == 0 for other in kept):
            kept.append(mask)
    return sorted(kept)


class SimplicialComplex:
    """A finite simplicial complex given by its ground set and facets.

    Facets are int bitsets over positions in ``ground``; no facet contains
    another and every ground element lies in some facet.
    """

    def __init__(self, ground: Sequence[str], facets: Iterable[int]):
        self.ground = tuple(str(g) for g in ground)
        if len(set(self.ground)) != len(self.ground):
            raise ValidationError("Duplicate ground element")
        masks = list(facets)
        limit = 1 << len(self.ground)
        if any(mask <= 0 or mask >= limit for mask in masks):
            raise ValidationError("Facet references an unknown ground element")
        covered = 0
        for mask in masks:
            covered |= mask
        for i in range(len(self.ground)):
            if not (covered >> i) & 1:
                masks.append(1 << i)
        self.facets = tuple(_maximal(masks))
        self._faces: Dict[int, List[Face]] = {}

    @classmethod
    def from_sets(cls, ground: Sequence[str], facets: Iterable[Iterable[str]]) -> "SimplicialComplex":
        index = {g: i for i, g in enumerate(ground)}
        masks = []
        for facet in facets:
            try:
                masks.append(mask_of(index[str(x)] for x in facet))
            except KeyError as e:
                raise ValidationError(f"Facet element outside the ground set: {e}")
        return cls(ground, masks)

    @property
    def dimension(self) -> int:
        if not self.facets:
            return -1
        return max(mask.bit_count() for mask in self.facets) - 1

    def is_empty(self) -> bool:
        return not self.facets

    def facet_sets(self) -> List[List[str]]:
        return [[self.ground[i] for i in iter_bits(mask)] for mask in self.facets]

    def contains(self, face: Iterable[int]) -> bool:
        mask = mask_of(face)
        return any(mask & ~facet == 0 for facet in self.facets)

    def faces(self, budget: int = DEFAULT_FACE_BUDGET) -> Dict[int, List[Face]]:
        """Every face by dimension, each list sorted lexicographically"""
        if self._faces:
            return self._faces
        for mask in self.facets:
            if (1 << mask.bit_count()) - 1 > budget:
                raise BudgetExceededError(
                    f"A single facet already has more than {budget} faces",
                    required=(1 << mask.bit_count()) - 1,
                    budget=budget
                )
        by_dim: Dict[int, set] = {}
        total = 0
        for mask in self.facets:
            vertices = list(iter_bits(mask))
            for size in range(1, len(vertices) + 1):
                bucket = by_dim.setdefault(size - 1, set())
                before = len(bucket)
                bucket.update(itertools.combinations(vertices, size))
                total += len(bucket) - before
                if total > budget:
                    raise BudgetExceededError(
                        f"Complex has more than {budget} faces",
                        required=total,
                        budget=budget
                    )
        self._faces = {d: sorted(faces) for d, faces in sorted(by_dim.items())}
        logger.debug(f"Enumerated {total} faces up to dimension {self.dimension}")
        return self._faces

    def f_vector(self, budget: int = DEFAULT_FACE_BUDGET) -> List[int]:
        faces = self.faces(budget)
        return [len(faces.get(d, [])) for d in range(self.dimension + 1)]

    def euler_characteristic(self, budget: int = DEFAULT_FACE_BUDGET) -> int:
        return sum((-1) ** d * count for d, count in enumerate(self.f_vector(budget)))

    def one_skeleton(self) -> nx.Graph:
        skeleton = nx.Graph()
        skeleton.add_nodes_from(range(len(self.ground)))
        for mask in self.facets:
            skeleton.add_edges_from(itertools.combinations(list(iter_bits(mask)), 2))
        return skeleton

    def component_count(self) -> int:
        return nx.number_connected_components(self.one_skeleton())

    def to_json(self) -> Dict:
        return {"ground": list(self.ground), "facets": self.facet_sets()}

    def __repr__(self) -> str:
        return f"SimplicialComplex(ground={len(self.ground)}, facets={len(self.facets)}, dim={self.dimension})"


def neighborhood_complex(G: Graph) -> SimplicialComplex:
    """N(G): sets of vertices with a common neighbor"""
    used = 0
    for row in G.rows:
        used |= row
    ground_vertices = list(iter_bits(used))
    position = {v: i for i, v in enumerate(ground_vertices)}
    facets = []
    for row in G.rows:
        if row:
            facets.append(mask_of(position[w] for w in iter_bits(row)))
    return SimplicialComplex([G.labels[v] for v in ground_vertices], facets)


def _cell_label(G: Graph, a: int, b: int) -> str:
    left = ",".join(G.labels[v] for v in iter_bits(a))
    right = ",".join(G.labels[v] for v in iter_bits(b))
    return f"({{{left}}}|{{{right}}})"


def hom_k2_cells(G: Graph, budget: int = DEFAULT_FACE_BUDGET) -> List[Tuple[int, int]]:
    """Cells (A, B) of Hom(K2, G): nonempty A, B with A x B inside E(G)"""
    cells: List[Tuple[int, int]] = []
    n = G.vertex_count
    for a in range(1, 1 << n):
        common = (1 << n) - 1
        for v in iter_bits(a):
            common &= G.neighbor_mask(v)
            if not common:
                break
        if not common:
            continue
        # every nonempty subset of the common neighborhood
        b = common
        while b:
            cells.append((a, b))
            if len(cells) > budget:
                raise BudgetExceededError(
                    f"Hom(K2, G) has more than {budget} cells",
                    required=len(cells),
                    budget=budget
                )
            b = (b - 1) & common
    cells.sort(key=lambda cell: (cell[0].bit_count() + cell[1].bit_count(), cell))
    return cells


def hom_k2_complex(G: Graph, budget: int = DEFAULT_FACE_BUDGET) -> SimplicialComplex:
    """Order complex of the cell poset of Hom(K2, G); its facets are the maximal chains"""
    cells = hom_k2_cells(G, budget)
    index = {cell: i for i, cell in enumerate(cells)}

    # covers add exactly one vertex to A or to B; subsets of cells are cells
    up: List[List[int]] = [[] for _ in cells]
    for i, (a, b) in enumerate(cells):
        for v in range(G.vertex_count):
            bit = 1 << v
            if not a & bit and (a | bit, b) in index:
                up[i].append(index[(a | bit, b)])
            if not b & bit and (a, b | bit) in index:
                up[i].append(index[(a, b | bit)])

    facets: List[int] = []
    minimal = [i for i, (a, b) in enumerate(cells) if a.bit_count() == 1 and b.bit_count() == 1]
    stack: List[Tuple[int, int]] = [(i, 1 << i) for i in reversed(minimal)]
    while stack:
        i, chain = stack.pop()
        if not up[i]:
            facets.append(chain)
            if len(facets) > budget:
                raise BudgetExceededError(
                    f"Order complex has more than {budget} maximal chains",
                    required=len(facets),
                    budget=budget
                )
            continue
        for j in reversed(up[i]):
            stack.append((j, chain | (1 << j)))
    logger.debug(f"Hom(K2, G) order complex: {len(cells)} cells, {len(facets)} maximal chains")
    return SimplicialComplex([_cell_label(G, a, b) for a, b in cells], facets)
