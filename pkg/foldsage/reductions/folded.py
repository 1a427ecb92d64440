"""Folded exponential graphs built straight from their block structure.

K_m^{T_A^r} folds onto the subgraph whose level blocks f_l = f((., l)) are
each a constant map or a homomorphism T -> K_m; K_m^{M(M(K_n))} folds the same
way onto four blocks f_{i,j} plus the apex colors w0, w1, w2. Both are
ImplicitExponential graphs over the cone base whose parts are the blocks, so
no map outside the folded vertex set is ever enumerated.
"""
import logging
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

from ..errors import PreconditionError, ValidationError
from ..graphs.constructions import (
    PathSpec,
    complete_graph,
    cone_graph,
    double_mycielskian,
    path_with_loops,
)
from ..graphs.graph import Graph, VertexMap
from ..graphs.implicit import ImplicitExponential, Part, Vertex
from .leveled import BlockTag, LeveledMap, block_values

logger = logging.getLogger(__name__)

STAGES = ("G", "G1", "G2")
DOUBLE_BLOCKS = ((0, 0), (0, 1), (1, 0), (1, 1))
DOUBLE_APEXES = (("w0", "(*,0)", "(2,0)"), ("w1", "(*,1)", "(2,1)"), ("w2", "*", "*"))

# Part indices inside the double construction
B00, B01, B10, B11, W0, W1, W2 = range(7)


def _leveled_label(graph: "LeveledExponential", f: Vertex) -> str:
    return graph.leveled_map(f).label()


class LeveledExponential(ImplicitExponential):
    """Implicit K_m^base whose parts are constant-or-homomorphism blocks and apex vertices"""

    def __init__(
        self,
        target: Graph,
        base: Graph,
        parts: Sequence[Part],
        tags: Sequence[BlockTag],
        block_parts: Sequence[int],
        apex_parts: Sequence[int],
        pattern: Graph,
        pattern_vertices: Sequence[int],
        name: str,
    ):
        super().__init__(target, base, parts, label=_leveled_label)
        self.colors = target.vertex_count
        self.tags = tuple(tags)
        self.block_parts = tuple(block_parts)
        self.apex_parts = tuple(apex_parts)
        self.pattern = pattern
        self.pattern_vertices = tuple(pattern_vertices)
        self.name = name
        self.block_size = len(parts[self.block_parts[0]].vertices) if self.block_parts else 0

    def restrict(self, parts, predicate, name: Optional[str] = None) -> "LeveledExponential":
        clone = super().restrict(parts, predicate)
        if name is not None:
            clone.name = name
        return clone

    def leveled_map(self, f: Vertex) -> LeveledMap:
        return LeveledMap(
            base_size=self.block_size,
            colors=self.colors,
            blocks=tuple(self.tags[f[i]] for i in self.block_parts),
            apex_colors=tuple(self.parts[i].values[f[i]][0] for i in self.apex_parts),
        )

    def all_constant(self, f: Vertex) -> bool:
        return all(f[i] < self.colors for i in self.block_parts)

    def constant_restriction(self, name: Optional[str] = None) -> "LeveledExponential":
        m = self.colors
        return self.restrict(
            self.block_parts,
            lambda combo: all(x < m for x in combo),
            name=name or f"{self.name}/constant"
        )

    def diagonal(self, color: int) -> Vertex:
        """The globally constant map with value color"""
        return tuple(color for _ in self.parts)

    def part_color(self, f: Vertex, part: int) -> int:
        return self.parts[part].values[f[part]][0]

    def collapse(self, f: Vertex) -> VertexMap:
        """An all-constant vertex read as a map pattern -> K_m"""
        if not self.all_constant(f):
            raise ValidationError("Only all-constant vertices collapse onto the pattern graph",
                                  details={"vertex": self.label(f)})
        table = [0] * self.pattern.vertex_count
        for part, vertex in enumerate(self.pattern_vertices):
            table[vertex] = self.part_color(f, part)
        return VertexMap(self.pattern.vertex_count, self.colors, tuple(table))

    def describe(self) -> Dict:
        return {
            "name": self.name,
            "colors": self.colors,
            "parts": [part.name for part in self.parts],
            "part_sizes": list(self.part_sizes),
            "vertices": self.vertex_count(),
        }


def _check_single_preconditions(m: int, T: Graph, spec: PathSpec) -> None:
    from ..coloring.chromatic import chromatic_number
    from ..coloring.perfect import property_P

    if not spec.below_top():
        raise PreconditionError("Loop levels must lie below r", details={"r": spec.r, "loops": sorted(spec.loops)})
    if not T.is_simple() or not T.is_connected():
        raise PreconditionError("T must be a connected simple graph")
    holds, witness = property_P(T)
    if not holds:
        raise PreconditionError(
            "T must satisfy property P",
            details={"witness": [T.labels[v] for v in witness]}
        )
    chi = chromatic_number(T).value
    if not 2 <= m <= chi:
        raise PreconditionError("Need 2 <= m <= chi(T)", details={"m": m, "chi": chi})


def folded_exponential_single(
    m: int,
    T: Graph,
    r: int,
    A: Iterable[int],
    prune: bool = False,
    check_preconditions: bool = True,
) -> LeveledExponential:
    """The folded subgraph of K_m^{T_A^r}.

    With ``prune`` every vertex with a homomorphism block is dropped; those
    vertices are isolated, and what remains collapses onto K_m^{L_r(A)}.
    """
    spec = PathSpec(r, frozenset(A))
    if check_preconditions:
        _check_single_preconditions(m, T, spec)
    elif not spec.below_top():
        raise PreconditionError("Loop levels must lie below r", details={"r": r})
    base = cone_graph(T, spec)
    values, tags = block_values(T, m)
    parts = [
        Part(f"level {l}", tuple(base.index_of(f"({x},{l})") for x in T.labels), tuple(values))
        for l in range(r)
    ]
    parts.append(Part("*", (base.index_of("*"),), tuple((c,) for c in range(m))))
    graph = LeveledExponential(
        complete_graph(m), base, parts, tags,
        block_parts=range(r),
        apex_parts=(r,),
        pattern=path_with_loops(spec),
        pattern_vertices=list(range(r + 1)),
        name=f"T1(m={m},r={r},A={sorted(spec.loops)})",
    )
    if prune:
        graph = graph.constant_restriction(name=f"T2(m={m},r={r},A={sorted(spec.loops)})")
    logger.info(f"Built {graph.name} over {T.vertex_count}-vertex T with {graph.vertex_count()} vertices")
    return graph


class BlockInfo:
    """Per-value facts about one K_n -> K_m block, indexed like the part values"""

    def __init__(self, values: Sequence[Tuple[int, ...]], m: int):
        self.m = m
        self.values = tuple(values)
        self.images: Tuple[FrozenSet[int], ...] = tuple(frozenset(v) for v in values)

    def is_hom(self, x: int) -> bool:
        return x >= self.m

    def color(self, x: int) -> int:
        return self.values[x][0]

    def distance(self, x: int, y: int) -> int:
        return sum(a != b for a, b in zip(self.values[x], self.values[y]))

    def equal_image_condition(self, x00: int, x10: int) -> bool:
        return self.images[x00] != self.images[x10] or x00 == x10

    def one_vertex_condition(self, x00: int, x10: int) -> bool:
        if not (self.is_hom(x00) and self.is_hom(x10)):
            return True
        return self.images[x00] == self.images[x10] or self.distance(x00, x10) == 1

    def in_first_stage(self, x00: int, x10: int) -> bool:
        return self.equal_image_condition(x00, x10) and self.one_vertex_condition(x00, x10)

    def removed_set(self, x00: int, x10: int, w0: int) -> Optional[str]:
        """Which of U1, U2, U3 the vertex belongs to, if any"""
        image = self.images[x00]
        if self.is_hom(x00) and self.is_hom(x10):
            if image == self.images[x10]:
                return "U1" if w0 not in image else None
            if w0 in image and self.distance(x00, x10) == 1:
                return "U2"
            return None
        if self.is_hom(x00) and not self.is_hom(x10):
            if self.color(x10) not in image and w0 in image:
                return "U3"
        return None


def folded_exponential_double(
    m: int,
    n: int,
    stage: str = "G2",
    check_preconditions: bool = True,
) -> LeveledExponential:
    """A stage of the folded K_m^{M(M(K_n))}.

    "G" keeps every constant-or-homomorphism block combination, "G1" adds the
    equal-image and one-vertex conditions on f00, f10, and "G2" drops the
    sets U1, U2, U3 whose members are isolated in G1.
    """
    if stage not in STAGES:
        raise ValidationError(f"Unknown stage: {stage}", details={"stages": list(STAGES)})
    if n < 2:
        raise ValidationError("Double Mycielskian needs n >= 2", details={"n": n})
    if check_preconditions and not 2 <= m <= n + 1:
        raise PreconditionError("Need 2 <= m <= n + 1", details={"m": m, "n": n})

    base = double_mycielskian(n)
    values, tags = block_values(complete_graph(n), m)
    parts = []
    pattern = cone_graph(path_with_loops(PathSpec(2, frozenset({0}))), PathSpec(2, frozenset({0})))
    pattern_vertices = []
    for i, j in DOUBLE_BLOCKS:
        vertices = tuple(base.index_of(f"(({x},{i}),{j})") for x in range(1, n + 1))
        parts.append(Part(f"f{i}{j}", vertices, tuple(values)))
        pattern_vertices.append(pattern.index_of(f"({i},{j})"))
    for name, label, pattern_label in DOUBLE_APEXES:
        parts.append(Part(name, (base.index_of(label),), tuple((c,) for c in range(m))))
        pattern_vertices.append(pattern.index_of(pattern_label))

    graph = LeveledExponential(
        complete_graph(m), base, parts, tags,
        block_parts=range(4),
        apex_parts=(W0, W1, W2),
        pattern=pattern,
        pattern_vertices=pattern_vertices,
        name=f"G(m={m},n={n})",
    )
    info = BlockInfo(values, m)
    graph.block_info = info
    if stage in ("G1", "G2"):
        graph = graph.restrict((B00, B10), lambda c: info.in_first_stage(*c), name=f"G1(m={m},n={n})")
    if stage == "G2":
        graph = graph.restrict(
            (B00, B10, W0),
            lambda c: info.removed_set(*c) is None,
            name=f"G2(m={m},n={n})",
        )
    logger.info(f"Built {graph.name} with {graph.vertex_count()} vertices")
    return graph


def removed_set_of(graph: LeveledExponential, f: Vertex) -> Optional[str]:
    """U1/U2/U3 membership of a vertex of the double construction"""
    return graph.block_info.removed_set(f[B00], f[B10], graph.part_color(f, W0))
