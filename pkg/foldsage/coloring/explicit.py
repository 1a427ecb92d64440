"""Explicit m-colorings of the folded exponential graphs.

Each coloring reads only a few parts of a vertex, so properness is decided by
looking, for every vertex f, for a neighbor g whose relevant parts repeat the
color of f; the other parts of g only need a nonempty allowed set.
"""
import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..errors import BudgetExceededError, ConstructionError, PreconditionError
from ..graphs.graph import Graph, iter_bits
from ..graphs.implicit import Vertex
from ..reductions.folded import B00, B10, W0, LeveledExponential, folded_exponential_double, folded_exponential_single
from .model import EXHAUSTIVE, Coloring

logger = logging.getLogger(__name__)

ColorRule = Callable[[Vertex], int]

EDGE_ATTEMPTS_PER_SAMPLE = 4


@dataclass
class ExplicitColoring:
    graph: LeveledExponential
    rule: ColorRule
    k: int
    verified: str
    checked: int
    requested: int
    clique: List[Vertex] = field(default_factory=list)
    description: str = ""

    @property
    def complete(self) -> bool:
        """Whether the sampled check reached the requested number of edges"""
        return self.checked >= self.requested

    def color(self, f: Vertex) -> int:
        return self.rule(f)

    def to_coloring(self, max_vertices: int) -> Coloring:
        count = self.graph.vertex_count()
        if count > max_vertices:
            raise BudgetExceededError(
                "Coloring has too many vertices to list",
                required=count,
                budget=max_vertices
            )
        assignment = {self.graph.label(f): self.rule(f) for f in self.graph.vertices()}
        return Coloring(self.k, assignment, self.verified)

    def to_json(self, max_vertices: int = 4096) -> Dict:
        data = {
            "k": self.k,
            "verified": self.verified,
            "rule": self.description,
            "graph": self.graph.describe(),
            "checked": self.checked,
            "requested": self.requested,
            "clique": [self.graph.label(f) for f in self.clique],
        }
        if self.graph.vertex_count() <= max_vertices:
            data["assignment"] = self.to_coloring(max_vertices).assignment
        return data


def monochromatic_neighbor(
    graph: LeveledExponential,
    f: Vertex,
    rule: ColorRule,
    rule_parts: Sequence[int],
) -> Optional[Vertex]:
    """A neighbor g of f with rule(g) == rule(f), or None"""
    masks = graph.allowed_masks(f)
    if not all(masks):
        return None
    relevant = sorted(set(rule_parts) | set(graph.member_parts))
    color = rule(f)
    base = [(mask & -mask).bit_length() - 1 for mask in masks]
    for values in itertools.product(*(list(iter_bits(masks[i])) for i in relevant)):
        g = list(base)
        for i, x in zip(relevant, values):
            g[i] = x
        g = tuple(g)
        if graph.accepts(g) and rule(g) == color:
            return g
    return None


def verify_rule(
    graph: LeveledExponential,
    rule: ColorRule,
    rule_parts: Sequence[int],
    vertex_budget: int,
    edge_samples: int,
    seed: int,
) -> Tuple[str, int, int]:
    """Properness of rule on graph: exhaustive within budget, else sampled edges.

    Returns (strength, checked, requested). Sampling gives up after
    EDGE_ATTEMPTS_PER_SAMPLE * edge_samples draws, so checked can fall short
    of requested when most vertices are isolated.
    """
    count = graph.vertex_count()
    if count <= vertex_budget:
        for f in graph.vertices():
            g = monochromatic_neighbor(graph, f, rule, rule_parts)
            if g is not None:
                raise ConstructionError(
                    "Explicit coloring is not proper",
                    details={"pair": [graph.label(f), graph.label(g)], "color": rule(f)}
                )
        return EXHAUSTIVE, count, count

    rng = random.Random(seed)
    checked = 0
    attempts = 0
    while checked < edge_samples and attempts < EDGE_ATTEMPTS_PER_SAMPLE * edge_samples:
        attempts += 1
        f = graph.random_vertex(rng)
        g = graph.random_neighbor(f, rng)
        if g is None:
            continue
        checked += 1
        if rule(f) == rule(g):
            raise ConstructionError(
                "Explicit coloring is not proper",
                details={"pair": [graph.label(f), graph.label(g)], "color": rule(f), "seed": seed}
            )
    if checked < edge_samples:
        logger.warning(f"Only {checked} of {edge_samples} adjacent pairs of {graph.name} found in {attempts} draws")
    else:
        logger.info(f"Sampled {checked} adjacent pairs of {graph.name} without a conflict")
    return f"sampled(seed={seed},k={checked})", checked, edge_samples


def constant_clique(graph: LeveledExponential) -> List[Vertex]:
    """The globally constant maps; pairwise adjacent in every stage"""
    clique = [graph.diagonal(c) for c in range(graph.colors)]
    for f in clique:
        if not graph.contains(f):
            raise ConstructionError("Constant map missing from the folded graph", details={"vertex": list(f)})
    for f, g in itertools.combinations(clique, 2):
        if not graph.adjacent(f, g):
            raise ConstructionError(
                "Constant maps are not pairwise adjacent",
                details={"pair": [graph.label(f), graph.label(g)]}
            )
    return clique


def single_level_rule(graph: LeveledExponential, level: int) -> ColorRule:
    m = graph.colors

    def rule(f: Vertex) -> int:
        x = f[level]
        return graph.parts[level].values[x][0] if x < m else 0

    return rule


def explicit_coloring_single(
    m: int,
    T: Graph,
    r: int,
    A: Iterable[int],
    level: int,
    vertex_budget: int = 300_000,
    edge_samples: int = 1_000_000,
    seed: int = 0,
    check_preconditions: bool = True,
) -> ExplicitColoring:
    """Color a vertex by its constant value on a looped level, color 0 otherwise"""
    A = frozenset(A)
    if level not in A:
        raise PreconditionError("The coloring level must carry a loop", details={"level": level, "A": sorted(A)})
    graph = folded_exponential_single(m, T, r, A, check_preconditions=check_preconditions)
    rule = single_level_rule(graph, level)
    verified, checked, requested = verify_rule(graph, rule, (level,), vertex_budget, edge_samples, seed)
    clique = constant_clique(graph)
    logger.info(f"Level-{level} coloring of {graph.name} is proper ({verified})")
    return ExplicitColoring(graph, rule, m, verified, checked, requested, clique, f"level {level}")


def double_rule(graph: LeveledExponential) -> ColorRule:
    m = graph.colors

    def rule(f: Vertex) -> int:
        if f[B00] < m:
            return graph.part_color(f, B00)
        if f[B10] < m:
            return graph.part_color(f, B10)
        return graph.part_color(f, W0)

    return rule


def explicit_coloring_double(
    m: int,
    n: int,
    vertex_budget: int = 300_000,
    edge_samples: int = 1_000_000,
    seed: int = 0,
) -> ExplicitColoring:
    """Color by f00 when constant, else by f10 when constant, else by f(w0)"""
    graph = folded_exponential_double(m, n, "G2")
    rule = double_rule(graph)
    verified, checked, requested = verify_rule(graph, rule, (B00, B10, W0), vertex_budget, edge_samples, seed)
    clique = constant_clique(graph)
    logger.info(f"Coloring of {graph.name} is proper ({verified})")
    return ExplicitColoring(graph, rule, m, verified, checked, requested, clique, "f00 | f10 | w0")
