import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Sequence

from ..errors import BudgetExceededError, PreconditionError, ValidationError
from .graph import Graph, iter_bits
from .implicit import ImplicitExponential

logger = logging.getLogger(__name__)

DEFAULT_VERTEX_BUDGET = 300_000


@dataclass(frozen=True)
class PathSpec:
    """Path L_r on 0..r with loops at the levels in ``loops``"""

    r: int
    loops: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "loops", frozenset(int(x) for x in self.loops))
        if self.r < 1:
            raise ValidationError("Path length must be positive", details={"r": self.r})
        bad = sorted(x for x in self.loops if x < 0 or x > self.r)
        if bad:
            raise ValidationError("Loop levels must lie in 0..r", details={"r": self.r, "loops": bad})

    def below_top(self) -> bool:
        return all(x < self.r for x in self.loops)


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValidationError("complete_graph needs n >= 1", details={"n": n})
    full = (1 << n) - 1
    return Graph([str(i) for i in range(1, n + 1)], [full & ~(1 << i) for i in range(n)])


def cycle_graph(r: int) -> Graph:
    if r < 3:
        raise ValidationError("cycle_graph needs r >= 3", details={"r": r})
    edges = [(i, (i + 1) % r) for i in range(r)]
    return Graph.from_edges([str(i) for i in range(1, r + 1)], edges)


def path_with_loops(spec: PathSpec) -> Graph:
    edges = [(i, i + 1) for i in range(spec.r)]
    return Graph.from_edges([str(i) for i in range(spec.r + 1)], edges, sorted(spec.loops))


def categorical_product(G: Graph, H: Graph) -> Graph:
    """G x H; vertex (g, h) sits at index g*|H| + h"""
    size = H.vertex_count
    labels = [f"({gl},{hl})" for gl in G.labels for hl in H.labels]
    rows = []
    for g in range(G.vertex_count):
        neighbors_g = list(iter_bits(G.neighbor_mask(g)))
        for h in range(size):
            row_h = H.neighbor_mask(h)
            row = 0
            for g2 in neighbors_g:
                row |= row_h << (g2 * size)
            rows.append(row)
    return Graph(labels, rows)


def quotient_top_level(P: Graph, level_of: Sequence[int], r: int) -> Graph:
    """Identify every level-r vertex into a single apex "*" placed last"""
    if len(level_of) != P.vertex_count:
        raise ValidationError("Level assignment must cover every vertex")
    top = [v for v in range(P.vertex_count) if level_of[v] == r]
    if not top:
        raise ValidationError("No vertex sits at the top level", details={"r": r})
    keep = [v for v in range(P.vertex_count) if level_of[v] != r]
    apex = len(keep)
    new_index = [apex] * P.vertex_count
    for i, v in enumerate(keep):
        new_index[v] = i

    def remap(mask: int) -> int:
        out = 0
        for w in iter_bits(mask):
            out |= 1 << new_index[w]
        return out

    rows = [remap(P.neighbor_mask(v)) for v in keep]
    apex_row = 0
    for v in top:
        apex_row |= remap(P.neighbor_mask(v))
    rows.append(apex_row)
    return Graph([P.labels[v] for v in keep] + ["*"], rows)


def cone_graph(G: Graph, spec: PathSpec) -> Graph:
    """G_A^r = (G x L_r(A)) / ~_r"""
    if not spec.below_top():
        raise PreconditionError("Loop levels must lie below r", details={"r": spec.r, "loops": sorted(spec.loops)})
    path = path_with_loops(spec)
    product = categorical_product(G, path)
    level_of = [v % (spec.r + 1) for v in range(product.vertex_count)]
    quotient = quotient_top_level(product, level_of, spec.r)
    assert not quotient.has_loop(quotient.vertex_count - 1), "apex acquired a loop"
    return quotient


def generalized_mycielskian(G: Graph, r: int = 2) -> Graph:
    """M_r(G); M(G) is the r = 2 case"""
    if r < 2:
        raise ValidationError("generalized_mycielskian needs r >= 2", details={"r": r})
    if not G.is_simple():
        raise PreconditionError("generalized_mycielskian needs a simple graph", details={"loops": len(G.loops())})
    return cone_graph(G, PathSpec(r, frozenset({0})))


def double_mycielskian(n: int) -> Graph:
    """M(M(K_n))"""
    return generalized_mycielskian(generalized_mycielskian(complete_graph(n)))


def grotzsch_graph() -> Graph:
    return double_mycielskian(2)


def exponential_graph(H: Graph, G: Graph, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> Graph:
    """H^G with vertices ordered by their base-|V(H)| code"""
    required = H.vertex_count ** G.vertex_count
    if required > vertex_budget:
        raise BudgetExceededError(
            f"Exponential graph needs {required} vertices, over the budget of {vertex_budget}",
            required=required,
            budget=vertex_budget
        )
    graph, _ = ImplicitExponential.full(H, G).materialize(vertex_budget)
    return graph
