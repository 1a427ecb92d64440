import logging
from typing import List, Optional, Sequence, Tuple

from ..coloring import chromatic_number
from ..errors import PreconditionError
from ..graphs.constructions import categorical_product, complete_graph, cycle_graph, double_mycielskian, grotzsch_graph
from ..graphs.graph import Graph, VertexMap
from ..graphs.implicit import maps_adjacent
from ..graphs.isomorphism import find_subgraph_embedding, labeled_digest
from .base import Pipeline, VerdictBuilder
from .verdict import Verdict

logger = logging.getLogger(__name__)

NamedGraph = Tuple[str, Graph]


def default_pool() -> List[NamedGraph]:
    grotzsch = grotzsch_graph()
    return [
        ("K3", complete_graph(3)),
        ("K4", complete_graph(4)),
        ("C5", cycle_graph(5)),
        ("C7", cycle_graph(7)),
        ("grotzsch-minus-vertex", grotzsch.remove_vertex(grotzsch.vertex_count - 1)),
    ]


def induced_maps(G: Graph, H: Graph, colors: Sequence[int], k: int) -> Tuple[List[VertexMap], List[VertexMap]]:
    """The maps g -> c(g, .) into K_k^H and h -> c(., h) into K_k^G of a coloring c of G x H"""
    size = H.vertex_count
    from_g = [VertexMap(size, k, tuple(colors[g * size + h] for h in range(size)))
              for g in range(G.vertex_count)]
    from_h = [VertexMap(G.vertex_count, k, tuple(colors[g * size + h] for g in range(G.vertex_count)))
              for h in range(size)]
    return from_g, from_h


def maps_form_homomorphism(G: Graph, H: Graph, k: int, maps: Sequence[VertexMap]) -> bool:
    """Whether v -> maps[v] is a homomorphism G -> K_k^H"""
    target = complete_graph(k)
    return all(maps_adjacent(target, H, maps[u], maps[v]) for u, v in G.ordered_edges())


class HedetniemiPipeline(Pipeline):
    """chi(G x H) = n + 1 forces min(chi(G), chi(H)) = n + 1 once M(M(K_n)) sits in G"""

    theorem_id = "hedetniemi"

    def largest_double_mycielskian(self, G: Graph) -> Optional[int]:
        best = None
        n = 2
        while double_mycielskian(n).vertex_count <= G.vertex_count:
            if find_subgraph_embedding(double_mycielskian(n), G) is None:
                break
            best = n
            n += 1
        return best

    def check_pair(self, builder: VerdictBuilder, G: Graph, chi_G: int, n: int, name: str, H: Graph) -> None:
        checks = [f"{name}_implication", f"{name}_product_bound", f"{name}_induced_homomorphisms"]
        with builder.guarded(*checks):
            chi_H = chromatic_number(H, self.config.solver_budget_ms)
            product = categorical_product(G, H)
            result = chromatic_number(product, self.config.solver_budget_ms)
            if not (chi_H.is_exact and result.is_exact):
                for check in checks:
                    builder.skip(check, "solver budget")
                return
            chi_P = result.value
            smaller = min(chi_G, chi_H.value)
            builder.report(name, {
                "chi_H": chi_H.value,
                "chi_product": chi_P,
                "min": smaller,
                "product_vertices": product.vertex_count,
            })
            builder.add(f"{name}_implication", True, chi_P != n + 1 or smaller == n + 1,
                        note=f"chi(GxH)={chi_P}, min={smaller}")
            builder.add(f"{name}_product_bound", True, chi_P <= smaller)

            colors = result.coloring.colors_for(product)
            from_g, from_h = induced_maps(G, H, colors, chi_P)
            builder.add(
                f"{name}_induced_homomorphisms",
                {"G": True, "H": True},
                {"G": maps_form_homomorphism(G, H, chi_P, from_g),
                 "H": maps_form_homomorphism(H, G, chi_P, from_h)},
            )

    def verify(self, G: Graph, H_pool: Optional[Sequence[NamedGraph]] = None) -> Verdict:
        pool = list(H_pool) if H_pool is not None else default_pool()
        builder = self.start({
            "G": {"vertices": G.vertex_count, "digest": labeled_digest(G)},
            "H": [name for name, _ in pool],
        })
        try:
            if not G.is_simple():
                raise PreconditionError("G must be a simple graph")
            n = self.largest_double_mycielskian(G)
            if n is None:
                raise PreconditionError("G contains no M(M(K_n)) for n >= 2")
        except PreconditionError as e:
            builder.preconditions(e)
            return builder.finish()
        builder.preconditions()
        builder.report("n", n)

        chi_G = chromatic_number(G, self.config.solver_budget_ms)
        if not chi_G.is_exact:
            builder.skip("chromatic_number_G", "solver budget")
            return builder.finish()
        builder.add("chromatic_number_G", True, chi_G.value >= n + 2,
                    note=f"chi(G)={chi_G.value}, M(M(K_n)) has chromatic number n + 2")
        for name, H in pool:
            self.check_pair(builder, G, chi_G.value, n, name, H)
        return builder.finish()
