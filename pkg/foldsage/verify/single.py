"""Pipelines for exponential graphs over one-level cones T_A^r and plain T."""
import logging
import random
from typing import Any, Dict, Iterable, Iterator, Optional, Tuple

from ..coloring import chromatic_number, evaluation_homomorphism_holds, explicit_coloring_single, property_P
from ..errors import PreconditionError
from ..graphs.constructions import PathSpec, complete_graph, path_with_loops
from ..graphs.graph import Graph, VertexMap
from ..graphs.isomorphism import is_isomorphism, labeled_digest
from ..reductions.folded import LeveledExponential, folded_exponential_single
from .base import Pipeline, VerdictBuilder
from .verdict import Verdict

logger = logging.getLogger(__name__)


def graph_instance(T: Graph) -> Dict[str, Any]:
    return {"vertices": T.vertex_count, "edges": T.edge_count(), "digest": labeled_digest(T)}


def hom_block_vertices(graph: LeveledExponential, limit: int, samples: int, seed: int) -> Tuple[Iterator, Optional[int]]:
    """Vertices with a homomorphism block: all of them within limit, else a seeded sample of requested size"""
    if graph.vertex_count() <= limit:
        return (f for f in graph.vertices() if not graph.all_constant(f)), None

    def draw() -> Iterator:
        rng = random.Random(seed)
        found = attempts = 0
        while found < samples and attempts < 20 * samples:
            attempts += 1
            f = graph.random_vertex(rng)
            if not graph.all_constant(f):
                found += 1
                yield f

    return draw(), samples


class Main2Pipeline(Pipeline):
    """K_m^T for connected T with property P and m < chi(T)"""

    theorem_id = "main2"

    def check_preconditions(self, T: Graph, m: int) -> None:
        if not T.is_simple():
            raise PreconditionError("T must be a simple graph")
        if not T.is_connected():
            raise PreconditionError("T must be connected")
        holds, witness = property_P(T)
        if not holds:
            raise PreconditionError(
                "T does not satisfy property P",
                details={"witness": [T.labels[v] for v in witness]}
            )
        chi = chromatic_number(T, self.config.solver_budget_ms).value
        if chi is None or not 2 <= m < chi:
            raise PreconditionError("Need 2 <= m < chi(T)", details={"m": m, "chi": chi})

    def verify(self, T: Graph, m: int) -> Verdict:
        builder = self.start({"m": m, "T": graph_instance(T)})
        try:
            self.check_preconditions(T, m)
        except PreconditionError as e:
            builder.preconditions(e)
            return builder.finish()
        builder.preconditions()

        checks = ("fold_core_is_complete", "fold_trace_replays", "chromatic_number",
                  "sphere_profile", "lovasz_bound_tight")
        with builder.guarded(*checks):
            G = self.materialize_full(m, T)
            builder.report("exponential_vertices", G.vertex_count)
            core, trace, profile = self.folded_profile(G)
            builder.add("fold_trace_replays", True, trace.replay(G) == core)
            self.complete_core_check(builder, "fold_core_is_complete", core, m)
            builder.report("homology", profile.to_json())

            chi = chromatic_number(G, self.config.solver_budget_ms)
            builder.report("chromatic", chi.to_json())
            if chi.is_exact:
                builder.add("chromatic_number", m, chi.value)
            else:
                builder.skip("chromatic_number", f"solver budget: bracket [{chi.lower}, {chi.upper}]")

            sphere = self.sphere_check(builder, "sphere_profile", profile, m - 2)
            if chi.is_exact:
                # conn(S^(m-2)) = m - 3
                bound = (m - 3) + 3 if sphere.passed else None
                builder.add("lovasz_bound_tight", chi.value, bound,
                            note="homology-certificate strength")
            else:
                builder.skip("lovasz_bound_tight", "chromatic number not exact")

        with builder.guarded("evaluation_homomorphism"):
            builder.add(
                "evaluation_homomorphism", True,
                evaluation_homomorphism_holds(T, m, self.config.vertex_budget)
            )
        return builder.finish()


class GeneralMainPipeline(Pipeline):
    """N(K_m^{T_A^r}) against N(K_m^{L_r(A)})"""

    theorem_id = "generalmain"

    def collapse_map(self, pruned: LeveledExponential, members) -> VertexMap:
        """Pruned vertex i -> index of its collapsed map in K_m^{L_r(A)}"""
        target_size = pruned.colors ** pruned.pattern.vertex_count
        table = tuple(pruned.collapse(f).encode() for f in members)
        return VertexMap(len(members), target_size, table)

    def verify(self, T: Graph, m: int, r: int, A: Iterable[int]) -> Verdict:
        A = sorted(set(A))
        builder = self.start({"m": m, "r": r, "A": A, "T": graph_instance(T)})
        try:
            if not T.is_connected():
                raise PreconditionError("T must be connected")
            folded = folded_exponential_single(m, T, r, A)
        except PreconditionError as e:
            builder.preconditions(e)
            return builder.finish()
        builder.preconditions()

        spec = PathSpec(r, frozenset(A))
        path_profile = None
        with builder.guarded("homology_equal", "pruned_isomorphic_to_path_exponential"):
            pruned = folded.constant_restriction(name=f"T2(m={m},r={r},A={A})")
            G2, members = pruned.materialize(self.config.vertex_budget)
            E = self.materialize_full(m, path_with_loops(spec))
            builder.report("folded_vertices", folded.vertex_count())
            builder.report("pruned_vertices", G2.vertex_count)
            builder.add(
                "pruned_isomorphic_to_path_exponential", True,
                is_isomorphism(G2, E, self.collapse_map(pruned, members))
            )
            left = self.profile(G2)
            path_profile = self.profile(E)
            builder.report("homology", left.to_json())
            builder.add("homology_equal", path_profile.to_json(), left.to_json())

        with builder.guarded("hom_block_vertices_isolated"):
            vertices, requested = hom_block_vertices(
                folded, self.config.vertex_budget, self.config.certificate_samples, self.config.seed
            )
            self.isolation_check(builder, "hom_block_vertices_isolated", folded, vertices, requested)

        self.direct_check(builder, m, folded, path_profile)
        return builder.finish()

    def direct_check(self, builder: VerdictBuilder, m: int, folded: LeveledExponential, path_profile) -> None:
        name = "direct_homology_equal"
        if path_profile is None:
            builder.skip(name, "path exponential not computed")
            return
        with builder.guarded(name):
            full = self.materialize_full(m, folded.base, self.config.full_check_vertices)
            _, _, profile = self.folded_profile(full)
            builder.add(name, path_profile.to_json(), profile.to_json())


class CorMainPipeline(Pipeline):
    """K_m^{M_r(K_n)} with loops at levels 0..i"""

    theorem_id = "cormain"

    def verify(self, n: int, m: int, r: int, i: int) -> Verdict:
        builder = self.start({"n": n, "m": m, "r": r, "i": i})
        A = list(range(i + 1))
        try:
            if n < 2 or r < 1:
                raise PreconditionError("Need n >= 2 and r >= 1", details={"n": n, "r": r})
            if not 0 <= i <= r - 1:
                raise PreconditionError("Need 0 <= i <= r - 1", details={"i": i, "r": r})
            if not 2 <= m <= n:
                raise PreconditionError("Need 2 <= m <= n", details={"m": m, "n": n})
            T = complete_graph(n)
            folded = folded_exponential_single(m, T, r, A)
        except PreconditionError as e:
            builder.preconditions(e)
            return builder.finish()
        builder.preconditions()

        sphere_dimension = None
        with builder.guarded("sphere_profile"):
            pruned = folded.constant_restriction()
            G2, _ = pruned.materialize(self.config.vertex_budget)
            core, _, profile = self.folded_profile(G2)
            builder.report("pruned_vertices", G2.vertex_count)
            builder.report("core_vertices", core.vertex_count)
            builder.report("homology", profile.to_json())
            if self.sphere_check(builder, "sphere_profile", profile, m - 2).passed:
                sphere_dimension = m - 2

        chi = None
        with builder.guarded("chromatic_number"):
            coloring = explicit_coloring_single(
                m, T, r, A, level=0,
                vertex_budget=self.config.vertex_budget,
                edge_samples=self.config.edge_samples,
                seed=self.config.seed,
                check_preconditions=False,
            )
            certified = len(coloring.clique) == coloring.k and coloring.complete
            chi = coloring.k if certified else None
            note = f"coloring by {coloring.description}, clique of size {len(coloring.clique)}"
            if not coloring.complete:
                note += f"; only {coloring.checked} of {coloring.requested} edges sampled"
            builder.add("chromatic_number", m, chi, strength=coloring.verified, note=note)

        if chi is None or sphere_dimension is None:
            builder.skip("sphere_dimension_consistent", "missing chromatic number or sphere certificate")
        else:
            builder.add("sphere_dimension_consistent", chi, sphere_dimension + 2)

        with builder.guarded("direct_chromatic_number", "direct_sphere_profile"):
            full = self.materialize_full(m, folded.base, self.config.full_check_vertices)
            direct = chromatic_number(full, self.config.solver_budget_ms)
            if direct.is_exact:
                builder.add("direct_chromatic_number", m, direct.value)
            else:
                builder.skip("direct_chromatic_number", "solver budget")
            _, _, profile = self.folded_profile(full)
            self.sphere_check(builder, "direct_sphere_profile", profile, m - 2)
        return builder.finish()
