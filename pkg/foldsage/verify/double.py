"""Pipelines for exponential graphs over the double Mycielskian M(M(K_n))."""
import itertools
import logging
import random
from typing import Iterator, Optional, Tuple

from ..coloring import chromatic_number, explicit_coloring_double, two_coloring
from ..errors import PreconditionError, ValidationError
from ..graphs.constructions import complete_graph, double_mycielskian
from ..graphs.graph import Graph, VertexMap
from ..graphs.implicit import ImplicitExponential, Vertex, maps_adjacent
from ..graphs.isomorphism import find_subgraph_embedding, is_isomorphism, labeled_digest
from ..reductions import folddouble_witness, generalfold_witness, verify_fold_certificate
from ..reductions.witnesses import block_positions
from ..reductions.folded import (
    B00, B01, B10, B11, DOUBLE_BLOCKS, W1, W2,
    LeveledExponential,
    folded_exponential_double,
)
from .base import Pipeline, VerdictBuilder
from .single import hom_block_vertices
from .verdict import Verdict, sampled

logger = logging.getLogger(__name__)

TAIL_PARTS = (B01, B11, W1, W2)
ATTEMPTS_PER_SAMPLE = 20


def removed_vertices(G1: LeveledExponential, limit: int, samples: int, seed: int) -> Tuple[Iterator[Vertex], Optional[int]]:
    """Members of U1, U2, U3 inside G1: all of them within limit, else a seeded sample.

    The second value is the requested sample size, None when enumeration is exhaustive.
    """
    info = G1.block_info
    heads = [(x00, x10, w0) for x00, x10 in G1.member_combos() for w0 in range(G1.colors)
             if info.removed_set(x00, x10, w0) is not None]
    tail_sizes = [G1.parts[i].size for i in TAIL_PARTS]
    total = len(heads)
    for size in tail_sizes:
        total *= size

    def assemble(head, tail) -> Vertex:
        x00, x10, w0 = head
        x01, x11, w1, w2 = tail
        return (x00, x01, x10, x11, w0, w1, w2)

    if total <= limit:
        vertices = (assemble(head, tail)
                    for head in heads
                    for tail in itertools.product(*(range(size) for size in tail_sizes)))
        return vertices, None

    def draw() -> Iterator[Vertex]:
        rng = random.Random(seed)
        for _ in range(samples):
            head = heads[rng.randrange(len(heads))]
            yield assemble(head, tuple(rng.randrange(size) for size in tail_sizes))

    return draw(), samples


class DoublePipeline(Pipeline):

    def coloring_check(self, builder: VerdictBuilder, m: int, n: int) -> Optional[int]:
        """chi(G2) = m from the explicit coloring and the constant-map clique"""
        with builder.guarded("chromatic_number"):
            coloring = explicit_coloring_double(
                m, n,
                vertex_budget=self.config.vertex_budget,
                edge_samples=self.config.edge_samples,
                seed=self.config.seed,
            )
            certified = len(coloring.clique) == coloring.k and coloring.complete
            chi = coloring.k if certified else None
            builder.report("coloring", {"rule": coloring.description, "checked": coloring.checked,
                                        "requested": coloring.requested})
            note = f"clique of size {len(coloring.clique)}"
            if not coloring.complete:
                note += f"; only {coloring.checked} of {coloring.requested} edges sampled"
            builder.add("chromatic_number", m, chi, strength=coloring.verified, note=note)
            return chi
        return None

    def removed_sets_check(self, builder: VerdictBuilder, m: int, n: int) -> None:
        name = "removed_sets_isolated"
        with builder.guarded(name):
            G1 = folded_exponential_double(m, n, "G1", check_preconditions=False)
            vertices, requested = removed_vertices(
                G1, self.config.vertex_budget, self.config.certificate_samples, self.config.seed
            )
            self.isolation_check(builder, name, G1, vertices, requested)

    def direct_coloring_check(self, builder: VerdictBuilder, name: str, m: int, host: Graph) -> None:
        with builder.guarded(name):
            full = self.materialize_full(m, host, self.config.full_check_vertices)
            if m == 2:
                colors = two_coloring(full)
                builder.add(name, 2, 2 if colors is not None else "not bipartite", note="BFS 2-coloring")
                return
            chi = chromatic_number(full, self.config.solver_budget_ms)
            if chi.is_exact:
                builder.add(name, m, chi.value)
            else:
                builder.skip(name, "solver budget")


class DoubleSharpPipeline(DoublePipeline):
    """K_m^{M(M(K_n))} for m <= n: sharp bound and sphere neighborhood complex"""

    theorem_id = "doubesharp"

    def collapse_map(self, pruned: LeveledExponential, members) -> VertexMap:
        target_size = pruned.colors ** pruned.pattern.vertex_count
        return VertexMap(len(members), target_size, tuple(pruned.collapse(f).encode() for f in members))

    def verify(self, n: int, m: int) -> Verdict:
        builder = self.start({"n": n, "m": m})
        try:
            if n < 2:
                raise PreconditionError("Need n >= 2", details={"n": n})
            if not 2 <= m <= n:
                raise PreconditionError("Need 2 <= m <= n", details={"m": m, "n": n})
            G2 = folded_exponential_double(m, n, "G2")
        except (PreconditionError, ValidationError) as e:
            builder.preconditions(PreconditionError(e.message, details=e.details))
            return builder.finish()
        builder.preconditions()
        builder.report("stage_vertices", {"G2": G2.vertex_count()})

        self.removed_sets_check(builder, m, n)

        with builder.guarded("hom_block_vertices_isolated"):
            vertices, requested = hom_block_vertices(
                G2, self.config.vertex_budget, self.config.certificate_samples, self.config.seed
            )
            self.isolation_check(builder, "hom_block_vertices_isolated", G2, vertices, requested)

        sphere_dimension = None
        with builder.guarded("pruned_isomorphic_to_pattern_exponential", "sphere_profile"):
            pruned = G2.constant_restriction()
            P, members = pruned.materialize(self.config.vertex_budget)
            E = self.materialize_full(m, pruned.pattern)
            builder.add("pruned_isomorphic_to_pattern_exponential", True,
                        is_isomorphism(P, E, self.collapse_map(pruned, members)))
            core, _, profile = self.folded_profile(P)
            builder.report("core_vertices", core.vertex_count)
            builder.report("homology", profile.to_json())
            if self.sphere_check(builder, "sphere_profile", profile, m - 2).passed:
                sphere_dimension = m - 2

        chi = self.coloring_check(builder, m, n)
        if chi is None or sphere_dimension is None:
            builder.skip("sphere_dimension_consistent", "missing chromatic number or sphere certificate")
        else:
            builder.add("sphere_dimension_consistent", chi, sphere_dimension + 2)

        with builder.guarded("direct_sphere_profile"):
            full = self.materialize_full(m, double_mycielskian(n), self.config.full_check_vertices)
            _, _, profile = self.folded_profile(full)
            self.sphere_check(builder, "direct_sphere_profile", profile, m - 2)
        return builder.finish()


class DoubleNewPipeline(DoublePipeline):
    """chi(K_m^G) = m for m <= n + 1 whenever M(M(K_n)) sits inside G"""

    theorem_id = "doublenew"

    def folddouble_check(self, builder: VerdictBuilder, m: int, base: Graph, n: int) -> None:
        """Block-collapse folds on seeded vertices of the full K_m^{M(M(K_n))}"""
        name = "folddouble_certificates"
        full = ImplicitExponential.full(complete_graph(m), base)
        rng = random.Random(self.config.seed)
        samples = self.config.certificate_samples
        checked = attempts = 0
        # maps injective on every block have no block-collapse fold
        while checked < samples and attempts < ATTEMPTS_PER_SAMPLE * samples:
            attempts += 1
            f = full.to_vertex_map(full.random_vertex(rng))
            blocks = [(p, q) for p, q in DOUBLE_BLOCKS
                      if len({f(v) for v in block_positions(base, n, p, q)}) < n]
            if not blocks:
                continue
            p, q = blocks[rng.randrange(len(blocks))]
            witness = folddouble_witness(f, base, n, p, q)
            result = verify_fold_certificate(full, f, witness, seed=self.config.seed)
            checked += 1
            if not result:
                builder.add(name, True, False, strength=sampled(self.config.seed, checked),
                            note=f"fold of block ({p},{q}) fails at {f.to_json()}")
                return
        builder.sample_floor(name, checked, samples, note=f"{attempts} maps drawn")

    def generalfold_check(self, builder: VerdictBuilder, m: int, n: int) -> None:
        """Folds of the vertices that the first stage removes, checked inside the stage-G graph"""
        name = "generalfold_certificates"
        if m < n:
            builder.skip(name, "no homomorphism K_n -> K_m when m < n")
            return
        with builder.guarded(name):
            G = folded_exponential_double(m, n, "G", check_preconditions=False)
            info = G.block_info
            rng = random.Random(self.config.seed)
            samples = self.config.certificate_samples
            checked = attempts = 0
            while checked < samples and attempts < ATTEMPTS_PER_SAMPLE * samples:
                attempts += 1
                f = G.random_vertex(rng)
                if not (info.is_hom(f[B00]) and info.is_hom(f[B10])) or info.in_first_stage(f[B00], f[B10]):
                    continue
                fold = generalfold_witness(G.to_vertex_map(f), G.base, n)
                if fold is None:
                    continue
                witness = G.from_vertex_map(fold.witness)
                result = verify_fold_certificate(G, f, witness, seed=self.config.seed)
                checked += 1
                if not result:
                    builder.add(name, True, False, strength=sampled(self.config.seed, checked),
                                note=f"{fold.case} fold fails at {G.label(f)}")
                    return
            builder.sample_floor(name, checked, samples, note=f"{attempts} vertices drawn")

    def host_checks(self, builder: VerdictBuilder, m: int, base: Graph, host: Graph) -> None:
        with builder.guarded("host_contains_double_mycielskian"):
            embedding = find_subgraph_embedding(base, host)
            builder.add("host_contains_double_mycielskian", True, embedding is not None)
        if not builder.verdict.check("host_contains_double_mycielskian").passed:
            for name in ("host_chromatic_number", "restriction_homomorphism"):
                builder.skip(name, "no embedding of M(M(K_n)) into the host")
            return

        self.direct_coloring_check(builder, "host_chromatic_number", m, host)

        # i*: f -> f o embedding
        name = "restriction_homomorphism"
        target = complete_graph(m)
        full = ImplicitExponential.full(target, host)

        def preserved(f: Vertex, g: Vertex) -> bool:
            f_restricted = full.to_vertex_map(f).compose(embedding)
            g_restricted = full.to_vertex_map(g).compose(embedding)
            return maps_adjacent(target, base, f_restricted, g_restricted)

        # K_m^host is mostly isolated vertices, so small cases walk every edge
        if full.vertex_count() <= self.config.full_check_vertices:
            edges = 0
            for f in full.vertices():
                for g in full.neighbors(f):
                    edges += 1
                    if not preserved(f, g):
                        builder.add(name, True, False,
                                    note=f"edge {full.label(f)} ~ {full.label(g)} is not preserved")
                        return
            builder.add(name, True, True, note=f"{edges} ordered edges checked")
            return

        rng = random.Random(self.config.seed)
        samples = self.config.certificate_samples
        checked = attempts = 0
        while checked < samples and attempts < ATTEMPTS_PER_SAMPLE * samples:
            attempts += 1
            f = full.random_vertex(rng)
            g = full.random_neighbor(f, rng)
            if g is None:
                continue
            checked += 1
            if not preserved(f, g):
                builder.add(name, True, False, strength=sampled(self.config.seed, checked),
                            note=f"edge {full.label(f)} ~ {full.label(g)} is not preserved")
                return
        builder.sample_floor(name, checked, samples, note=f"{attempts} maps drawn")

    def verify(self, n: int, m: int, host: Optional[Graph] = None) -> Verdict:
        instance = {"n": n, "m": m}
        if host is not None:
            instance["host"] = {"vertices": host.vertex_count, "digest": labeled_digest(host)}
        builder = self.start(instance)
        try:
            if n < 2:
                raise PreconditionError("Need n >= 2", details={"n": n})
            if not 2 <= m <= n + 1:
                raise PreconditionError("Need 2 <= m <= n + 1", details={"m": m, "n": n})
        except PreconditionError as e:
            builder.preconditions(e)
            return builder.finish()
        builder.preconditions()
        base = double_mycielskian(n)

        self.coloring_check(builder, m, n)
        self.removed_sets_check(builder, m, n)
        self.folddouble_check(builder, m, base, n)
        self.generalfold_check(builder, m, n)
        self.direct_coloring_check(builder, "direct_chromatic_number", m, base)
        if host is not None:
            self.host_checks(builder, m, base, host)
        return builder.finish()
