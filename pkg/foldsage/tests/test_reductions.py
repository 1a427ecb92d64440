import sys
import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

sys.path.append(str(Path(__file__).parent.parent.parent))

from foldsage.errors import PreconditionError, ValidationError
from foldsage.graphs import (
    Graph,
    ImplicitExponential,
    PathSpec,
    VertexMap,
    complete_graph,
    cycle_graph,
    double_mycielskian,
    exponential_graph,
    is_isomorphic,
    path_with_loops,
)
from foldsage.reductions import (
    FoldTrace,
    Constant,
    find_fold,
    fold2_chain,
    fold2_witness,
    fold_core,
    folddouble_witness,
    folded_exponential_double,
    folded_exponential_single,
    generalfold_witness,
    level_fold_chain,
    level_fold_witness,
    lift_coloring,
    prune_isolated,
    removed_set_of,
    verify_fold_certificate,
    block_values,
)
from foldsage.reductions.folded import B00, B10
from foldsage.reductions.witnesses import level_positions


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges([str(i) for i in range(n)], edges)


def test_fold_core_basic():
    core, trace = fold_core(cycle_graph(4))
    print(f"\nC4 trace: {trace.to_json()}")
    assert core.vertex_count == 2
    assert is_isomorphic(core, complete_graph(2))[0]
    assert len(trace) == 2

    for G in (complete_graph(4), cycle_graph(5)):
        core, trace = fold_core(G)
        assert core == G
        assert len(trace) == 0
        assert find_fold(G) is None


def test_trace_replay_and_json():
    G = exponential_graph(complete_graph(2), complete_graph(3))
    core, trace = fold_core(G)
    assert trace.replay(G) == core
    restored = FoldTrace.from_json(trace.to_json())
    assert restored.replay(G) == core

    with pytest.raises(ValidationError):
        FoldTrace.from_json([{"op": "shrink", "removed": "x"}])


def test_fold_core_of_small_exponential_is_complete():
    for T, m in ((complete_graph(3), 2), (complete_graph(4), 2), (complete_graph(4), 3)):
        core, _ = fold_core(exponential_graph(complete_graph(m), T))
        print(f"K_{m}^T core has {core.vertex_count} vertices")
        assert is_isomorphic(core, complete_graph(m))[0]


def test_prune_and_lift():
    G = Graph.from_edges(["a", "b", "c", "d"], [(0, 1), (1, 2)])
    pruned, trace = prune_isolated(G)
    assert pruned.labels == ("a", "b", "c")
    assert [step.removed for step in trace] == ["d"]

    C4 = cycle_graph(4)
    core, trace = fold_core(C4)
    colors = lift_coloring(C4, trace, {core.labels[0]: 0, core.labels[1]: 1})
    assert all(colors[C4.labels[u]] != colors[C4.labels[v]] for u, v in C4.edges())


def test_fold2_chain_reaches_constant():
    T = complete_graph(3)
    f = VertexMap(3, 2, (0, 0, 1))
    chain = fold2_chain(f, T, 2, ("1", "2"))
    print(f"\nfold2 chain: {chain.to_json()}")
    assert chain.final == VertexMap.constant(3, 2, 0)
    assert chain.maps[0] == f

    big = ImplicitExponential.full(complete_graph(2), T)
    for before, after in zip(chain.maps, chain.maps[1:]):
        assert verify_fold_certificate(big, before, after).holds


def test_fold2_preconditions():
    with pytest.raises(PreconditionError):
        fold2_witness(VertexMap(5, 2, (0, 0, 1, 0, 1)), cycle_graph(5), 2, ("1", "2"))
    with pytest.raises(PreconditionError):
        fold2_witness(VertexMap(3, 3, (0, 1, 2)), complete_graph(3), 3, ("1", "2"))


def test_fold2_on_K4_with_three_colors():
    T = complete_graph(4)
    big = ImplicitExponential.full(complete_graph(3), T)
    rng = random.Random(7)
    for _ in range(50):
        f = VertexMap(4, 3, tuple(rng.randrange(3) for _ in range(4)))
        # pigeonhole: some edge of K4 is monochromatic
        v, w = next((v, w) for v in range(4) for w in range(v + 1, 4) if f(v) == f(w))
        f_tilde = fold2_witness(f, T, 3, (T.labels[v], T.labels[w]))
        assert f_tilde.is_constant()
        assert verify_fold_certificate(big, f, f_tilde).holds


def test_certificate_counterexample():
    big = ImplicitExponential.full(complete_graph(3), complete_graph(2))
    result = verify_fold_certificate(big, VertexMap.constant(2, 3, 0), VertexMap.constant(2, 3, 1))
    assert not result.holds
    g = result.counterexample
    assert big.adjacent((0, 0), g) and not big.adjacent((1, 1), g)


def test_block_values_order():
    values, tags = block_values(complete_graph(2), 2)
    assert values[:2] == [(0, 0), (1, 1)]
    assert tags[0] == Constant(0)
    assert values[2:] == [(0, 1), (1, 0)]


def test_folded_single_counts():
    K3 = complete_graph(3)
    graph = folded_exponential_single(2, K3, 2, {0})
    assert graph.vertex_count() == 8
    graph = folded_exponential_single(3, K3, 2, {0})
    assert graph.vertex_count() == 9 * 9 * 3
    assert graph.constant_restriction().vertex_count() == 27

    pruned = folded_exponential_single(3, K3, 2, {0}, prune=True)
    G2, members = pruned.materialize(1000)
    E = exponential_graph(complete_graph(3), path_with_loops(PathSpec(2, {0})))
    table = tuple(pruned.collapse(f).encode() for f in members)
    assert is_isomorphic(G2, E)[0]
    assert sorted(table) == list(range(27))


def test_folded_single_preconditions():
    with pytest.raises(PreconditionError):
        folded_exponential_single(2, cycle_graph(5), 2, {0})
    with pytest.raises(PreconditionError):
        folded_exponential_single(4, complete_graph(3), 2, {0})
    with pytest.raises(PreconditionError):
        folded_exponential_single(2, complete_graph(3), 2, {2})


def test_hom_block_vertices_are_isolated():
    graph = folded_exponential_single(3, complete_graph(3), 2, {0})
    hom_vertices = [f for f in graph.vertices() if not graph.all_constant(f)]
    assert hom_vertices
    assert not any(graph.has_neighbors(f) for f in hom_vertices)


def test_level_chain_stays_on_level():
    T = complete_graph(3)
    graph = folded_exponential_single(2, T, 2, {0}, check_preconditions=False)
    base = graph.base
    f = VertexMap(base.vertex_count, 2, tuple(0 if label.endswith(",0)") else 1 for label in base.labels))
    chain = level_fold_chain(f, T, base, 0, ("1", "2"))
    assert chain.final == f


def test_level_fold_witness_paints_one_level():
    T = complete_graph(3)
    graph = folded_exponential_single(2, T, 2, {0}, check_preconditions=False)
    base = graph.base
    level = level_positions(base, T, 0)
    colors = dict(zip(level, (0, 0, 1)))
    f = VertexMap(base.vertex_count, 2, tuple(colors.get(i, 1) for i in range(base.vertex_count)))

    witness = level_fold_witness(f, T, base, 0, ("1", "2"))
    assert witness == level_fold_chain(f, T, base, 0, ("1", "2")).final
    assert [witness(i) for i in level] == [0, 0, 0]
    assert all(witness(i) == f(i) for i in range(base.vertex_count) if i not in colors)

    with pytest.raises(PreconditionError):
        level_fold_witness(f, T, base, 0, ("1", "3"))


def test_folded_pruned_core_matches_full_core():
    T = complete_graph(3)
    pruned = folded_exponential_single(2, T, 2, {0}, prune=True)
    G2, _ = pruned.materialize(1000)
    full = exponential_graph(complete_graph(2), pruned.base)
    assert is_isomorphic(fold_core(G2)[0], fold_core(full)[0])[0]


def test_double_stage_counts():
    G = folded_exponential_double(2, 2, "G")
    assert G.vertex_count() == 2 ** 11
    G1 = folded_exponential_double(2, 2, "G1")
    G2 = folded_exponential_double(2, 2, "G2")
    print(f"\nStages for n=2, m=2: {G.vertex_count()} / {G1.vertex_count()} / {G2.vertex_count()}")
    assert G2.vertex_count() <= G1.vertex_count() <= G.vertex_count()
    assert G2.constant_restriction().vertex_count() == 2 ** 7

    with pytest.raises(ValidationError):
        folded_exponential_double(2, 2, "G3")
    with pytest.raises(PreconditionError):
        folded_exponential_double(4, 2)


def test_removed_sets_are_isolated_in_first_stage():
    G1 = folded_exponential_double(2, 2, "G1")
    removed = [f for f in G1.vertices() if removed_set_of(G1, f) is not None]
    print(f"\n{len(removed)} vertices in U1/U2/U3 for n=2, m=2")
    assert not any(G1.has_neighbors(f) for f in removed)

    G2 = folded_exponential_double(2, 2, "G2")
    assert all(removed_set_of(G2, f) is None for f in G2.vertices())


def test_folddouble_witness():
    base = double_mycielskian(3)
    full = ImplicitExponential.full(complete_graph(3), base)
    rng = random.Random(3)
    for _ in range(30):
        f = full.to_vertex_map(full.random_vertex(rng))
        positions = [base.index_of(f"(({x},0),0)") for x in range(1, 4)]
        if len({f(i) for i in positions}) == 3:
            with pytest.raises(PreconditionError):
                folddouble_witness(f, base, 3, 0, 0)
            continue
        witness = folddouble_witness(f, base, 3, 0, 0)
        assert len({witness(i) for i in positions}) == 1
        assert verify_fold_certificate(full, f, witness).holds


def test_generalfold_witness_cases():
    G = folded_exponential_double(3, 3, "G")
    info = G.block_info
    rng = random.Random(11)
    seen = set()
    for _ in range(3000):
        f = G.random_vertex(rng)
        if not (info.is_hom(f[B00]) and info.is_hom(f[B10])) or info.in_first_stage(f[B00], f[B10]):
            continue
        fold = generalfold_witness(G.to_vertex_map(f), G.base, 3)
        assert fold is not None
        seen.add(fold.case)
        witness = G.from_vertex_map(fold.witness)
        assert witness is not None
        assert verify_fold_certificate(G, f, witness, seed=1).holds
    print(f"\ngeneralfold cases seen: {sorted(seen)}")
    assert seen


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=8))
def test_fold_core_is_unique_up_to_isomorphism(seed, n):
    G = random_graph(random.Random(seed), n)
    core, trace = fold_core(G)
    assert find_fold(core) is None
    assert trace.replay(G) == core
    shuffled = list(range(n))
    random.Random(seed + 1).shuffle(shuffled)
    other, _ = fold_core(G.induced_subgraph(shuffled))
    assert is_isomorphic(core, other)[0]


if __name__ == "__main__":
    test_fold_core_basic()
    test_fold2_chain_reaches_constant()
    test_folded_single_counts()
    print("\nAll reduction tests passed!")
