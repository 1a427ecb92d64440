import sys
import itertools
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

sys.path.append(str(Path(__file__).parent.parent.parent))

from foldsage.errors import BudgetExceededError, ValidationError
from foldsage.graphs import (
    Graph,
    PathSpec,
    VertexMap,
    canonical_key,
    categorical_product,
    common_neighborhood,
    complete_graph,
    cycle_graph,
    double_mycielskian,
    exponential_graph,
    find_subgraph_embedding,
    generalized_mycielskian,
    grotzsch_graph,
    is_homomorphism,
    is_isomorphic,
    neighborhood,
    path_with_loops,
    quotient_top_level,
)
from foldsage.graphs.homomorphisms import count_homomorphisms


@st.composite
def small_graphs(draw, max_vertices=7, loops=False):
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = [p for p in pairs if draw(st.booleans())]
    looped = [v for v in range(n) if loops and draw(st.booleans())]
    return Graph.from_edges([str(i) for i in range(n)], edges, looped)


def to_networkx(G: Graph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(G.vertex_count))
    graph.add_edges_from(G.edges())
    return graph


def test_path_with_loops():
    assert path_with_loops(PathSpec(1)) == complete_graph(2).relabel(["0", "1"])

    P = path_with_loops(PathSpec(2, {0}))
    print(f"\nL_2({{0}}): {P.to_json()}")
    assert P.vertex_count == 3
    assert P.loops() == [0]
    assert P.adjacent(0, 1) and P.adjacent(1, 2) and not P.adjacent(0, 2)

    P = path_with_loops(PathSpec(3, {0, 1}))
    assert P.loops() == [0, 1]

    with pytest.raises(ValidationError):
        PathSpec(2, {3})


def test_categorical_product():
    P = categorical_product(complete_graph(2), complete_graph(2))
    assert P.vertex_count == 4
    assert P.edge_count() == 2
    assert nx.number_connected_components(to_networkx(P)) == 2
    assert P.labels[1] == "(1,2)"

    looped = categorical_product(path_with_loops(PathSpec(1, {0})), path_with_loops(PathSpec(1, {0})))
    assert looped.loops() == [0]


def test_mycielskian_sizes():
    M = generalized_mycielskian(complete_graph(2))
    found, mapping = is_isomorphic(M, cycle_graph(5))
    assert found and mapping is not None
    assert M.labels[-1] == "*"

    assert grotzsch_graph().vertex_count == 11
    assert grotzsch_graph().is_simple()
    assert generalized_mycielskian(complete_graph(2), 3).vertex_count == 7
    assert generalized_mycielskian(complete_graph(3)).vertex_count == 7
    assert double_mycielskian(3).vertex_count == 15

    with pytest.raises(ValidationError):
        generalized_mycielskian(complete_graph(2), 1)


def test_grotzsch_matches_networkx():
    ours = to_networkx(grotzsch_graph())
    assert nx.is_isomorphic(ours, nx.mycielski_graph(4))


def test_quotient_rejects_missing_top_level():
    P = categorical_product(complete_graph(2), path_with_loops(PathSpec(2, {0})))
    with pytest.raises(ValidationError):
        quotient_top_level(P, [0] * P.vertex_count, 2)


def test_exponential_graph_small_cases():
    E = exponential_graph(complete_graph(2), complete_graph(2))
    assert E.vertex_count == 4
    looped = [E.labels[v] for v in E.loops()]
    print(f"\nLooped maps of K2^K2: {looped}")
    assert len(looped) == 2

    assert exponential_graph(complete_graph(2), cycle_graph(5)).vertex_count == 32
    assert exponential_graph(complete_graph(2), complete_graph(3)).loops() == []

    with pytest.raises(BudgetExceededError):
        exponential_graph(complete_graph(3), complete_graph(4), vertex_budget=80)


def test_exponential_loops_are_homomorphisms():
    pool = [complete_graph(2), path_with_loops(PathSpec(2, {0})), cycle_graph(3)]
    for G, H in itertools.product(pool, pool):
        if H.vertex_count ** G.vertex_count > 81:
            continue
        E = exponential_graph(H, G)
        for code in range(E.vertex_count):
            f = VertexMap.decode(code, G.vertex_count, H.vertex_count)
            assert E.has_loop(code) == is_homomorphism(G, H, f)


def test_homomorphism_counts():
    # proper 3-colorings of C5
    assert count_homomorphisms(cycle_graph(5), complete_graph(3)) == 30
    assert count_homomorphisms(complete_graph(3), complete_graph(2)) == 0


def test_neighborhoods():
    C5 = cycle_graph(5)
    assert {C5.labels[v] for v in neighborhood(C5, 0)} == {"2", "5"}
    K4 = complete_graph(4)
    assert {K4.labels[v] for v in common_neighborhood(K4, [0, 1])} == {"3", "4"}
    assert common_neighborhood(K4, []) == frozenset(range(4))
    L = path_with_loops(PathSpec(2, {0}))
    assert neighborhood(L, 0) == frozenset({0, 1})


def test_isomorphism_and_canonical_key():
    assert is_isomorphic(complete_graph(3), cycle_graph(3))[0]
    assert not is_isomorphic(complete_graph(3), path_with_loops(PathSpec(2)))[0]
    assert canonical_key(complete_graph(3)) == canonical_key(cycle_graph(3))
    assert canonical_key(complete_graph(3)) != canonical_key(complete_graph(2))
    assert canonical_key(grotzsch_graph()) == canonical_key(grotzsch_graph())


def test_subgraph_embedding():
    embedding = find_subgraph_embedding(cycle_graph(5), grotzsch_graph())
    assert embedding is not None
    assert embedding.is_injective()
    assert find_subgraph_embedding(complete_graph(3), grotzsch_graph()) is None


def test_graph_json():
    G = Graph.from_json({"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]], "loops": []})
    assert G.edge_count() == 1
    assert G.to_json() == {"vertices": ["a", "b"], "edges": [["a", "b"]], "loops": []}
    assert Graph.from_json({"vertices": ["a"], "loops": ["a"]}).has_loop(0)
    with pytest.raises(ValidationError):
        Graph.from_json({"vertices": ["a", "b"], "edges": [["a", "z"]]})
    with pytest.raises(ValidationError):
        Graph.from_json({"vertices": ["a", "a"]})


@settings(max_examples=50, deadline=None)
@given(small_graphs(max_vertices=5, loops=True), small_graphs(max_vertices=4, loops=True))
def test_constructions_stay_symmetric(G, H):
    assert categorical_product(G, H).is_symmetric()
    assert categorical_product(G, H).vertex_count == G.vertex_count * H.vertex_count
    if H.vertex_count ** G.vertex_count <= 1024:
        assert exponential_graph(H, G).is_symmetric()


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=6))
def test_mycielskian_of_simple_graph(G):
    M = generalized_mycielskian(G)
    assert M.vertex_count == 2 * G.vertex_count + 1
    assert M.is_simple()
    assert M.is_symmetric()


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=7))
def test_isomorphism_agrees_with_networkx(G):
    relabeled = G.induced_subgraph(list(reversed(range(G.vertex_count))))
    found, mapping = is_isomorphic(G, relabeled)
    assert found
    assert nx.is_isomorphic(to_networkx(G), to_networkx(relabeled))
    assert canonical_key(G) == canonical_key(relabeled)


if __name__ == "__main__":
    test_path_with_loops()
    test_mycielskian_sizes()
    test_exponential_graph_small_cases()
    print("\nAll graph tests passed!")
