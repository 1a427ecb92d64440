import sys
import random
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

sys.path.append(str(Path(__file__).parent.parent.parent))

from foldsage.complexes import (
    HomologyGroup,
    SimplicialComplex,
    boundary_matrices,
    chain_complex_is_valid,
    hom_k2_complex,
    is_sphere_profile,
    neighborhood_complex,
    reduced_homology,
    smith_normal_form,
)
from foldsage.errors import BudgetExceededError, ValidationError
from foldsage.graphs import Graph, complete_graph, cycle_graph, exponential_graph, grotzsch_graph
from foldsage.reductions import fold_core

# six-vertex real projective plane
RP2_FACETS = [
    "123", "134", "145", "156", "162",
    "235", "346", "452", "563", "624",
]


def random_graph(seed: int, n: int, p: float = 0.5) -> Graph:
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges([str(i) for i in range(n)], edges)


def test_neighborhood_complex_of_complete_graphs():
    for m in range(2, 7):
        profile = reduced_homology(neighborhood_complex(complete_graph(m)))
        print(f"N(K_{m}): {profile.describe()}")
        assert is_sphere_profile(profile, m - 2)


def test_neighborhood_complex_of_odd_cycle():
    N = neighborhood_complex(cycle_graph(5))
    assert N.dimension == 1
    assert len(N.facets) == 5
    profile = reduced_homology(N)
    assert profile.describe() == "H1=Z"
    assert is_sphere_profile(profile, 1)


def test_neighborhood_complex_skips_isolated_vertices():
    G = Graph.from_edges(["a", "b", "c"], [(0, 1)])
    N = neighborhood_complex(G)
    assert N.ground == ("a", "b")
    assert is_sphere_profile(reduced_homology(N), 0)


def test_empty_complex_has_empty_profile():
    N = neighborhood_complex(Graph.from_edges(["a", "b"], []))
    assert N.is_empty()
    profile = reduced_homology(N)
    assert profile.is_trivial()
    assert profile.dimension == -1


def test_contractible_complex():
    K = SimplicialComplex.from_sets(["a", "b", "c"], [["a", "b"], ["b", "c"]])
    assert reduced_homology(K).is_trivial()
    assert K.euler_characteristic() == 1
    assert K.component_count() == 1


def test_projective_plane_torsion():
    K = SimplicialComplex.from_sets(list("123456"), [list(f) for f in RP2_FACETS])
    assert K.f_vector() == [6, 15, 10]
    profile = reduced_homology(K)
    print(f"\nRP2: {profile.describe()}")
    assert profile.groups == [HomologyGroup(dim=1, rank=0, torsion=[2])]
    assert profile.describe() == "H1=Z/2"
    assert chain_complex_is_valid(boundary_matrices(K))


def test_smith_normal_form():
    form = smith_normal_form(np.array([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert form.factors == (2, 6, 12)
    assert form.rank == 3
    assert form.torsion == [2, 6, 12]

    form = smith_normal_form(np.array([[1, 0], [0, 0]]))
    assert form.factors == (1,)
    assert form.rank == 1

    assert smith_normal_form(np.zeros((3, 2), dtype=np.int64)).rank == 0
    with pytest.raises(ValidationError):
        smith_normal_form(np.array([1, 2, 3]))


def test_smith_normal_form_large_entries():
    big = 3 ** 40
    form = smith_normal_form(np.array([[big, 0], [0, 2 * big]], dtype=object))
    assert form.factors == (big, 2 * big)


def test_simplicial_complex_validation():
    with pytest.raises(ValidationError):
        SimplicialComplex(["a", "a"], [1])
    with pytest.raises(ValidationError):
        SimplicialComplex.from_sets(["a"], [["z"]])
    K = SimplicialComplex.from_sets(["a", "b", "c"], [["a", "b"], ["a"], ["c"]])
    assert K.facet_sets() == [["a", "b"], ["c"]]


def test_face_budget():
    K = neighborhood_complex(complete_graph(8))
    with pytest.raises(BudgetExceededError):
        reduced_homology(K, budget=50)


def test_hom_k2_matches_neighborhood_complex():
    for G in (complete_graph(3), complete_graph(4), cycle_graph(5), cycle_graph(6)):
        assert reduced_homology(hom_k2_complex(G)).same_homology(reduced_homology(neighborhood_complex(G)))


def test_folding_preserves_homology_of_exponential():
    G = exponential_graph(complete_graph(3), complete_graph(2))
    core, _ = fold_core(G)
    before = reduced_homology(neighborhood_complex(G))
    after = reduced_homology(neighborhood_complex(core))
    print(f"\nN(K3^K2): {before.describe()}, core has {core.vertex_count} vertices")
    assert before.same_homology(after)


def test_grotzsch_neighborhood_complex():
    profile = reduced_homology(neighborhood_complex(grotzsch_graph()))
    assert is_sphere_profile(profile, 2)


def test_hom_k2_agrees_on_random_graphs():
    rng = random.Random(20240611)
    sizes = []
    for _ in range(50):
        n = rng.randint(2, 7)
        # sparser above five vertices keeps the order complex small
        G = random_graph(rng.randrange(10 ** 6), n, 0.5 if n <= 5 else 0.25)
        nbhd = reduced_homology(neighborhood_complex(G))
        homk2 = reduced_homology(hom_k2_complex(G))
        assert nbhd.same_homology(homk2), (G.to_json(), nbhd.describe(), homk2.describe())
        sizes.append(n)
    print(f"\n50 graphs, largest has {max(sizes)} vertices")


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=100_000), st.integers(min_value=1, max_value=8))
def test_fold_invariance_of_homology(seed, n):
    G = random_graph(seed, n)
    core, _ = fold_core(G)
    before = reduced_homology(neighborhood_complex(G))
    after = reduced_homology(neighborhood_complex(core))
    assert before.same_homology(after)
    assert chain_complex_is_valid(boundary_matrices(neighborhood_complex(G)))


if __name__ == "__main__":
    test_neighborhood_complex_of_complete_graphs()
    test_projective_plane_torsion()
    test_smith_normal_form()
    print("\nAll complex tests passed!")
