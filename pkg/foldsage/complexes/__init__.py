from .simplicial import (
    SimplicialComplex,
    neighborhood_complex,
    hom_k2_cells,
    hom_k2_complex,
)
from .homology import (
    HomologyGroup,
    HomologyProfile,
    SmithForm,
    boundary_matrices,
    smith_normal_form,
    reduced_homology,
    is_sphere_profile,
    chain_complex_is_valid,
)

__all__ = [
    'SimplicialComplex',
    'neighborhood_complex',
    'hom_k2_cells',
    'hom_k2_complex',
    'HomologyGroup',
    'HomologyProfile',
    'SmithForm',
    'boundary_matrices',
    'smith_normal_form',
    'reduced_homology',
    'is_sphere_profile',
    'chain_complex_is_valid',
]
