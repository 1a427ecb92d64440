from .graph import (
    Graph,
    VertexMap,
    iter_bits,
    mask_of,
    neighborhood,
    common_neighborhood,
    common_neighborhood_mask,
    is_homomorphism,
)
from .constructions import (
    PathSpec,
    complete_graph,
    cycle_graph,
    path_with_loops,
    categorical_product,
    quotient_top_level,
    cone_graph,
    generalized_mycielskian,
    double_mycielskian,
    grotzsch_graph,
    exponential_graph,
)
from .implicit import ImplicitExponential, Part, maps_adjacent
from .homomorphisms import iter_homomorphisms, count_homomorphisms
from .isomorphism import (
    find_isomorphism,
    is_isomorphic,
    is_isomorphism,
    find_subgraph_embedding,
    canonical_key,
    labeled_digest,
)

__all__ = [
    'Graph',
    'VertexMap',
    'PathSpec',
    'Part',
    'ImplicitExponential',
    'iter_bits',
    'mask_of',
    'neighborhood',
    'common_neighborhood',
    'common_neighborhood_mask',
    'is_homomorphism',
    'complete_graph',
    'cycle_graph',
    'path_with_loops',
    'categorical_product',
    'quotient_top_level',
    'cone_graph',
    'generalized_mycielskian',
    'double_mycielskian',
    'grotzsch_graph',
    'exponential_graph',
    'maps_adjacent',
    'iter_homomorphisms',
    'count_homomorphisms',
    'find_isomorphism',
    'is_isomorphic',
    'is_isomorphism',
    'find_subgraph_embedding',
    'canonical_key',
    'labeled_digest',
]
