from .model import Coloring, find_conflict, require_loopless
from .clique import max_clique, is_clique
from .chromatic import (
    ChromaticResult,
    ChromaticStatus,
    chromatic_number,
    dsatur_coloring,
    k_colorable,
    two_coloring,
)
from .homomorphism import hom_exists, evaluation_counterexample, evaluation_homomorphism_holds
from .perfect import (
    property_P,
    violates_P,
    find_odd_hole_or_antihole,
    is_perfect_bruteforce,
)
from .explicit import (
    ExplicitColoring,
    explicit_coloring_single,
    explicit_coloring_double,
    constant_clique,
    verify_rule,
)

__all__ = [
    'Coloring',
    'find_conflict',
    'require_loopless',
    'max_clique',
    'is_clique',
    'ChromaticResult',
    'ChromaticStatus',
    'chromatic_number',
    'dsatur_coloring',
    'k_colorable',
    'two_coloring',
    'hom_exists',
    'evaluation_counterexample',
    'evaluation_homomorphism_holds',
    'property_P',
    'violates_P',
    'find_odd_hole_or_antihole',
    'is_perfect_bruteforce',
    'ExplicitColoring',
    'explicit_coloring_single',
    'explicit_coloring_double',
    'constant_clique',
    'verify_rule',
]
