from .fold import FOLD, PRUNE, FoldStep, FoldTrace, find_fold, fold_core, prune_isolated, lift_coloring
from .leveled import Assignment, BlockTag, Constant, LeveledMap, block_values
from .witnesses import (
    GeneralFold,
    WitnessChain,
    fold2_chain,
    fold2_witness,
    level_fold_chain,
    level_fold_witness,
    folddouble_witness,
    generalfold_witness,
)
from .folded import (
    LeveledExponential,
    BlockInfo,
    folded_exponential_single,
    folded_exponential_double,
    removed_set_of,
)
from .certificates import CertificateResult, verify_fold_certificate

__all__ = [
    'FOLD',
    'PRUNE',
    'FoldStep',
    'FoldTrace',
    'find_fold',
    'fold_core',
    'prune_isolated',
    'lift_coloring',
    'Assignment',
    'BlockTag',
    'Constant',
    'LeveledMap',
    'block_values',
    'GeneralFold',
    'WitnessChain',
    'fold2_chain',
    'fold2_witness',
    'level_fold_chain',
    'level_fold_witness',
    'folddouble_witness',
    'generalfold_witness',
    'LeveledExponential',
    'BlockInfo',
    'folded_exponential_single',
    'folded_exponential_double',
    'removed_set_of',
    'CertificateResult',
    'verify_fold_certificate',
]
