from .verdict import Check, Verdict, EXHAUSTIVE, SKIPPED, sampled
from .base import Pipeline, VerdictBuilder
from .single import Main2Pipeline, GeneralMainPipeline, CorMainPipeline
from .double import DoubleSharpPipeline, DoubleNewPipeline
from .hedetniemi import HedetniemiPipeline, default_pool
from .lovasz import LovaszPipeline, sphere_dimension
from .verifier import THEOREMS, Verifier

__all__ = [
    'Check',
    'Verdict',
    'EXHAUSTIVE',
    'SKIPPED',
    'sampled',
    'Pipeline',
    'VerdictBuilder',
    'Main2Pipeline',
    'GeneralMainPipeline',
    'CorMainPipeline',
    'DoubleSharpPipeline',
    'DoubleNewPipeline',
    'HedetniemiPipeline',
    'default_pool',
    'LovaszPipeline',
    'sphere_dimension',
    'THEOREMS',
    'Verifier',
]
