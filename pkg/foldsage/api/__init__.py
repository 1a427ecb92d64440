from .interface import FoldSageAPI
from .models import (
    Command,
    ComplexKind,
    TheoremId,
    GraphPayload,
    VerifyRequest,
    ReduceResult,
    PropertyPResult,
    FoldSageResponse,
)
from .validation import RequestValidator

__all__ = [
    'FoldSageAPI',
    'Command',
    'ComplexKind',
    'TheoremId',
    'GraphPayload',
    'VerifyRequest',
    'ReduceResult',
    'PropertyPResult',
    'FoldSageResponse',
    'RequestValidator',
]
