from typing import Any, Dict, List, Optional
from enum import Enum

from pydantic import BaseModel, Field


class Command(str, Enum):
    BUILD = "build"
    REDUCE = "reduce"
    HOMOLOGY = "homology"
    CHI = "chi"
    CHECK_P = "check-p"
    VERIFY = "verify"


class TheoremId(str, Enum):
    MAIN2 = "main2"
    GENERALMAIN = "generalmain"
    CORMAIN = "cormain"
    DOUBESHARP = "doubesharp"
    DOUBLENEW = "doublenew"
    HEDETNIEMI = "hedetniemi"
    LOVASZ = "lovasz"


class ComplexKind(str, Enum):
    NBHD = "nbhd"
    HOMK2 = "homk2"


# Request Models
class GraphPayload(BaseModel):
    vertices: List[str]
    edges: List[List[str]] = Field(default_factory=list)
    loops: List[str] = Field(default_factory=list)


class VerifyRequest(BaseModel):
    theorem: TheoremId
    params: Dict[str, Any] = Field(default_factory=dict)


# Result Models
class ReduceResult(BaseModel):
    core: GraphPayload
    trace: List[Dict[str, Any]]
    removed: int


class PropertyPResult(BaseModel):
    holds: bool
    witness: Optional[List[str]] = None


class FoldSageResponse(BaseModel):
    success: bool
    data: Optional[Dict[str, Any]] = None
    error: Optional[str] = None
    error_code: Optional[str] = None
    warnings: List[str] = Field(default_factory=list)
    metadata: Dict[str, Any] = Field(default_factory=dict)
