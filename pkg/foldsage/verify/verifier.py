import inspect
import logging
from typing import Any, Callable, Dict, Iterable, Optional, Sequence

from ..errors import ValidationError
from ..graphs.graph import Graph
from ..utils.config import Config
from .double import DoubleNewPipeline, DoubleSharpPipeline
from .hedetniemi import HedetniemiPipeline, NamedGraph
from .lovasz import LovaszPipeline
from .single import CorMainPipeline, GeneralMainPipeline, Main2Pipeline
from .verdict import Verdict

logger = logging.getLogger(__name__)

THEOREMS = ("main2", "generalmain", "cormain", "doubesharp", "doublenew", "hedetniemi", "lovasz")


class Verifier:
    """Main verifier combining all theorem pipelines"""

    def __init__(self, config: Optional[Config] = None):
        self.config = config or Config()

        self.main2 = Main2Pipeline(self.config)
        self.generalmain = GeneralMainPipeline(self.config)
        self.cormain = CorMainPipeline(self.config)
        self.doubesharp = DoubleSharpPipeline(self.config)
        self.doublenew = DoubleNewPipeline(self.config)
        self.hedetniemi = HedetniemiPipeline(self.config)
        self.lovasz = LovaszPipeline(self.config)

    def verify_main2(self, T: Graph, m: int) -> Verdict:
        return self.main2.verify(T, m)

    def verify_generalmain(self, T: Graph, m: int, r: int, A: Iterable[int]) -> Verdict:
        return self.generalmain.verify(T, m, r, A)

    def verify_cormain(self, n: int, m: int, r: int, i: int) -> Verdict:
        return self.cormain.verify(n, m, r, i)

    def verify_doubesharp(self, n: int, m: int) -> Verdict:
        return self.doubesharp.verify(n, m)

    def verify_doublenew(self, n: int, m: int, host: Optional[Graph] = None) -> Verdict:
        return self.doublenew.verify(n, m, host)

    def hedetniemi_spot_check(self, G: Graph, H_pool: Optional[Sequence[NamedGraph]] = None) -> Verdict:
        return self.hedetniemi.verify(G, H_pool)

    def lovasz_report(self, G: Graph) -> Verdict:
        return self.lovasz.verify(G)

    def run(self, theorem_id: str, params: Dict[str, Any]) -> Verdict:
        """Dispatch by theorem id; params are the keyword arguments of the matching method"""
        runners: Dict[str, Callable[..., Verdict]] = {
            "main2": self.verify_main2,
            "generalmain": self.verify_generalmain,
            "cormain": self.verify_cormain,
            "doubesharp": self.verify_doubesharp,
            "doublenew": self.verify_doublenew,
            "hedetniemi": self.hedetniemi_spot_check,
            "lovasz": self.lovasz_report,
        }
        if theorem_id not in runners:
            raise ValidationError(f"Unknown theorem: {theorem_id}", details={"theorems": list(THEOREMS)})
        runner = runners[theorem_id]
        try:
            inspect.signature(runner).bind(**params)
        except TypeError as e:
            raise ValidationError(f"Bad parameters for {theorem_id}: {e}", details={"params": sorted(params)})
        return runner(**params)
