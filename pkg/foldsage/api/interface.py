import hashlib
import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from .. import __version__
from ..cache import ResultCache
from ..coloring import chromatic_number, property_P
from ..complexes import hom_k2_complex, neighborhood_complex, reduced_homology
from ..errors import ValidationError, create_error_response, exit_code_for
from ..graphs.constructions import (
    PathSpec,
    categorical_product,
    complete_graph,
    cycle_graph,
    double_mycielskian,
    exponential_graph,
    generalized_mycielskian,
    path_with_loops,
)
from ..graphs.graph import Graph
from ..reductions import fold_core
from ..utils.config import Config
from ..verify import Verdict, Verifier
from .models import Command, ComplexKind, FoldSageResponse, PropertyPResult, ReduceResult, TheoremId, VerifyRequest
from .validation import RequestValidator

logger = logging.getLogger(__name__)

BUILDERS = ("complete", "cycle", "mycielskian", "double-mycielskian", "product", "exponential", "path")


def instance_hash(verdict: Verdict) -> str:
    blob = json.dumps(verdict.instance, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


class FoldSageAPI:
    """Main API interface for the FoldSage toolkit"""

    def __init__(self, config: Optional[Config] = None, use_cache: bool = True):
        self.config = config or Config()
        self.cache = ResultCache(self.config) if use_cache else None
        self.validator = RequestValidator()
        self.verifier = Verifier(self.config)
        logger.debug(f"FoldSage API ready (config {self.config.fingerprint()})")

    def _respond(self, operation: str, compute: Callable[[], Dict[str, Any]],
                 graph: Optional[Graph] = None, params: Optional[Dict[str, Any]] = None,
                 label_free: bool = False) -> FoldSageResponse:
        metadata: Dict[str, Any] = {
            'timestamp': datetime.now().isoformat(),
            'operation': operation,
            'version': __version__,
        }
        try:
            key = None
            data = None
            if self.cache is not None and graph is not None:
                key = self.cache.key(operation, graph, params, label_free)
                data = self.cache.lookup(key)
                metadata['cache'] = 'hit' if data is not None else 'miss'
            if data is None:
                data = compute()
                if key is not None:
                    self.cache.store(key, operation, data)
            return FoldSageResponse(success=True, data=data, metadata=metadata)

        except Exception as e:
            logger.error(f"{operation} failed: {str(e)}")
            error = create_error_response(e)
            metadata['exit_code'] = exit_code_for(e)
            if 'details' in error:
                metadata['details'] = error['details']
            return FoldSageResponse(
                success=False,
                error=error['error'],
                error_code=error['error_code'],
                metadata=metadata
            )

    def build(self, kind: str, **args: Any) -> FoldSageResponse:
        def compute() -> Dict[str, Any]:
            if kind == "complete":
                graph = complete_graph(int(args["n"]))
            elif kind == "cycle":
                graph = cycle_graph(int(args["n"]))
            elif kind == "mycielskian":
                graph = generalized_mycielskian(self.validator.validate_graph(args["graph"]), int(args.get("r", 2)))
            elif kind == "double-mycielskian":
                graph = double_mycielskian(int(args["n"]))
            elif kind == "product":
                graph = categorical_product(self.validator.validate_graph(args["G"], "G"),
                                            self.validator.validate_graph(args["H"], "H"))
            elif kind == "exponential":
                graph = exponential_graph(self.validator.validate_graph(args["H"], "H"),
                                          self.validator.validate_graph(args["G"], "G"),
                                          self.config.vertex_budget)
            elif kind == "path":
                graph = path_with_loops(PathSpec(int(args["r"]), frozenset(int(a) for a in args.get("loops", ()))))
            else:
                raise ValidationError(f"Unknown construction: {kind}", details={"constructions": list(BUILDERS)})
            return graph.to_json()

        return self._respond(f"build:{kind}", compute)

    def reduce(self, payload: Any) -> FoldSageResponse:
        graph = self.validator.validate_graph(payload)

        def compute() -> Dict[str, Any]:
            core, trace = fold_core(graph)
            return ReduceResult(
                core=core.to_json(),
                trace=trace.to_json(),
                removed=graph.vertex_count - core.vertex_count
            ).model_dump()

        return self._respond("reduce", compute, graph)

    def homology(self, payload: Any, complex_kind: ComplexKind = ComplexKind.NBHD) -> FoldSageResponse:
        graph = self.validator.validate_graph(payload)
        complex_kind = ComplexKind(complex_kind)

        def compute() -> Dict[str, Any]:
            if complex_kind == ComplexKind.HOMK2:
                K = hom_k2_complex(graph, self.config.face_budget)
            else:
                K = neighborhood_complex(graph)
            profile = reduced_homology(K, self.config.face_budget)
            data = profile.to_json()
            data["complex"] = complex_kind.value
            data["describe"] = profile.describe()
            return data

        return self._respond("homology", compute, graph, {"complex": complex_kind.value}, label_free=True)

    def chromatic(self, payload: Any) -> FoldSageResponse:
        graph = self.validator.validate_graph(payload)
        return self._respond(
            "chi",
            lambda: chromatic_number(graph, self.config.solver_budget_ms).to_json(),
            graph
        )

    def check_property(self, payload: Any) -> FoldSageResponse:
        graph = self.validator.validate_graph(payload)

        def compute() -> Dict[str, Any]:
            holds, witness = property_P(graph)
            labels = [graph.labels[v] for v in witness] if witness is not None else None
            return PropertyPResult(holds=holds, witness=labels).model_dump()

        return self._respond("check-p", compute, graph)

    def verify(self, request: VerifyRequest) -> FoldSageResponse:
        def compute() -> Dict[str, Any]:
            theorem = TheoremId(request.theorem)
            params = self.validator.validate_verify_params(theorem, request.params)
            verdict = self.verifier.run(theorem.value, params)
            data = verdict.to_json()
            data["report_path"] = str(self.write_report(verdict))
            return data

        response = self._respond("verify", compute)
        if response.success:
            response.metadata['exit_code'] = 0 if response.data["passed"] else 1
        return response

    def write_report(self, verdict: Verdict) -> Path:
        report_dir = Path(self.config.report_dir)
        report_dir.mkdir(parents=True, exist_ok=True)
        path = report_dir / f"{verdict.theorem_id}-{instance_hash(verdict)}.json"
        with open(path, "w", encoding="utf-8") as f:
            json.dump(verdict.to_json(), f, indent=2, sort_keys=True)
        logger.info(f"Verdict written to {path}")
        return path

    def get_capabilities(self) -> Dict:
        """Available constructions, complexes and theorems"""
        return {
            'commands': [command.value for command in Command],
            'constructions': list(BUILDERS),
            'complexes': [kind.value for kind in ComplexKind],
            'theorems': [theorem.value for theorem in TheoremId],
        }
