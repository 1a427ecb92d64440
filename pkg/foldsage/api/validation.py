from typing import Any, Dict, List, Optional

from ..errors import ValidationError
from ..graphs.graph import Graph
from .models import TheoremId

INT_PARAMS = {
    TheoremId.MAIN2: {"m"},
    TheoremId.GENERALMAIN: {"m", "r"},
    TheoremId.CORMAIN: {"n", "m", "r", "i"},
    TheoremId.DOUBESHARP: {"n", "m"},
    TheoremId.DOUBLENEW: {"n", "m"},
    TheoremId.HEDETNIEMI: set(),
    TheoremId.LOVASZ: set(),
}

GRAPH_PARAMS = {
    TheoremId.MAIN2: {"T"},
    TheoremId.GENERALMAIN: {"T"},
    TheoremId.CORMAIN: set(),
    TheoremId.DOUBESHARP: set(),
    TheoremId.DOUBLENEW: set(),
    TheoremId.HEDETNIEMI: {"G"},
    TheoremId.LOVASZ: {"G"},
}

OPTIONAL_PARAMS = {
    TheoremId.GENERALMAIN: {"A"},
    TheoremId.DOUBLENEW: {"host"},
    TheoremId.HEDETNIEMI: {"H_pool"},
}


class RequestValidator:
    """Turns JSON-level request payloads into typed pipeline arguments"""

    def validate_graph(self, payload: Any, name: str = "graph") -> Graph:
        if isinstance(payload, Graph):
            return payload
        try:
            return Graph.from_json(payload)
        except ValidationError as e:
            raise ValidationError(f"Invalid {name}: {e.message}", details=e.details)

    def validate_verify_params(self, theorem: TheoremId, params: Dict[str, Any]) -> Dict[str, Any]:
        required = INT_PARAMS[theorem] | GRAPH_PARAMS[theorem]
        if theorem == TheoremId.GENERALMAIN:
            required = required | {"A"}
        allowed = required | OPTIONAL_PARAMS.get(theorem, set())
        self._validate_required_fields(params, sorted(required))

        unknown = set(params) - allowed
        if unknown:
            raise ValidationError(
                f"Invalid parameters for {theorem.value}: {', '.join(sorted(unknown))}",
                details={"allowed": sorted(allowed)}
            )

        typed: Dict[str, Any] = {}
        for key in INT_PARAMS[theorem]:
            typed[key] = self._validate_int(key, params[key])
        for key in GRAPH_PARAMS[theorem]:
            typed[key] = self.validate_graph(params[key], key)
        if "A" in params:
            typed["A"] = self._validate_levels(params["A"])
        if params.get("host") is not None:
            typed["host"] = self.validate_graph(params["host"], "host")
        if params.get("H_pool") is not None:
            typed["H_pool"] = self._validate_pool(params["H_pool"])
        return typed

    def _validate_required_fields(self, params: Dict[str, Any], required: List[str]) -> None:
        missing = [field for field in required if params.get(field) is None]
        if missing:
            raise ValidationError(f"Missing required parameters: {', '.join(missing)}")

    def _validate_int(self, key: str, value: Any) -> int:
        if isinstance(value, bool):
            raise ValidationError(f"{key} must be an integer")
        try:
            return int(value)
        except (TypeError, ValueError):
            raise ValidationError(f"{key} must be an integer", details={key: value})

    def _validate_levels(self, value: Any) -> List[int]:
        if isinstance(value, str):
            value = [part for part in value.replace(",", " ").split() if part]
        if not isinstance(value, (list, tuple, set, frozenset)):
            raise ValidationError("A must be a list of levels")
        levels = sorted({self._validate_int("A", v) for v in value})
        if any(l < 0 for l in levels):
            raise ValidationError("Loop levels must be non-negative", details={"A": levels})
        return levels

    def _validate_pool(self, value: Any) -> Optional[List]:
        if isinstance(value, dict):
            items = list(value.items())
        elif isinstance(value, list):
            items = [item if isinstance(item, tuple) else (f"H{k}", item) for k, item in enumerate(value)]
        else:
            raise ValidationError("H_pool must be a list or an object of graphs")
        return [(str(name), self.validate_graph(payload, f"H_pool[{name}]")) for name, payload in items]
