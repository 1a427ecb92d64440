import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

EXHAUSTIVE = "exhaustive"
SKIPPED = "skipped"


def sampled(seed: int, k: int) -> str:
    return f"sampled(seed={seed},k={k})"


class Check(BaseModel):
    name: str
    expected: Any = None
    observed: Any = None
    passed: bool = False
    strength: str = EXHAUSTIVE
    note: Optional[str] = None

    @property
    def skipped(self) -> bool:
        return self.strength == SKIPPED


class Verdict(BaseModel):
    theorem_id: str
    instance: Dict[str, Any] = Field(default_factory=dict)
    checks: List[Check] = Field(default_factory=list)
    report: Dict[str, Any] = Field(default_factory=dict)
    runtime_ms: int = 0
    seed: int = 0
    config_fingerprint: str = ""
    version: str = ""

    @property
    def passed(self) -> bool:
        """Conjunction over the checks that actually ran"""
        return all(check.passed for check in self.checks if not check.skipped)

    def check(self, name: str) -> Optional[Check]:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def failed_checks(self) -> List[str]:
        return [c.name for c in self.checks if not c.skipped and not c.passed]

    def to_json(self, include_runtime: bool = True) -> Dict[str, Any]:
        data = self.model_dump(mode="json")
        data["checks"] = sorted(data["checks"], key=lambda c: c["name"])
        data["passed"] = self.passed
        if not include_runtime:
            data.pop("runtime_ms")
        return data

    def canonical_json(self) -> str:
        """Serialized form without wall-clock fields; equal across identical runs"""
        return json.dumps(self.to_json(include_runtime=False), sort_keys=True)
