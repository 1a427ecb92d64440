import os
import json
import hashlib
import logging
from pathlib import Path
from typing import Optional, Dict, Any

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator, ValidationError as PydanticValidationError

from ..errors import ConfigurationError

logger = logging.getLogger(__name__)

ENV_PREFIX = "FOLDSAGE_"

# Fields that change computed results; everything else is plumbing.
_RESULT_FIELDS = (
    "vertex_budget",
    "face_budget",
    "solver_budget_ms",
    "seed",
    "certificate_samples",
    "edge_samples",
    "full_check_vertices",
    "iso_max_vertices",
    "canonical_max_vertices",
    "odd_hole_max_vertices",
)


class Config(BaseModel):
    vertex_budget: int = Field(default=300_000)
    face_budget: int = Field(default=2_000_000)
    solver_budget_ms: int = Field(default=120_000)
    seed: int = Field(default=20240611)
    cache_dir: Path = Field(default=Path(".foldsage") / "cache")
    report_dir: Path = Field(default=Path(".foldsage") / "reports")
    certificate_samples: int = Field(default=10_000)
    edge_samples: int = Field(default=1_000_000)
    full_check_vertices: int = Field(default=4096)
    iso_max_vertices: int = Field(default=16)
    canonical_max_vertices: int = Field(default=10)
    odd_hole_max_vertices: int = Field(default=10)
    log_level: str = Field(default="INFO")

    @field_validator(
        "vertex_budget", "face_budget", "solver_budget_ms", "certificate_samples",
        "edge_samples", "full_check_vertices", "iso_max_vertices",
        "canonical_max_vertices", "odd_hole_max_vertices"
    )
    @classmethod
    def _positive(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("must be positive")
        return value

    @field_validator("seed")
    @classmethod
    def _seed_range(cls, value: int) -> int:
        if not -(2 ** 63) <= value < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        return value

    def fingerprint(self) -> str:
        """Hash of every field that influences results"""
        payload = {name: getattr(self, name) for name in _RESULT_FIELDS}
        blob = json.dumps(payload, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def with_overrides(self, **overrides: Any) -> "Config":
        values = self.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return build_config(values)


def build_config(values: Dict[str, Any]) -> Config:
    try:
        return Config(**values)
    except PydanticValidationError as e:
        raise ConfigurationError(
            "Invalid configuration",
            details={"errors": [
                {"field": ".".join(str(p) for p in err["loc"]), "message": err["msg"]}
                for err in e.errors()
            ]}
        )


def load_config(env_path: Optional[Path] = None, **overrides: Any) -> Config:
    """Build the configuration from .env, FOLDSAGE_* variables and overrides"""
    if env_path is None:
        env_path = Path.cwd() / '.env'
    if env_path.exists():
        load_dotenv(env_path)
        logger.info(f".env file loaded from {env_path}")

    values: Dict[str, Any] = {}
    for name in Config.model_fields:
        raw = os.getenv(ENV_PREFIX + name.upper())
        if raw is not None:
            values[name] = raw

    values.update({k: v for k, v in overrides.items() if v is not None})
    config = build_config(values)
    logger.debug(f"Configuration fingerprint {config.fingerprint()}")
    return config
