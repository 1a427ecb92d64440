"""Content-addressed JSON result cache.

Keys hash the library version, the operation, a digest of the input graph, the
operation parameters and the configuration fingerprint, so a change in any of
them is a miss. Results that depend only on the isomorphism class (homology
profiles) are keyed on canonical_key, so relabeled inputs share an entry.
Results that name vertices (cores, traces, colorings, witnesses) are keyed on
the labeled digest: a hit for an isomorphic copy would carry the wrong labels.
Files are written to a temporary name and renamed.
"""
import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import __version__
from .errors import CacheError
from .graphs.graph import Graph
from .graphs.isomorphism import canonical_key, labeled_digest
from .utils.config import Config

logger = logging.getLogger(__name__)


class ResultCache:

    def __init__(self, config: Config):
        self.config = config
        self.root = Path(config.cache_dir)

    def graph_digest(self, graph: Graph, label_free: bool = False) -> str:
        if label_free:
            return "iso:" + canonical_key(graph, self.config.canonical_max_vertices).hex()
        return "labeled:" + labeled_digest(graph)

    def key(
        self,
        operation: str,
        graph: Optional[Graph] = None,
        params: Optional[Dict[str, Any]] = None,
        label_free: bool = False,
    ) -> str:
        payload = {
            "version": __version__,
            "operation": operation,
            "graph": self.graph_digest(graph, label_free) if graph is not None else None,
            "params": params or {},
            "config": self.config.fingerprint(),
        }
        blob = json.dumps(payload, sort_keys=True, default=str).encode()
        return hashlib.sha256(blob).hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def lookup(self, key: str) -> Optional[Any]:
        path = self._path(key)
        if not path.exists():
            logger.debug(f"Cache miss {key[:12]}")
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                entry = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Unreadable cache entry {path}: {e}")
            raise CacheError(
                f"Unreadable cache entry: {path}",
                details={"reason": str(e), "path": str(path)}
            )
        logger.info(f"Cache hit for {entry.get('operation')} ({key[:12]})")
        return entry.get("value")

    def store(self, key: str, operation: str, value: Any) -> Path:
        path = self._path(key)
        entry = {"key": key, "operation": operation, "version": __version__, "value": value}
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                json.dump(entry, f, sort_keys=True)
            os.replace(tmp, path)
        except OSError as e:
            logger.error(f"Cannot write cache entry {path}: {e}")
            raise CacheError(f"Cannot write cache entry: {path}", details={"reason": str(e)})
        return path

    def _describe(self, path: Path) -> Dict[str, Any]:
        try:
            size = path.stat().st_size
            with open(path, "r", encoding="utf-8") as f:
                entry = json.load(f)
            return {
                "key": entry.get("key", path.stem),
                "operation": entry.get("operation"),
                "size": size,
            }
        except (OSError, json.JSONDecodeError, AttributeError) as e:
            # listed rather than raised so that `cache clear` stays reachable
            logger.warning(f"Corrupt cache entry {path}: {e}")
            return {"key": path.stem, "operation": None, "corrupt": True, "path": str(path)}

    def entries(self) -> List[Dict[str, Any]]:
        if not self.root.exists():
            return []
        try:
            paths = sorted(self.root.glob("*/*.json"))
        except OSError as e:
            raise CacheError("Cannot list the cache", details={"reason": str(e)})
        return [self._describe(path) for path in paths]

    def clear(self) -> int:
        removed = 0
        if not self.root.exists():
            return removed
        try:
            for path in self.root.glob("*/*.json"):
                path.unlink()
                removed += 1
        except OSError as e:
            raise CacheError("Cannot clear the cache", details={"reason": str(e)})
        logger.info(f"Removed {removed} cache entries from {self.root}")
        return removed
