import heapq
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..errors import ConstructionError, ValidationError
from ..graphs.graph import Graph, first_bit, iter_bits

logger = logging.getLogger(__name__)

FOLD = "fold"
PRUNE = "prune"


@dataclass(frozen=True)
class FoldStep:
    op: str
    removed: str
    witness: Optional[str] = None

    def to_json(self) -> Dict:
        return {"op": self.op, "removed": self.removed, "witness": self.witness}


@dataclass
class FoldTrace:
    """Ordered fold/prune steps; each fold certifies N(removed) within N(witness)"""

    steps: List[FoldStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def append(self, op: str, removed: str, witness: Optional[str] = None) -> None:
        self.steps.append(FoldStep(op, removed, witness))

    def extend(self, other: "FoldTrace") -> None:
        self.steps.extend(other.steps)

    def to_json(self) -> List[Dict]:
        return [step.to_json() for step in self.steps]

    @classmethod
    def from_json(cls, data: List[Dict]) -> "FoldTrace":
        trace = cls()
        for item in data:
            if item.get("op") not in (FOLD, PRUNE) or "removed" not in item:
                raise ValidationError("Malformed fold trace entry", details={"entry": item})
            trace.append(item["op"], str(item["removed"]), item.get("witness"))
        return trace

    def replay(self, G: Graph) -> Graph:
        """Re-check every step against G and return the reduced graph"""
        alive = (1 << G.vertex_count) - 1
        rows = G.rows
        for number, step in enumerate(self.steps):
            u = G.index_of(step.removed)
            if not (alive >> u) & 1:
                raise ConstructionError("Trace removes a vertex twice", details={"step": number})
            n_u = rows[u] & alive
            if step.op == PRUNE:
                if n_u:
                    raise ConstructionError("Pruned vertex is not isolated", details={"step": number})
            else:
                if step.witness is None:
                    raise ConstructionError("Fold step without witness", details={"step": number})
                v = G.index_of(step.witness)
                if v == u or not (alive >> v) & 1:
                    raise ConstructionError("Fold witness is not a live vertex", details={"step": number})
                if n_u & ~rows[v]:
                    raise ConstructionError(
                        "Fold step does not satisfy N(removed) within N(witness)",
                        details={"step": number, "removed": step.removed, "witness": step.witness}
                    )
            alive &= ~(1 << u)
        return G.induced_subgraph(list(iter_bits(alive)))


def _witness(rows, alive: int, u: int) -> Optional[int]:
    n_u = rows[u] & alive
    if not n_u:
        return first_bit(alive & ~(1 << u))
    x = first_bit(n_u)
    # Any witness v must contain x in N(v), i.e. v must be a neighbor of x.
    for v in iter_bits(rows[x] & alive & ~(1 << u)):
        if not n_u & ~rows[v]:
            return v
    return None


def find_fold(G: Graph) -> Optional[Tuple[int, int]]:
    """Smallest u, then smallest v != u, with N(u) contained in N(v)"""
    alive = (1 << G.vertex_count) - 1
    for u in range(G.vertex_count):
        v = _witness(G.rows, alive, u)
        if v is not None:
            return u, v
    return None


def fold_core(G: Graph) -> Tuple[Graph, FoldTrace]:
    """Fold until no fold exists, smallest removed vertex first"""
    rows = G.rows
    alive = (1 << G.vertex_count) - 1
    trace = FoldTrace()
    # Removing u only shrinks the neighborhoods of u's neighbors, so a vertex
    # that failed to fold needs another look only when it lost a neighbor.
    pending = list(range(G.vertex_count))
    queued = set(pending)
    while pending:
        u = heapq.heappop(pending)
        queued.discard(u)
        if not (alive >> u) & 1:
            continue
        v = _witness(rows, alive, u)
        if v is None:
            continue
        trace.append(FOLD, G.labels[u], G.labels[v])
        alive &= ~(1 << u)
        for w in iter_bits(rows[u] & alive):
            if w not in queued:
                heapq.heappush(pending, w)
                queued.add(w)
    core = G.induced_subgraph(list(iter_bits(alive)))
    logger.info(f"Folded {G.vertex_count} vertices down to {core.vertex_count} in {len(trace)} steps")
    return core, trace


def prune_isolated(G: Graph) -> Tuple[Graph, FoldTrace]:
    """Drop every vertex with an empty neighborhood"""
    trace = FoldTrace()
    keep = []
    for v in range(G.vertex_count):
        if G.neighbor_mask(v):
            keep.append(v)
        else:
            trace.append(PRUNE, G.labels[v])
    return G.induced_subgraph(keep), trace


def lift_coloring(G: Graph, trace: FoldTrace, core_colors: Dict[str, int]) -> Dict[str, int]:
    """Extend a coloring of the reduced graph back through the trace"""
    colors = dict(core_colors)
    for step in reversed(trace.steps):
        if step.op == PRUNE:
            colors[step.removed] = 0
        else:
            colors[step.removed] = colors[step.witness]
    missing = [label for label in G.labels if label not in colors]
    if missing:
        raise ConstructionError("Lifted coloring misses vertices", details={"missing": missing[:10]})
    return colors
