from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from ..errors import ConstructionError, LoopedGraphError, ValidationError
from ..graphs.graph import Graph

EXHAUSTIVE = "exhaustive"


def require_loopless(G: Graph, operation: str) -> None:
    loops = G.loops()
    if loops:
        raise LoopedGraphError(
            f"{operation} is undefined on graphs with loops",
            details={"loops": [G.labels[v] for v in loops[:10]]}
        )


def find_conflict(G: Graph, colors: Sequence[int]) -> Optional[Tuple[int, int]]:
    """First edge (u, v), u <= v, whose endpoints share a color; loops always conflict"""
    if len(colors) != G.vertex_count:
        raise ValidationError("Coloring does not cover every vertex")
    for u, v in G.ordered_edges():
        if u <= v and colors[u] == colors[v]:
            return u, v
    return None


@dataclass
class Coloring:
    k: int
    assignment: Dict[str, int]
    verified: str = EXHAUSTIVE
    graph_key: Optional[str] = None

    @classmethod
    def from_colors(cls, G: Graph, colors: Sequence[int], k: Optional[int] = None,
                    graph_key: Optional[str] = None) -> "Coloring":
        used = max(colors) + 1 if len(colors) else 0
        return cls(k if k is not None else used,
                   {label: int(c) for label, c in zip(G.labels, colors)},
                   EXHAUSTIVE, graph_key)

    def colors_for(self, G: Graph) -> list:
        try:
            return [self.assignment[label] for label in G.labels]
        except KeyError as e:
            raise ValidationError(f"Coloring misses vertex {e}")

    def validate(self, G: Graph) -> None:
        """Independent edge scan; raises on any monochromatic edge"""
        colors = self.colors_for(G)
        if any(c < 0 or c >= self.k for c in colors):
            raise ConstructionError("Coloring uses a color outside [k]", details={"k": self.k})
        conflict = find_conflict(G, colors)
        if conflict is not None:
            u, v = conflict
            raise ConstructionError(
                "Coloring is not proper",
                details={"edge": [G.labels[u], G.labels[v]], "color": colors[u]}
            )

    def is_proper(self, G: Graph) -> bool:
        try:
            self.validate(G)
        except ConstructionError:
            return False
        return True

    def to_json(self) -> Dict:
        return {"k": self.k, "assignment": dict(self.assignment), "verified": self.verified}
