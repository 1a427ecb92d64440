from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from ..graphs.graph import Graph, VertexMap
from ..graphs.homomorphisms import iter_homomorphisms


@dataclass(frozen=True)
class Constant:
    color: int

    def to_json(self) -> Dict:
        return {"constant": self.color}

    def label(self) -> str:
        return f"c{self.color + 1}"


@dataclass(frozen=True)
class Assignment:
    """A block that is a graph homomorphism into K_m"""

    mapping: VertexMap

    def to_json(self) -> Dict:
        return {"assignment": list(self.mapping.table)}

    def label(self) -> str:
        return "h" + "".join(str(c + 1) for c in self.mapping.table)


BlockTag = Union[Constant, Assignment]


@dataclass(frozen=True)
class LeveledMap:
    base_size: int
    colors: int
    blocks: Tuple[BlockTag, ...]
    apex_colors: Tuple[int, ...]

    def block_is_constant(self, index: int) -> bool:
        return isinstance(self.blocks[index], Constant)

    def all_blocks_constant(self) -> bool:
        return all(isinstance(tag, Constant) for tag in self.blocks)

    def block_colors(self, index: int) -> Tuple[int, ...]:
        tag = self.blocks[index]
        if isinstance(tag, Constant):
            return (tag.color,) * self.base_size
        return tag.mapping.table

    def label(self) -> str:
        blocks = "|".join(tag.label() for tag in self.blocks)
        apex = ",".join(str(c + 1) for c in self.apex_colors)
        return f"<{blocks};{apex}>"

    def to_json(self) -> Dict:
        return {
            "base_size": self.base_size,
            "colors": self.colors,
            "blocks": [tag.to_json() for tag in self.blocks],
            "apex_colors": list(self.apex_colors),
        }


def block_values(T: Graph, m: int) -> Tuple[List[Tuple[int, ...]], List[BlockTag]]:
    """Constant maps first, then homomorphisms T -> K_m in lexicographic order"""
    from ..graphs.constructions import complete_graph

    size = T.vertex_count
    values: List[Tuple[int, ...]] = [(c,) * size for c in range(m)]
    tags: List[BlockTag] = [Constant(c) for c in range(m)]
    for mapping in iter_homomorphisms(T, complete_graph(m)):
        if mapping.is_constant():
            continue
        values.append(mapping.table)
        tags.append(Assignment(mapping))
    return values, tags
