import logging
import random
from dataclasses import dataclass
from typing import Dict, Optional, Union

from ..errors import ValidationError
from ..graphs.graph import VertexMap
from ..graphs.implicit import ImplicitExponential, Vertex

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_LIMIT = 100_000
DEFAULT_CERTIFICATE_SAMPLES = 10_000

EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class CertificateResult:
    holds: bool
    strength: str
    checked: int
    counterexample: Optional[Vertex] = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> Dict:
        return {
            "holds": self.holds,
            "strength": self.strength,
            "checked": self.checked,
            "counterexample": list(self.counterexample) if self.counterexample is not None else None,
        }


def sampled_strength(seed: int, k: int) -> str:
    return f"sampled(seed={seed},k={k})"


def _as_vertex(big: ImplicitExponential, f: Union[Vertex, VertexMap]) -> Vertex:
    if isinstance(f, VertexMap):
        vertex = big.from_vertex_map(f)
        if vertex is None:
            raise ValidationError("Map is not a vertex of the implicit graph", details={"map": f.to_json()})
        return vertex
    if not big.contains(tuple(f)):
        raise ValidationError("Vertex is not a member of the implicit graph", details={"vertex": list(f)})
    return tuple(f)


def verify_fold_certificate(
    big: ImplicitExponential,
    f: Union[Vertex, VertexMap],
    f_tilde: Union[Vertex, VertexMap],
    enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
    samples: int = DEFAULT_CERTIFICATE_SAMPLES,
    seed: int = 0,
) -> CertificateResult:
    """Check N(f) within N(f_tilde) in an implicit exponential graph.

    The neighborhood of f is a product of per-part allowed value sets. Without
    membership filters the containment holds iff some allowed set of f is
    empty or every allowed set of f lies inside the matching set of f_tilde,
    which is decided exactly without listing neighbors. With filters the
    neighbors are listed one by one, or sampled above ``enumeration_limit``.
    """
    f = _as_vertex(big, f)
    f_tilde = _as_vertex(big, f_tilde)
    if f == f_tilde:
        return CertificateResult(True, EXHAUSTIVE, 0)

    masks = big.allowed_masks(f)
    if not all(masks):
        return CertificateResult(True, EXHAUSTIVE, 0)
    tilde_masks = big.allowed_masks(f_tilde)
    inside = all(not mask & ~other for mask, other in zip(masks, tilde_masks))

    if not big.filters:
        if inside:
            return CertificateResult(True, EXHAUSTIVE, len(masks))
        # Any g with one value outside the f_tilde set and the rest free is a neighbor of f only.
        g = [(mask & -mask).bit_length() - 1 for mask in masks]
        for Q, (mask, other) in enumerate(zip(masks, tilde_masks)):
            extra = mask & ~other
            if extra:
                g[Q] = (extra & -extra).bit_length() - 1
                break
        counterexample = tuple(g)
        assert big.adjacent(f, counterexample) and not big.adjacent(f_tilde, counterexample)
        return CertificateResult(False, EXHAUSTIVE, len(masks), counterexample)

    if inside:
        # Product containment implies containment of the filtered neighborhoods too.
        return CertificateResult(True, EXHAUSTIVE, len(masks))

    count = big.neighbor_count(f)
    if count <= enumeration_limit:
        checked = 0
        for g in big.neighbors(f):
            checked += 1
            if not big.adjacent(f_tilde, g):
                return CertificateResult(False, EXHAUSTIVE, checked, g)
        return CertificateResult(True, EXHAUSTIVE, checked)

    rng = random.Random(seed)
    for k in range(samples):
        g = big.random_neighbor(f, rng)
        if g is None:
            break
        if not big.adjacent(f_tilde, g):
            return CertificateResult(False, sampled_strength(seed, k + 1), k + 1, g)
    logger.debug(f"Sampled {samples} of {count} neighbors for a fold certificate")
    return CertificateResult(True, sampled_strength(seed, samples), samples)
