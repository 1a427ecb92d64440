import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator
from scipy import sparse

from ..errors import ValidationError
from .simplicial import DEFAULT_FACE_BUDGET, Face, SimplicialComplex

logger = logging.getLogger(__name__)

# int64 products of two entries below this stay exact
_SAFE_ENTRY = 1 << 31


class HomologyGroup(BaseModel):
    dim: int = Field(..., ge=0)
    rank: int = Field(0, ge=0)
    torsion: List[int] = Field(default_factory=list)

    @field_validator("torsion")
    @classmethod
    def _torsion_factors(cls, value: List[int]) -> List[int]:
        if any(t < 2 for t in value):
            raise ValueError("torsion coefficients must be at least 2")
        return sorted(value)

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion


class HomologyProfile(BaseModel):
    """Reduced integer homology; ``groups`` lists the nontrivial dimensions only"""

    reduced: bool = True
    dimension: int = -1
    groups: List[HomologyGroup] = Field(default_factory=list)

    def group(self, d: int) -> HomologyGroup:
        for g in self.groups:
            if g.dim == d:
                return g
        return HomologyGroup(dim=d)

    def betti(self) -> List[int]:
        return [self.group(d).rank for d in range(max(self.dimension, 0) + 1)]

    def is_trivial(self) -> bool:
        return not self.groups

    def same_homology(self, other: "HomologyProfile") -> bool:
        return self.groups == other.groups

    def reduced_euler(self) -> int:
        return sum((-1) ** g.dim * g.rank for g in self.groups)

    def to_json(self) -> Dict:
        return {"reduced": True, "groups": [g.model_dump() for g in self.groups]}

    def describe(self) -> str:
        if not self.groups:
            return "trivial"
        parts = []
        for g in self.groups:
            summands = (["Z"] if g.rank == 1 else [f"Z^{g.rank}"] if g.rank else []) + [f"Z/{t}" for t in g.torsion]
            parts.append(f"H{g.dim}=" + "+".join(summands))
        return ", ".join(parts)


@dataclass(frozen=True)
class SmithForm:
    factors: Tuple[int, ...]
    rank: int

    @property
    def torsion(self) -> List[int]:
        return [d for d in self.factors if d > 1]


def boundary_matrices(K: SimplicialComplex, budget: int = DEFAULT_FACE_BUDGET) -> List[sparse.csr_matrix]:
    """[d_0, d_1, ..., d_dim]; d_0 is the augmentation C_0 -> Z"""
    faces = K.faces(budget)
    dims = K.dimension
    if dims < 0:
        return []
    index: Dict[int, Dict[Face, int]] = {
        d: {face: i for i, face in enumerate(faces[d])} for d in range(dims + 1)
    }
    matrices = [sparse.csr_matrix(np.ones((1, len(faces[0])), dtype=np.int64))]
    for d in range(1, dims + 1):
        rows, cols, vals = [], [], []
        lower = index[d - 1]
        for j, face in enumerate(faces[d]):
            for k in range(len(face)):
                rows.append(lower[face[:k] + face[k + 1:]])
                cols.append(j)
                vals.append(-1 if k % 2 else 1)
        matrices.append(sparse.csr_matrix(
            (np.array(vals, dtype=np.int64), (rows, cols)),
            shape=(len(faces[d - 1]), len(faces[d]))
        ))
    return matrices


def _to_rows(M) -> Tuple[List[Dict[int, int]], int]:
    if sparse.issparse(M):
        coo = sparse.coo_matrix(M)
        rows: List[Dict[int, int]] = [dict() for _ in range(coo.shape[0])]
        for i, j, v in zip(coo.row, coo.col, coo.data):
            if v:
                rows[int(i)][int(j)] = rows[int(i)].get(int(j), 0) + int(v)
        return rows, coo.shape[1]
    dense = np.asarray(M, dtype=object)
    if dense.ndim != 2:
        raise ValidationError("smith_normal_form needs a 2-D matrix")
    rows = [{j: int(v) for j, v in enumerate(row) if v} for row in dense]
    return rows, dense.shape[1]


def _eliminate_units(rows: List[Dict[int, int]]) -> int:
    """Pivot on +-1 entries in place; returns the number of pivots taken"""
    cols: Dict[int, set] = {}
    for i, row in enumerate(rows):
        for j in row:
            cols.setdefault(j, set()).add(i)
    alive = set(i for i, row in enumerate(rows) if row)
    pivots = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(alive):
            if r not in alive:
                continue
            row = rows[r]
            units = [j for j, v in row.items() if v in (1, -1)]
            if not units:
                continue
            c = min(units, key=lambda j: (len(cols[j]), j))
            sign = row[c]
            for s in sorted(cols[c] - {r}):
                other = rows[s]
                factor = other[c] * sign
                for j, v in row.items():
                    updated = other.get(j, 0) - factor * v
                    if updated:
                        if j not in other:
                            cols[j].add(s)
                        other[j] = updated
                    elif j in other:
                        del other[j]
                        cols[j].discard(s)
                if not other:
                    alive.discard(s)
            for j in row:
                cols[j].discard(r)
            rows[r] = {}
            alive.discard(r)
            pivots += 1
            progress = True
    return pivots


def _widen(A: np.ndarray) -> np.ndarray:
    if A.dtype != object and A.size and np.abs(A).max() >= _SAFE_ENTRY:
        logger.debug("Switching Smith reduction to arbitrary precision")
        return A.astype(object)
    return A


def _dense_smith(A: np.ndarray) -> List[int]:
    """Diagonal of the Smith form of A by minimal-absolute-value pivoting"""
    factors: List[int] = []
    while A.shape[0] and A.shape[1] and A.any():
        A = _widen(A)
        nz = np.argwhere(A != 0)
        magnitudes = np.array([abs(A[i, j]) for i, j in nz])
        i, j = nz[int(np.argmin(magnitudes))]
        while True:
            A = _widen(A)
            p = A[i, j]
            col_q = A[:, j] // p
            col_q[i] = 0
            A = A - np.outer(col_q, A[i, :])
            A = _widen(A)
            row_q = A[i, :] // p
            row_q[j] = 0
            A = A - np.outer(A[:, j], row_q)
            rest_col = [k for k in range(A.shape[0]) if k != i and A[k, j] != 0]
            rest_row = [k for k in range(A.shape[1]) if k != j and A[i, k] != 0]
            if rest_col or rest_row:
                candidates = [(abs(A[k, j]), k, j) for k in rest_col] + [(abs(A[i, k]), i, k) for k in rest_row]
                _, i, j = min(candidates)
                continue
            bad = np.argwhere(A % p != 0)
            if len(bad):
                A[i, :] = A[i, :] + A[bad[0][0], :]
                continue
            break
        factors.append(abs(int(A[i, j])))
        A = np.delete(np.delete(A, i, axis=0), j, axis=1)
    return factors


def smith_normal_form(M) -> SmithForm:
    """Invariant factors d1 | d2 | ... and rank of an integer matrix"""
    rows, _ = _to_rows(M)
    units = _eliminate_units(rows)
    remaining = [row for row in rows if row]
    factors: List[int] = [1] * units
    if remaining:
        columns = sorted({j for row in remaining for j in row})
        position = {j: k for k, j in enumerate(columns)}
        fits = all(abs(v) < _SAFE_ENTRY for row in remaining for v in row.values())
        A = np.zeros((len(remaining), len(columns)), dtype=np.int64 if fits else object)
        for r, row in enumerate(remaining):
            for j, v in row.items():
                A[r, position[j]] = v
        factors.extend(sorted(_dense_smith(A)))
    return SmithForm(tuple(factors), len(factors))


def reduced_homology(K: SimplicialComplex, budget: int = DEFAULT_FACE_BUDGET) -> HomologyProfile:
    """H~_d(K; Z) from the Smith forms of the boundary maps, augmentation included"""
    matrices = boundary_matrices(K, budget)
    if not matrices:
        return HomologyProfile(dimension=-1)
    forms = [smith_normal_form(M) for M in matrices]
    counts = [M.shape[1] for M in matrices]
    groups = []
    for d in range(len(matrices)):
        upper: Optional[SmithForm] = forms[d + 1] if d + 1 < len(forms) else None
        rank = counts[d] - forms[d].rank - (upper.rank if upper else 0)
        torsion = upper.torsion if upper else []
        group = HomologyGroup(dim=d, rank=rank, torsion=torsion)
        if not group.is_trivial():
            groups.append(group)
    profile = HomologyProfile(dimension=K.dimension, groups=groups)
    logger.debug(f"Reduced homology of {K!r}: {profile.describe()}")
    return profile


def is_sphere_profile(profile: HomologyProfile, d: int) -> bool:
    """True iff the profile is that of the d-sphere (d = 0: two points)"""
    return profile.groups == [HomologyGroup(dim=d, rank=1)]


def chain_complex_is_valid(matrices: Sequence[sparse.csr_matrix]) -> bool:
    """d_{k} d_{k+1} = 0 for every consecutive pair"""
    for lower, upper in zip(matrices, matrices[1:]):
        if (lower @ upper).count_nonzero():
            return False
    return True
