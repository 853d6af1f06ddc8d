from typing import Any, Iterable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# ===== SCHEMA - PYDANTIC =====

class MultiIndex(BaseModel):
    """
    Sparse multi-index k in N_0^s. Coordinates are 1-based; coordinates absent
    from `entries` have exponent 0. Immutable and hashable.
    """
    model_config = ConfigDict(frozen=True)

    dim: int = Field(..., ge=1, description="Dimension s")
    entries: tuple[tuple[int, int], ...] = Field((), description="Sorted (coordinate, exponent) pairs, exponents >= 1")

    @field_validator('entries', mode='before')
    @classmethod
    def normalize_entries(cls, v: Any) -> tuple[tuple[int, int], ...]:
        """
        Accept a mapping or pairs, drop zero exponents and sort by coordinate.
        """
        pairs = v.items() if isinstance(v, dict) else v
        cleaned = {}
        for j, k in pairs:
            j, k = int(j), int(k)
            if k < 0:
                raise ValueError(f'Exponent must be non-negative, got k_{j}={k}')
            if j in cleaned:
                raise ValueError(f'Coordinate {j} listed twice')
            if k > 0:
                cleaned[j] = k
        return tuple(sorted(cleaned.items()))

    @model_validator(mode='after')
    def check_coordinates(self) -> 'MultiIndex':
        for j, _ in self.entries:
            if not 1 <= j <= self.dim:
                raise ValueError(f'Coordinate {j} outside 1..{self.dim}')
        return self

    @classmethod
    def from_dense(cls, exponents: Iterable[int]) -> 'MultiIndex':
        exponents = [int(k) for k in exponents]
        return cls(dim=len(exponents), entries=[(j + 1, k) for j, k in enumerate(exponents)])

    @classmethod
    def zero(cls, dim: int) -> 'MultiIndex':
        return cls(dim=dim)

    @classmethod
    def unit(cls, dim: int, j: int) -> 'MultiIndex':
        return cls(dim=dim, entries=[(j, 1)])

    def dense(self) -> list[int]:
        out = [0] * self.dim
        for j, k in self.entries:
            out[j - 1] = k
        return out

    def __getitem__(self, j: int) -> int:
        """Exponent k_j of 1-based coordinate j."""
        for jj, k in self.entries:
            if jj == j:
                return k
        return 0

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def sort_key(self) -> tuple:
        """
        Graded lexicographic key: total degree first, then the exponent with the
        larger leading coordinate comes first, so (1,0) precedes (0,1).
        """
        return (self.degree, tuple(-k for k in self.dense()))

    def __lt__(self, other: 'MultiIndex') -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return '(' + ','.join(str(k) for k in self.dense()) + ')'


class QuadratureRule(BaseModel):
    """
    m-point Gauss-Hermite rule for the standard Gaussian probability measure.
    """
    model_config = ConfigDict(frozen=True)

    nodes: tuple[float, ...] = Field(..., description="Ascending nodes")
    weights: tuple[float, ...] = Field(..., description="Positive weights summing to one")

    @model_validator(mode='after')
    def check_rule(self) -> 'QuadratureRule':
        if len(self.nodes) != len(self.weights) or not self.nodes:
            raise ValueError('nodes and weights must be non-empty and of equal length')
        if any(w <= 0 for w in self.weights):
            raise ValueError('weights must be positive')
        if abs(sum(self.weights) - 1.0) > 1e-12:
            raise ValueError(f'weights sum to {sum(self.weights)}, expected 1')
        return self

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def node_array(self) -> np.ndarray:
        return np.asarray(self.nodes, dtype=float)

    @property
    def weight_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)
