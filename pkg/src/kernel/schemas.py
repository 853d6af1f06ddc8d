import math
from typing import Any, Iterator, Mapping, Sequence

from pydantic import BaseModel, ConfigDict, Field

from src.config import COEFFICIENT_DROP_THRESHOLD
from src.errors import ContractError
from src.hermite.schemas import MultiIndex

# ===== SERIALIZED FORMS - PYDANTIC =====

class CoefficientEntry(BaseModel):
    k: list[int] = Field(..., description="Dense multi-index (k_1, ..., k_s)")
    v: float = Field(..., description="Hermite coefficient")


class CoefficientPayload(BaseModel):
    """
    JSON form of a CoefficientFunction: {"dim": s, "coeffs": [{"k": [...], "v": x}, ...]}
    """
    dim: int = Field(..., ge=1)
    coeffs: list[CoefficientEntry] = Field(default_factory=list)


class KernelEvaluation(BaseModel):
    """
    Truncated kernel value K_r(x, y) with its truncation metadata.
    """
    model_config = ConfigDict(frozen=True)

    value: float
    tol: float
    cutoffs: list[int] = Field(..., description="Per-coordinate truncation degrees K_j")
    tail_bound: float = Field(..., description="Upper bound on the neglected tail")
    bound_met: bool = Field(..., description="tail_bound <= tol")
    out_of_range: bool = Field(False, description="Some coordinate lies outside the validated range")

    @property
    def flagged(self) -> bool:
        return self.out_of_range or not self.bound_met


# ===== COEFFICIENT FUNCTION =====

class CoefficientFunction:
    """
    A function on R^s given by finitely many Hermite coefficients f_hat(k).
    Immutable; absent multi-indices have coefficient 0.
    """

    __slots__ = ('_dim', '_coeffs')

    def __init__(self, dim: int, coeffs: Mapping[MultiIndex | Sequence[int], float] | None = None):
        if dim < 1:
            raise ContractError(f'dim must be >= 1, got {dim}')
        cleaned: dict[MultiIndex, float] = {}
        for key, value in (coeffs or {}).items():
            k = key if isinstance(key, MultiIndex) else MultiIndex.from_dense(key)
            if k.dim != dim:
                raise ContractError(f'Coefficient key {k} has dimension {k.dim}, expected {dim}')
            value = float(value)
            if not math.isfinite(value):
                raise ContractError(f'Coefficient for {k} is not finite: {value}')
            if abs(value) < COEFFICIENT_DROP_THRESHOLD:
                continue
            cleaned[k] = value
        self._dim = dim
        self._coeffs = dict(sorted(cleaned.items(), key=lambda kv: kv[0].sort_key()))

    @property
    def dim(self) -> int:
        return self._dim

    def __getitem__(self, k: MultiIndex) -> float:
        return self._coeffs.get(k, 0.0)

    def __contains__(self, k: MultiIndex) -> bool:
        return k in self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoefficientFunction):
            return NotImplemented
        return self._dim == other._dim and self._coeffs == other._coeffs

    def __repr__(self) -> str:
        terms = ', '.join(f'{k}: {v:.6g}' for k, v in self._coeffs.items())
        return f'CoefficientFunction(dim={self._dim}, {{{terms}}})'

    def to_dict(self) -> dict[str, Any]:
        """
        Convert to the JSON-ready payload form.
        """
        return CoefficientPayload(
            dim=self._dim,
            coeffs=[CoefficientEntry(k=k.dense(), v=v) for k, v in self._coeffs.items()],
        ).model_dump()

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'CoefficientFunction':
        payload = CoefficientPayload.model_validate(data)
        coeffs: dict[MultiIndex, float] = {}
        for entry in payload.coeffs:
            if len(entry.k) != payload.dim:
                raise ContractError(f'Entry {entry.k} does not have dimension {payload.dim}')
            coeffs[MultiIndex.from_dense(entry.k)] = coeffs.get(MultiIndex.from_dense(entry.k), 0.0) + entry.v
        return cls(payload.dim, coeffs)
