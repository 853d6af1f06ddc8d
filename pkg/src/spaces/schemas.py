import math
import sys
from abc import ABC, abstractmethod
from functools import cached_property
from typing import Annotated, Any, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.hermite.schemas import MultiIndex

# ===== WEIGHT SEQUENCES =====

class BaseWeightSequence(BaseModel, ABC):
    """
    Parametric generator of a positive sequence w_1, w_2, ... (used for gamma, a and b).
    """
    model_config = ConfigDict(frozen=True)

    @abstractmethod
    def values(self, count: int) -> np.ndarray:
        """
        Return w_1 .. w_count as a float array.
        """
        pass

    def is_nonincreasing(self) -> bool:
        """
        Whether the whole (infinite) sequence is nonincreasing.
        """
        return True

    def log_excess(self, count: int) -> np.ndarray:
        """
        max(log w_j, 0) for j = 1 .. count.
        """
        return np.maximum(np.log(self.values(count)), 0.0)


class ConstantWeights(BaseWeightSequence):
    """w_j = c"""
    family: Literal['constant'] = 'constant'
    c: float = Field(..., gt=0)

    def values(self, count: int) -> np.ndarray:
        return np.full(count, self.c, dtype=float)


class PolynomialWeights(BaseWeightSequence):
    """w_j = c * j^(-beta)"""
    family: Literal['polynomial'] = 'polynomial'
    c: float = Field(..., gt=0)
    beta: float

    def values(self, count: int) -> np.ndarray:
        return self.c * np.arange(1, count + 1, dtype=float) ** (-self.beta)

    def is_nonincreasing(self) -> bool:
        return self.beta >= 0


class GeometricWeights(BaseWeightSequence):
    """w_j = c * q^j"""
    family: Literal['geometric'] = 'geometric'
    c: float = Field(..., gt=0)
    q: float = Field(..., gt=0)

    def values(self, count: int) -> np.ndarray:
        return self.c * self.q ** np.arange(1, count + 1, dtype=float)

    def is_nonincreasing(self) -> bool:
        return self.q <= 1


class RootGeometricWeights(BaseWeightSequence):
    """w_j = c^(1/j)"""
    family: Literal['root_geometric'] = 'root_geometric'
    c: float = Field(..., gt=0)

    def values(self, count: int) -> np.ndarray:
        return self.c ** (1.0 / np.arange(1, count + 1, dtype=float))

    def is_nonincreasing(self) -> bool:
        return self.c >= 1


class OffsetPolynomialWeights(BaseWeightSequence):
    """w_j = offset + c * j^(-beta)"""
    family: Literal['offset_polynomial'] = 'offset_polynomial'
    offset: float = Field(..., ge=0)
    c: float = Field(..., ge=0)
    beta: float = Field(..., ge=0)

    @model_validator(mode='after')
    def check_positive(self) -> 'OffsetPolynomialWeights':
        if self.offset <= 0 and (self.c <= 0 or self.beta > 0):
            raise ValueError('offset_polynomial weights must stay strictly positive for all j')
        return self

    def values(self, count: int) -> np.ndarray:
        return self.offset + self.c * np.arange(1, count + 1, dtype=float) ** (-self.beta)


class TableWeights(BaseWeightSequence):
    """
    Explicit finite list; beyond the list the declared tail rule applies.
    """
    family: Literal['table'] = 'table'
    values_: tuple[float, ...] = Field(..., alias='values', min_length=1)
    tail: Literal['constant'] = Field(..., description="Continuation rule past the listed values")

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    @field_validator('values_')
    @classmethod
    def check_positive(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if any(not (w > 0 and math.isfinite(w)) for w in v):
            raise ValueError(f'table weights must be finite and positive, got {v}')
        return v

    def values(self, count: int) -> np.ndarray:
        listed = np.asarray(self.values_[:count], dtype=float)
        if count <= len(listed):
            return listed
        return np.concatenate([listed, np.full(count - len(listed), self.values_[-1])])

    def is_nonincreasing(self) -> bool:
        return all(a >= b for a, b in zip(self.values_, self.values_[1:]))


WeightSequenceSpec = Annotated[
    Union[ConstantWeights, PolynomialWeights, GeometricWeights, RootGeometricWeights,
          OffsetPolynomialWeights, TableWeights],
    Field(discriminator='family'),
]


def coerce_weights(v: Any) -> Any:
    """
    Bare numbers and lists are shorthand for constant and table sequences.
    """
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return {'family': 'constant', 'c': v}
    if isinstance(v, (list, tuple)):
        return {'family': 'table', 'values': list(v), 'tail': 'constant'}
    return v


# ===== HERMITE SPACES =====

class BaseHermiteSpace(BaseModel, ABC):
    """
    Hermite space H(K_r) with a product-form weight function
    r(k) = prod_j r_j(k_j), r_j(0) = 1.
    """
    model_config = ConfigDict(frozen=True)

    s: int = Field(..., ge=1, description="Dimension")

    @abstractmethod
    def coordinate_r(self, j: int, k: int) -> float:
        """
        r_j(k) for coordinate j (1-based).
        """
        pass

    @abstractmethod
    def coordinate_r_array(self, j: int, k_max: int) -> np.ndarray:
        """
        r_j(0) .. r_j(k_max).
        """
        pass

    @abstractmethod
    def coordinate_tail_bound(self, j: int, cutoff: int) -> float:
        """
        Upper bound on sum_{k > cutoff} r_j(k).
        """
        pass

    @abstractmethod
    def coordinate_cutoff(self, j: int, tail: float) -> int:
        """
        Smallest cutoff K whose coordinate_tail_bound(j, K) is <= tail.
        """
        pass

    @abstractmethod
    def describe(self) -> str:
        pass

    def with_dimension(self, s: int) -> 'BaseHermiteSpace':
        """
        Same weight sequences, dimension s.
        """
        return self.__class__.model_validate({**self.model_dump(by_alias=True), 's': s})


class FiniteSmoothnessSpace(BaseHermiteSpace):
    """
    r_j(0) = 1, r_j(k) = gamma_j * k^(-alpha) for k >= 1.
    """
    family: Literal['finite_smoothness'] = 'finite_smoothness'
    alpha: float = Field(..., gt=1)
    gamma: WeightSequenceSpec

    @field_validator('gamma', mode='before')
    @classmethod
    def coerce_gamma(cls, v: Any) -> Any:
        return coerce_weights(v)

    @model_validator(mode='after')
    def check_gamma(self) -> 'FiniteSmoothnessSpace':
        gammas = self.gamma.values(self.s)
        if np.any(gammas <= 0) or not np.all(np.isfinite(gammas)):
            raise ValueError(f'gamma weights must be finite and positive, got {gammas}')
        if not self.gamma.is_nonincreasing() or np.any(np.diff(gammas) > 0):
            raise ValueError('gamma weights must be nonincreasing (gamma_1 >= gamma_2 >= ...)')
        return self

    @cached_property
    def gammas(self) -> tuple[float, ...]:
        return tuple(self.gamma.values(self.s).tolist())

    def gamma_j(self, j: int) -> float:
        return float(self.gammas[j - 1])

    def coordinate_r(self, j: int, k: int) -> float:
        if k == 0:
            return 1.0
        return self.gamma_j(j) * k ** (-self.alpha)

    def coordinate_r_array(self, j: int, k_max: int) -> np.ndarray:
        out = np.ones(k_max + 1, dtype=float)
        if k_max >= 1:
            out[1:] = self.gamma_j(j) * np.arange(1, k_max + 1, dtype=float) ** (-self.alpha)
        return out

    def coordinate_tail_bound(self, j: int, cutoff: int) -> float:
        # sum_{k > K} k^(-alpha) <= int_K^inf t^(-alpha) dt
        cutoff = max(cutoff, 1)
        return self.gamma_j(j) * cutoff ** (1.0 - self.alpha) / (self.alpha - 1.0)

    def coordinate_cutoff(self, j: int, tail: float) -> int:
        raw = (self.gamma_j(j) / ((self.alpha - 1.0) * tail)) ** (1.0 / (self.alpha - 1.0))
        return max(1, math.ceil(raw)) if math.isfinite(raw) else sys.maxsize

    def describe(self) -> str:
        return f"finite_smoothness(s={self.s}, alpha={self.alpha}, gamma={self.gamma.family})"


class AnalyticSpace(BaseHermiteSpace):
    """
    r(k) = omega^(sum_j a_j k_j^(b_j)).
    """
    family: Literal['analytic'] = 'analytic'
    omega: float = Field(..., gt=0, lt=1)
    a: WeightSequenceSpec
    b: WeightSequenceSpec

    @field_validator('a', 'b', mode='before')
    @classmethod
    def coerce_sequences(cls, v: Any) -> Any:
        return coerce_weights(v)

    @model_validator(mode='after')
    def check_sequences(self) -> 'AnalyticSpace':
        if np.min(self.a.values(self.s)) <= 0:
            raise ValueError('a_0 = min_j a_j must be positive')
        if np.min(self.b.values(self.s)) < 1:
            raise ValueError('b_j must be >= 1 for all j <= s')
        return self

    @cached_property
    def a_values(self) -> tuple[float, ...]:
        return tuple(self.a.values(self.s).tolist())

    @cached_property
    def b_values(self) -> tuple[float, ...]:
        return tuple(self.b.values(self.s).tolist())

    def a_j(self, j: int) -> float:
        return float(self.a_values[j - 1])

    def b_j(self, j: int) -> float:
        return float(self.b_values[j - 1])

    @property
    def a0(self) -> float:
        return min(self.a_values)

    def coordinate_exponent(self, j: int, k: int) -> float:
        return 0.0 if k == 0 else self.a_j(j) * k ** self.b_j(j)

    def coordinate_r(self, j: int, k: int) -> float:
        return self.omega ** self.coordinate_exponent(j, k)

    def coordinate_r_array(self, j: int, k_max: int) -> np.ndarray:
        k = np.arange(k_max + 1, dtype=float)
        return self.omega ** (self.a_j(j) * k ** self.b_j(j))

    def coordinate_tail_bound(self, j: int, cutoff: int) -> float:
        # k^b >= k for b >= 1, so the tail is dominated by a geometric series in omega^a
        rho = self.omega ** self.a_j(j)
        return rho ** (cutoff + 1) / (1.0 - rho)

    def coordinate_cutoff(self, j: int, tail: float) -> int:
        rho = self.omega ** self.a_j(j)
        raw = (math.log(tail) + math.log1p(-rho)) / math.log(rho) - 1.0
        return max(0, math.ceil(raw))

    def describe(self) -> str:
        return f"analytic(s={self.s}, omega={self.omega}, a={self.a.family}, b={self.b.family})"


HermiteSpace = Annotated[Union[FiniteSmoothnessSpace, AnalyticSpace], Field(discriminator='family')]


class WeightMaximum(BaseModel):
    """
    max_{k != 0} r(k) and its graded-lex smallest maximizer k*.
    """
    model_config = ConfigDict(frozen=True)

    value: float = Field(..., gt=0)
    argmax: MultiIndex
