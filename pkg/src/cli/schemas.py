import math
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, field_validator, model_validator

from src.config import DEFAULT_MASTER_SEED, DEFAULT_REPLICATIONS, DIAGNOSTIC_S_GRID, KERNEL_TOL
from src.spaces.schemas import HermiteSpace, WeightSequenceSpec, coerce_weights

# ===== SCHEMA - PYDANTIC =====

Point = list[float]


class ExperimentConfig(BaseModel):
    """
    One JSON document driving a CLI invocation. Every numeric parameter is
    checked here, so bad input fails before any work starts.
    """
    model_config = ConfigDict(frozen=True, extra='forbid')

    space: Optional[HermiteSpace] = Field(None, description="Hermite space (family tag + parameters)")
    gamma: Optional[WeightSequenceSpec] = Field(None, description="Weight sequence to classify (tractability only)")
    n_values: list[PositiveInt] = Field(default_factory=list, description="Node counts for error-study")
    replications: int = Field(DEFAULT_REPLICATIONS, ge=2, description="Replications R per n")
    master_seed: int = Field(DEFAULT_MASTER_SEED, ge=0, lt=2 ** 64)
    eps_grid: list[float] = Field(default_factory=list)
    s_grid: list[PositiveInt] = Field(default_factory=list)
    diagnostic_s_grid: list[int] = Field(default_factory=lambda: list(DIAGNOSTIC_S_GRID))
    kernel_tol: float = Field(KERNEL_TOL, gt=0)
    points: list[tuple[Point, Point]] = Field(default_factory=list, description="(x, y) pairs for kernel-eval")
    format: Literal['json', 'csv'] = 'csv'
    output: Optional[str] = Field(None, description="Output path; standard output when absent")
    threads: int = Field(1, ge=0, description="0 = one worker per CPU; never changes results")

    @field_validator('gamma', mode='before')
    @classmethod
    def coerce_gamma(cls, v: Any) -> Any:
        return None if v is None else coerce_weights(v)

    @field_validator('eps_grid')
    @classmethod
    def check_eps(cls, v: list[float]) -> list[float]:
        for eps in v:
            if not (0 < eps < 1):
                raise ValueError(f'eps values must lie in (0, 1), got {eps}')
        return v

    @field_validator('diagnostic_s_grid')
    @classmethod
    def check_diagnostic_grid(cls, v: list[int]) -> list[int]:
        if not v:
            raise ValueError('diagnostic_s_grid must not be empty')
        if v[0] < 2 or any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError('diagnostic_s_grid must be strictly ascending with every s >= 2')
        return v

    @model_validator(mode='after')
    def check_points(self) -> 'ExperimentConfig':
        for x, y in self.points:
            if not all(math.isfinite(t) for t in x + y):
                raise ValueError(f'kernel points must be finite, got {x}, {y}')
            if self.space is not None and (len(x) != self.space.s or len(y) != self.space.s):
                raise ValueError(f'kernel points must have dimension {self.space.s}, got {x}, {y}')
        return self

    def with_overrides(self, **overrides: Any) -> 'ExperimentConfig':
        """
        Copy with the given fields replaced (None values are ignored), re-validated.
        """
        updates = {key: value for key, value in overrides.items() if value is not None}
        return ExperimentConfig.model_validate({**self.model_dump(by_alias=True), **updates})


class KernelRow(BaseModel):
    """
    One kernel-eval output row.
    """
    x: Point
    y: Point
    K: float
    tol: float
    tail_bound: float
    bound_met: bool
    out_of_range: bool
    mehler: Optional[float] = None

    @property
    def flagged(self) -> bool:
        return self.out_of_range or not self.bound_met
