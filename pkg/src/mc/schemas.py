import hashlib
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.spaces.schemas import HermiteSpace

# ===== SCHEMA - PYDANTIC =====

class MCEstimate(BaseModel):
    """
    One equal-weight MC estimate and how many integrand values were non-finite.
    """
    model_config = ConfigDict(frozen=True)

    value: float = Field(..., description="(1/n) sum_i f(x_i); nan/inf when some f(x_i) is")
    n: int = Field(..., ge=1)
    non_finite: int = Field(0, ge=0, description="Nodes where f was nan or inf")

    @property
    def flagged(self) -> bool:
        return self.non_finite > 0


class ErrorReport(BaseModel):
    """
    Theoretical vs empirical randomized error of one (space, n, R, seed) experiment.
    """

    space: HermiteSpace = Field(..., description="The Hermite space integrated over")
    space_label: str = Field(..., description="Short human-readable space description")
    n: int = Field(..., ge=1, description="Nodes per MC estimate")
    s: int = Field(..., ge=1, description="Dimension")
    replications: int = Field(..., ge=2, description="Number of independent MC estimates R")
    master_seed: int = Field(..., ge=0, lt=2 ** 64)
    worst_case_index: list[int] = Field(..., description="Dense k* of the worst-case integrand")
    theoretical_error: float = Field(..., ge=0, description="sqrt(max_{k != 0} r(k) / n)")
    empirical_mse: float = Field(..., ge=0, description="mean of squared errors d_i")
    empirical_rmse: float = Field(..., ge=0)
    empirical_stderr: float = Field(..., ge=0, description="stddev(d_i) / sqrt(R)")
    mean_bias: float = Field(..., description="mean of (estimate - integral)")
    bias_stderr: float = Field(..., ge=0, description="stddev(estimate - integral) / sqrt(R)")
    unrooted_error: float | None = Field(None, description="omega^(a_0) / sqrt(n), analytic spaces only")
    wall_time_ms: float = Field(0.0, ge=0, description="Wall time; not part of the reproducible output")

    @model_validator(mode='after')
    def check_rmse(self) -> 'ErrorReport':
        if abs(self.empirical_rmse ** 2 - self.empirical_mse) > 1e-12 * max(1.0, self.empirical_mse):
            raise ValueError('empirical_rmse must be sqrt(empirical_mse)')
        return self

    @property
    def mse_ratio(self) -> float:
        """
        empirical_mse / theoretical_error^2 (1 in expectation).
        """
        return self.empirical_mse / self.theoretical_error ** 2

    def to_row(self, timing: bool = False) -> dict[str, Any]:
        """
        Flat dict for JSON/CSV output.
        """
        row = self.model_dump(exclude={'space', 'wall_time_ms'})
        row['worst_case_index'] = ' '.join(str(k) for k in self.worst_case_index)
        if timing:
            row['wall_time_ms'] = self.wall_time_ms
        return row

    def content_hash(self) -> str:
        """
        Hash of the deterministic fields, used for storage deduplication.
        """
        content = self.model_dump_json(exclude={'wall_time_ms'}, by_alias=True)
        return hashlib.md5(content.encode('utf-8')).hexdigest()[:16]
