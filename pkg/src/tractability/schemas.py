from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

# ===== SCHEMA - PYDANTIC =====

class DiagnosticRow(BaseModel):
    """
    Partial sum S(s) = sum_{j <= s} max(log gamma_j, 0) and its two normalizations.
    """
    model_config = ConfigDict(frozen=True)

    s: int = Field(..., ge=2)
    S: float = Field(..., ge=0)
    S_over_log_s: float = Field(..., ge=0)
    S_over_s: float = Field(..., ge=0)


class TractabilityCertificate(BaseModel):
    """
    Evidence behind a verdict.

    C = sup_s max_{k != 0} r(k) bounds n_mc(eps, s) <= ceil(C eps^-2) for every s;
    A = limsup_s S(s) / log s is the s-exponent of the polynomial bound.
    """
    model_config = ConfigDict(frozen=True)

    C: Optional[float] = Field(None, gt=0)
    log_C: Optional[float] = Field(None, description="log C, kept when C itself overflows")
    A: Optional[float] = Field(None, ge=0)
    diagnostics: list[DiagnosticRow] = Field(default_factory=list)


class TractabilityVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    strong_polynomial: bool
    polynomial: bool
    weak: bool
    heuristic: bool = Field(False, description="True when decided by a finite trend test instead of a closed form")
    family: str = Field(..., description="Weight family or space family that was classified")
    certificate: TractabilityCertificate = Field(default_factory=TractabilityCertificate)

    @model_validator(mode='after')
    def check_hierarchy(self) -> 'TractabilityVerdict':
        if self.strong_polynomial and not self.polynomial:
            raise ValueError('strong polynomial tractability implies polynomial tractability')
        if self.polynomial and not self.weak:
            raise ValueError('polynomial tractability implies weak tractability')
        if self.strong_polynomial != (self.certificate.C is not None or self.certificate.log_C is not None):
            raise ValueError('certificate C must be present exactly when strongly polynomially tractable')
        return self

    @property
    def epsilon_exponent(self) -> Optional[float]:
        return 2.0 if self.strong_polynomial else None


class ComplexityRow(BaseModel):
    """
    n_mc at one (eps, s) point and a tractability ratio built from it.
    """
    model_config = ConfigDict(frozen=True)

    eps: float = Field(..., gt=0, lt=1)
    s: int = Field(..., ge=1)
    n_mc: int = Field(..., ge=1)
    ratio: float = Field(..., ge=0)


class NmcRow(BaseModel):
    """
    One row of the n_mc table: columns (s, eps, n_mc, ratio_ecwt), plus the
    un-square-rooted analytic complexity when it applies.
    """
    model_config = ConfigDict(frozen=True)

    s: int = Field(..., ge=1)
    eps: float = Field(..., gt=0, lt=1)
    n_mc: int = Field(..., ge=1)
    ratio_ecwt: float = Field(..., ge=0)
    n_mc_unrooted: Optional[int] = Field(None, ge=1)
