"""
Numerical Result Schemas

Pydantic records for solver estimates, test-density checks and
integrability results.
"""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class ModulusEstimate(BaseModel):
    """Certified estimate of the discrete modulus of a sampled family."""

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., ge=0.0, description="Energy of a certified admissible density")
    iterations: int = Field(..., ge=0)
    converged: bool
    residual: float = Field(..., ge=0.0, description="Max constraint violation at exit")
    lower_bound: float = Field(0.0, ge=0.0, description="Dual value; the modulus is at least this")


class EtaCheck(BaseModel):
    """Normalization integral of a radial test density."""

    model_config = ConfigDict(frozen=True)

    integral: float
    admissible: bool


class IntegrabilityResult(BaseModel):
    """L^p norm of the radial-stretch dilatation on the unit ball."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., gt=0.0)
    p: float = Field(..., ge=1.0)
    n: int = Field(..., ge=2)
    threshold: float
    finite: bool
    value: Optional[float] = None
    divergent: bool = False
