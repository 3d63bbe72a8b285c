"""
Report Schemas

Pydantic records emitted by the verification harnesses.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from .results import ModulusEstimate


class VerificationReport(BaseModel):
    """One certified instance of a modulus inequality M(f(Gamma)) <= rhs."""

    model_config = ConfigDict(frozen=True)

    lhs: ModulusEstimate
    rhs: Optional[float] = Field(None, description="None when the right side diverges")
    rhs_divergent: bool = False
    satisfied: Optional[bool] = Field(None, description="None when the solver did not converge")
    margin: Optional[float] = None
    metadata: Dict[str, Any] = Field(default_factory=dict)


class StepBoundChain(BaseModel):
    """The chain lhs <= rhs integral <= ||Q||_1 / (eps1* - eps1)^n."""

    model_config = ConfigDict(frozen=True)

    lhs: ModulusEstimate
    rhs: float
    q_l1: float
    bound: float
    holds: bool


class WeakFlatnessResult(BaseModel):
    """Modulus of a family joining two continua that cross S(x0, eps0) and S(x0, eps)."""

    model_config = ConfigDict(frozen=True)

    eps: float = Field(..., gt=0.0)
    eps0: float = Field(..., gt=0.0)
    P: float
    c_n: float = Field(..., gt=0.0)
    bound: float
    curves: int = Field(..., ge=0)
    discrete: ModulusEstimate


class RecenterResult(BaseModel):
    """Nested-ball recentering of an annulus about a nearby center a."""

    model_config = ConfigDict(frozen=True)

    k0: int = Field(..., ge=1)
    eps_t1: float
    eps_t2: float
    center: List[float]
    centers_checked: bool
    bound: Optional[float] = None
    outer_modulus: Optional[ModulusEstimate] = None
    inner_modulus: Optional[ModulusEstimate] = None
    minorized: Optional[bool] = None


class ClusterSample(BaseModel):
    """Images of the probe sphere S(target, radius)."""

    model_config = ConfigDict(frozen=True)

    radius: float = Field(..., gt=0.0)
    points: List[List[float]]
    chordal_oscillation: float = Field(..., ge=0.0)
    euclidean_oscillation: float = Field(..., ge=0.0)


class ClusterProbe(BaseModel):
    """Oscillation of a mapping on shrinking spheres about a boundary point."""

    model_config = ConfigDict(frozen=True)

    mapping: str
    n: int = Field(..., ge=2)
    boundary_point: Optional[List[float]] = Field(None, description="None is the point at infinity")
    radii: List[float]
    samples: List[ClusterSample]
    extends: bool
    limit: Optional[List[float]] = None
    limit_infinite: bool = Field(False, description="The images converge to the point at infinity")
