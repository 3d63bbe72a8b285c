"""
Pydantic Schemas Module

Validated records for solver results, verification reports, curve
families and run configuration.
"""

from .results import EtaCheck, IntegrabilityResult, ModulusEstimate
from .reports import (
    ClusterProbe,
    ClusterSample,
    StepBoundChain,
    RecenterResult,
    VerificationReport,
    WeakFlatnessResult,
)
from .family import CurveFamilySchema
from .config import RunConfig, parse_radii

__all__ = [
    "EtaCheck",
    "IntegrabilityResult",
    "ModulusEstimate",
    "ClusterProbe",
    "ClusterSample",
    "StepBoundChain",
    "RecenterResult",
    "VerificationReport",
    "WeakFlatnessResult",
    "CurveFamilySchema",
    "RunConfig",
    "parse_radii",
]
