"""
Run Configuration Schema

One validated record per CLI invocation. Every parameter is checked before
any computation starts, and the resolved record is embedded in the report.
"""

import hashlib
import json
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..geometry import geometric_radii
from ..settings import DEFAULT_MAX_ITER, DEFAULT_TOL, EXTENSION_THRESHOLD, WEAK_FLAT_CN

Command = Literal[
    "modulus-ring",
    "verify-ring",
    "verify-general",
    "integrability",
    "weakflat",
    "recenter",
    "cluster",
]

MappingName = Literal[
    "identity",
    "radial",
    "radial-inverse",
    "radial-extended",
    "radial-inverse-extended",
]

NAMED_TARGETS = ("e1", "e2", "0", "inf")
DILATATION_MAPPINGS = ("identity", "radial", "radial-extended")


def parse_radii(value: Union[str, List[float]]) -> List[float]:
    """
    Accept a list of radii or the ``start:end`` shorthand with factor-10 steps.

    Example:
        >>> parse_radii("1e-2:1e-4")
        [0.01, 0.001, 0.0001]
    """
    if isinstance(value, str):
        if ":" in value:
            start, end = value.split(":", 1)
            return geometric_radii(float(start), float(end))
        return [float(v) for v in value.split(",") if v.strip()]
    return [float(v) for v in value]


class RunConfig(BaseModel):
    """Parameters of one run; unused parameters keep their defaults."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command
    n: int = Field(2, ge=2, le=8)
    seed: int = Field(0, ge=0)
    output: Optional[str] = None
    format: str = Field("json", pattern="^(json|csv)$")

    # annuli and ring families
    center: Optional[List[float]] = None
    r1: Optional[float] = Field(None, gt=0.0)
    r2: Optional[float] = Field(None, gt=0.0)
    curves: int = Field(720, ge=1)
    subdiv: int = Field(64, ge=2)
    grid: Optional[int] = Field(None, ge=8, description="Cells per axis; default by dimension")

    # mappings and densities
    map: MappingName = "identity"
    alpha: float = Field(1.0, gt=0.0)
    eta: str = Field("extremal", pattern="^(step|extremal)$")
    p: float = Field(1.0, ge=1.0)

    # solver
    tol: float = Field(DEFAULT_TOL, gt=0.0, lt=1.0)
    max_iter: int = Field(DEFAULT_MAX_ITER, ge=1)

    # weak flatness
    eps0: Optional[float] = Field(None, gt=0.0)
    P: Optional[float] = Field(None, gt=0.0)
    eps: Optional[float] = Field(None, gt=0.0)
    c_n: float = Field(WEAK_FLAT_CN, gt=0.0)
    per_halving: int = Field(8, ge=1, description="Weak-flatness curves per halving of scale")

    # recentering
    eps1: Optional[float] = Field(None, gt=0.0)
    eps1_star: Optional[float] = Field(None, gt=0.0)
    q_l1: Optional[float] = Field(None, ge=0.0)
    compute_moduli: bool = False

    # cluster probes
    target: Optional[str] = None
    radii: Optional[List[float]] = None
    dirs: int = Field(64, ge=2)
    threshold: float = Field(EXTENSION_THRESHOLD, gt=0.0)

    @field_validator("radii", mode="before")
    @classmethod
    def expand_radii(cls, value):
        if value is None:
            return None
        try:
            return parse_radii(value)
        except ValueError as e:
            raise ValueError(f"invalid radii {value!r}: {e}") from None

    @model_validator(mode="after")
    def check_command_parameters(self) -> "RunConfig":
        command = self.command
        if self.center is not None and len(self.center) != self.n:
            raise ValueError(f"center must have {self.n} coordinates")
        if command in ("modulus-ring", "verify-ring", "verify-general"):
            if self.r1 is None or self.r2 is None:
                raise ValueError(f"{command} requires --r1 and --r2")
            if self.r1 >= self.r2:
                raise ValueError(f"need r1 < r2, got r1={self.r1}, r2={self.r2}")
        if command in ("verify-ring", "verify-general"):
            if self.map not in DILATATION_MAPPINGS:
                raise ValueError(f"{command} needs a mapping with known dilatation, one of {DILATATION_MAPPINGS}")
            if self.map != "identity" and self.center is not None and any(self.center):
                raise ValueError(f"the dilatation of {self.map} is radial about 0; center must be the origin")
        if command == "weakflat":
            if self.eps0 is None:
                raise ValueError("weakflat requires --eps0")
            if self.P is None and self.eps is None:
                raise ValueError("weakflat requires --P or --eps")
            if self.eps is not None and self.eps >= self.eps0:
                raise ValueError(f"need eps < eps0, got eps={self.eps}, eps0={self.eps0}")
        if command == "recenter":
            if self.eps1 is None or self.eps1_star is None:
                raise ValueError("recenter requires --eps1 and --eps1-star")
            if self.eps1 >= self.eps1_star:
                raise ValueError(f"need eps1 < eps1_star, got {self.eps1}, {self.eps1_star}")
        if command == "cluster":
            if self.target is None or not self.radii:
                raise ValueError("cluster requires --target and --radii")
            if any(r <= 0.0 for r in self.radii) or any(
                b >= a for a, b in zip(self.radii, self.radii[1:])
            ):
                raise ValueError("radii must be positive and strictly decreasing")
            if self.target not in NAMED_TARGETS:
                try:
                    coords = [float(v) for v in self.target.split(",")]
                except ValueError:
                    raise ValueError(f"invalid target {self.target!r}") from None
                if len(coords) != self.n:
                    raise ValueError(f"target must have {self.n} coordinates")
        return self

    def resolved(self) -> dict:
        """The full config as plain JSON data."""
        return self.model_dump(mode="json")

    def digest(self) -> str:
        """SHA-256 of the resolved config, stable across runs."""
        text = json.dumps(self.resolved(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()
