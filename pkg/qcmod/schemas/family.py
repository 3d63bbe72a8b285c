"""
Curve Family Schema

The documented JSON shape of a curve family.
"""

from typing import List

from pydantic import BaseModel, Field, model_validator


class CurveFamilySchema(BaseModel):
    """``{ "label": str, "n": int, "curves": [[[coords]...]...] }``"""

    label: str = ""
    n: int = Field(..., ge=0)
    curves: List[List[List[float]]]

    @model_validator(mode="after")
    def check_dimensions(self):
        for i, curve in enumerate(self.curves):
            if len(curve) < 2:
                raise ValueError(f"curve {i} needs at least two vertices")
            if any(len(v) != self.n for v in curve):
                raise ValueError(f"curve {i} has vertices not of dimension {self.n}")
        return self
