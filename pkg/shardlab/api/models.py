import os
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from shardlab.engine.coxeter import CoxeterType, parse_word


class RunConfig(BaseModel):
    """One pipeline configuration, shared by the CLI and the HTTP endpoints"""
    type: Optional[str] = Field(None, description='Coxeter type such as "A3", "B3", "I2(5)" or "A1xA1"')
    arrangement: Optional[str] = Field(None, description="Path of a rational arrangement file, used instead of a type")
    coxeter_element: Optional[str] = Field(None, description='Order of the simple generators, e.g. "s1,s3,s2"')
    contract: List[str] = Field(default_factory=list, description="Join-irreducibles to contract, as words or one-line permutations")
    geometry: bool = True
    format: Literal["json", "dot", "text"] = "json"
    out: Optional[str] = None
    jobs: int = Field(1, ge=1)

    @field_validator("type")
    @classmethod
    def check_type(cls, value: Optional[str]) -> Optional[str]:
        if value is None or not value.strip():
            return None
        CoxeterType.parse(value)
        return value.strip()

    @field_validator("arrangement")
    @classmethod
    def check_arrangement(cls, value: Optional[str]) -> Optional[str]:
        if value is None or not value.strip():
            return None
        return value.strip()

    @field_validator("coxeter_element")
    @classmethod
    def check_coxeter_element(cls, value: Optional[str]) -> Optional[str]:
        if value is None or not value.strip():
            return None
        word = parse_word(value)
        if len(set(word)) != len(word):
            raise ValueError("a Coxeter element lists every simple generator exactly once")
        return value

    @model_validator(mode="after")
    def check_source(self) -> "RunConfig":
        if (self.type is None) == (self.arrangement is None):
            raise ValueError("give exactly one of a Coxeter type or an arrangement file")
        if self.arrangement is not None and self.coxeter_element is not None:
            raise ValueError("a Coxeter element needs a Coxeter type, not an arrangement file")
        return self

    @property
    def name(self) -> str:
        """The type, or the arrangement file's name without its extension"""
        if self.type is not None:
            return self.type
        return os.path.splitext(os.path.basename(self.arrangement))[0]

    @property
    def stem(self) -> str:
        """The name as it appears in output file names"""
        return self.name.replace("(", "").replace(")", "")

    def coxeter_order(self, rank: int) -> Optional[List[int]]:
        if self.coxeter_element is None:
            return None
        order = parse_word(self.coxeter_element)
        if sorted(order) != list(range(rank)):
            raise ValueError(f"coxeter_element must list s1..s{rank} once each")
        return order


class CheckResponse(BaseModel):
    """Response model for the verify endpoint"""
    passed: bool
    checks: List[Dict[str, Any]] = []


class ExportResponse(BaseModel):
    """Response model for the export endpoint"""
    target: str
    format: str
    content: str
