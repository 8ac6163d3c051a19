from typing import Dict, List, Optional

from pydantic import BaseModel, Field, PositiveInt, field_validator

from app.core.errors import BarnetteError
from app.crud import FORMATS


class ErrorReport(BaseModel):
    """A pipeline failure as emitted by ``--json``."""
    name: Optional[str] = None
    code: str
    category: str
    message: str
    details: Dict = Field(default_factory=dict)
    exit_code: int

    @classmethod
    def from_error(cls, exc: BarnetteError, name: Optional[str] = None) -> "ErrorReport":
        return cls(name=name, exit_code=exc.exit_code, **exc.to_dict())


class GraphSummary(BaseModel):
    name: Optional[str] = None
    vertices: int
    edges: int
    faces: int


class DiagnosticsReport(GraphSummary):
    valid: bool
    problems: List[str] = Field(default_factory=list)
    family: Optional[str] = None
    big_count: Optional[int] = None
    big_neighbour_bound: Optional[int] = None
    corollary21: Optional[bool] = None


class CycleReport(GraphSummary):
    method: str
    length: int
    cycle: List[int]
    cubic_cycle: Optional[List[int]] = None
    crossing_edges: List[List[int]]
    parts: List[List[int]]
    trace: List[str] = Field(default_factory=list)


class CountReport(GraphSummary):
    k: int
    guaranteed: int
    found: int
    chosen_faces: List[int]
    cycles: List[List[int]]


class OracleReport(GraphSummary):
    hamilton_count: int
    hamilton_cycles: List[List[List[int]]] = Field(default_factory=list)
    forest_bipartition_count: int
    two_tree_count: int
    agreement: bool
    counts_equal: bool
    pipeline_cycle_in_oracle: Optional[bool] = None


class CorpusTag(BaseModel):
    name: str
    source: str
    vertices: int
    family: str
    big_count: int
    big_neighbour_bound: int
    corollary21: bool


class RunConfig(BaseModel):
    """Options shared by every subcommand."""
    input: Optional[str] = None
    format: str = "auto"
    as_: str = "auto"
    json_output: bool = False
    trace: bool = False
    emit_svg: Optional[str] = None
    cap_oracle: Optional[PositiveInt] = None
    seed: int = 0
    workers: PositiveInt = 4

    @field_validator("format")
    @classmethod
    def known_format(cls, v: str) -> str:
        if v not in FORMATS:
            raise ValueError(f"unknown format {v!r}")
        return v

    @field_validator("as_")
    @classmethod
    def known_kind(cls, v: str) -> str:
        if v not in ("auto", "cubic", "triangulation"):
            raise ValueError(f"unknown input kind {v!r}")
        return v
