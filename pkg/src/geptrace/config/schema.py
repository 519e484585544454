"""Settings schema definitions using Pydantic."""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from ..gep.problem import GAP_TOL
from ..inequalities.report import EQ_TOL, INEQ_TOL
from ..optimize.ascent import AscentConfig


class Tolerances(BaseModel):
    """Base tolerances for the checkers; inequality and equality tolerances scale with magnitude."""
    model_config = ConfigDict(extra="forbid")

    ineq_tol: float = Field(INEQ_TOL, gt=0, description="Inequality slack (times max(1, |lhs|, |rhs|))")
    eq_tol: float = Field(EQ_TOL, gt=0, description="Equality detection threshold")
    gap_tol: float = Field(GAP_TOL, gt=0, description="Eigenvalue gap below which top-k is not unique")


class CheckSettings(BaseModel):
    """Defaults for `geptrace check`."""
    model_config = ConfigDict(extra="forbid")

    trials: int = Field(100, ge=1)
    workers: int = Field(1, ge=1)
    suite: str = "all"


class FileLogSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    enabled: bool = False
    path: str = "geptrace.log"
    max_bytes: int = Field(10485760, ge=1)
    backup_count: int = Field(3, ge=0)


class LoggingSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    format: Literal["rich", "json"] = "rich"
    file: FileLogSettings = Field(default_factory=FileLogSettings)


class Settings(BaseModel):
    """Top-level geptrace configuration."""
    model_config = ConfigDict(extra="forbid")

    version: str = "1.0"
    ascent: AscentConfig = Field(default_factory=AscentConfig)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    checks: CheckSettings = Field(default_factory=CheckSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)
