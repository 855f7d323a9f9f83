"""Validated per-invocation configuration for the command-line front end."""

from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.config.settings import AnalysisConfig


class RunConfig(BaseModel):
    """
    Everything one CLI run needs, assembled from flags and env defaults.

    Attributes:
        command: Which report to produce
        inputs: Case logs (or, for correlate, precomputed indicator tables)
        output_format: Report format written to stdout / ``output``
        input_format: Case-log format; ``auto`` sniffs extension and content
        include_failures: Whether failed cases' durations enter the indicators
        ciqr_quantiles: Lower/upper quantile pair of the CIQR indicator
        min_cases: Processes with fewer cases get a low-sample warning
        sr_floor, cmd_ceiling: Default erratic-process thresholds
        key, ascending: Benchmark ranking order
        target: Column the correlate dependability ranking is computed against
    """
    model_config = ConfigDict(frozen=True)

    command: Literal["analyze", "correlate", "benchmark", "validate"]
    inputs: List[Path] = Field(min_length=1)
    output_format: Literal["json", "csv", "markdown"] = "json"
    input_format: Literal["auto", "csv", "jsonl"] = "auto"
    output: Optional[Path] = None
    include_failures: bool = AnalysisConfig.include_failures
    ciqr_quantiles: Tuple[float, float] = AnalysisConfig.ciqr_quantiles
    min_cases: int = Field(default=AnalysisConfig.min_cases, ge=1)
    sr_floor: float = AnalysisConfig.sr_floor
    cmd_ceiling: float = AnalysisConfig.cmd_ceiling
    sd_multiplier: float = Field(default=AnalysisConfig.sd_multiplier, gt=0)
    iqr_multiplier: float = Field(default=AnalysisConfig.iqr_multiplier, ge=0)
    fail_on_flag: bool = False
    key: str = "cmd"
    ascending: bool = False
    target: str = "sr"
    healthy_benchmark: str = AnalysisConfig.healthy_benchmark
    failing_benchmark: str = AnalysisConfig.failing_benchmark
    decimals: int = AnalysisConfig.machine_decimals
    verbose: bool = False

    @field_validator("ciqr_quantiles")
    @classmethod
    def _ordered_probabilities(cls, pair: Tuple[float, float]) -> Tuple[float, float]:
        low, high = pair
        if not (0.0 <= low < high <= 1.0):
            raise ValueError("CIQR quantiles must satisfy 0 <= low < high <= 1")
        return pair
