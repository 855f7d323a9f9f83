"""STEADY: Statistical dispersion Toolkit for Execution Analysis of Deployed bots.

Computes dispersion indicators over the case durations of automated
processes, correlates them with the success rate and flags erratic bots.
"""

from .errors import SteadyError
from .graph import create_pipeline_graph
from .models import IndicatorSet, IndicatorTable, RunConfig
from .state import PipelineState

__version__ = "0.1.0"

__all__ = [
    "SteadyError",
    "create_pipeline_graph",
    "IndicatorSet",
    "IndicatorTable",
    "RunConfig",
    "PipelineState",
]
