"""State management module."""

from .pipeline_state import PipelineState, merge_results

__all__ = ["PipelineState", "merge_results"]
