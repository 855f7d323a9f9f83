"""Configuration module."""

from .settings import AnalysisConfig, load_defaults

__all__ = ["AnalysisConfig", "load_defaults"]
