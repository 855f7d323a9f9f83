"""Executor module for per-process indicator computation."""

from .process_executor import ProcessExecutor

__all__ = ["ProcessExecutor"]
