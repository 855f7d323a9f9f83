"""Deterministic synthetic case logs for demos and scale tests."""

from typing import List

import numpy as np

from src.config.settings import AnalysisConfig
from src.models.case_models import CaseLog, Outcome


def synthetic_process_ids(n_processes: int) -> List[str]:
    """Healthy benchmark, failing benchmark, then P001, P002, ..."""
    ids = [AnalysisConfig.healthy_benchmark, AnalysisConfig.failing_benchmark]
    ids += [f"P{i:03d}" for i in range(1, n_processes - 1)]
    return ids[:n_processes]


def generate_synthetic_log(n_cases: int, n_processes: int, seed: int = 0) -> CaseLog:
    """
    Build a reproducible mix of cases across ``n_processes`` processes.

    Each process gets a typical duration, a log-normal spread and a
    success probability. The first process behaves like a stable,
    always-successful bot; the second like a bot in trouble (wide spread,
    5% success).

    Args:
        n_cases: Total number of cases
        n_processes: Number of distinct processes (>= 1)
        seed: Seed of the numpy random generator

    Returns:
        CaseLog: Cases in log order, case ids ``c0000000``, ``c0000001``, ...
    """
    if n_processes < 1:
        raise ValueError("n_processes must be >= 1")
    rng = np.random.default_rng(seed)
    ids = synthetic_process_ids(n_processes)

    typical = rng.uniform(30.0, 600.0, size=n_processes)
    spread = rng.uniform(0.05, 0.8, size=n_processes)
    p_success = rng.uniform(0.5, 1.0, size=n_processes)
    spread[0], p_success[0] = 0.01, 1.0
    if n_processes > 1:
        spread[1], p_success[1] = 0.9, 0.05

    process = rng.integers(0, n_processes, size=n_cases)
    durations = np.maximum(np.round(typical[process] * rng.lognormal(0.0, spread[process]), 3), 0.001)
    succeeded = rng.random(n_cases) < p_success[process]

    width = max(7, len(str(n_cases)))
    statuses = (Outcome.FAILURE.value, Outcome.SUCCESS.value)
    return CaseLog(
        [ids[k] for k in process.tolist()],
        [f"c{i:0{width}d}" for i in range(n_cases)],
        durations,
        [statuses[flag] for flag in succeeded.tolist()],
    )
