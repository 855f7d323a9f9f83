"""Executor fanning indicator computation out across processes."""

import asyncio
import logging
from typing import Dict, List

from src.errors import EmptySeries
from src.models.case_models import ProcessCases
from src.models.indicator_models import IndicatorRow, IndicatorTable
from src.models.run_config import RunConfig
from src.state.pipeline_state import PipelineState
from src.stats.dispersion import DurationInclusionPolicy, compute_indicator_set


logger = logging.getLogger(__name__)


class ProcessExecutor:
    """Computes one IndicatorSet per process concurrently."""

    def __init__(self, config: RunConfig):
        """
        Args:
            config: Run configuration supplying the inclusion policy,
                CIQR quantile pair and outlier-rule multipliers
        """
        self.config = config
        self.policy = DurationInclusionPolicy.from_flag(config.include_failures)

    def _compute(self, cases: ProcessCases):
        return compute_indicator_set(
            cases,
            policy=self.policy,
            ciqr_quantiles=self.config.ciqr_quantiles,
            sd_multiplier=self.config.sd_multiplier,
            iqr_multiplier=self.config.iqr_multiplier,
        )

    async def execute(self, state: PipelineState) -> Dict:
        """
        Build the indicator table from the grouped cases.

        Processes run in worker threads; the table is assembled afterwards in
        process_id order, so the output does not depend on completion order.
        A process with no durations under the inclusion policy is left out
        of the table with a warning.

        Args:
            state: Workflow state holding ``groups``

        Returns:
            Dict: State update with ``table`` and any new ``warnings``
        """
        groups: List[ProcessCases] = state.get("groups", [])
        outcomes = await asyncio.gather(
            *(asyncio.to_thread(self._compute, cases) for cases in groups),
            return_exceptions=True,
        )

        rows: List[IndicatorRow] = []
        warnings: List[str] = []
        for cases, outcome in zip(groups, outcomes):
            if isinstance(outcome, EmptySeries):
                warnings.append(f"{cases.process_id}: skipped, {outcome}")
            elif isinstance(outcome, BaseException):
                raise outcome
            else:
                rows.append(IndicatorRow(process_id=cases.process_id, indicators=outcome))

        logger.info("Computed indicators for %d process(es)", len(rows))
        return {"table": IndicatorTable(rows=rows), "warnings": warnings}
