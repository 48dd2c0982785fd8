"""Compare scenarios use case implementation."""

from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.application.use_cases.run_scenario import RunScenarioUseCase
from src.config.logging import get_logger
from src.config.settings import settings
from src.domain.entities.scenario import Experiment
from src.domain.entities.trace import RunSummary

logger = get_logger(__name__)

COMPARISON_COLUMNS = [
    "label",
    "scenario",
    "controller",
    "perturbation",
    "seed",
    "final_position_error",
    "final_orientation_error",
    "final_eta_norm",
    "decay_rate",
    "decay_r_squared",
    "torque_rms",
    "max_vpf_defect",
    "min_lambda_min",
    "max_lambda_ratio",
    "estimate_bound_ok",
    "lyapunov_violations",
    "wall_time_s",
]


def _run_one(experiment: Experiment) -> RunSummary:
    """Run a single experiment; module level so worker processes can pickle it."""
    return RunScenarioUseCase().execute(experiment).summary


def unique_labels(names: Sequence[str]) -> List[str]:
    """Deduplicate names with -2, -3, ... suffixes in order of appearance."""
    seen: Dict[str, int] = {}
    labels = []
    for name in names:
        count = seen.get(name, 0) + 1
        seen[name] = count
        labels.append(name if count == 1 else f"{name}-{count}")
    return labels


class CompareScenariosUseCase:
    """Use case for running several scenarios and tabulating their metrics."""

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers or settings.WORKER_CONCURRENCY

    def execute(self, experiments: Sequence[Experiment]) -> pd.DataFrame:
        """Run every experiment and return one row per run."""
        if not experiments:
            return pd.DataFrame(columns=COMPARISON_COLUMNS)

        logger.info("Comparison started", runs=len(experiments), workers=self.workers)
        if self.workers > 1 and len(experiments) > 1:
            with ProcessPoolExecutor(max_workers=self.workers) as executor:
                summaries = list(executor.map(_run_one, experiments))
        else:
            summaries = [_run_one(experiment) for experiment in experiments]

        table = self.tabulate(experiments, summaries)
        logger.info("Comparison finished", runs=len(table))
        return table

    def tabulate(
        self, experiments: Sequence[Experiment], summaries: Sequence[RunSummary]
    ) -> pd.DataFrame:
        """Align run summaries into a comparison table."""
        labels = unique_labels([summary.controller for summary in summaries])
        rows = []
        for label, experiment, summary in zip(labels, experiments, summaries):
            rows.append(
                {
                    "label": label,
                    "scenario": summary.scenario,
                    "controller": summary.controller,
                    "perturbation": experiment.scenario.perturbation,
                    "seed": experiment.scenario.seed,
                    "final_position_error": summary.final_position_error,
                    "final_orientation_error": summary.final_orientation_error,
                    "final_eta_norm": summary.final_eta_norm,
                    "decay_rate": summary.decay_rate,
                    "decay_r_squared": summary.decay_r_squared,
                    "torque_rms": float(np.linalg.norm(summary.torque_rms)),
                    "max_vpf_defect": summary.max_vpf_defect,
                    "min_lambda_min": summary.min_lambda_min,
                    "max_lambda_ratio": summary.max_lambda_ratio,
                    "estimate_bound_ok": summary.estimate_bound_ok,
                    "lyapunov_violations": summary.lyapunov_violations,
                    "wall_time_s": summary.wall_time_s,
                }
            )
        return pd.DataFrame(rows, columns=COMPARISON_COLUMNS)
