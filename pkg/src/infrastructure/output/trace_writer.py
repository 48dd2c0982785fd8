"""
CSV and JSON artifacts of simulation runs.

Trace columns, in order: time; per joint theta, theta_dot, theta_desired,
torque; per body eta (6) and velocity_error (6); per body psi,
body_speed, vpf, consistency_residual, divergence, lambda_min,
lambda_max_ratio, estimate_norm; then vpf_defect, lyapunov, lyapunov_adaptive,
position_error (x, y, z), orientation_error, energy_residual. Joints and
bodies are numbered from 1.
"""

import json
from pathlib import Path
from typing import Any, Dict

import numpy as np
import pandas as pd

from src.config.logging import get_logger
from src.domain.entities.trace import RunSummary, Trace

logger = get_logger(__name__)

FLOAT_FORMAT = "%.16e"
TWIST_COMPONENTS = ("wx", "wy", "wz", "vx", "vy", "vz")
JOINT_SERIES = ("theta", "theta_dot", "theta_desired", "torque")
BODY_SERIES = (
    "psi",
    "body_speed",
    "vpf",
    "consistency_residual",
    "divergence",
    "lambda_min",
    "lambda_max_ratio",
    "estimate_norm",
)
SCALAR_SERIES = ("vpf_defect", "lyapunov", "lyapunov_adaptive")


def to_frame(trace: Trace) -> pd.DataFrame:
    """One row per control instant, columns in the documented order."""
    columns: Dict[str, np.ndarray] = {"time": trace.time}
    n = trace.n
    for name in JOINT_SERIES:
        values = getattr(trace, name)
        for j in range(n):
            columns[f"{name}_{j + 1}"] = values[:, j]
    for i in range(n):
        for k, component in enumerate(TWIST_COMPONENTS):
            columns[f"eta_{i + 1}_{component}"] = trace.eta[:, i, k]
        for k, component in enumerate(TWIST_COMPONENTS):
            columns[f"velocity_error_{i + 1}_{component}"] = trace.velocity_error[:, i, k]
    for name in BODY_SERIES:
        values = getattr(trace, name)
        for i in range(n):
            columns[f"{name}_{i + 1}"] = values[:, i]
    for name in SCALAR_SERIES:
        columns[name] = getattr(trace, name)
    for k, axis in enumerate("xyz"):
        columns[f"position_error_{axis}"] = trace.position_error[:, k]
    columns["orientation_error"] = trace.orientation_error
    columns["energy_residual"] = trace.energy_residual
    return pd.DataFrame(columns)


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def write_run(trace: Trace, summary: RunSummary, out_dir: Path) -> Dict[str, Path]:
    """Write trace.csv and summary.json into out_dir."""
    out_dir.mkdir(parents=True, exist_ok=True)
    trace_path = out_dir / "trace.csv"
    summary_path = out_dir / "summary.json"

    to_frame(trace).to_csv(trace_path, index=False, float_format=FLOAT_FORMAT)
    summary_path.write_text(
        json.dumps(_plain(summary.to_dict()), indent=2, allow_nan=True), encoding="utf-8"
    )
    logger.info(
        "Run artifacts written",
        trace=str(trace_path),
        summary=str(summary_path),
        rows=trace.samples,
    )
    return {"trace": trace_path, "summary": summary_path}


def write_comparison(table: pd.DataFrame, out_dir: Path) -> Path:
    """Write comparison.csv into out_dir."""
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "comparison.csv"
    table.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info("Comparison written", path=str(path), rows=len(table))
    return path
