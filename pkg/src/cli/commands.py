"""
Command implementations.
"""

import json
from pathlib import Path
from typing import Dict, Optional, Sequence

from src.application.use_cases.check_properties import (
    CheckPropertiesUseCase,
    available_checks,
)
from src.application.use_cases.compare_scenarios import CompareScenariosUseCase
from src.application.use_cases.run_scenario import RunScenarioUseCase
from src.cli.error_handler import EXIT_OK
from src.config.logging import get_logger
from src.domain.entities.trace import RunSummary
from src.domain.exceptions.usage_error import UsageError
from src.infrastructure.model_files.loader import (
    config_schema,
    load_experiment,
    load_model,
    parse_overrides,
)
from src.infrastructure.output.trace_writer import write_comparison, write_run

logger = get_logger(__name__)

DEFAULT_CHECK_MODEL = "2r_planar"


def collect_overrides(items: Sequence[str], seed: Optional[int]) -> Dict[str, str]:
    """Overrides from --set items; --seed wins over a seed given with --set."""
    overrides = parse_overrides(items)
    if seed is not None:
        overrides["seed"] = str(seed)
    return overrides


def _format_summary(summary: RunSummary) -> str:
    lines = [
        f"scenario            {summary.scenario}",
        f"controller          {summary.controller}",
        f"steps               {summary.steps}",
        f"position error  m   {summary.final_position_error:.6e}",
        f"orientation err rad {summary.final_orientation_error:.6e}",
        f"max |eta|           {summary.final_eta_norm:.6e}",
        f"decay rate 1/s      {summary.decay_rate:.4f} (R^2 {summary.decay_r_squared:.4f})",
        f"max VPF defect      {summary.max_vpf_defect:.3e}",
        f"min lambda_min      {summary.min_lambda_min:.6e}",
    ]
    if summary.estimate_bound_ok is not None:
        lines.append(
            f"estimate bound      {'ok' if summary.estimate_bound_ok else 'VIOLATED'} "
            f"(margin {summary.estimate_bound_margin:.4e})"
        )
    lines.append(f"wall time s         {summary.wall_time_s:.2f}")
    return "\n".join(lines)


def cmd_run(
    reference: str,
    out_dir: Path,
    overrides: Sequence[str] = (),
    seed: Optional[int] = None,
) -> int:
    """Run one scenario and write trace.csv and summary.json."""
    experiment = load_experiment(reference, collect_overrides(overrides, seed))
    result = RunScenarioUseCase().execute(experiment)
    paths = write_run(result.trace, result.summary, out_dir)
    print(_format_summary(result.summary))
    print(f"trace written to {paths['trace']}")
    return EXIT_OK


def cmd_compare(
    references: Sequence[str],
    out_dir: Path,
    overrides: Sequence[str] = (),
    seed: Optional[int] = None,
) -> int:
    """Run several scenarios and write comparison.csv."""
    parsed = collect_overrides(overrides, seed)
    experiments = [load_experiment(reference, parsed) for reference in references]
    table = CompareScenariosUseCase().execute(experiments)
    path = write_comparison(table, out_dir)
    if len(table):
        print(table.to_string(index=False))
    print(f"comparison written to {path}")
    return EXIT_OK


def cmd_check(
    selection: Optional[str] = None,
    model_reference: str = DEFAULT_CHECK_MODEL,
    seed: Optional[int] = None,
) -> int:
    """Run the property suite and print one line per property."""
    if selection is not None and not any(
        name == selection or name.startswith(f"{selection}.") for name in available_checks()
    ):
        raise UsageError(f"No property matches filter '{selection}'")

    use_case = CheckPropertiesUseCase(load_model(model_reference), seed=seed or 0)
    results = use_case.execute(selection)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        line = f"{status}  {result.name:<36} {result.error:.3e} <= {result.tolerance:.1e}"
        if result.detail:
            line += f"  ({result.detail})"
        print(line)
    passed = sum(result.passed for result in results)
    print(f"{passed}/{len(results)} properties passed")
    use_case.ensure_passed(results)
    return EXIT_OK


def cmd_schema(out_dir: Optional[Path] = None) -> int:
    """Print the configuration document schema, or write it to out_dir."""
    text = json.dumps(config_schema(), indent=2)
    if out_dir is None:
        print(text)
        return EXIT_OK
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "schema.json"
    path.write_text(text + "\n", encoding="utf-8")
    logger.info("Schema written", path=str(path))
    print(f"schema written to {path}")
    return EXIT_OK
