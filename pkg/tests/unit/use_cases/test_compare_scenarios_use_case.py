"""
Unit tests for CompareScenariosUseCase.
"""

from unittest.mock import MagicMock, patch

import pytest

from src.application.use_cases.compare_scenarios import (
    COMPARISON_COLUMNS,
    CompareScenariosUseCase,
    unique_labels,
)
from src.domain.value_objects.controller_type import ControllerType


class TestUniqueLabels:
    """Test label deduplication."""

    def test_suffixes_repeats_in_order(self):
        """Test repeated names get -2, -3 suffixes."""
        assert unique_labels(["mgc", "amgc", "mgc", "mgc"]) == [
            "mgc",
            "amgc",
            "mgc-2",
            "mgc-3",
        ]

    def test_distinct_names_unchanged(self):
        """Test distinct names are kept as they are."""
        assert unique_labels(["mgc", "amgc", "baseline_pd"]) == [
            "mgc",
            "amgc",
            "baseline_pd",
        ]


class TestCompareScenariosUseCase:
    """Test cases for CompareScenariosUseCase."""

    @pytest.fixture
    def experiments(self, make_planar_experiment):
        """Two short runs on the planar arm."""
        return [
            make_planar_experiment(controller=ControllerType.MGC, duration=0.02),
            make_planar_experiment(
                controller=ControllerType.AMGC, duration=0.02, perturbation=0.1, seed=4
            ),
        ]

    def test_empty_selection(self):
        """Test no experiments give an empty table with the full header."""
        table = CompareScenariosUseCase(workers=1).execute([])

        assert list(table.columns) == COMPARISON_COLUMNS
        assert len(table) == 0

    def test_sequential_comparison(self, experiments):
        """Test one aligned row per run."""
        table = CompareScenariosUseCase(workers=1).execute(experiments)

        assert list(table.columns) == COMPARISON_COLUMNS
        assert table["label"].tolist() == ["mgc", "amgc"]
        assert table["perturbation"].tolist() == [0.0, 0.1]
        assert table["seed"].tolist() == [0, 4]
        assert table["estimate_bound_ok"].iloc[0] is None
        assert table["final_position_error"].notna().all()

    def test_repeated_controllers_get_unique_labels(self, make_planar_experiment):
        """Test two runs of the same controller are told apart."""
        experiments = [make_planar_experiment(duration=0.01) for _ in range(2)]
        table = CompareScenariosUseCase(workers=1).execute(experiments)

        assert table["label"].tolist() == ["mgc", "mgc-2"]

    def test_parallel_comparison_uses_process_pool(self, experiments):
        """Test several workers fan runs out to a process pool."""
        executor = MagicMock()
        executor.map.side_effect = lambda function, items: map(function, items)
        pool = MagicMock()
        pool.return_value.__enter__.return_value = executor

        with patch("src.application.use_cases.compare_scenarios.ProcessPoolExecutor", pool):
            table = CompareScenariosUseCase(workers=2).execute(experiments)

        pool.assert_called_once_with(max_workers=2)
        assert len(table) == 2

    def test_default_workers_from_settings(self):
        """Test worker count falls back to the configured concurrency."""
        with patch("src.application.use_cases.compare_scenarios.settings") as settings:
            settings.WORKER_CONCURRENCY = 3
            assert CompareScenariosUseCase().workers == 3
