"""
Unit tests for configuration loading and validation.
"""

import copy
import json

import numpy as np
import pytest

from src.domain.exceptions.usage_error import (
    ScenarioNotFoundError,
    UnknownOverrideError,
    UsageError,
)
from src.domain.exceptions.validation_error import (
    ConfigParseError,
    InvalidFieldError,
    PhysicalInconsistencyError,
    RequiredFieldError,
)
from src.domain.value_objects.controller_type import ControllerType
from src.infrastructure.model_files.loader import (
    OVERRIDE_PATHS,
    apply_overrides,
    build_experiment,
    build_gains,
    bundled_names,
    config_schema,
    dump_config,
    gain_matrix,
    load_experiment,
    load_model,
    parse_overrides,
    read_document,
    resolve_reference,
    validate_document,
)
from src.infrastructure.model_files.schemas import GainsSchema


@pytest.fixture
def planar_document(make_planar_experiment):
    """Canonical document of the planar test experiment."""
    return dump_config(make_planar_experiment())


def write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


class TestBundledDocuments:
    """Test the bundled configuration documents."""

    def test_bundled_names(self):
        """Test the bundled set includes the planar and generic chains."""
        names = bundled_names()
        for expected in (
            "2r_planar",
            "4r_generic_mgc",
            "4r_generic_amgc",
            "4r_generic_baseline",
            "4r_generic_mgc_perturbed",
        ):
            assert expected in names

    @pytest.mark.parametrize("name", ["2r_planar", "4r_generic_mgc", "4r_generic_amgc"])
    def test_bundled_documents_load(self, name):
        """Test every bundled document validates and builds."""
        experiment = load_experiment(name)
        assert experiment.model.n == len(experiment.scenario.trajectories)
        assert experiment.gains.n == experiment.model.n

    def test_generic_chain_scenario(self):
        """Test the generic chain's scenario constants."""
        experiment = load_experiment("4r_generic_mgc")
        scenario = experiment.scenario

        assert experiment.model.n == 4
        assert scenario.controller == ControllerType.MGC
        assert scenario.duration == 10.0
        assert scenario.control_rate == 1000.0
        assert scenario.seed == 7
        np.testing.assert_allclose(scenario.initial_theta, [0.3, -0.1, 1.1, 0.8])
        np.testing.assert_allclose(
            [entry.value for entry in scenario.trajectories], [0.0, -0.4, 0.8, 0.5]
        )

    def test_load_model(self):
        """Test only the chain model is returned."""
        model = load_model("2r_planar")
        assert model.name == "2r_planar"
        np.testing.assert_allclose(model.gravity, [0.0, -9.81, 0.0])

    def test_unknown_reference(self):
        """Test a reference that is neither a file nor a bundled name."""
        with pytest.raises(ScenarioNotFoundError):
            resolve_reference("no_such_scenario")

    def test_file_reference(self, tmp_path, planar_document):
        """Test a path to a document is loaded directly."""
        path = write_json(tmp_path / "custom.json", planar_document)
        assert resolve_reference(str(path)) == path
        assert load_experiment(path).model.name == "two_link"


class TestOverrides:
    """Test key=value overrides."""

    def test_parse_overrides(self):
        """Test key=value pairs are split and stripped."""
        assert parse_overrides(["seed=3", " controller = amgc "]) == {
            "seed": "3",
            "controller": "amgc",
        }

    def test_parse_rejects_missing_separator(self):
        """Test an argument without '=' is a usage error."""
        with pytest.raises(UsageError):
            parse_overrides(["seed"])

    def test_apply_overrides_writes_fields(self, planar_document):
        """Test values are parsed as JSON and written to their fields."""
        result = apply_overrides(
            planar_document,
            {"controller": "amgc", "perturbation": "0.1", "gamma": "7", "seed": "9"},
        )
        assert result["scenario"]["controller"] == "amgc"
        assert result["scenario"]["perturbation"] == 0.1
        assert result["scenario"]["seed"] == 9
        assert result["gains"]["adaptation"]["gamma"] == 7
        # the input document is left alone
        assert planar_document["scenario"]["controller"] == "mgc"

    def test_unknown_override_key(self, planar_document):
        """Test unknown keys are rejected with the allowed list."""
        with pytest.raises(UnknownOverrideError) as exc_info:
            apply_overrides(planar_document, {"mass": "3"})
        assert exc_info.value.key == "mass"
        assert set(exc_info.value.allowed) == set(OVERRIDE_PATHS)

    def test_load_with_overrides(self):
        """Test overrides reach the built scenario."""
        experiment = load_experiment(
            "2r_planar", {"controller": "baseline_pd", "duration": "0.5", "substeps": "2"}
        )
        assert experiment.scenario.controller == ControllerType.BASELINE_PD
        assert experiment.scenario.duration == 0.5
        assert experiment.scenario.substeps == 2


class TestValidation:
    """Test document validation errors."""

    def test_syntax_error_location(self, tmp_path):
        """Test JSON syntax errors report line and column."""
        path = tmp_path / "broken.json"
        path.write_text('{\n  "model": ,\n}', encoding="utf-8")
        with pytest.raises(ConfigParseError) as exc_info:
            read_document(path)
        assert exc_info.value.line == 2
        assert exc_info.value.column == 12

    def test_top_level_must_be_object(self, tmp_path):
        """Test a document that is not an object is rejected."""
        path = tmp_path / "list.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ConfigParseError):
            read_document(path)

    def test_missing_field_path(self, planar_document):
        """Test a missing required field is named by its dotted path."""
        del planar_document["scenario"]["name"]
        with pytest.raises(RequiredFieldError) as exc_info:
            validate_document(planar_document)
        assert exc_info.value.field_name == "scenario.name"

    def test_missing_body_field_path(self, planar_document):
        """Test list indices appear in the dotted path."""
        del planar_document["model"]["bodies"][1]["inertia"]["mass"]
        with pytest.raises(RequiredFieldError) as exc_info:
            validate_document(planar_document)
        assert exc_info.value.field_name == "model.bodies.1.inertia.mass"

    def test_out_of_range_field(self, planar_document):
        """Test range violations are invalid fields."""
        planar_document["scenario"]["perturbation"] = 0.7
        with pytest.raises(InvalidFieldError) as exc_info:
            validate_document(planar_document)
        assert exc_info.value.field_name == "scenario.perturbation"

    def test_unknown_field(self, planar_document):
        """Test unknown keys are rejected."""
        planar_document["scenario"]["colour"] = "red"
        with pytest.raises(InvalidFieldError) as exc_info:
            validate_document(planar_document)
        assert exc_info.value.field_name == "scenario.colour"

    def test_non_physical_inertia(self, planar_document):
        """Test a body whose spatial inertia is not positive definite names the body."""
        inertia = planar_document["model"]["bodies"][0]["inertia"]
        inertia["rotational_inertia"] = [[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        with pytest.raises(PhysicalInconsistencyError) as exc_info:
            build_experiment(validate_document(planar_document))
        assert "model.bodies.0.inertia" in str(exc_info.value)

    def test_malformed_home_rotation(self, planar_document):
        """Test a non-orthogonal home rotation is rejected with its path."""
        planar_document["model"]["bodies"][1]["home"]["rotation"] = [
            [2.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ]
        with pytest.raises(InvalidFieldError) as exc_info:
            build_experiment(validate_document(planar_document))
        assert exc_info.value.field_name == "model.bodies.1.home.rotation"

    def test_screw_axis_must_be_unit(self, planar_document):
        """Test a non-normalized screw axis is rejected with its path."""
        planar_document["model"]["bodies"][0]["screw_axis"] = [0.0, 0.0, 2.0, 0.0, 0.0, 0.0]
        with pytest.raises(InvalidFieldError) as exc_info:
            build_experiment(validate_document(planar_document))
        assert exc_info.value.field_name == "model.bodies.0.screw_axis"


class TestGains:
    """Test gain parsing."""

    def test_gain_matrix_forms(self):
        """Test scalar, diagonal and full gain forms."""
        np.testing.assert_array_equal(gain_matrix(2.0, 6, "k"), 2.0 * np.eye(6))
        np.testing.assert_array_equal(
            gain_matrix([1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 6, "k"),
            np.diag([1.0, 2.0, 3.0, 4.0, 5.0, 6.0]),
        )
        full = np.eye(6).tolist()
        np.testing.assert_array_equal(gain_matrix(full, 6, "k"), np.eye(6))

    def test_gain_matrix_wrong_shape(self):
        """Test a wrong-sized list names its path."""
        with pytest.raises(InvalidFieldError) as exc_info:
            gain_matrix([1.0, 2.0], 6, "gains.k_v")
        assert exc_info.value.field_name == "gains.k_v"

    def test_per_body_lists_repeat_last_entry(self):
        """Test short per-body lists repeat their last entry."""
        gains = build_gains(GainsSchema(gamma=[1.0, 2.0], k_a=[10.0]), 3)
        assert [float(g[0, 0]) for g in gains.gamma] == [1.0, 2.0, 2.0]
        np.testing.assert_array_equal(gains.k_a, [10.0, 10.0, 10.0])

    def test_default_k_z(self):
        """Test K_z defaults to Gamma diag(K_v) / 2."""
        gains = build_gains(GainsSchema(gamma=4.0, k_v=10.0), 1)
        np.testing.assert_allclose(gains.k_z[0], 20.0 * np.eye(6))

    def test_non_positive_gain_rejected(self, planar_document):
        """Test a gain matrix that is not positive definite is rejected."""
        planar_document["gains"]["k_v"] = -1.0
        with pytest.raises(InvalidFieldError) as exc_info:
            build_experiment(validate_document(planar_document))
        assert exc_info.value.field_name == "gains.k_v"


class TestSerialization:
    """Test canonical documents and the schema."""

    def test_dump_load_is_idempotent(self, tmp_path, planar_document):
        """Test loading a dumped document and dumping again changes nothing."""
        path = write_json(tmp_path / "dumped.json", planar_document)
        again = dump_config(load_experiment(path))
        assert again == planar_document

    def test_dump_is_json_serializable(self, generic_4r):
        """Test the canonical document survives a JSON round trip."""
        document = dump_config(generic_4r)
        assert json.loads(json.dumps(document)) == document

    def test_overrides_do_not_leak_between_loads(self, planar_document):
        """Test applying overrides twice starts from the same document."""
        original = copy.deepcopy(planar_document)
        apply_overrides(planar_document, {"seed": "1"})
        assert planar_document == original

    def test_schema_sections(self):
        """Test the JSON schema describes the three sections."""
        schema = config_schema()
        assert {"model", "gains", "scenario"} <= set(schema["properties"])
        assert set(schema["required"]) == {"model", "scenario"}
