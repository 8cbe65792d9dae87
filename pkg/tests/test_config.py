"""
tests/test_config.py
Config loading, command-line overrides and schema validation.
"""

import pytest

from mahler.config import apply_overrides, load_checks, load_config, validate_config


class TestLoading:

    def test_base_config(self):
        config = load_config()
        assert config['precision_bits'] == 256
        assert config['quadrature']['split_point'] == 0.3

    def test_local_override_merges(self, local_config):
        assert local_config['precision_bits'] == 128
        assert local_config['cache']['backend'] == 'none'
        # untouched keys survive the merge
        assert local_config['quadrature']['split_point'] == 0.3
        assert local_config['executor']['kind'] == 'serial'

    def test_missing_override_exits(self, tmp_path):
        with pytest.raises(SystemExit):
            load_config(str(tmp_path / 'absent.yaml'))

    def test_override_file(self, tmp_path):
        path = tmp_path / 'override.yaml'
        path.write_text("seed: 42\nsampling:\n  batches: 2\n")
        config = load_config(str(path))
        assert config['seed'] == 42
        assert config['sampling'] == {'samples': 16777216, 'batches': 2}

    def test_checks(self):
        checks = load_checks()
        assert checks['cterms']['kind'] == 'exact'
        assert checks['cm_constants']['targets']['c1_minus_4c0'] == "-0.708951451918989714"


class TestOverrides:

    def test_flags_land_on_config_paths(self):
        base = load_config()
        config = apply_overrides(base, {'precision': 128, 'workers': 2, 'executor': 'process', 'seed': None})
        assert config['precision_bits'] == 128
        assert config['executor'] == {'kind': 'process', 'max_workers': 2}
        assert config['seed'] == base['seed']

    def test_base_is_not_mutated(self):
        base = load_config()
        apply_overrides(base, {'workers': 8})
        assert base['executor']['max_workers'] == 4


class TestValidation:

    def test_shipped_configs_are_valid(self, local_config):
        assert validate_config(load_config()) == (True, [])
        assert validate_config(local_config) == (True, [])

    def test_schema_violation(self):
        config = apply_overrides(load_config(), {'order': 4})
        is_valid, errors = validate_config(config)
        assert not is_valid
        assert 'series_order' in errors[0]

    def test_tolerance_below_working_precision(self):
        config = apply_overrides(load_config(), {'precision': 64})
        is_valid, errors = validate_config(config)
        assert not is_valid
        assert 'abs_tol' in errors[0]
