import pytest

from binomial_permutations.errors import InputError
from binomial_permutations.services.validation_service import ValidationService


@pytest.fixture
def validator():
    return ValidationService()


def test_valid_test_config(validator):
    result = validator.validate_run_config("test", {"p": 7, "m": 1, "e": 3, "r": 5, "a_exp": 2, "method": "all"})
    assert result == {"valid": True, "errors": []}


def test_collects_every_error(validator):
    result = validator.validate_run_config(
        "test", {"p": 9, "m": 0, "e": 3, "r": 0, "a_exp": 1, "a_coeffs": [1], "method": "magic"}
    )
    assert not result["valid"]
    assert len(result["errors"]) == 5


def test_r_upper_limit(validator):
    result = validator.validate_run_config("test", {"p": 3, "m": 1, "e": 3, "r": 27, "a_exp": 0})
    assert result["errors"] == ["r must lie in [1, 26]"]


def test_scan_method_excludes_all(validator):
    result = validator.validate_run_config("scan", {"p": 3, "method": "all"})
    assert not result["valid"]


def test_verify_claim_names(validator):
    assert validator.validate_run_config("verify", {"p": 3, "claim": "lemma5-6"})["valid"]
    assert not validator.validate_run_config("verify", {"p": 3, "claim": "lemma5_6"})["valid"]


def test_hw_needs_r(validator):
    result = validator.validate_run_config("hw", {"q": 9, "e": 4})
    assert result["errors"] == ["give --r or both --r-min and --r-max"]
    assert validator.validate_run_config("hw", {"q": 9, "e": 4, "r_min": 2, "r_max": 5})["valid"]


def test_common_fields(validator):
    result = validator.validate_run_config("field", {"p": 5, "format": "xml", "jobs": 0})
    assert len(result["errors"]) == 2


def test_require_valid_raises(validator):
    with pytest.raises(InputError, match="p must be a prime"):
        validator.require_valid("field", {"p": 10})


def test_validation_rules(validator):
    assert "claim" in validator.get_validation_rules("verify")
    assert validator.get_validation_rules("serve") == {}
