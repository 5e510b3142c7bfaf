import pytest

from config import CliConfig, VerificationConfig
from errors import UsageError
import verify
from verify import CHECKS, check_rng, verify_all


@pytest.fixture
def small_config():
    return CliConfig(
        verification=VerificationConfig(
            property_cases=20, sample_count=50, depth=16, ls_functions=5, ls_families=5, workers=2
        )
    )


def quiet(message):
    pass


def test_suite_passes(small_config):
    report = verify_all(small_config, log=quiet)
    assert report.failures() == []
    assert report.exit_code == 0
    assert [line.split()[1] for line in report.machine_lines()] == sorted(CHECKS)


def test_runs_are_reproducible(small_config):
    only = ["ac06-ls-well-defined", "ac11-primitive-keystone", "ac01-truth-table"]
    first = verify_all(small_config, only, log=quiet).machine_lines()
    second = verify_all(small_config, only, log=quiet).machine_lines()
    assert first == second


def test_check_rng_depends_on_id():
    a = check_rng(1, "x").integers(0, 2**32, 4)
    b = check_rng(1, "x").integers(0, 2**32, 4)
    c = check_rng(1, "y").integers(0, 2**32, 4)
    assert list(a) == list(b)
    assert list(a) != list(c)


def test_unknown_check(small_config):
    with pytest.raises(UsageError):
        verify_all(small_config, ["no-such-check"], log=quiet)


def test_raising_check_is_a_failure(small_config, monkeypatch):
    def boom(config, rng):
        raise RuntimeError("boom")

    monkeypatch.setitem(verify.CHECKS, "zz-boom", boom)
    report = verify_all(small_config, ["zz-boom", "ac01-truth-table"], log=quiet)
    assert report.machine_lines() == ["CHECK ac01-truth-table PASS", "CHECK zz-boom FAIL RuntimeError: boom"]
    assert report.exit_code == 1


def test_derivative_round_trip_covers_lattices(small_config):
    report = verify_all(small_config, ["ac09-derivative-support", "ac10-derivative-round-trip"], log=quiet)
    assert report.machine_lines() == ["CHECK ac09-derivative-support PASS", "CHECK ac10-derivative-round-trip PASS"]
