import asyncio

import pytest

from binomial_permutations.utils.report_store import ReportStore


def test_save_and_load(tmp_path):
    store = ReportStore(tmp_path / "reports")
    records = [{"claim_id": "theorem1", "cases_run": 3}, {"claim_id": "prop1", "cases_run": 0}]
    path = asyncio.run(store.save("theorem1-p7-m1-e3", records))
    assert path.exists()
    assert asyncio.run(store.load("theorem1-p7-m1-e3")) == records
    assert store.list_reports() == ["theorem1-p7-m1-e3"]


def test_load_from_a_fresh_store(tmp_path):
    asyncio.run(ReportStore(tmp_path).save("a", [{"x": 1}]))
    assert asyncio.run(ReportStore(tmp_path).read_text("a")) == '{"x": 1}\n'


def test_missing_report(tmp_path):
    with pytest.raises(FileNotFoundError):
        asyncio.run(ReportStore(tmp_path).load("absent"))


def test_invalid_name(tmp_path):
    with pytest.raises(ValueError):
        asyncio.run(ReportStore(tmp_path).save("../escape", []))


def test_empty_listing(tmp_path):
    assert ReportStore(tmp_path / "missing").list_reports() == []
