from __future__ import annotations

import io
import json

import pytest

from hallforge.checks import CheckResult
from hallforge.config import build_config
from hallforge.errors import ConfigError, ResourceCapError
from hallforge.pipeline import Driver, Executor, Monitor


@pytest.fixture
def jordan_config(tmp_path):
    raw = {
        "quiver": "jordan",
        "q": 2,
        "dim_bound": 2,
        "checks": ["euler", "rp"],
        "samples": {"assoc": 3, "oracle": 2, "centrality": 2},
        "monitoring": {"log_path": str(tmp_path / "logs" / "run.jsonl")},
    }
    return build_config(raw, base_dir=tmp_path, env={})


def test_driver_writes_header_then_records(jordan_config):
    stream = io.StringIO()
    monitor = Monitor(log_path=jordan_config.monitoring.log_path, stream=stream)
    driver = Driver(jordan_config, monitor=monitor)
    results = driver.run()
    assert list(results) == ["euler", "rp"]
    assert all(result.passed for result in results.values())
    lines = [json.loads(line) for line in stream.getvalue().splitlines()]
    assert lines[0] == {"header": jordan_config.header()}
    assert [line["check"] for line in lines[1:]] == ["euler"] * len(results["euler"]) + ["rp"] * len(results["rp"])
    assert monitor.metrics["euler"] == {"instances": len(results["euler"]), "failures": 0}
    logged = jordan_config.monitoring.log_path.read_text(encoding="utf-8")
    assert "Check finished" in logged


def test_execution_order_follows_check_names(jordan_config):
    driver = Driver(jordan_config, monitor=Monitor(stream=io.StringIO()))
    assert driver.plan(["heisenberg", "euler", "d3"]) == ["euler", "d3", "heisenberg"]
    assert driver.plan() == ["euler", "rp"]
    with pytest.raises(ConfigError):
        driver.plan(["euler", "astrology"])
    with pytest.raises(ConfigError):
        driver.run_check("astrology")
    assert driver.run_check("counit").passed


def test_classes_frame(jordan_config):
    frame = Driver(jordan_config, monitor=Monitor(stream=io.StringIO())).classes_frame()
    assert list(frame["label"]) == ["()", "(1)", "(2)", "(1,1)"]
    assert list(frame["aut"]) == [1, 1, 2, 6]
    assert list(frame["end"]) == [1, 2, 4, 16]


def test_product_tables(jordan_config):
    driver = Driver(jordan_config, monitor=Monitor(stream=io.StringIO()))
    result = driver.product("[C*_S]", "[C_S]")
    assert len(result["records"]) == 3
    frame = driver.product_frame("[C*_S]", "[C_S]")
    assert {"A", "B", "alpha", "beta", "a", "b"} <= set(frame.columns)
    cstar = json.dumps({"M0": {"dim": [1], "maps": [[[0]]]}, "M1": {"dim": [0]}})
    c = json.dumps({"M0": {"dim": [0]}, "M1": {"dim": [1], "maps": [[[0]]]}})
    oracle = driver.product(cstar, c, "oracle")
    assert oracle["records"] == result["records"]
    with pytest.raises(ConfigError):
        driver.product("[S]", "[S]", "lie")


def test_executor_reraises_engine_errors():
    stream = io.StringIO()
    executor = Executor(monitor=Monitor(stream=stream))

    def capped() -> CheckResult:
        raise ResourceCapError("hom_scan", 10, 5)

    ok = CheckResult("euler")
    ok.add(True, A=0)
    with pytest.raises(ResourceCapError):
        executor.run(["euler", "rp"], {"euler": lambda: ok, "rp": capped})
    assert json.loads(stream.getvalue()) == {"check": "euler", "A": 0, "passed": True}


def test_quiver_document_supplies_q(tmp_path):
    quiver = tmp_path / "a2_q3.json"
    quiver.write_text(json.dumps({"name": "a2", "vertices": 2, "arrows": [[0, 1]], "q": 3}), encoding="utf-8")
    config = build_config({"quiver": quiver.name, "dim_bound": 1, "checks": ["euler"]}, base_dir=tmp_path, env={})
    assert config.q is None
    driver = Driver(config, monitor=Monitor(stream=io.StringIO()))
    assert driver.provider.q == 3
    assert config.header()["q"] == 3


def test_explicit_q_overrides_quiver_document(tmp_path):
    quiver = tmp_path / "a2_q3.json"
    quiver.write_text(json.dumps({"name": "a2", "vertices": 2, "arrows": [[0, 1]], "q": 3}), encoding="utf-8")
    config = build_config({"quiver": str(quiver), "q": 2, "dim_bound": 1}, base_dir=tmp_path, env={})
    assert Driver(config, monitor=Monitor(stream=io.StringIO())).provider.q == 2
