from __future__ import annotations

import json

import pytest
from typer.testing import CliRunner

from hallforge.cli import app

runner = CliRunner()


def read_jsonl(path):
    return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.yml"
    path.write_text(
        "quiver: a1\nq: 2\ndim_bound: 2\nchecks: [assoc]\nseed: 3\nsamples:\n  assoc: 5\n  oracle: 2\n  centrality: 2\n",
        encoding="utf-8",
    )
    return path


@pytest.mark.parametrize(
    "args,rows",
    [
        (["--quiver", "jordan", "--dim-bound", "2"], 4),
        (["--quiver", "a1", "--dim-bound", "3"], 4),
        (["--quiver", "a1", "--dim-bound", "2", "--q", "3"], 3),
    ],
)
def test_classes(tmp_path, args, rows):
    out = tmp_path / "classes.jsonl"
    result = runner.invoke(app, ["classes", *args, "--out", str(out)])
    assert result.exit_code == 0, result.output
    table = read_jsonl(out)
    assert len(table) == rows
    assert {"id", "label", "dim", "aut", "end"} <= set(table[0])


def test_classes_csv(tmp_path):
    out = tmp_path / "classes.csv"
    result = runner.invoke(app, ["classes", "--quiver", "jordan", "--dim-bound", "2", "--format", "csv", "--out", str(out)])
    assert result.exit_code == 0, result.output
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "id,label,dim,aut,end"
    assert len(lines) == 5


def test_classes_rejects_non_prime_q():
    result = runner.invoke(app, ["classes", "--quiver", "a1", "--q", "4"])
    assert result.exit_code == 2


def test_classes_cap_exceeded():
    result = runner.invoke(app, ["classes", "--quiver", "a1", "--dim-bound", "3", "--cap-hom", "4"])
    assert result.exit_code == 2


@pytest.mark.parametrize(
    "lhs,rhs,q,terms",
    [("[C_S]", "[C*_S]", 2, 1), ("[C*_S]", "[C_S]", 3, 3), ("K_(1)", "K*_1", 2, 1)],
)
def test_product(tmp_path, lhs, rhs, q, terms):
    out = tmp_path / "product.json"
    result = runner.invoke(app, ["product", lhs, rhs, "--quiver", "a1", "--q", str(q), "--out", str(out)])
    assert result.exit_code == 0, result.output
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["algebra"] == "mrh"
    assert len(payload["terms"]) == terms


def test_product_extended_algebra(tmp_path):
    out = tmp_path / "product.json"
    args = ["product", "[S]", "[S]", "--algebra", "he", "--quiver", "a1", "--q", "3", "--out", str(out)]
    result = runner.invoke(app, args)
    assert result.exit_code == 0, result.output
    (term,) = json.loads(out.read_text(encoding="utf-8"))["terms"]
    assert term["coeff"] == {"a": "0/1", "b": "1/3"}


def test_product_rejects_bad_literal():
    result = runner.invoke(app, ["product", "[C_S", "[C*_S]", "--quiver", "a1"])
    assert result.exit_code == 2


def test_verify_d3_on_a2(tmp_path):
    out = tmp_path / "report.jsonl"
    args = ["verify", "--checks", "d3", "--quiver", "a2", "--q", "2", "--dim-bound", "2", "--out", str(out)]
    result = runner.invoke(app, args)
    assert result.exit_code == 0, result.output
    lines = read_jsonl(out)
    assert lines[0]["header"]["quiver"] == "a2"
    assert lines[0]["header"]["checks"] == ["d3"]
    assert all(line["check"] == "d3" and line["passed"] for line in lines[1:])


def test_verify_is_reproducible(tmp_path, small_config):
    first, second = tmp_path / "first.jsonl", tmp_path / "second.jsonl"
    for out in (first, second):
        result = runner.invoke(app, ["verify", "--config", str(small_config), "--out", str(out)])
        assert result.exit_code == 0, result.output
    assert first.read_text(encoding="utf-8") == second.read_text(encoding="utf-8")
    assert len(read_jsonl(first)) == 6


def test_verify_cap_exceeded(tmp_path, small_config):
    args = ["verify", "--config", str(small_config), "--checks", "euler", "--cap-subspace", "1"]
    result = runner.invoke(app, [*args, "--out", str(tmp_path / "r.jsonl")])
    assert result.exit_code == 2


def test_verify_unknown_check(small_config):
    result = runner.invoke(app, ["verify", "--config", str(small_config), "--checks", "telepathy"])
    assert result.exit_code == 2


def test_plan(small_config):
    result = runner.invoke(app, ["plan", "--config", str(small_config), "--checks", "d3,euler"])
    assert result.exit_code == 0, result.output
    lines = [line for line in result.stdout.splitlines() if line and not line.startswith("{")]
    assert lines == ["euler", "d3"]
