import csv
import io
import json

import pytest
from click.testing import CliRunner

from c4mackey import checks, cli
from c4mackey.mackey import MackeyF2


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args):
        return runner.invoke(cli.main, list(args))

    return go


class TestMul:
    @pytest.mark.parametrize(
        "x, y, out",
        [("as^2", "ul", "0"), ("us", "ul/us^3", "ul/us^2"), ("th", "x[0,1]", "0")],
    )
    def test_products(self, run, x, y, out):
        res = run("mul", x, y)
        assert res.exit_code == 0
        assert res.output.strip() == out

    def test_parse_error_exits_two(self, run):
        res = run("mul", "as^", "us")
        assert res.exit_code == 2

    def test_restriction_and_transfer(self, run):
        assert run("res", "as^2/al").output.strip() == "v*bus^2"
        assert run("tr", "v", "--level", "mid").output.strip() == "x[0,1]"


class TestPoint:
    def test_small_window(self, run):
        res = run("--format", "json", "point", "--a", "-2..2", "--n", "0..1", "--m", "0..0")
        assert res.exit_code == 0
        rows = json.loads(res.output)
        assert len(rows) == 10 and all(r["match"] for r in rows)

    def test_csv(self, run):
        res = run("--format", "csv", "point", "--a", "0..1")
        rows = list(csv.DictReader(io.StringIO(res.output)))
        assert [r["degree"] for r in rows] == ["0", "1"]

    def test_bad_range(self, run):
        assert run("point", "--a", "3..x").exit_code == 2


def test_sphere(run):
    res = run("--format", "json", "sphere", "2sigma")
    rows = json.loads(res.output)
    assert [(r["degree"], r["tags"]) for r in rows] == [(0, ["box_k"]), (1, ["box_k"]), (2, ["k"])]


def test_bad_degree(run):
    assert run("sphere", "2tau").exit_code == 2


class TestBC4:
    def test_single_degree(self, run):
        res = run("--format", "json", "bc4", "--degree", "2sigma")
        assert res.exit_code == 0
        (row,) = json.loads(res.output)
        assert row["engine"][0] == 1 and row["oracle"][0] == 1

    def test_e1_page(self, run):
        res = run("bc4", "--e1", "--range", "0..6")
        assert res.exit_code == 0
        assert "x[2,1]" in res.output

    def test_e1_tex(self, run):
        res = run("--format", "tex", "e1", "--range", "0..3")
        assert res.output.count("\\begin{tikzpicture}") == 3

    def test_small_window(self, run):
        res = run("bc4", "--a", "0..1", "--n", "0..1", "--m", "0..0")
        assert res.exit_code == 0


def test_nonflat(run):
    res = run("nonflat")
    assert res.exit_code == 0


def test_output_is_deterministic(run):
    first = run("--format", "json", "--seed", "7", "point", "--a", "-1..1", "--n", "-1..1", "--m", "-1..1")
    second = run("--format", "json", "--seed", "7", "point", "--a", "-1..1", "--n", "-1..1", "--m", "-1..1")
    assert first.exit_code == second.exit_code == 0
    assert first.output.encode() == second.output.encode()


def test_parallel_output_matches_serial(run):
    args = ["bc4", "--a", "-1..1", "--n", "0..1", "--m", "0..0"]
    serial = run("--format", "json", *args)
    parallel = run("--format", "json", "--jobs", "2", *args)
    assert serial.output == parallel.output


class TestAxioms:
    @pytest.fixture
    def fast_green(self, monkeypatch):
        monkeypatch.setattr(checks, "green_suite", lambda: {"gold relation": []})

    def test_passes(self, run, fast_green):
        res = run("--format", "json", "axioms", "--trials", "20")
        assert res.exit_code == 0
        assert all(r["pass"] for r in json.loads(res.output))

    def test_injected_fault_is_named(self, run, fast_green, monkeypatch):
        real = checks.catalog

        def broken(tag):
            if tag == "Q":
                return MackeyF2.build(1, 1, 0, res42=[[1]], tr24=[[1]])
            return real(tag)

        monkeypatch.setattr(checks, "catalog", broken)
        res = run("--format", "json", "axioms", "--trials", "5")
        assert res.exit_code == 1
        (row,) = [r for r in json.loads(res.output) if r["suite"] == "mackey axioms"]
        assert not row["pass"]
        assert any("res42 o tr24 = 1 + weyl_mid" in f for f in row["failures"])
