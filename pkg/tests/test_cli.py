import json
from pathlib import Path

import pytest

from superforms.cli import run
from superforms.report import Report

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def cli(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("SUPERFORM_THREADS", raising=False)

    def call(*argv, cache=True):
        extra = ["--cache-dir", str(tmp_path / "cache")] if cache else ["--no-cache"]
        code = run(list(argv) + extra)
        out = capsys.readouterr()
        return code, out.out, out.err

    return call


def test_series_alternants(cli):
    code, out, _ = cli("series", "alternants", "--n", "3")
    assert code == 0
    assert out.strip() == "q^3 + q^2 t + q t + t^2"


def test_series_closed_forms(cli):
    assert cli("series", "alternants", "--n", "4", "--closed")[1].strip() == cli("series", "alternants", "--n", "4")[1].strip()
    a = cli("series", "invariants", "--n", "3", "--cutoff", "5", "--closed")[1]
    b = cli("series", "invariants", "--n", "3", "--cutoff", "5")[1]
    assert a == b


def test_series_quotient(cli):
    code, out, _ = cli("series", "quotient", "--n", "2")
    assert code == 0 and out.strip() == "q + t + 1"
    code, _, err = cli("series", "quotient", "--n", "2", "--closed")
    assert code == 2 and "closed" in err


def test_verify_all_n2(cli):
    code, out, _ = cli("verify", "all", "--n", "2")
    assert code == 0
    assert out.rstrip().endswith("overall: PASS")


def test_verify_json_is_parseable(cli):
    code, out, _ = cli("verify", "degree-bound", "--n", "3", "--format", "json")
    assert code == 0
    (rep,) = json.loads(out)
    assert rep["pass"] and rep["name"] == "degree-bound"


def test_basis_omega_json(cli):
    code, out, _ = cli("basis", "omega", "--n", "2", "--format", "json")
    assert code == 0
    forms = json.loads(out)["forms"]
    assert [f["form"] for f in forms] == ["1 * x1 + -1 * x2", "1 * dx(1) + -1 * dx(2)"]


def test_basis_omega_bidegree_filter(cli):
    code, out, _ = cli("basis", "omega", "--n", "3", "--bidegree", "1,1")
    assert code == 0 and out.startswith("(1,1) [2]:") and len(out.strip().splitlines()) == 1


def test_basis_harmonic_needs_bidegree(cli):
    code, _, err = cli("basis", "harmonic", "--n", "2")
    assert code == 2 and "--bidegree" in err


@pytest.mark.parametrize(
    "argv, golden",
    [
        (("basis", "omega", "--n", "3"), "basis_omega_n3.txt"),
        (("basis", "multiplicities", "--n", "4", "--format", "csv"), "multiplicities_n4.csv"),
        (("verify", "alternants", "--n", "3"), "verify_alternants_n3.txt"),
        (("verify", "theorem13", "--n", "3"), "verify_alternants_n3.txt"),
        (("conjecture", "--n", "3", "--format", "json"), "conjecture_n3.json"),
        (("series", "invariants", "--n", "3", "--format", "json"), "series_invariants_n3.json"),
    ],
)
def test_golden_outputs(cli, argv, golden):
    expected = (GOLDEN / golden).read_text()
    code, out, _ = cli(*argv, cache=False)
    assert code == 0
    assert out == expected
    # a warm cache must reproduce the same bytes
    assert cli(*argv)[1] == expected
    assert cli(*argv)[1] == expected


def test_conjecture_banner(cli):
    code, out, _ = cli("conjecture", "--n", "2")
    assert code == 0
    assert out.splitlines()[0] == "*** CONJECTURE EVIDENCE - NOT A PROOF ***"


@pytest.mark.parametrize(
    "argv",
    [
        ("bogus",),
        ("series", "alternants"),
        ("series", "alternants", "--n", "0"),
        ("verify", "nothing", "--n", "2"),
        ("basis", "omega", "--n", "2", "--bidegree", "1"),
        ("series", "alternants", "--n", "2", "--frobnicate"),
    ],
)
def test_usage_errors_exit_2(cli, argv):
    code, _, err = cli(*argv)
    assert code == 2
    assert "usage" in err or "error" in err


def test_resource_cap_exit_2(cli):
    code, _, err = cli("basis", "harmonic", "--n", "3", "--bidegree", "3,1", "--component-cap", "5")
    assert code == 2 and "resource limit" in err


def test_capped_complementarity_skips_cells(cli):
    code, out, _ = cli("verify", "complement", "--n", "3", "--component-cap", "5")
    assert code == 0 and "skipped" in out
    # the capped report must not be served to an uncapped run
    code, out, _ = cli("verify", "complement", "--n", "3")
    assert code == 0 and "skipped" not in out


def test_failed_verification_exits_1(cli, tmp_path, monkeypatch):
    import superforms.cli as cli_mod

    bad = Report("fake", 2)
    bad.add("cell", expected=1, got=0, ok=False)
    monkeypatch.setattr(cli_mod, "_verify_one", lambda kind, n, args: [bad])
    code, out, _ = cli("verify", "mult", "--n", "2", cache=False)
    assert code == 1 and "FAIL" in out


def test_cache_roundtrip_and_clear(cli, tmp_path):
    cli("series", "alternants", "--n", "3")
    entries = list((tmp_path / "cache").glob("*.json"))
    assert entries
    code, out, _ = cli("cache", "clear")
    assert code == 0 and out.strip() == f"removed {len(entries)} cached entries"
    assert not list((tmp_path / "cache").glob("*.json"))


def test_corrupt_cache_is_ignored(cli, tmp_path):
    cli("verify", "top-degree", "--n", "3")
    for path in (tmp_path / "cache").glob("*.json"):
        path.write_text("{not json")
    code, out, _ = cli("verify", "top-degree", "--n", "3")
    assert code == 0 and "overall: PASS" in out


def test_config_file(cli, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"component_cap": 5}))
    code, _, err = cli("basis", "harmonic", "--n", "3", "--bidegree", "3,1", "--config", str(cfg))
    assert code == 2 and "resource limit" in err
    cfg.write_text(json.dumps({"colour": "blue"}))
    code, _, err = cli("series", "alternants", "--n", "2", "--config", str(cfg))
    assert code == 2 and "unknown config keys" in err


def test_threads_flag_gives_same_output(cli):
    one = cli("verify", "complement", "--n", "3", "--threads", "1", cache=False)[1]
    two = cli("verify", "complement", "--n", "3", "--threads", "2", cache=False)[1]
    assert one == two
