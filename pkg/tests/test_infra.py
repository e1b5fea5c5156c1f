import json

import pytest

from superforms.cache import ResultCache
from superforms.config import Config, load_config
from superforms.parallel import ENV_THREADS, map_cells, resolve_workers
from superforms.report import Report


def _square_plus(a, b):
    return a * a + b


# -- report -----------------------------------------------------------------

def test_report_pass_fail_and_informational():
    rep = Report("demo", 2)
    rep.add([0, 0], expected=1, got=1, ok=True)
    rep.add("extra", expected=1, got=2, ok=False, informational=True)
    assert rep.passed and rep.failures == []
    assert "diff" in rep.table()
    rep.add([1, 0], expected=1, got=0, ok=False)
    assert not rep.passed and len(rep.failures) == 1
    assert "FAIL" in rep.table()


def test_report_json_roundtrip_and_digest():
    rep = Report("demo", 3)
    rep.add([1, 1], expected=2, got=2, ok=True, rank=2)
    rep.note("hello")
    back = Report.from_json(json.loads(rep.dumps()))
    assert back.dumps() == rep.dumps()
    assert back.digest() == rep.digest()


# -- cache ------------------------------------------------------------------

def test_cache_put_get(tmp_path):
    cache = ResultCache(tmp_path)
    key = cache.key("series", 3, (1, 1), cutoff=4)
    assert cache.get(key) is None
    cache.put(key, {"a": 1})
    assert cache.get(key) == {"a": 1}
    assert cache.get(cache.key("series", 3, (1, 1), cutoff=5)) is None


def test_cache_discards_corrupt_entries(tmp_path):
    cache = ResultCache(tmp_path)
    key = cache.key("k", 2)
    cache.put(key, [1, 2])
    (path,) = tmp_path.glob("*.json")
    path.write_text("garbage{")
    assert cache.get(key) is None
    assert not path.exists()


def test_cache_discards_mismatched_key(tmp_path):
    cache = ResultCache(tmp_path)
    key = cache.key("k", 2)
    cache.put(key, 5)
    (path,) = tmp_path.glob("*.json")
    path.write_text(json.dumps({"key": cache.key("other", 2), "value": 5}))
    assert cache.get(key) is None


def test_cache_disabled(tmp_path):
    cache = ResultCache(tmp_path, enabled=False)
    key = cache.key("k", 2)
    cache.put(key, 1)
    assert cache.get(key) is None
    assert not list(tmp_path.iterdir())


def test_cache_clear(tmp_path):
    cache = ResultCache(tmp_path)
    for n in range(3):
        cache.put(cache.key("k", n), n)
    assert cache.clear() == 3
    assert ResultCache(tmp_path / "missing").clear() == 0


# -- config -----------------------------------------------------------------

def test_config_defaults_and_values(tmp_path):
    assert load_config(None) == Config()
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"component_cap": 100, "workers": 2, "cache_dir": "/tmp/x"}))
    assert load_config(str(p)) == Config(100, 2, "/tmp/x")


@pytest.mark.parametrize(
    "payload",
    [[1, 2], {"workers": 0}, {"workers": "2"}, {"component_cap": True}, {"cache_dir": 3}, {"other": 1}],
)
def test_config_rejects_bad_values(tmp_path, payload):
    p = tmp_path / "c.json"
    p.write_text(json.dumps(payload))
    with pytest.raises(ValueError):
        load_config(str(p))


# -- parallel ---------------------------------------------------------------

def test_resolve_workers_precedence(monkeypatch):
    monkeypatch.delenv(ENV_THREADS, raising=False)
    assert resolve_workers() == 1
    assert resolve_workers(None, 3) == 3
    monkeypatch.setenv(ENV_THREADS, "2")
    assert resolve_workers(None, 3) == 2
    assert resolve_workers(4, 3) == 4
    monkeypatch.setenv(ENV_THREADS, "many")
    with pytest.raises(ValueError):
        resolve_workers()
    with pytest.raises(ValueError):
        resolve_workers(0)


def test_map_cells_keeps_order():
    cells = [(i, -i) for i in range(10)]
    expected = [_square_plus(*c) for c in cells]
    assert map_cells(_square_plus, cells, workers=1) == expected
    assert map_cells(_square_plus, cells, workers=3) == expected
