from __future__ import annotations

import pytest

import settings
from conftest import PENTAGON
from cache import ResultCache, cache_key
from corpus import path
from workers import chunked, ordered_map


def _square(x: int) -> int:
    return x * x


def test_cache_key_depends_on_every_part():
    base = cache_key(PENTAGON, "betti", ["Q"], None)
    assert base == cache_key(PENTAGON, "betti", ["Q"], None)
    assert base != cache_key(path(5), "betti", ["Q"], None)
    assert base != cache_key(PENTAGON, "loops", ["Q"], None)
    assert base != cache_key(PENTAGON, "betti", ["Q", "Z"], None)
    assert base != cache_key(PENTAGON, "betti", ["Q"], 12)
    assert base != cache_key(PENTAGON, "betti", ["Q"], None, "koszul=True")


def test_cache_round_trip(tmp_path):
    cache = ResultCache(tmp_path)
    key = cache_key(PENTAGON, "info", ["Q"], None)
    assert cache.get(key) is None
    cache.put(key, {"b": [1, 0, 0, 5]})
    assert cache.get(key) == {"b": [1, 0, 0, 5]}
    assert (tmp_path / key[:2] / f"{key}.json").exists()
    assert not list(tmp_path.rglob("*.tmp"))


def test_half_written_entry_is_a_miss(tmp_path):
    cache = ResultCache(tmp_path)
    key = "ab" + "0" * 62
    (tmp_path / "ab").mkdir()
    (tmp_path / "ab" / f"{key}.json").write_text('{"b": [1,')
    assert cache.get(key) is None


def test_disabled_cache(tmp_path):
    cache = ResultCache(None)
    cache.put("k", {"x": 1})
    assert cache.get("k") is None


def test_chunked_preserves_order():
    values = list(range(10))
    parts = chunked(values, 3)
    assert len(parts) == 3
    assert [x for part in parts for x in part] == values
    assert chunked([], 4) == []
    assert chunked([1, 2], 8) == [[1], [2]]


def test_ordered_map_matches_serial():
    items = list(range(20))
    assert ordered_map(_square, items, workers=3) == [x * x for x in items]
    assert ordered_map(_square, items) == [x * x for x in items]


def _bound(_) -> int:
    return settings.MAX_M


def test_workers_inherit_overridden_bounds():
    before = settings.MAX_M
    with settings.bounds_overridden(MAX_M=7):
        assert ordered_map(_bound, [0, 1, 2], workers=2) == [7, 7, 7]
    assert settings.MAX_M == before


def test_only_size_bounds_can_be_overridden():
    with pytest.raises(KeyError):
        with settings.bounds_overridden(WORKERS=3):
            pass
    with pytest.raises(ValueError):
        settings.apply_bounds({"MAX_M": 0})
