"""Optional JSON config file: resource cap, pool width, cache location."""

from __future__ import annotations

import json
from dataclasses import dataclass

KEYS = {"component_cap", "workers", "cache_dir"}


@dataclass(frozen=True)
class Config:
    component_cap: int | None = None
    workers: int | None = None
    cache_dir: str | None = None


def load_config(path: str | None) -> Config:
    if path is None:
        return Config()
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    unknown = set(data) - KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for name in ("component_cap", "workers"):
        value = data.get(name)
        if value is not None and (not isinstance(value, int) or isinstance(value, bool) or value < 1):
            raise ValueError(f"{name} must be a positive integer")
    cache_dir = data.get("cache_dir")
    if cache_dir is not None and not isinstance(cache_dir, str):
        raise ValueError("cache_dir must be a string")
    return Config(data.get("component_cap"), data.get("workers"), cache_dir)
