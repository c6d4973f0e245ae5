"""Resolution of fixture names, file paths and inline JSON into objects."""
from __future__ import annotations

import json
import random
from pathlib import Path
from typing import Any, Mapping

from ..cech.core import SimplicialSpaceOverX
from ..cech.hypercover import hypercover_from_json
from ..finite_space import ContinuousMap, FiniteSpace, IndexedCover, SpaceError
from . import fixtures
from .groups import FiniteGroup, GroupError
from .randomgen import random_complete_cover, random_cover


class InputError(ValueError):
    """Unreadable or schema-violating input."""


def read_json(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise InputError(f"{p}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{p}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def _looks_like_path(ref: str) -> bool:
    return ref.endswith(".json") or "/" in ref


def _data(ref, what: str, where: str):
    """Return ``(name, data)``: a fixture name with no data, or parsed JSON."""
    if isinstance(ref, Mapping):
        return None, ref
    if isinstance(ref, str):
        if _looks_like_path(ref):
            return None, read_json(ref)
        return ref, None
    raise InputError(f"{where}: {what} must be a fixture name, a file path or an object")


def resolve_space(ref, where: str = "space") -> tuple[str, FiniteSpace]:
    name, data = _data(ref, "space", where)
    try:
        if name is not None:
            return name, fixtures.load_space(name)
        if not isinstance(data, Mapping):
            raise InputError(f"{where}: expected an object")
        return data.get("name", "user"), FiniteSpace.from_json(data)
    except (KeyError, SpaceError) as e:
        raise InputError(f"{where}: {e.args[0]}") from None


def resolve_cover(ref, space_name: str, base: FiniteSpace, seed: int = 0,
                  where: str = "cover") -> tuple[str, IndexedCover]:
    if ref in ("random", "random-complete"):
        rng = random.Random(seed)
        gen = random_cover if ref == "random" else random_complete_cover
        return f"{ref}:{seed}", gen(base, rng)
    name, data = _data(ref, "cover", where)
    try:
        if name is not None:
            return name, fixtures.load_cover(space_name, name, base)
        if not isinstance(data, Mapping):
            raise InputError(f"{where}: expected an object")
        return data.get("name", "user"), IndexedCover.from_json(data, base)
    except (KeyError, SpaceError) as e:
        raise InputError(f"{where}: {e.args[0]}") from None


def resolve_map(ref, where: str = "map") -> tuple[str, ContinuousMap]:
    name, data = _data(ref, "map", where)
    try:
        if name is not None:
            return name, fixtures.load_map(name)
        for key in ("source", "target", "assignment"):
            if key not in data:
                raise InputError(f"{where}: missing field '{key}'")
        _, src = resolve_space(data["source"], f"{where}.source")
        _, tgt = resolve_space(data["target"], f"{where}.target")
        return data.get("name", "user"), ContinuousMap.from_json(data, src, tgt)
    except (KeyError, SpaceError) as e:
        raise InputError(f"{where}: {e.args[0]}") from None


def resolve_group(ref, where: str = "group") -> tuple[str, FiniteGroup]:
    name, data = _data(ref, "group", where)
    try:
        if name is not None:
            return name, fixtures.load_group(name)
        return data.get("name", "user"), FiniteGroup.from_json(data)
    except (KeyError, GroupError) as e:
        raise InputError(f"{where}: {e.args[0]}") from None


def resolve_hypercover(ref, where: str = "hypercover") -> tuple[str, SimplicialSpaceOverX]:
    name, data = _data(ref, "hypercover", where)
    try:
        if name is not None:
            return name, fixtures.load_hypercover(name)
        if "base" not in data:
            raise InputError(f"{where}: missing field 'base'")
        _, base = resolve_space(data["base"], f"{where}.base")
        return data.get("name", "user"), hypercover_from_json(data, base)
    except (KeyError, ValueError) as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"{where}: {e.args[0]}") from None
