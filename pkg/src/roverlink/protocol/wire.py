"""Dataclass <-> JSON-dict conversion for the wire format.

Wire objects are plain dicts with lowerCamelCase keys; enums travel as their
string values, optional fields as null. Decoding is strict: unknown keys or
wrong shapes raise ValueError so a corrupt payload can never half-apply.
"""

from __future__ import annotations

import dataclasses
import math
import re
import types
import typing
from enum import Enum

_CAMEL_RE = re.compile(r"([a-z0-9])([A-Z])")
_CAMEL_CACHE: dict[str, str] = {}
_FIELD_CACHE: dict[type, tuple[tuple[str, str], ...]] = {}


def to_camel(name: str) -> str:
    cached = _CAMEL_CACHE.get(name)
    if cached is None:
        head, *rest = name.split("_")
        cached = head + "".join(part[:1].upper() + part[1:] for part in rest)
        _CAMEL_CACHE[name] = cached
    return cached


def to_snake(name: str) -> str:
    return _CAMEL_RE.sub(r"\1_\2", name).lower()


def _field_names(cls) -> tuple[tuple[str, str], ...]:
    cached = _FIELD_CACHE.get(cls)
    if cached is None:
        cached = tuple((f.name, to_camel(f.name)) for f in dataclasses.fields(cls))
        _FIELD_CACHE[cls] = cached
    return cached


def to_wire(value):
    """Recursively convert a value into JSON-serializable primitives."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite float {value!r} cannot go on the wire")
        return float(value)
    if isinstance(value, Enum):
        return value.value
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {
            camel: to_wire(getattr(value, name))
            for name, camel in _field_names(type(value))
        }
    if isinstance(value, (list, tuple)):
        return [to_wire(item) for item in value]
    raise TypeError(f"cannot encode {type(value).__name__} for the wire")


@typing.no_type_check
def _build(hint, value):
    origin = typing.get_origin(hint)

    if origin in (typing.Union, types.UnionType):
        args = typing.get_args(hint)
        if value is None:
            if type(None) in args:
                return None
            raise ValueError(f"null not allowed for {hint}")
        for arg in args:
            if arg is type(None):
                continue
            return _build(arg, value)
        raise ValueError(f"no usable type in {hint}")

    if value is None:
        raise ValueError(f"null not allowed for {hint}")

    if origin in (list, tuple):
        if not isinstance(value, list):
            raise ValueError(f"expected list for {hint}, got {type(value).__name__}")
        args = typing.get_args(hint)
        item_hint = args[0] if args else typing.Any
        items = [_build(item_hint, item) for item in value]
        return tuple(items) if origin is tuple else items

    if isinstance(hint, type) and issubclass(hint, Enum):
        try:
            return hint(value)
        except ValueError:
            raise ValueError(f"{value!r} is not a valid {hint.__name__}") from None

    if dataclasses.is_dataclass(hint):
        return from_wire(hint, value)

    if hint is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"expected number, got {value!r}")
        if not math.isfinite(value):
            raise ValueError(f"non-finite number {value!r}")
        return float(value)
    if hint is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"expected integer, got {value!r}")
        return value
    if hint is bool:
        if not isinstance(value, bool):
            raise ValueError(f"expected boolean, got {value!r}")
        return value
    if hint is str:
        if not isinstance(value, str):
            raise ValueError(f"expected string, got {value!r}")
        return value
    if hint is typing.Any:
        return value
    raise ValueError(f"unsupported wire type {hint!r}")


_HINTS_CACHE: dict[type, dict[str, typing.Any]] = {}


def from_wire(cls, data):
    """Build dataclass ``cls`` from a wire dict, strictly."""
    if not dataclasses.is_dataclass(cls):
        raise TypeError(f"{cls!r} is not a dataclass")
    if not isinstance(data, dict):
        raise ValueError(f"expected object for {cls.__name__}, got {type(data).__name__}")

    hints = _HINTS_CACHE.get(cls)
    if hints is None:
        hints = typing.get_type_hints(cls)
        _HINTS_CACHE[cls] = hints

    fields_by_name = {f.name: f for f in dataclasses.fields(cls)}
    kwargs = {}
    seen = set()
    for name, camel in _field_names(cls):
        seen.add(camel)
        if camel in data:
            kwargs[name] = _build(hints[name], data[camel])
        else:
            f = fields_by_name[name]
            if f.default is dataclasses.MISSING and f.default_factory is dataclasses.MISSING:
                raise ValueError(f"{cls.__name__} wire object missing required key {camel!r}")
    unknown = set(data) - seen
    if unknown:
        raise ValueError(f"{cls.__name__} wire object has unknown keys {sorted(unknown)}")
    return cls(**kwargs)
