"""JSON (de)serialisation of spaces, instances and function series.

Schema::

    {"space": {"type": "chain", "N": 2, "mu": ["1/2", "1/2"]},
     "functions": [["0", "1"], ["0", "1"]],
     "series": [["0", "1"], ["0", "0"]]}      # optional, p_1..p_T

Lattice spaces use ``"type": "lattice"`` and ``"ground_size"``; masses
and function values are listed in bitmask order ``0 .. 2^g - 1``.
"""
from __future__ import annotations

import json
from pathlib import Path

from .algebra import format_rational, parse_rational
from .errors import DomainError
from .functional import FunctionalInstance
from .series import FunctionSeries
from .spaces import ChainSpace, MonotoneFn, Space, SubsetLattice


def space_to_json(space: Space) -> dict:
    mu = [format_rational(m) for m in space.mu]
    if isinstance(space, ChainSpace):
        return {"type": "chain", "N": space.N, "mu": mu}
    return {"type": "lattice", "ground_size": space.ground_size, "mu": mu}


def space_from_json(d: dict) -> Space:
    try:
        kind = d["type"]
        mu = tuple(parse_rational(s) for s in d["mu"])
        if kind == "chain":
            if int(d["N"]) != len(mu):
                raise DomainError(f"N={d['N']} but {len(mu)} masses given")
            return ChainSpace(mu)
        if kind == "lattice":
            return SubsetLattice(int(d["ground_size"]), mu)
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed space: {exc}") from exc
    raise DomainError(f"unknown space type {kind!r}")


def fn_to_json(f: MonotoneFn) -> list[str]:
    return [format_rational(v) for v in f.values]


def fn_from_json(values) -> MonotoneFn:
    if not isinstance(values, list):
        raise DomainError("a function must be a list of rational strings")
    return MonotoneFn(tuple(parse_rational(str(v)) for v in values))


def instance_to_json(inst: FunctionalInstance) -> dict:
    return {"space": space_to_json(inst.space),
            "functions": [fn_to_json(f) for f in inst.functions]}


def instance_from_json(d: dict) -> FunctionalInstance:
    space = space_from_json(d["space"])
    fns = d.get("functions")
    if not fns:
        raise DomainError("instance needs a nonempty 'functions' list")
    return FunctionalInstance(space, tuple(fn_from_json(f) for f in fns))


def series_to_json(p: FunctionSeries) -> dict:
    return {"space": space_to_json(p.space),
            "series": [fn_to_json(f) for f in p.coefficients]}


def series_from_json(d: dict) -> FunctionSeries:
    space = space_from_json(d["space"])
    if not d.get("series"):
        raise DomainError("instance needs a nonempty 'series' list")
    return FunctionSeries(space, tuple(fn_from_json(f) for f in d["series"]))


def load(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON ({exc})") from exc


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
