"""The group description format: one JSON document per group.

Kinds:
  {"kind": "perm", "generators": [[2,1,3], ...]}        1-based image arrays
  {"kind": "matrix", "p": 3, "generators": [[[0,2],[1,0]], ...]}
  {"kind": "semidirect", "p": 5, "d": 2,
   "matrices": [[[...]], ...],                          row-major, mod p,
   "complement": <description> | "catalog:Q8"}          one matrix per generator
  {"kind": "catalog", "name": "SL2_3"}
  {"kind": "power", "base": <semidirect description>, "n": 2}

The shorthand string "catalog:NAME" is accepted anywhere a description is.
"""

from __future__ import annotations

import json

from .catalog import CatalogError, build_from_catalog, complement, INSTANCES, frobenius_instance
from .groups import GroupHandle, matrix_group, perm_group
from .modules import FpModule, build_semidirect, power_module


class DescriptionError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        if line is not None:
            msg = f"{msg} (line {line}, column {col})"
        super().__init__(msg)
        self.line = line
        self.col = col


def parse_description(text_or_obj) -> GroupHandle:
    """Parse a description document (text, path contents, or decoded object)."""
    obj = text_or_obj
    if isinstance(obj, str):
        s = obj.strip()
        if s.startswith("catalog:"):
            return _catalog(s.split(":", 1)[1])
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as e:
            raise DescriptionError(f"bad group description: {e.msg}", e.lineno, e.colno)
    return _from_obj(obj)


def _catalog(name: str) -> GroupHandle:
    try:
        return build_from_catalog(name)
    except CatalogError as e:
        raise DescriptionError(str(e))


def _from_obj(obj) -> GroupHandle:
    if isinstance(obj, str):
        return parse_description(obj)
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DescriptionError("group description must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "catalog":
        return _catalog(_req(obj, "name"))
    if kind == "perm":
        gens = _req(obj, "generators")
        zero_based = []
        for g in gens:
            if sorted(g) != list(range(1, len(g) + 1)):
                raise DescriptionError(f"not a 1-based permutation: {g}")
            zero_based.append(tuple(x - 1 for x in g))
        return perm_group(zero_based)
    if kind == "matrix":
        return matrix_group(_req(obj, "p"), _req(obj, "generators"))
    if kind == "semidirect":
        return build_semidirect(_module_from_obj(obj))
    if kind == "power":
        base = _req(obj, "base")
        n = _req(obj, "n")
        if isinstance(base, dict) and base.get("kind") == "semidirect":
            mod = _module_from_obj(base)
        else:
            g = _from_obj(base)
            mod = getattr(g.ops, "module", None)
            if mod is None:
                raise DescriptionError("power base must be a semidirect product")
        return build_semidirect(power_module(mod, n))
    raise DescriptionError(f"unknown description kind {kind!r}")


def _module_from_obj(obj) -> FpModule:
    p = _req(obj, "p")
    d = _req(obj, "d")
    comp = _from_obj(_req(obj, "complement"))
    mats = [tuple(tuple(r) for r in m) for m in _req(obj, "matrices")]
    for m in mats:
        if len(m) != d or any(len(r) != d for r in m):
            raise DescriptionError(f"matrix is not {d}x{d}: {m}")
    try:
        return FpModule(p, comp, mats)
    except Exception as e:
        raise DescriptionError(f"bad semidirect action: {e}")


def _req(obj: dict, key: str):
    if key not in obj:
        raise DescriptionError(f"description is missing the field {key!r}")
    return obj[key]
