"""JSON documents: spaces, level families, tables and maps.

Dumps are canonical (sorted keys, lowest-terms rationals, fixed indentation)
so that equal objects serialize to identical bytes.
"""

from __future__ import annotations

import json
import os
from typing import Any, Optional

from .distributions import DistributionFunction
from .levels import LevelFamily, LevelProfile
from .morphisms import SpaceMap
from .probmet import FinitePMSpace, pair_key
from .systems import table_from_json
from .tnorms import TNorm


class DocumentError(ValueError):
    """Malformed or inconsistent input document."""


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def detect_kind(doc: Any) -> str:
    if isinstance(doc, list):
        return "basis"
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if "alpha" in doc:
        return "space"
    if "levels" in doc:
        return "family"
    if "table" in doc:
        return "table"
    if "assign" in doc:
        return "map"
    if "basis" in doc:
        return "basis"
    raise DocumentError("cannot tell the document kind (expected 'alpha', 'levels', 'table', 'assign' or 'basis')")


def _check_keys(doc: dict, required: set, optional: set = frozenset({"provenance"})) -> None:
    missing = sorted(required - set(doc))
    if missing:
        raise DocumentError(f"missing key {missing[0]!r}")
    extra = sorted(set(doc) - required - optional)
    if extra:
        raise DocumentError(f"unexpected key {extra[0]!r}")


def _carrier(doc: dict) -> tuple[str, ...]:
    c = doc["carrier"]
    if not isinstance(c, list) or not all(isinstance(p, str) for p in c):
        raise DocumentError("'carrier' must be a list of strings")
    return tuple(c)


def _tnorm(doc: dict) -> TNorm:
    if not isinstance(doc["tnorm"], str):
        raise DocumentError("'tnorm' must be a string")
    try:
        return TNorm.parse(doc["tnorm"])
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def _pairs(mapping: Any, field: str, parse) -> dict:
    if not isinstance(mapping, dict):
        raise DocumentError(f"'{field}' must be an object")
    out = {}
    for key, value in mapping.items():
        a, sep, b = key.partition("|")
        if not sep or not a or not b or "|" in b:
            raise DocumentError(f"{field}[{key!r}]: pair key must look like 'a|b'")
        try:
            out[pair_key(a, b)] = parse(value)
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"{field}[{key!r}]: {exc}") from None
    return out


def space_from_doc(doc: dict) -> FinitePMSpace:
    _check_keys(doc, {"carrier", "tnorm", "alpha"})
    carrier, tnorm = _carrier(doc), _tnorm(doc)
    dists = _pairs(doc["alpha"], "alpha", DistributionFunction.from_json)
    try:
        return FinitePMSpace(carrier, dists, tnorm)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def space_to_doc(space: FinitePMSpace, provenance: Optional[dict] = None) -> dict:
    doc = {"carrier": list(space.carrier), "tnorm": space.tnorm.value,
           "alpha": {f"{x}|{y}": d.to_json() for (x, y), d in space.dists.items()}}
    if provenance is not None:
        doc["provenance"] = provenance
    return doc


def family_from_doc(doc: dict) -> LevelFamily:
    _check_keys(doc, {"carrier", "tnorm", "levels"})
    carrier, tnorm = _carrier(doc), _tnorm(doc)
    profiles = _pairs(doc["levels"], "levels", LevelProfile.from_json)
    try:
        return LevelFamily(carrier, profiles, tnorm)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def family_to_doc(family: LevelFamily) -> dict:
    return {"carrier": list(family.carrier), "tnorm": family.tnorm.value,
            "levels": {f"{x}|{y}": p.to_json() for (x, y), p in family.profiles.items()}}


def table_from_doc(doc: dict):
    try:
        return table_from_json(doc)
    except (TypeError, ValueError) as exc:
        raise DocumentError(str(exc)) from None


def basis_from_doc(doc: Any) -> list:
    items = doc if isinstance(doc, list) else doc.get("basis") if isinstance(doc, dict) else None
    if not isinstance(items, list):
        raise DocumentError("basis document must be a list of tables or {'basis': [...]}")
    out = []
    for k, item in enumerate(items):
        try:
            out.append(table_from_json(item))
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"basis[{k}]: {exc}") from None
    return out


def read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


def load_document(path: str) -> tuple[str, Any]:
    """Read ``path`` and parse it into ``(kind, object)``."""
    doc = read_json(path)
    kind = detect_kind(doc)
    try:
        if kind == "space":
            return kind, space_from_doc(doc)
        if kind == "family":
            return kind, family_from_doc(doc)
        if kind == "table":
            return kind, table_from_doc(doc)
        if kind == "basis":
            return kind, basis_from_doc(doc)
        return kind, doc
    except DocumentError as exc:
        raise DocumentError(f"{path}: {exc}") from None


def load_map(path: str, domain_path: Optional[str] = None, codomain_path: Optional[str] = None):
    """Map document plus the two spaces it refers to.

    ``domain``/``codomain`` entries are paths relative to the map file;
    explicit paths override them.
    """
    doc = read_json(path)
    if not isinstance(doc, dict):
        raise DocumentError(f"{path}: map document must be an object")
    _check_keys(doc, {"assign"}, {"domain", "codomain", "provenance"})
    base = os.path.dirname(os.path.abspath(path))

    def space_at(explicit, ref, role):
        target = explicit or (os.path.join(base, ref) if isinstance(ref, str) and ref else None)
        if target is None:
            raise DocumentError(f"{path}: no {role} space given")
        kind, obj = load_document(target)
        if kind != "space":
            raise DocumentError(f"{target}: {role} must be a space document")
        return obj

    X = space_at(domain_path, doc.get("domain"), "domain")
    Y = space_at(codomain_path, doc.get("codomain"), "codomain")
    assign = doc["assign"]
    if not isinstance(assign, dict) or not all(isinstance(v, str) for v in assign.values()):
        raise DocumentError(f"{path}: 'assign' must map labels to labels")
    try:
        f = SpaceMap(X.carrier, Y.carrier, assign)
    except ValueError as exc:
        raise DocumentError(f"{path}: {exc}") from None
    return f, X, Y
