"""Structure-constants JSON files and deterministic serialization.

A structure file lists the basis, an optional distinguished unit, the
counit (label -> scalar string, zero when omitted), one explicit
coproduct entry list per basis label, and an optional rack section
keyed by "a,b" pairs.  Scalars are canonical strings so identical
structures serialize to byte-identical JSON.
"""

from __future__ import annotations

import json

from .coalgebra import FinCoalgebra
from .errors import StructureError
from .rack import LeibnizAlgebra, RackBialgebra
from .scalars import DualScalar, ZERO, format_scalar, parse_dual, parse_scalar

RINGS = ("Q", "Q[eps]")


def _parse_value(data, ring, where):
    try:
        if ring == "Q[eps]":
            return parse_dual(str(data))
        return parse_scalar(str(data))
    except ValueError as exc:
        raise StructureError(f"{where}: {exc}") from None


def parse_structure(data):
    """Parse a structure dict (or JSON text) into a RackBialgebra, or a
    FinCoalgebra when the rack section is absent or empty."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise StructureError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise StructureError("top level must be an object")
    ring = data.get("ring", "Q")
    if ring not in RINGS:
        raise StructureError(f"unknown ring tag {ring!r}")
    labels = data.get("basis")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise StructureError("'basis' must be a list of labels")
    if len(set(labels)) != len(labels):
        raise StructureError("duplicate basis labels")
    index = {lab: i for i, lab in enumerate(labels)}

    def look(lab, where):
        if lab not in index:
            raise StructureError(f"{where}: unknown label {lab!r}")
        return index[lab]

    unit_index = None
    if "unit" in data and data["unit"] is not None:
        unit_index = look(data["unit"], "unit")

    counit = [ZERO] * len(labels)
    for lab, s in (data.get("counit") or {}).items():
        counit[look(lab, "counit")] = _parse_value(s, ring, f"counit[{lab}]")

    cop = data.get("coproduct")
    if not isinstance(cop, dict):
        raise StructureError("'coproduct' section is required")
    missing = [lab for lab in labels if lab not in cop]
    if missing:
        raise StructureError(f"coproduct entries missing for {missing}")
    extra = [lab for lab in cop if lab not in index]
    if extra:
        raise StructureError(f"coproduct: unknown labels {extra}")
    comul = []
    for lab in labels:
        ent = {}
        for item in cop[lab]:
            if not (isinstance(item, list) and len(item) == 3):
                raise StructureError(f"coproduct[{lab}]: entries are [l1, l2, scalar]")
            l1, l2, s = item
            key = (look(l1, f"coproduct[{lab}]"), look(l2, f"coproduct[{lab}]"))
            if key in ent:
                raise StructureError(f"coproduct[{lab}]: duplicate entry {l1},{l2}")
            ent[key] = _parse_value(s, ring, f"coproduct[{lab}]")
        comul.append(ent)
    coalg = FinCoalgebra(labels, comul, counit, unit_index)

    rack_section = data.get("rack") or {}
    if not rack_section:
        return coalg
    rack = {}
    for key, items in rack_section.items():
        parts = key.split(",")
        if len(parts) != 2:
            raise StructureError(f"rack key {key!r} must be 'a,b'")
        i, j = look(parts[0], f"rack[{key}]"), look(parts[1], f"rack[{key}]")
        if (i, j) in rack:
            raise StructureError(f"rack: duplicate key {key!r}")
        vec = {}
        for item in items:
            if not (isinstance(item, list) and len(item) == 2):
                raise StructureError(f"rack[{key}]: entries are [label, scalar]")
            lab, s = item
            k = look(lab, f"rack[{key}]")
            if (k,) in vec:
                raise StructureError(f"rack[{key}]: duplicate entry {lab}")
            vec[(k,)] = _parse_value(s, ring, f"rack[{key}]")
        rack[(i, j)] = vec
    return RackBialgebra(coalg, rack)


def _has_eps(value) -> bool:
    return isinstance(value, DualScalar) and bool(value.eps)


def serialize_structure(obj) -> dict:
    """Structure dict for a RackBialgebra or FinCoalgebra; round-trip
    stable under parse_structure."""
    if isinstance(obj, RackBialgebra):
        coalg, rack = obj.coalgebra, obj.rack
    else:
        coalg, rack = obj, None
    labels = coalg.labels
    values = [v for ent in coalg.comul for v in ent.values()]
    if rack:
        values += [v for vec in rack.values() for v in vec.values()]
    ring = "Q[eps]" if any(_has_eps(v) for v in values) else "Q"
    out = {"ring": ring, "basis": list(labels)}
    if coalg.unit_index is not None:
        out["unit"] = labels[coalg.unit_index]
    if coalg.counit is not None:
        out["counit"] = {
            labels[i]: format_scalar(v) for i, v in enumerate(coalg.counit) if v
        }
    out["coproduct"] = {
        labels[k]: [
            [labels[i], labels[j], format_scalar(v)]
            for (i, j), v in sorted(coalg.comul[k].items())
        ]
        for k in range(coalg.dim)
    }
    if rack is not None:
        out["rack"] = {
            f"{labels[i]},{labels[j]}": [
                [labels[k], format_scalar(v)] for (k,), v in sorted(vec.items())
            ]
            for (i, j), vec in sorted(rack.items())
            if vec
        }
    return out


def dumps(report) -> str:
    """Canonical JSON: sorted keys, UTF-8, two-space indent."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


def parse_leibniz(data) -> LeibnizAlgebra:
    """{"labels": [...], "bracket": {"x,y": [[label, scalar], ...]}}"""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise StructureError(f"invalid JSON: {exc}") from None
    labels = data.get("labels")
    if not isinstance(labels, list):
        raise StructureError("'labels' must be a list")
    index = {lab: i for i, lab in enumerate(labels)}
    bracket = {}
    for key, items in (data.get("bracket") or {}).items():
        parts = key.split(",")
        if len(parts) != 2 or parts[0] not in index or parts[1] not in index:
            raise StructureError(f"bracket key {key!r} must name two basis labels")
        vec = {}
        for lab, s in items:
            if lab not in index:
                raise StructureError(f"bracket[{key}]: unknown label {lab!r}")
            vec[(index[lab],)] = _parse_value(s, "Q", f"bracket[{key}]")
        bracket[(index[parts[0]], index[parts[1]])] = vec
    return LeibnizAlgebra(labels, bracket)


def parse_comul_perturbation(data, coalg: FinCoalgebra) -> dict:
    """{"x": [[l1, l2, scalar], ...]} -> {index: {(i, j): c}}"""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    out = {}
    for lab, items in (data or {}).items():
        k = coalg.index(lab)
        ent = {}
        for l1, l2, s in items:
            ent[(coalg.index(l1), coalg.index(l2))] = _parse_value(
                s, "Q", f"dcomul[{lab}]"
            )
        out[k] = ent
    return out


def parse_rack_perturbation(data, coalg: FinCoalgebra) -> dict:
    """{"a,b": [[label, scalar], ...]} -> {(i, j): {(k,): c}}"""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    out = {}
    for key, items in (data or {}).items():
        a, b = key.split(",")
        vec = {}
        for lab, s in items:
            vec[(coalg.index(lab),)] = _parse_value(s, "Q", f"drack[{key}]")
        out[(coalg.index(a), coalg.index(b))] = vec
    return out
