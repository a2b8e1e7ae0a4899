"""JSON documents: canonical emission and schema-checked ingestion."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import FramedModuliError, SchemaError
from .kernel import QQ, Field, Matrix
from .quiver import ExtendedQuiver, FramedShape, Quiver
from .rep import FramedRep


def dumps(doc: Any) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from None


def field_from_doc(doc: dict, default: Field = QQ) -> Field:
    d = doc.get("field")
    if d is None:
        return default
    try:
        return Field.from_descriptor(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad field descriptor {d!r}: {exc}") from None


def shape_to_json(quiver: Quiver, shape: FramedShape, field: Field = QQ) -> dict:
    return {"field": field.descriptor(), "quiver": quiver.to_json(),
            "alpha": list(shape.alpha), "zeta": list(shape.zeta)}


def shape_from_json(doc: dict) -> tuple[Quiver, FramedShape, Field]:
    """Quiver, shape and field from a document; extra keys are ignored."""
    if not isinstance(doc, dict):
        raise SchemaError("expected a JSON object")
    try:
        quiver = Quiver.from_json(doc["quiver"])
        shape = FramedShape(tuple(doc["alpha"]), tuple(doc["zeta"]))
    except KeyError as exc:
        raise SchemaError(f"missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad quiver or shape: {exc}") from None
    shape.check(quiver)
    return quiver, shape, field_from_doc(doc)


def _matrix_doc(m: Matrix) -> list:
    return m.tolist(as_str=True)


def _parse_matrix(rows: Any, field: Field, where: str) -> list:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError(f"{where}: a matrix is a list of rows")
    try:
        return [[field.parse(str(x)) for x in r] for r in rows]
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}: {exc}") from None


def rep_to_json(rep: FramedRep) -> dict:
    doc = shape_to_json(rep.quiver, rep.shape, rep.field)
    doc["arrows"] = {a.name: _matrix_doc(m) for a, m in zip(rep.quiver.arrows, rep.maps)}
    doc["framing"] = {str(i + 1): _matrix_doc(m) for i, m in enumerate(rep.framing)}
    return doc


def rep_from_json(doc: dict) -> FramedRep:
    quiver, shape, field = shape_from_json(doc)
    arrows = doc.get("arrows", {})
    framing = doc.get("framing", {})
    if not isinstance(arrows, dict) or not isinstance(framing, dict):
        raise SchemaError("arrows and framing must be objects")
    al = shape.alpha
    amats = {}
    for name, rows in arrows.items():
        try:
            a = quiver.arrows[quiver.arrow_index(name)]
        except FramedModuliError:
            raise SchemaError(f"unknown arrow {name!r}") from None
        amats[name] = Matrix(field, _parse_matrix(rows, field, f"arrow {name}"), al[a.tail - 1])
    fmats = {}
    for key, rows in framing.items():
        try:
            v = int(key)
        except ValueError:
            raise SchemaError(f"framing key {key!r} is not a vertex number") from None
        if not 1 <= v <= quiver.n:
            raise SchemaError(f"framing key {key!r} outside 1..{quiver.n}")
        fmats[v] = Matrix(field, _parse_matrix(rows, field, f"framing {key}"), al[v - 1])
    return FramedRep.build(quiver, shape, amats, fmats, field)


def extended(quiver: Quiver, shape: FramedShape) -> ExtendedQuiver:
    return ExtendedQuiver(quiver, shape.zeta)
