"""DOT and JSON exporters (JSON schema ``dualcx/1``)."""

from __future__ import annotations

import json

from .complex import Cell, CellId, DeltaComplex, make_complex
from .errors import ParseError
from .fuzz import FuzzRunRecord
from .homology import HomologyReport

SCHEMA = "dualcx/1"


def export_dot(cx: DeltaComplex, name: str = "dualcx") -> str:
    """1-skeleton as an undirected multigraph; parallel edges are kept."""
    lines = [f"graph {json.dumps(name)} {{"]
    for cell in cx.cells[0] if cx.cells else ():
        lines.append(f"  E{cell.labels[0]};")
    for cell in cx.cells[1] if cx.dim >= 1 else ():
        a, b = cell.labels
        lines.append(f"  E{a} -- E{b} [label=\"{cell.component}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_to_dict(cx: DeltaComplex) -> dict:
    return {
        "num_divisors": cx.num_divisors,
        "ambient_dim": cx.ambient_dim,
        "cells": [[{"labels": list(c.labels), "component": c.component,
                    "facets": [list(f) for f in c.facets]} for c in level]
                  for level in cx.cells],
    }


def complex_from_dict(d: dict) -> DeltaComplex:
    cells = [[Cell(tuple(c["labels"]), c["component"], tuple(CellId(*f) for f in c["facets"]))
              for c in level] for level in d["cells"]]
    return make_complex(d["num_divisors"], cells, d.get("ambient_dim"))


def export_json(obj) -> str:
    if isinstance(obj, DeltaComplex):
        body = {"type": "complex", **complex_to_dict(obj)}
    elif isinstance(obj, HomologyReport):
        body = {"type": "homology", **obj.to_dict()}
    elif isinstance(obj, FuzzRunRecord):
        body = {"type": "fuzz-record", **obj.to_dict()}
    elif isinstance(obj, list) and all(isinstance(r, FuzzRunRecord) for r in obj):
        body = {"type": "fuzz-run", "records": [r.to_dict() for r in obj]}
    else:
        raise TypeError(f"cannot export {type(obj).__name__} as JSON")
    return json.dumps({"schema": SCHEMA, **body}, indent=1, sort_keys=True) + "\n"


def load_json(text: str):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(d, dict) or d.get("schema") != SCHEMA:
        raise ParseError(f"not a {SCHEMA} document")
    kind = d.get("type")
    if kind == "complex":
        return complex_from_dict(d)
    if kind == "homology":
        return HomologyReport.from_dict(d)
    if kind == "fuzz-record":
        return FuzzRunRecord.from_dict({k: v for k, v in d.items() if k not in ("schema", "type")})
    if kind == "fuzz-run":
        return [FuzzRunRecord.from_dict(r) for r in d["records"]]
    raise ParseError(f"unknown document type {kind!r}")
