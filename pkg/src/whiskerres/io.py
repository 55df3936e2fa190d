"""Versioned JSON artifacts.

Every document written by the CLI carries ``"schema": "whiskerres/1"`` and a
``"kind"`` tag.  Readers accept untagged documents so hand-written inputs such
as ``{"vertices": [...], "edges": [...]}`` work, but reject foreign schemas.
"""
from __future__ import annotations

import json
from pathlib import Path

from .constructions import VwcStructure, WhiskeredGraph
from .graph import Graph, graph_from_json

SCHEMA = "whiskerres/1"


def tag(kind: str, payload: dict) -> dict:
    return {"schema": SCHEMA, "kind": kind, **payload}


def untag(data: dict, kind: str | None = None) -> dict:
    schema = data.get("schema")
    if schema is not None and schema != SCHEMA:
        raise ValueError(f"unsupported schema {schema!r}; expected {SCHEMA!r}")
    if kind is not None and data.get("kind") not in (None, kind):
        raise ValueError(f"expected a {kind!r} document, got {data.get('kind')!r}")
    return {k: v for k, v in data.items() if k not in ("schema", "kind")}


def dumps(doc: dict) -> str:
    # sorted keys and fixed separators make artifacts byte-identical across runs
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def read_json(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(doc: dict, path: str | Path | None):
    text = dumps(doc)
    if path is None or str(path) == "-":
        print(text, end="")
    else:
        Path(path).write_text(text, encoding="utf-8")


def read_graph(path) -> Graph:
    data = untag(read_json(path))
    # a construct output nests the graph under "graph"
    if "vertices" not in data and "graph" in data:
        data = data["graph"]
    return graph_from_json(data)


def whiskered_to_json(wg: WhiskeredGraph) -> dict:
    return tag("whiskered-graph", {
        "graph": wg.graph.to_json(),
        "base": wg.base.to_json(),
        "partition": wg.partition.to_json(),
        "whisker_map": [list(ws) for ws in wg.whisker_map],
    })


def vwc_to_json(vs: VwcStructure) -> dict:
    return tag("vwc-structure", {
        "graph": vs.expanded.to_json(),
        "base": vs.base.to_json(),
        "multiplicities": list(vs.multiplicities),
        "offsets": list(vs.offsets),
    })
