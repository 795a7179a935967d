"""JSON interchange and DOT rendering."""

from __future__ import annotations

import json
from pathlib import Path

from .labeling import EdgeLabeling, labeling_from_json, labeling_to_json
from .poset import Poset, build_poset


def poset_to_json(P: Poset, labeling: EdgeLabeling | None = None) -> dict:
    data = {
        "n": P.n,
        "covers": [list(e) for e in P.covers],
        "names": {str(i): s for i, s in enumerate(P.names)},
    }
    if labeling is not None:
        data.update(labeling_to_json(labeling))
    return data


def poset_from_json(data: dict) -> tuple[Poset, EdgeLabeling | None]:
    P = build_poset(data["covers"], int(data["n"]), data.get("names"))
    lam = labeling_from_json(P, data) if "labels" in data else None
    return P, lam


def load_poset(path: str | Path) -> tuple[Poset, EdgeLabeling | None]:
    with open(path) as fh:
        return poset_from_json(json.load(fh))


def dumps(data) -> str:
    """Canonical JSON: sorted keys, fixed separators."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def _label_text(label) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(str(v) for v in label) + ")"
    return str(label)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(P: Poset, labeling: EdgeLabeling | None = None, title: str = "P") -> str:
    """Hasse diagram, one rank per row, bottom to top."""
    lines = [f"digraph {_quote(title)} {{", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    for x in range(P.n):
        lines.append(f"  n{x} [label={_quote(P.names[x])}];")
    for level in P.by_rank:
        lines.append("  { rank=same; " + " ".join(f"n{x};" for x in level) + " }")
    for a, b in P.covers:
        attr = ""
        if labeling is not None:
            attr = f" [label={_quote(_label_text(labeling.edge(a, b)))}]"
        lines.append(f"  n{a} -> n{b}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
