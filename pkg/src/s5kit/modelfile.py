"""On-disk Kripke models.

A model file is a JSON object::

    {
      "sigma": 2,
      "worlds": [0, 1],
      "relation": "universal",            # or [[0, 0], [0, 1], ...]
      "valuation": {"p0": [0], "p1": []},
      "designated": 0,                    # optional
      "labels": {"0": ["p0", "box p0"]}   # optional, canonical models only
    }

Loading runs the frame validation, so a file that loads is an S5 model.
"""

from __future__ import annotations

import json
import re
from typing import Any, Optional

from .kripke import UNIVERSAL, FrameError, KripkeModel, validate_frame


class ModelFileError(ValueError):
    pass


def model_to_dict(
    M: KripkeModel,
    designated: Any = None,
    labels: Optional[dict] = None,
) -> dict:
    doc: dict = {"sigma": M.sigma, "worlds": list(M.worlds)}
    if M.access is UNIVERSAL:
        doc["relation"] = "universal"
    else:
        doc["relation"] = [list(p) for p in M.pairs()]
    doc["valuation"] = {f"p{i}": sorted(M.valuation.get(i, ()), key=M.worlds.index) for i in range(M.sigma)}
    if designated is not None:
        doc["designated"] = designated
    if labels:
        doc["labels"] = {str(w): list(v) for w, v in labels.items()}
    return doc


def dumps(M: KripkeModel, designated: Any = None, labels: Optional[dict] = None) -> str:
    return json.dumps(model_to_dict(M, designated, labels), indent=2, ensure_ascii=False) + "\n"


_ATOM_KEY = re.compile(r"p?(\d+)$")


def model_from_dict(doc: dict) -> tuple[KripkeModel, Any]:
    try:
        worlds = doc["worlds"]
    except (KeyError, TypeError):
        raise ModelFileError("model file needs a 'worlds' list") from None
    if not isinstance(worlds, list):
        raise ModelFileError("'worlds' must be a list")
    rel = doc.get("relation", "universal")
    if rel == "universal":
        access = UNIVERSAL
    elif isinstance(rel, list) and all(isinstance(p, list) and len(p) == 2 for p in rel):
        access = [tuple(p) for p in rel]
    else:
        raise ModelFileError("'relation' must be \"universal\" or a list of [w, v] pairs")
    valuation = {}
    for key, ws in (doc.get("valuation") or {}).items():
        m = _ATOM_KEY.match(str(key))
        if not m:
            raise ModelFileError(f"bad atom key {key!r} in valuation")
        valuation[int(m.group(1))] = ws
    sigma = doc.get("sigma")
    try:
        M = validate_frame(worlds, access, valuation, sigma)
    except FrameError as e:
        raise ModelFileError(str(e)) from e
    designated = doc.get("designated")
    if designated is not None and designated not in M.worlds:
        raise ModelFileError(f"designated world {designated!r} is not a world")
    return M, designated


def loads(text: str) -> tuple[KripkeModel, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFileError(f"not JSON: {e}") from None
    return model_from_dict(doc)


def load(path: str) -> tuple[KripkeModel, Any]:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def to_text(M: KripkeModel, designated: Any = None, labels: Optional[dict] = None) -> str:
    out = []
    for w in M.worlds:
        mark = "*" if w == designated else " "
        atoms = " ".join(f"p{i}" for i in M.true_atoms(w)) or "-"
        line = f"{mark} world {w}: {atoms}"
        if labels and w in labels:
            line += "   " + "{" + ", ".join(labels[w]) + "}"
        out.append(line)
    if M.access is UNIVERSAL:
        out.append("  access: universal")
    else:
        classes = " ".join("{" + ", ".join(str(w) for w in c) + "}" for c in M.classes())
        out.append(f"  access classes: {classes}")
    return "\n".join(out) + "\n"


def to_dot(M: KripkeModel, designated: Any = None, name: str = "model") -> str:
    """Clusters per equivalence class, undirected edges inside each class."""
    out = [f"graph {name} {{", "  node [shape=circle];"]
    for ci, cls in enumerate(M.classes()):
        out.append(f"  subgraph cluster_{ci} {{")
        for w in cls:
            atoms = ",".join(f"p{i}" for i in M.true_atoms(w))
            style = ", peripheries=2" if w == designated else ""
            out.append(f'    "{w}" [label="{w}\\n{atoms}"{style}];')
        for i, w in enumerate(cls):
            for v in cls[i + 1:]:
                out.append(f'    "{w}" -- "{v}";')
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"
