"""JSON documents for every instance and solution kind.

Canonical form: set elements ascending, arcs ordered by id, sign lists of
"+"/"-" strings. Member order inside a family is meaningful (the algorithms
scan it) and is kept as given.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .core import Arc, Family, GroundSet, Signing, elements, mask_of
from .errors import MalformedInput

KINDS = ("family", "signing", "circle", "plane", "lattice", "circle_solution", "dijoin_solution")


def _need(doc: dict, *keys: str) -> None:
    if not isinstance(doc, dict):
        raise MalformedInput("expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise MalformedInput(f"missing keys: {', '.join(missing)}")


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise MalformedInput(f"{what} must be an integer, got {x!r}")
    return x


def _index_list(items, n: int, what: str) -> list[int]:
    if not isinstance(items, list):
        raise MalformedInput(f"{what} must be a list")
    out = []
    for x in items:
        x = _int(x, what)
        if not 0 <= x < n:
            raise MalformedInput(f"{what}: index {x} out of range 0..{n - 1}")
        out.append(x)
    return out


def _names(doc: dict, n: int):
    names = doc.get("names")
    if names is None:
        return None
    if not isinstance(names, list) or len(names) != n:
        raise MalformedInput("names must be a list with one entry per element")
    return tuple(str(x) for x in names)


# ---------------------------------------------------------------- families and signings


def family_from_json(doc: dict) -> Family:
    _need(doc, "n", "sets")
    n = _int(doc["n"], "n")
    if n < 1:
        raise MalformedInput("n must be positive")
    sets = doc["sets"]
    if not isinstance(sets, list):
        raise MalformedInput("sets must be a list of index lists")
    masks = tuple(mask_of(_index_list(s, n, "set")) for s in sets)
    return Family(GroundSet(n, _names(doc, n)), masks)


def family_to_json(F: Family) -> dict:
    doc: dict[str, Any] = {"n": F.n}
    if F.ground.names:
        doc["names"] = list(F.ground.names)
    doc["sets"] = [elements(s) for s in F.sets]
    return doc


def signing_from_json(doc: dict) -> Signing:
    _need(doc, "signs")
    signs = doc["signs"]
    if isinstance(signs, str):
        signs = list(signs)
    if not isinstance(signs, list) or any(s not in ("+", "-", "?") for s in signs):
        raise MalformedInput('signs must be a list of "+", "-" (or "?" for unsigned)')
    return Signing.parse(signs)


def signing_to_json(sigma: Signing) -> dict:
    return {"signs": list(sigma.text())}


# ---------------------------------------------------------------- circle


def circle_from_json(doc: dict):
    from .circle import CircleInstance
    _need(doc, "n", "signs", "sets")
    F = family_from_json(doc)
    sigma = signing_from_json(doc)
    if len(sigma) != F.n:
        raise MalformedInput("one sign per circle vertex")
    return CircleInstance(sigma, F)


def circle_to_json(inst) -> dict:
    doc = family_to_json(inst.family)
    doc["signs"] = list(inst.sigma.text())
    return {k: doc[k] for k in ("n", "names", "signs", "sets") if k in doc}


def circle_solution_from_json(doc: dict, n: int | None = None) -> list[Arc]:
    _need(doc, "arcs")
    out = []
    for pair in doc["arcs"]:
        if not isinstance(pair, list) or len(pair) != 2:
            raise MalformedInput("each circle arc is a [tail, head] pair")
        t, h = (_int(x, "arc end") for x in pair)
        if n is not None and not (0 <= t < n and 0 <= h < n):
            raise MalformedInput(f"arc [{t}, {h}] leaves the circle")
        out.append(Arc(t, h))
    return out


def circle_solution_to_json(arcs) -> dict:
    return {"arcs": [[a.tail, a.head] for a in sorted(arcs)]}


# ---------------------------------------------------------------- plane digraphs


def plane_from_json(doc: dict):
    from .plane import ArcRecord, PlaneDigraph
    _need(doc, "vertices", "arcs", "rotation")
    verts = doc["vertices"]
    if isinstance(verts, list):
        n, names = len(verts), tuple(str(x) for x in verts)
    else:
        n, names = _int(verts, "vertices"), None
    arcs = []
    for a in doc["arcs"]:
        _need(a, "id", "tail", "head", "w")
        arcs.append(ArcRecord(_int(a["id"], "arc id"), _int(a["tail"], "tail"),
                              _int(a["head"], "head"), _int(a["w"], "weight")))
    rot = doc["rotation"]
    if not isinstance(rot, list) or any(not isinstance(r, list) for r in rot):
        raise MalformedInput("rotation must be a list of arc-id lists")
    return PlaneDigraph(n, tuple(arcs), tuple(tuple(_int(e, "rotation entry") for e in r) for r in rot),
                        names)


def plane_to_json(D) -> dict:
    return {
        "vertices": list(D.names) if D.names else D.n,
        "arcs": [{"id": a.id, "tail": a.tail, "head": a.head, "w": a.w} for a in D.arcs],
        "rotation": [list(r) for r in D.rotation],
    }


def dijoin_solution_from_json(doc: dict):
    from .dijoin import DijoinPair
    _need(doc, "J1", "J2")
    return DijoinPair.of((_int(e, "arc id") for e in doc["J1"]),
                         (_int(e, "arc id") for e in doc["J2"]))


def dijoin_solution_to_json(pair) -> dict:
    return {"J1": sorted(pair.J1), "J2": sorted(pair.J2)}


# ---------------------------------------------------------------- lattice families


def lattice_from_json(doc: dict):
    from .oracle import LatticeFamily
    _need(doc, "n", "min", "max", "preorder")
    n = _int(doc["n"], "n")
    pre = []
    for p in doc["preorder"]:
        if not isinstance(p, list) or len(p) != 2:
            raise MalformedInput("preorder entries are [x, y] pairs")
        x, y = _index_list(p, n, "preorder")
        pre.append((x, y))
    return LatticeFamily(n, mask_of(_index_list(doc["min"], n, "min")),
                         mask_of(_index_list(doc["max"], n, "max")), tuple(pre))


def lattice_to_json(L) -> dict:
    return {"n": L.n, "min": elements(L.min_set), "max": elements(L.max_set),
            "preorder": [list(p) for p in L.preorder]}


# ---------------------------------------------------------------- dispatch


def detect_kind(doc: Any) -> str:
    if not isinstance(doc, dict):
        raise MalformedInput("expected a JSON object")
    if "rotation" in doc:
        return "plane"
    if "preorder" in doc:
        return "lattice"
    if "J1" in doc:
        return "dijoin_solution"
    if "sets" in doc:
        return "circle" if "signs" in doc else "family"
    if "signs" in doc:
        return "signing"
    if "arcs" in doc:
        return "circle_solution"
    raise MalformedInput("cannot tell what kind of document this is")


_READERS = {
    "family": family_from_json,
    "signing": signing_from_json,
    "circle": circle_from_json,
    "plane": plane_from_json,
    "lattice": lattice_from_json,
    "circle_solution": circle_solution_from_json,
    "dijoin_solution": dijoin_solution_from_json,
}


def from_json(doc: Any, kind: str | None = None):
    kind = kind or detect_kind(doc)
    if kind not in _READERS:
        raise MalformedInput(f"unknown document kind {kind}")
    return _READERS[kind](doc)


def to_json(obj) -> dict:
    from .circle import CircleInstance
    from .dijoin import DijoinPair
    from .oracle import LatticeFamily
    from .plane import PlaneDigraph
    if isinstance(obj, CircleInstance):
        return circle_to_json(obj)
    if isinstance(obj, Family):
        return family_to_json(obj)
    if isinstance(obj, Signing):
        return signing_to_json(obj)
    if isinstance(obj, PlaneDigraph):
        return plane_to_json(obj)
    if isinstance(obj, LatticeFamily):
        return lattice_to_json(obj)
    if isinstance(obj, DijoinPair):
        return dijoin_solution_to_json(obj)
    if isinstance(obj, list) and all(isinstance(a, Arc) for a in obj):
        return circle_solution_to_json(obj)
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def dumps(obj_or_doc) -> str:
    doc = obj_or_doc if isinstance(obj_or_doc, dict) else to_json(obj_or_doc)
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def read_json(path: Union[str, Path]) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc


def load(path: Union[str, Path], kind: str | None = None):
    return from_json(read_json(path), kind)


def save(obj, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(obj))
