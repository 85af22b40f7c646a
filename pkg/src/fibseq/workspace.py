"""Workspace files: named complexes, chain maps and squares, as JSON.

One file holds everything a command needs, because squares and sequence
commands reference several named objects atomically:

    {
      "complexes": [
        {"name": "s0", "variant": "unbounded",
         "ranks": {"0": 1}, "diffs": {}},
        ...
      ],
      "maps": {
        "times2": {"source": "s0", "target": "s0",
                   "components": {"0": [["2"]]}}
      },
      "squares": {
        "kernel_sq": {"a_top": "...", "a_left": "...",
                      "b_right": "...", "c_bottom": "..."}
      }
    }

Matrices are arrays of row arrays of decimal integer strings; degrees are
decimal strings (possibly negative).  Everything validates on load, with
errors naming the offending object and degree.  Saving is deterministic
(sorted keys, fixed separators), so save/load round-trips are byte-exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict

from .chain import ChainComplex, ChainMap
from .errors import FibseqError, WorkspaceError
from .exactlin import IntMatrix
from .modelcat import CommSquare


def matrix_to_json(m: IntMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m.data]


def matrix_from_json(rows, cols: int, where: str) -> IntMatrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise WorkspaceError(f"{where}: matrix must be an array of row arrays")
    parsed = []
    for r in rows:
        out = []
        for x in r:
            if isinstance(x, bool) or not isinstance(x, (str, int)):
                raise WorkspaceError(f"{where}: entry {x!r} is not a decimal integer string")
            try:
                out.append(int(x))
            except ValueError:
                raise WorkspaceError(f"{where}: entry {x!r} is not a decimal integer string")
        parsed.append(out)
    try:
        return IntMatrix(parsed, cols=cols if not parsed else None)
    except FibseqError as exc:
        raise WorkspaceError(f"{where}: {exc}") from exc


def _degree(key, where: str) -> int:
    try:
        return int(key)
    except (TypeError, ValueError):
        raise WorkspaceError(f"{where}: degree key {key!r} is not a decimal integer")


def complex_to_json(name: str, cx: ChainComplex) -> dict:
    return {
        "name": name,
        "variant": cx.variant,
        "ranks": {str(n): r for n, r in cx.ranks.items()},
        "diffs": {str(n): matrix_to_json(m) for n, m in cx.diffs.items()},
    }


def complex_from_json(obj: dict) -> tuple[str, ChainComplex]:
    if not isinstance(obj, dict) or "name" not in obj:
        raise WorkspaceError("complex entry lacks a name")
    name = obj["name"]
    where = f"complex {name!r}"
    ranks = {}
    for key, r in (obj.get("ranks") or {}).items():
        n = _degree(key, where)
        if not isinstance(r, int) or r < 0:
            raise WorkspaceError(f"{where}: rank at degree {n} must be a nonnegative integer")
        ranks[n] = r
    diffs = {}
    for key, rows in (obj.get("diffs") or {}).items():
        n = _degree(key, where)
        diffs[n] = matrix_from_json(rows, ranks.get(n, 0), f"{where}, differential at degree {n}")
    try:
        cx = ChainComplex(ranks, diffs, obj.get("variant", "unbounded"))
    except FibseqError as exc:
        raise WorkspaceError(f"{where}: {exc}") from exc
    return name, cx


@dataclass
class Workspace:
    """All named objects of one session; every reference resolves."""

    complexes: Dict[str, ChainComplex] = field(default_factory=dict)
    maps: Dict[str, ChainMap] = field(default_factory=dict)
    squares: Dict[str, CommSquare] = field(default_factory=dict)
    square_refs: Dict[str, dict] = field(default_factory=dict)
    map_refs: Dict[str, tuple[str, str]] = field(default_factory=dict)

    def complex(self, name: str) -> ChainComplex:
        if name not in self.complexes:
            raise WorkspaceError(f"unknown complex {name!r}")
        return self.complexes[name]

    def chain_map(self, name: str) -> ChainMap:
        if name not in self.maps:
            raise WorkspaceError(f"unknown map {name!r}")
        return self.maps[name]

    def square(self, name: str) -> CommSquare:
        if name not in self.squares:
            raise WorkspaceError(f"unknown square {name!r}")
        return self.squares[name]

    def add_complex(self, name: str, cx: ChainComplex) -> None:
        self.complexes[name] = cx

    def add_map(self, name: str, f: ChainMap, source: str, target: str) -> None:
        self.maps[name] = f
        self.map_refs[name] = (source, target)

    def add_square(self, name: str, refs: dict) -> None:
        edges = {}
        for edge in ("a_top", "a_left", "b_right", "c_bottom"):
            if edge not in refs:
                raise WorkspaceError(f"square {name!r} lacks the edge {edge!r}")
            edges[edge] = self.chain_map(refs[edge])
        try:
            self.squares[name] = CommSquare(**edges)
        except FibseqError as exc:
            raise WorkspaceError(f"square {name!r}: {exc}") from exc
        self.square_refs[name] = dict(refs)

    def to_json(self) -> dict:
        return {
            "complexes": [
                complex_to_json(name, cx) for name, cx in sorted(self.complexes.items())
            ],
            "maps": {
                name: {
                    "source": self.map_refs[name][0],
                    "target": self.map_refs[name][1],
                    "components": {
                        str(n): matrix_to_json(m) for n, m in f.components.items()
                    },
                }
                for name, f in sorted(self.maps.items())
            },
            "squares": {name: self.square_refs[name] for name in sorted(self.squares)},
        }


def loads(text: str) -> Workspace:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise WorkspaceError("workspace must be a JSON object")
    ws = Workspace()
    for entry in obj.get("complexes", []):
        name, cx = complex_from_json(entry)
        if name in ws.complexes:
            raise WorkspaceError(f"duplicate complex name {name!r}")
        ws.add_complex(name, cx)
    for name, entry in (obj.get("maps") or {}).items():
        where = f"map {name!r}"
        if not isinstance(entry, dict):
            raise WorkspaceError(f"{where}: must be an object")
        src = ws.complex(entry.get("source"))
        tgt = ws.complex(entry.get("target"))
        comps = {}
        for key, rows in (entry.get("components") or {}).items():
            n = _degree(key, where)
            comps[n] = matrix_from_json(rows, src.rank(n), f"{where}, component at degree {n}")
        try:
            f = ChainMap(src, tgt, comps)
        except FibseqError as exc:
            raise WorkspaceError(f"{where}: {exc}") from exc
        ws.add_map(name, f, entry["source"], entry["target"])
    for name, refs in (obj.get("squares") or {}).items():
        if not isinstance(refs, dict):
            raise WorkspaceError(f"square {name!r} must be an object of map names")
        ws.add_square(name, refs)
    return ws


def load(path: str) -> Workspace:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise WorkspaceError(f"cannot read workspace {path!r}: {exc}") from exc
    return loads(text)


def dumps(ws: Workspace) -> str:
    return json.dumps(ws.to_json(), sort_keys=True, indent=2) + "\n"


def save(ws: Workspace, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(ws))
