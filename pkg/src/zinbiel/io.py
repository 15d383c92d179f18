"""JSON structure files: sparse exact tensors keyed by kind.

A file looks like::

    {
      "kind": "algebra",
      "dims": {"n": 2},
      "tensors": {"product": [{"indices": [0, 0, 1], "value": "1"}]},
      "labels": ["e1", "e2"]
    }

Every tensor of the kind must be present (an empty entry list is the zero
tensor).  Values are strings ``"p/q"`` or ``"p"`` (JSON integers are also
accepted).  Unknown keys, duplicate entries and out-of-range indices are
errors that name the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

import numpy as np

from .algebra import Algebra, AlgebraMorphism, Bimodule
from .cohomology import Cochain
from .crossed import CrossedModule
from .dendriform import RotaBaxter2, TwoTermAinf, TwoTermDend
from .linalg import MalformedRational, format_scalar, nonzero_entries, parse_scalar, tensor
from .twovect import Zinbiel2Algebra
from .zinf import TwoTermZinf, ZinfMorphism


class FormatError(ValueError):
    """Problem in a structure file; the message starts with the field path."""


# kind -> (dimension names, {tensor name: shape builder})
Shape = Callable[[dict], tuple]

_SCHEMAS: dict[str, tuple[tuple[str, ...], dict[str, Shape]]] = {
    "algebra": (("n",), {"product": lambda d: (d["n"],) * 3}),
    "bimodule": (("n", "m"), {
        "left": lambda d: (d["n"], d["m"], d["m"]),
        "right": lambda d: (d["m"], d["n"], d["m"]),
    }),
    "algebra-morphism": (("n", "p"), {"matrix": lambda d: (d["p"], d["n"])}),
    "cochain": (("degree", "n", "m"), {
        "values": lambda d: (d["n"],) * d["degree"] + (d["m"],),
    }),
    "zinf": (("n0", "n1"), {
        "d": lambda d: (d["n0"], d["n1"]),
        "l2_00": lambda d: (d["n0"],) * 3,
        "l2_01": lambda d: (d["n0"], d["n1"], d["n1"]),
        "l2_10": lambda d: (d["n1"], d["n0"], d["n1"]),
        "l3": lambda d: (d["n0"],) * 3 + (d["n1"],),
    }),
    "zinf-morphism": (("n0", "n1", "p0", "p1"), {
        "f0": lambda d: (d["p0"], d["n0"]),
        "f1": lambda d: (d["p1"], d["n1"]),
        "f2": lambda d: (d["n0"], d["n0"], d["p1"]),
    }),
    "crossed": (("g", "h"), {
        "g_product": lambda d: (d["g"],) * 3,
        "h_product": lambda d: (d["h"],) * 3,
        "phi": lambda d: (d["g"], d["h"]),
        "left": lambda d: (d["g"], d["h"], d["h"]),
        "right": lambda d: (d["h"], d["g"], d["h"]),
    }),
    "ainf": (("n0", "n1"), {
        "d": lambda d: (d["n0"], d["n1"]),
        "m2_00": lambda d: (d["n0"],) * 3,
        "m2_01": lambda d: (d["n0"], d["n1"], d["n1"]),
        "m2_10": lambda d: (d["n1"], d["n0"], d["n1"]),
        "m3": lambda d: (d["n0"],) * 3 + (d["n1"],),
    }),
    "dend": (("n0", "n1"), {
        "d": lambda d: (d["n0"], d["n1"]),
        **{f"mu2_{r}_00": (lambda d: (d["n0"],) * 3) for r in (1, 2)},
        **{f"mu2_{r}_01": (lambda d: (d["n0"], d["n1"], d["n1"])) for r in (1, 2)},
        **{f"mu2_{r}_10": (lambda d: (d["n1"], d["n0"], d["n1"])) for r in (1, 2)},
        **{f"mu3_{r}": (lambda d: (d["n0"],) * 3 + (d["n1"],)) for r in (1, 2, 3)},
    }),
    "rb": (("n0", "n1"), {
        "R0": lambda d: (d["n0"], d["n0"]),
        "R1": lambda d: (d["n1"], d["n1"]),
    }),
    "zinbiel2": (("n0", "N"), {
        "source": lambda d: (d["n0"], d["N"]),
        "target": lambda d: (d["n0"], d["N"]),
        "unit": lambda d: (d["N"], d["n0"]),
        "product": lambda d: (d["N"],) * 3,
        "zinbielator": lambda d: (d["n0"],) * 3 + (d["N"],),
    }),
}
_SCHEMAS["extension"] = _SCHEMAS["crossed"]

KINDS = tuple(sorted(_SCHEMAS))
_TOP_KEYS = {"kind", "dims", "tensors", "labels", "seed"}


@dataclass
class StructureFile:
    kind: str
    dims: dict[str, int]
    tensors: dict[str, np.ndarray]
    labels: list[str] | None = None
    seed: int | None = None


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _parse_tensor(path: str, entries, shape: tuple) -> np.ndarray:
    if not isinstance(entries, list):
        raise FormatError(f"{path}: expected a list of entries")
    arr = np.empty(shape, dtype=object)
    arr.fill(parse_scalar(0))
    seen: set[tuple] = set()
    for k, entry in enumerate(entries):
        here = f"{path}[{k}]"
        if not isinstance(entry, dict):
            raise FormatError(f"{here}: expected an object with indices and value")
        unknown = set(entry) - {"indices", "value"}
        if unknown:
            raise FormatError(f"{here}: unknown key {sorted(unknown)[0]!r}")
        if "indices" not in entry or "value" not in entry:
            raise FormatError(f"{here}: entry needs both indices and value")
        idx = entry["indices"]
        if (not isinstance(idx, list) or len(idx) != len(shape)
                or not all(isinstance(i, int) and not isinstance(i, bool) for i in idx)):
            raise FormatError(f"{here}.indices: expected {len(shape)} integers")
        for axis, (i, n) in enumerate(zip(idx, shape)):
            if not 0 <= i < n:
                raise FormatError(f"{here}.indices[{axis}]: index out of range ({i} not in 0..{n - 1})")
        key = tuple(idx)
        if key in seen:
            raise FormatError(f"{here}: duplicate entry for indices {list(key)}")
        seen.add(key)
        try:
            arr[key] = parse_scalar(entry["value"])
        except MalformedRational as exc:
            raise FormatError(f"{here}.value: {exc}") from None
    return tensor(arr)


def parse_data(data: Any) -> StructureFile:
    if not isinstance(data, dict):
        raise FormatError("<root>: expected a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise FormatError(f"<root>: unknown key {sorted(unknown)[0]!r}")
    kind = data.get("kind")
    if kind not in _SCHEMAS:
        raise FormatError(f"kind: unknown kind {kind!r} (expected one of {', '.join(KINDS)})")
    dim_names, shapes = _SCHEMAS[kind]
    dims = data.get("dims")
    if not isinstance(dims, dict):
        raise FormatError("dims: missing or not an object")
    for name in dims:
        if name not in dim_names:
            raise FormatError(f"dims.{name}: unknown dimension for kind {kind!r}")
    for name in dim_names:
        v = dims.get(name)
        if v is None:
            raise FormatError(f"dims.{name}: missing")
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise FormatError(f"dims.{name}: expected a non-negative integer")
    if kind == "cochain" and not 1 <= dims["degree"] <= 4:
        raise FormatError("dims.degree: cochain degree outside 1..4")
    tensors_in = data.get("tensors")
    if not isinstance(tensors_in, dict):
        raise FormatError("tensors: missing or not an object")
    for name in tensors_in:
        if name not in shapes:
            raise FormatError(f"tensors.{name}: unknown tensor for kind {kind!r}")
    tensors = {}
    for name, shape_of in shapes.items():
        if name not in tensors_in:
            raise FormatError(f"tensors.{name}: missing tensor")
        tensors[name] = _parse_tensor(f"tensors.{name}", tensors_in[name], shape_of(dims))
    labels = data.get("labels")
    if labels is not None and (not isinstance(labels, list)
                               or not all(isinstance(s, str) for s in labels)):
        raise FormatError("labels: expected a list of strings")
    seed = data.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise FormatError("seed: expected an integer")
    return StructureFile(kind, dict(dims), tensors, labels, seed)


def loads(text: str) -> StructureFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_data(data)


def parse(path: str | Path) -> StructureFile:
    return loads(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# emitting
# ---------------------------------------------------------------------------

def _entries(arr: np.ndarray) -> list[dict]:
    return [{"indices": list(idx), "value": format_scalar(v)} for idx, v in nonzero_entries(arr)]


def emit_data(sf: StructureFile) -> dict:
    out: dict[str, Any] = {
        "kind": sf.kind,
        "dims": dict(sorted(sf.dims.items())),
        "tensors": {name: _entries(arr) for name, arr in sorted(sf.tensors.items())},
    }
    if sf.labels is not None:
        out["labels"] = list(sf.labels)
    if sf.seed is not None:
        out["seed"] = sf.seed
    return out


def dumps(data: Any) -> str:
    """Byte-stable JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit(sf: StructureFile) -> str:
    return dumps(emit_data(sf))


# ---------------------------------------------------------------------------
# domain objects
# ---------------------------------------------------------------------------

def to_object(sf: StructureFile):
    t = sf.tensors
    k = sf.kind
    if k == "algebra":
        try:
            return Algebra(t["product"], tuple(sf.labels or ()))
        except ValueError as exc:
            raise FormatError(f"labels: {exc}") from None
    if k == "bimodule":
        return Bimodule(t["left"], t["right"])
    if k == "algebra-morphism":
        return AlgebraMorphism(t["matrix"])
    if k == "cochain":
        return Cochain(sf.dims["degree"], t["values"])
    if k == "zinf":
        return TwoTermZinf(t["d"], t["l2_00"], t["l2_01"], t["l2_10"], t["l3"])
    if k == "zinf-morphism":
        return ZinfMorphism(t["f0"], t["f1"], t["f2"])
    if k in ("crossed", "extension"):
        return CrossedModule(Algebra(t["g_product"]), Algebra(t["h_product"]),
                             t["phi"], t["left"], t["right"])
    if k == "ainf":
        return TwoTermAinf(t["d"], t["m2_00"], t["m2_01"], t["m2_10"], t["m3"])
    if k == "dend":
        mu2 = tuple((t[f"mu2_{r}_00"], t[f"mu2_{r}_01"], t[f"mu2_{r}_10"]) for r in (1, 2))
        return TwoTermDend(t["d"], mu2, tuple(t[f"mu3_{r}"] for r in (1, 2, 3)))
    if k == "rb":
        return RotaBaxter2(t["R0"], t["R1"])
    if k == "zinbiel2":
        return Zinbiel2Algebra(t["source"], t["target"], t["unit"], t["product"], t["zinbielator"])
    raise FormatError(f"kind: unknown kind {k!r}")


def from_object(obj, kind: str | None = None, seed: int | None = None) -> StructureFile:
    """Wrap a domain object as a structure file; ``kind`` disambiguates crossed/extension."""
    if isinstance(obj, Algebra):
        labels = list(obj.labels) if obj.labels else None
        return StructureFile("algebra", {"n": obj.dim}, {"product": obj.product}, labels, seed)
    if isinstance(obj, Bimodule):
        return StructureFile("bimodule", {"n": obj.algebra_dim, "m": obj.dim},
                             {"left": obj.left, "right": obj.right}, None, seed)
    if isinstance(obj, AlgebraMorphism):
        p, n = obj.matrix.shape
        return StructureFile("algebra-morphism", {"n": n, "p": p}, {"matrix": obj.matrix}, None, seed)
    if isinstance(obj, Cochain):
        return StructureFile("cochain", {"degree": obj.degree, "n": obj.algebra_dim, "m": obj.module_dim},
                             {"values": obj.values}, None, seed)
    if isinstance(obj, TwoTermZinf):
        return StructureFile("zinf", {"n0": obj.n0, "n1": obj.n1},
                             {k: getattr(obj, k) for k in ("d", "l2_00", "l2_01", "l2_10", "l3")},
                             None, seed)
    if isinstance(obj, ZinfMorphism):
        p0, n0 = obj.f0.shape
        p1, n1 = obj.f1.shape
        return StructureFile("zinf-morphism", {"n0": n0, "n1": n1, "p0": p0, "p1": p1},
                             {"f0": obj.f0, "f1": obj.f1, "f2": obj.f2}, None, seed)
    if isinstance(obj, CrossedModule):
        return StructureFile(kind or "crossed", {"g": obj.g.dim, "h": obj.h.dim},
                             {"g_product": obj.g.product, "h_product": obj.h.product,
                              "phi": obj.phi, "left": obj.left, "right": obj.right}, None, seed)
    if isinstance(obj, TwoTermAinf):
        return StructureFile("ainf", {"n0": obj.n0, "n1": obj.n1},
                             {k: getattr(obj, k) for k in ("d", "m2_00", "m2_01", "m2_10", "m3")},
                             None, seed)
    if isinstance(obj, TwoTermDend):
        ts = {"d": obj.d}
        for r, cell in zip((1, 2), obj.mu2):
            for part, suffix in zip(cell, ("00", "01", "10")):
                ts[f"mu2_{r}_{suffix}"] = part
        for r, cell in zip((1, 2, 3), obj.mu3):
            ts[f"mu3_{r}"] = cell
        return StructureFile("dend", {"n0": obj.n0, "n1": obj.n1}, ts, None, seed)
    if isinstance(obj, RotaBaxter2):
        return StructureFile("rb", {"n0": obj.R0.shape[0], "n1": obj.R1.shape[0]},
                             {"R0": obj.R0, "R1": obj.R1}, None, seed)
    if isinstance(obj, Zinbiel2Algebra):
        return StructureFile("zinbiel2", {"n0": obj.objects_dim, "N": obj.morphisms_dim},
                             {k: getattr(obj, k) for k in
                              ("source", "target", "unit", "product", "zinbielator")}, None, seed)
    raise TypeError(f"no file kind for {type(obj).__name__}")


def load(path: str | Path, expect: tuple[str, ...] | None = None):
    """Parse a file and build its domain object, checking the kind when asked."""
    sf = parse(path)
    if expect is not None and sf.kind not in expect:
        raise FormatError(f"kind: expected {' or '.join(expect)}, got {sf.kind!r}")
    return to_object(sf)


def dump_object(obj, kind: str | None = None, seed: int | None = None) -> str:
    return emit(from_object(obj, kind, seed))
