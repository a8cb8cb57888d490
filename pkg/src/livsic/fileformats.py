"""JSON file formats for tensors and curves, with deterministic float output.

Complex numbers are written as ``[re, im]`` pairs; readers also accept bare
real numbers.  Floats are written with 17 significant digits so that output
is byte-identical across runs and round-trips exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .curves import RationalCurveParam
from .errors import InvalidArgument
from .exterior import GammaTensor
from .ratfunc import Poly


def _float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def dumps(obj, indent: int | None = 1, _level: int = 0) -> str:
    """Serialize nested dicts/lists/numbers; floats use 17 significant digits."""
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps(complex_pair(obj), indent, _level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist(), indent, _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        if indent is None:
            return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v, None)}" for k, v in obj.items()) + "}"
        pad = " " * (indent * (_level + 1))
        body = ",\n".join(f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}"
                          for k, v in obj.items())
        return "{\n" + body + "\n" + " " * (indent * _level) + "}"
    if isinstance(obj, (list, tuple)):
        # keep numeric arrays on one line
        return "[" + ", ".join(dumps(v, None) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def complex_pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _scalar(x) -> complex:
    if isinstance(x, bool):
        raise InvalidArgument("booleans are not numbers")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in x):
        return complex(x[0], x[1])
    raise InvalidArgument(f"expected a number or [re, im] pair, got {x!r}")


def parse_array(data, depth: int) -> np.ndarray:
    """``depth`` levels of lists whose leaves are numbers or [re, im] pairs.

    The depth is required because a list of two numbers is otherwise
    ambiguous between a length-2 real vector and one complex scalar.
    """
    def walk(x, level):
        if level == 0:
            return _scalar(x)
        if not isinstance(x, list):
            raise InvalidArgument(f"expected a list, got {x!r}")
        return [walk(v, level - 1) for v in x]

    try:
        arr = np.array(walk(data, depth), dtype=complex)
    except ValueError as exc:
        raise InvalidArgument(f"ragged array: {exc}") from None
    if arr.ndim != depth:
        raise InvalidArgument("ragged array")
    return arr.real.copy() if np.all(arr.imag == 0) else arr


def _pairs(arr) -> list:
    arr = np.asarray(arr)
    if arr.ndim == 0:
        return complex_pair(arr)
    return [_pairs(a) for a in arr]


def gamma_to_json(gamma: GammaTensor) -> dict:
    return {
        "d": gamma.d, "k": gamma.k, "n": gamma.n,
        "entries": [{"I": list(I), "matrix": _pairs(gamma[I])} for I in gamma.index_sets],
    }


def _int(doc: dict, key: str) -> int:
    v = doc.get(key) if isinstance(doc, dict) else None
    if not isinstance(v, int) or isinstance(v, bool):
        raise InvalidArgument(f"field {key!r} must be an integer")
    return v


def gamma_from_json(doc) -> GammaTensor:
    d, k, n = _int(doc, "d"), _int(doc, "k"), _int(doc, "n")
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise InvalidArgument("field 'entries' must be a list")
    ent = {}
    for e in entries:
        if not isinstance(e, dict) or "I" not in e or "matrix" not in e:
            raise InvalidArgument("each entry needs 'I' and 'matrix'")
        I = e["I"]
        if not isinstance(I, list) or list(I) != sorted(set(I)):
            raise InvalidArgument(f"index list {I!r} must be strictly increasing")
        key = tuple(int(i) for i in I)
        if key in ent:
            raise InvalidArgument(f"index set {key} appears twice")
        ent[key] = parse_array(e["matrix"], 2)
    mats = list(ent.values())
    if mats and any(np.iscomplexobj(m) for m in mats):
        ent = {I: np.asarray(m, dtype=complex) for I, m in ent.items()}
    return GammaTensor(d, k, n, ent)


def curve_to_json(curve: RationalCurveParam) -> dict:
    return {"d": curve.d, "n": curve.n,
            "polys": [[complex_pair(c) for c in p.coeffs] for p in curve.polys]}


def curve_from_json(doc) -> RationalCurveParam:
    d, n = _int(doc, "d"), _int(doc, "n")
    polys = doc.get("polys")
    if not isinstance(polys, list) or len(polys) != d + 1:
        raise InvalidArgument(f"'polys' must list {d + 1} coefficient lists")
    ps = []
    for p in polys:
        if not isinstance(p, list):
            raise InvalidArgument("each polynomial must be a coefficient list")
        arr = np.array([_scalar(c) for c in p], dtype=complex)
        ps.append(Poly(arr.real if np.all(arr.imag == 0) else arr))
    c = RationalCurveParam(ps)
    if c.n != n:
        raise InvalidArgument(f"declared n = {n} but the largest degree is {c.n}")
    return c


def read_json(path) -> object:
    return json.loads(Path(path).read_text())


def write_text(path, text: str) -> None:
    Path(path).write_text(text + "\n")
