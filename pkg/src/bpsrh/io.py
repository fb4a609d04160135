"""JSON reading and deterministic writing of structures and reports.

Structure schema::

    {"rank": n, "skew": [[int]], "central_charge": [[re, im]],
     "omega": [{"gamma": [int], "value": "p/q"}], "norm_weights": [float]?,
     "truncation": number?}

Central-charge entries that are integers or "p/q" strings are kept exact.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import ParseError, SchemaError, ValidationError
from .lattice import BpsStructure, make_bps_structure

# ---------------------------------------------------------------------------
# deterministic emitter


def _emit(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return json.dumps(str(obj))
        return "%.15e" % obj
    if isinstance(obj, Fraction):
        return json.dumps(format_rational(obj))
    if isinstance(obj, complex):
        return _emit([obj.real, obj.imag], indent, level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_emit(obj[k], indent, level + 1)}" for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, str, Fraction)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """JSON text with sorted keys, %.15e floats and "p/q" rationals."""
    return _emit(obj, indent, 0) + "\n"


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# parsing


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{where}: {value!r} is not a rational 'p/q'") from exc
    if isinstance(value, float):
        return Fraction(value)
    raise SchemaError(f"{where}: expected a rational, got {type(value).__name__}")


def _charge_entry(value, where: str):
    if not isinstance(value, list) or len(value) != 2:
        raise SchemaError(f"{where}: expected a [re, im] pair")
    out = []
    exact = True
    for k, part in enumerate(value):
        if isinstance(part, bool) or not isinstance(part, (int, float, str)):
            raise SchemaError(f"{where}[{k}]: expected a number")
        if isinstance(part, float):
            exact = False
            out.append(part)
        else:
            out.append(_rational(part, f"{where}[{k}]"))
    if exact:
        return tuple(out)
    return complex(float(out[0]), float(out[1]))


def structure_from_dict(data: Any, source: str = "<input>") -> BpsStructure:
    if not isinstance(data, dict):
        raise SchemaError(f"{source}: top level must be an object")
    for key in ("rank", "skew", "central_charge", "omega"):
        if key not in data:
            raise SchemaError(f"{source}: missing field '{key}'")
    n = data["rank"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError(f"{source}: field 'rank' must be a positive integer")
    skew = data["skew"]
    if not isinstance(skew, list) or len(skew) != n:
        raise SchemaError(f"{source}: field 'skew' must have {n} rows")
    for i, row in enumerate(skew):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"{source}: skew[{i}] must have {n} entries")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int):
                raise SchemaError(f"{source}: skew[{i}][{j}] must be an integer")
    for i in range(n):
        if skew[i][i] != 0:
            raise SchemaError(f"{source}: skew[{i}][{i}] = {skew[i][i]} must be 0")
        for j in range(i + 1, n):
            if skew[i][j] != -skew[j][i]:
                raise SchemaError(
                    f"{source}: skew[{i}][{j}] = {skew[i][j]} but skew[{j}][{i}] = {skew[j][i]}; form is not antisymmetric"
                )
    cc = data["central_charge"]
    if not isinstance(cc, list) or len(cc) != n:
        raise SchemaError(f"{source}: field 'central_charge' must have {n} entries")
    charges = [_charge_entry(v, f"central_charge[{i}]") for i, v in enumerate(cc)]
    omega_raw = data["omega"]
    if not isinstance(omega_raw, list):
        raise SchemaError(f"{source}: field 'omega' must be a list")
    omega = {}
    for k, entry in enumerate(omega_raw):
        where = f"omega[{k}]"
        if not isinstance(entry, dict) or "gamma" not in entry or "value" not in entry:
            raise SchemaError(f"{source}: {where} needs 'gamma' and 'value'")
        gamma = entry["gamma"]
        if not isinstance(gamma, list) or len(gamma) != n or any(isinstance(v, bool) or not isinstance(v, int) for v in gamma):
            raise SchemaError(f"{source}: {where}.gamma must be {n} integers")
        value = _rational(entry["value"], f"{where}.value")
        key = tuple(gamma)
        if key in omega and omega[key] != value:
            raise SchemaError(f"{source}: {where} repeats class {gamma} with a different value")
        omega[key] = value
    weights = data.get("norm_weights")
    if weights is not None:
        if not isinstance(weights, list) or len(weights) != n or any(
            isinstance(w, bool) or not isinstance(w, (int, float)) or not w > 0 for w in weights
        ):
            raise SchemaError(f"{source}: field 'norm_weights' must be {n} positive numbers")
    truncation = data.get("truncation")
    try:
        return make_bps_structure(skew, charges, omega, weights, truncation=truncation)
    except ValidationError as exc:
        raise SchemaError(f"{source}: {exc}") from exc


def structure_to_dict(s: BpsStructure) -> dict:
    if s.exact_charge is not None:
        cc = [[format_rational(a), format_rational(b)] for a, b in s.exact_charge]
    else:
        cc = [[z.real, z.imag] for z in s.central_charge]
    omega = [{"gamma": list(g), "value": format_rational(v)} for g, v in sorted(s.omega.items())]
    out = {
        "rank": s.rank,
        "skew": [list(row) for row in s.skew],
        "central_charge": cc,
        "omega": omega,
        "norm_weights": [float(w) for w in s.norm_weights],
    }
    if s.truncation is not None:
        out["truncation"] = s.truncation
    return out


def read_structure(path) -> BpsStructure:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return structure_from_dict(loads(text, str(path)), str(path))


def dump_structure(s: BpsStructure) -> str:
    return dumps(structure_to_dict(s))


def omega_table_json(table: dict) -> list:
    return [{"gamma": list(g), "omega": format_rational(v)} for g, v in table.items()]


def point_to_json(p) -> list:
    return [[complex(c).real, complex(c).imag] for c in p.coords]


# ---------------------------------------------------------------------------
# GV input


def gv_from_dict(data: Any, source: str = "<input>") -> tuple:
    """Return (chi, {label: (GV, v)})."""
    if not isinstance(data, dict) or "chi" not in data or "classes" not in data:
        raise SchemaError(f"{source}: GV input needs 'chi' and 'classes'")
    chi = data["chi"]
    if isinstance(chi, bool) or not isinstance(chi, int):
        raise SchemaError(f"{source}: field 'chi' must be an integer")
    table = {}
    for k, entry in enumerate(data["classes"]):
        where = f"classes[{k}]"
        if not isinstance(entry, dict) or not {"beta", "gv", "v"} <= set(entry):
            raise SchemaError(f"{source}: {where} needs 'beta', 'gv' and 'v'")
        gv = entry["gv"]
        if isinstance(gv, bool) or not isinstance(gv, int):
            raise SchemaError(f"{source}: {where}.gv must be an integer")
        v = entry["v"]
        if not isinstance(v, list) or len(v) != 2 or not all(isinstance(x, (int, float)) for x in v):
            raise SchemaError(f"{source}: {where}.v must be a [re, im] pair")
        table[str(entry["beta"])] = (gv, complex(v[0], v[1]))
    return chi, table


# ---------------------------------------------------------------------------
# bundled fixtures

FIXTURES = ("a1", "a1_double", "kronecker_k1", "kronecker_k2", "kronecker_k3", "rank4_uncoupled", "gv_quintic")


def fixture_path(name: str) -> Path:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}")
    return Path(str(resources.files("bpsrh") / "fixtures" / f"{name}.json"))


def load_fixture(name: str):
    path = fixture_path(name)
    data = loads(path.read_text(), str(path))
    if name == "gv_quintic":
        return gv_from_dict(data, str(path))
    return structure_from_dict(data, str(path))
