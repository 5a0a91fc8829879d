"""JSON input schema for the command line.

    {"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]],
     "max_cones": [[0, 1], [1, 2], [2, 0]],
     "divisor": [0, 0, 1], "p": 2, "cone": 0}

``cone``, ``m_max``, ``e_cap`` and ``seed`` are optional.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any

from .seshadri import is_prime
from .toric import Fan, MalformedFan, ToricDivisor, validate_fan


class ParseError(ValueError):
    pass


class SchemaError(ValueError):
    pass


class FanInvalid(ValueError):
    pass


@dataclass(frozen=True)
class InputSpec:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    divisor: tuple[int, ...]
    p: int
    m_max: int = 200
    e_cap: int = 4
    cone: int | None = None
    seed: int | None = None

    @property
    def fan(self) -> Fan:
        return Fan(self.rays, self.max_cones)

    def toric_divisor(self) -> ToricDivisor:
        return ToricDivisor(self.fan, self.divisor)


_REQUIRED = ("dim", "rays", "max_cones", "divisor", "p")
_OPTIONAL = ("m_max", "e_cap", "cone", "seed")


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: expected an integer, got {value!r}")
    return value


def _int_rows(value: Any, where: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected a list of lists")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise SchemaError(f"{where}[{i}]: expected a list")
        rows.append(tuple(_int(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)))
    return tuple(rows)


def parse_input(text: str, validate: bool = True) -> InputSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise SchemaError("top level must be a JSON object")
    missing = [k for k in _REQUIRED if k not in data]
    if missing:
        raise SchemaError(f"missing field(s): {', '.join(missing)}")
    unknown = sorted(set(data) - set(_REQUIRED) - set(_OPTIONAL))
    if unknown:
        raise SchemaError(f"unknown field(s): {', '.join(unknown)}")

    dim = _int(data["dim"], "dim")
    if dim < 1:
        raise SchemaError("dim: must be at least 1")
    rays = _int_rows(data["rays"], "rays")
    if not rays:
        raise SchemaError("rays: must be non-empty")
    for i, r in enumerate(rays):
        if len(r) != dim:
            raise SchemaError(f"rays[{i}]: has {len(r)} coordinates, expected {dim}")
    cones = _int_rows(data["max_cones"], "max_cones")
    if not isinstance(data["divisor"], list):
        raise SchemaError("divisor: expected a list of integers")
    divisor = tuple(_int(x, f"divisor[{i}]") for i, x in enumerate(data["divisor"]))
    if len(divisor) != len(rays):
        raise SchemaError(f"divisor: has {len(divisor)} coefficients for {len(rays)} rays")
    p = _int(data["p"], "p")
    if not is_prime(p):
        raise SchemaError(f"p: p must be prime, got {p}")

    extra = {k: _int(data[k], k) for k in _OPTIONAL if k in data and data[k] is not None}
    if "cone" in extra and not 0 <= extra["cone"] < len(cones):
        raise SchemaError(f"cone: index {extra['cone']} out of range")
    for k in ("m_max", "e_cap"):
        if k in extra and extra[k] < 1:
            raise SchemaError(f"{k}: must be positive")

    spec = InputSpec(dim, rays, cones, divisor, p, **extra)
    if not validate:
        return spec
    try:
        diag = validate_fan(spec.fan)
    except MalformedFan as exc:
        raise FanInvalid(str(exc)) from exc
    if not diag.ok:
        raise FanInvalid("; ".join(diag.offending_items))
    return spec


def dump_input(spec: InputSpec) -> str:
    data = {
        "dim": spec.dim,
        "rays": [list(r) for r in spec.rays],
        "max_cones": [list(c) for c in spec.max_cones],
        "divisor": list(spec.divisor),
        "p": spec.p,
    }
    defaults = InputSpec(1, ((1,),), ((0,),), (0,), 2)
    for k in _OPTIONAL:
        v = getattr(spec, k)
        if v != getattr(defaults, k):
            data[k] = v
    lines = []
    for k, v in data.items():
        if isinstance(v, list) and v and isinstance(v[0], list):
            rows = ",\n    ".join(json.dumps(r) for r in v)
            lines.append(f'  "{k}": [\n    {rows}\n  ]')
        else:
            lines.append(f"  {json.dumps(k)}: {json.dumps(v)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def spec_for(divisor: ToricDivisor, p: int, **extra) -> InputSpec:
    fan = divisor.fan
    return InputSpec(fan.dim, fan.rays, fan.max_cones, divisor.coeffs, p, **extra)


def to_jsonable(obj: Any) -> Any:
    """dataclasses/Fractions/tuples to plain JSON values; rationals as 'num/den'."""
    if hasattr(obj, "__dataclass_fields__"):
        return {k: to_jsonable(v) for k, v in asdict(obj).items()}
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        return obj.item()
    return obj
