"""JSON documents: the input schema and the report wrapper.

Rationals travel as bare integers or ``"p/q"`` strings; floats are refused.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .divisor import TCartierDivisor, TQDivisor
from .polyhedral import Fan, Polytope


class InputError(ValueError):
    pass


_Q = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_q(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _Q.match(x)
        if m:
            den = int(m.group(2) or 1)
            if den == 0:
                raise InputError(f"zero denominator in {x!r}")
            return Fraction(int(m.group(1)), den)
    raise InputError(f"not a rational (int or 'p/q' string): {x!r}")


def parse_int(x: Any) -> int:
    q = parse_q(x)
    if q.denominator != 1:
        raise InputError(f"expected an integer, got {x!r}")
    return int(q)


def format_q(x) -> int | str:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_wire(obj: Any) -> Any:
    """Recursively turn Fractions into wire rationals and tuples into lists."""
    if isinstance(obj, Fraction):
        return format_q(obj)
    if isinstance(obj, dict):
        return {str(k): to_wire(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_wire(v) for v in obj]
    return obj


def _vectors(rows, kind=parse_q) -> list[tuple]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("expected a list of vectors")
    return [tuple(kind(x) for x in r) for r in rows]


@dataclass
class InputDocument:
    """Either a polytope, or a fan with divisor data; optionally D'."""

    vertices: list[tuple] | None = None
    rays: list[tuple] | None = None
    cones: list[tuple] | None = None
    local_data: list[tuple] | None = None
    coefficients: list[Fraction] | None = None
    dprime: list[Fraction] | None = None

    @classmethod
    def from_dict(cls, d: Any) -> "InputDocument":
        if not isinstance(d, dict):
            raise InputError("input must be a JSON object")
        doc = cls()
        if "polytope" in d:
            p = d["polytope"]
            if not isinstance(p, dict) or "vertices" not in p:
                raise InputError("polytope needs 'vertices'")
            doc.vertices = _vectors(p["vertices"])
            dim = p.get("dim")
            if dim is not None and any(len(v) != parse_int(dim) for v in doc.vertices):
                raise InputError("vertex length differs from 'dim'")
        elif "fan" in d:
            f = d["fan"]
            if not isinstance(f, dict) or "rays" not in f or "maximal_cones" not in f:
                raise InputError("fan needs 'rays' and 'maximal_cones'")
            doc.rays = _vectors(f["rays"], parse_int)
            doc.cones = _vectors(f["maximal_cones"], parse_int)
            div = d.get("divisor")
            if isinstance(div, dict) and "local_data" in div:
                doc.local_data = _vectors(div["local_data"], parse_int)
            elif isinstance(div, dict) and "coefficients" in div:
                doc.coefficients = [parse_q(x) for x in div["coefficients"]]
            elif div is not None:
                raise InputError("divisor needs 'local_data' or 'coefficients'")
        else:
            raise InputError("input needs 'polytope' or 'fan'")
        if "dprime" in d:
            dp = d["dprime"]
            if not isinstance(dp, dict) or "coefficients" not in dp:
                raise InputError("dprime needs 'coefficients'")
            doc.dprime = [parse_q(x) for x in dp["coefficients"]]
        return doc

    def to_dict(self) -> dict:
        out: dict = {}
        if self.vertices is not None:
            out["polytope"] = {"dim": len(self.vertices[0]) if self.vertices else 0,
                               "vertices": to_wire(self.vertices)}
        else:
            out["fan"] = {"rays": to_wire(self.rays), "maximal_cones": to_wire(self.cones)}
            if self.local_data is not None:
                out["divisor"] = {"local_data": to_wire(self.local_data)}
            elif self.coefficients is not None:
                out["divisor"] = {"coefficients": to_wire(self.coefficients)}
        if self.dprime is not None:
            out["dprime"] = {"coefficients": to_wire(self.dprime)}
        return out

    @classmethod
    def from_polytope(cls, P: Polytope) -> "InputDocument":
        return cls(vertices=[tuple(v) for v in P.vertices])

    def __post_init__(self):
        self._fan = None
        self._div = None

    def divisor(self) -> TCartierDivisor:
        """The Cartier divisor described by the document."""
        if self._div is not None:
            return self._div
        if self.vertices is not None:
            P = Polytope(self.vertices)
            if P.dim != P.ambient_dim:
                raise InputError("polytope is not full-dimensional")
            self._div = TCartierDivisor.from_polytope(P)
            return self._div
        if self._fan is None:
            self._fan = Fan(tuple(self.rays), tuple(self.cones))
        if self.local_data is not None:
            self._div = TCartierDivisor(self._fan, self.local_data)
        elif self.coefficients is not None:
            self._div = TCartierDivisor.from_coefficients(TQDivisor(self._fan, self.coefficients))
        else:
            raise InputError("no divisor data")
        return self._div

    def q_divisor(self) -> TQDivisor:
        """D as ray coefficients; Q-Cartier data is accepted here."""
        if self.vertices is None and self.coefficients is not None:
            return TQDivisor(self.fan_only(), self.coefficients)
        return self.divisor().coefficients()

    def fan_only(self) -> Fan:
        if self.vertices is not None:
            return self.divisor().fan
        if self._fan is None:
            self._fan = Fan(tuple(self.rays), tuple(self.cones))
        return self._fan

    def __eq__(self, other) -> bool:
        return isinstance(other, InputDocument) and self.to_dict() == other.to_dict()


@dataclass
class ReportDocument:
    command: str
    input: dict
    result: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"command": self.command, "input": self.input, "result": to_wire(self.result)}

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        return cls(d["command"], d["input"], d["result"])

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def loads_input(text: str) -> InputDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None
    return InputDocument.from_dict(data)
