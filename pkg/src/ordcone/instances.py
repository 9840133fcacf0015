"""Instance files: UTF-8 JSON objects tagged with a ``kind``.

Scalars are exact rationals written as strings (``"3"``, ``"-7/2"``); plain
JSON integers are accepted too, floats never are.  See ``corpus/SCHEMA.md``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .errors import OrdconeError
from .monoid import FinGenMonoid
from .ordgroup import GroupPresentation
from .polyhedra import ConvexDomain, VPolytope
from .report import dumps
from .vspace import GENERATORS, STRICT_QUADRANT, QSpaceCone

KINDS = ("ineq_system", "vpolytope", "monoid", "presentation", "qcone")
_SCALAR = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")

Payload = Union[ConvexDomain, VPolytope, FinGenMonoid, GroupPresentation, QSpaceCone]


class InstanceError(OrdconeError):
    """Malformed instance file; the message names the line and the field."""


@dataclass(frozen=True)
class InstanceFile:
    kind: str
    payload: Payload
    source: str = "<text>"


class _Parser:
    def __init__(self, text: str, source: str):
        self.text = text
        self.source = source
        self.lines = text.splitlines()

    def line_of(self, field: str) -> int:
        key = field.split("[", 1)[0]
        pat = f'"{key}"'
        for i, line in enumerate(self.lines, 1):
            if pat in line:
                return i
        return 1

    def fail(self, field: str, msg: str):
        raise InstanceError(f"{self.source}: line {self.line_of(field)}, field {field}: {msg}")

    def scalar(self, value: Any, field: str) -> Fraction:
        if isinstance(value, bool) or isinstance(value, float):
            self.fail(field, f"expected an exact fraction string, got {json.dumps(value)}")
        if isinstance(value, int):
            return Fraction(value)
        if not isinstance(value, str):
            self.fail(field, f"expected an exact fraction string, got {json.dumps(value)}")
        m = _SCALAR.match(value.strip())
        if not m:
            self.fail(field, f"malformed fraction {value!r}")
        num, den = m.group(1), m.group(2)
        if den is not None and int(den) == 0:
            self.fail(field, "zero denominator")
        return Fraction(int(num), int(den) if den else 1)

    def integer(self, value: Any, field: str) -> int:
        q = self.scalar(value, field)
        if q.denominator != 1:
            self.fail(field, f"expected an integer, got {value!r}")
        return int(q)

    def natural(self, value: Any, field: str) -> int:
        n = self.integer(value, field)
        if n < 0:
            self.fail(field, f"expected a natural number, got {n}")
        return n

    def vector(self, value: Any, field: str, length: int, integral: bool = False) -> tuple:
        if not isinstance(value, list):
            self.fail(field, "expected a list")
        if len(value) != length:
            self.fail(field, f"dimension mismatch: expected {length} entries, got {len(value)}")
        conv = self.integer if integral else self.scalar
        return tuple(conv(v, f"{field}[{i}]") for i, v in enumerate(value))

    def vectors(self, obj: dict, key: str, length: int, integral: bool = False) -> list[tuple]:
        value = obj.get(key, [])
        if not isinstance(value, list):
            self.fail(key, "expected a list of vectors")
        return [self.vector(v, f"{key}[{i}]", length, integral) for i, v in enumerate(value)]

    def require(self, obj: dict, key: str):
        if key not in obj:
            self.fail("kind", f"missing field {key!r}")
        return obj[key]


def parse_instance(source: Union[str, Path]) -> InstanceFile:
    """Parse an instance from a path or from JSON text."""
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise InstanceError(f"{path}: cannot read: {exc.strerror}") from None
        name = str(path)
    else:
        text, name = source, "<text>"
    p = _Parser(text, name)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{name}: line {exc.lineno}, field <json>: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise InstanceError(f"{name}: line 1, field <root>: expected a JSON object")
    kind = obj.get("kind")
    if kind not in KINDS:
        p.fail("kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")

    if kind == "ineq_system":
        dim = p.natural(p.require(obj, "dim"), "dim")
        a = p.vectors(obj, "A", dim)
        b_raw = p.require(obj, "b")
        b = p.vector(b_raw, "b", len(a))
        payload: Payload = ConvexDomain.from_leq(a, b, dim)
    elif kind == "vpolytope":
        dim = p.natural(p.require(obj, "dim"), "dim")
        payload = VPolytope(dim, tuple(p.vectors(obj, "points", dim)))
    elif kind == "monoid":
        dim = p.natural(p.require(obj, "dim"), "dim")
        gens = p.vectors(obj, "gens", dim, integral=True)
        try:
            payload = FinGenMonoid(dim, tuple(gens))
        except OrdconeError as exc:
            p.fail("gens", str(exc))
    elif kind == "presentation":
        m = p.natural(p.require(obj, "num_gens"), "num_gens")
        payload = GroupPresentation(m, tuple(p.vectors(obj, "equalities", m, integral=True)),
                                    tuple(p.vectors(obj, "positives", m, integral=True)))
    else:
        dim = p.natural(p.require(obj, "dim"), "dim")
        if "predicate" in obj:
            if "generators" in obj:
                p.fail("predicate", "give either generators or predicate, not both")
            if obj["predicate"] != STRICT_QUADRANT:
                p.fail("predicate", f"unknown predicate {obj['predicate']!r}")
            payload = QSpaceCone(dim, STRICT_QUADRANT)
        else:
            try:
                payload = QSpaceCone(dim, GENERATORS, tuple(p.vectors(obj, "generators", dim)))
            except OrdconeError as exc:
                p.fail("generators", str(exc))
    return InstanceFile(kind, payload, name)


def _s(q) -> str:
    return str(Fraction(q))


def instance_to_dict(inst: Union[InstanceFile, Payload]) -> dict:
    """Canonical JSON-ready form of an instance (inverse of :func:`parse_instance`)."""
    payload = inst.payload if isinstance(inst, InstanceFile) else inst
    if isinstance(payload, ConvexDomain):
        a, b = payload.to_leq()
        return {"kind": "ineq_system", "dim": payload.dim,
                "A": [[_s(c) for c in row] for row in a], "b": [_s(c) for c in b]}
    if isinstance(payload, VPolytope):
        return {"kind": "vpolytope", "dim": payload.dim,
                "points": [[_s(c) for c in pt] for pt in payload.points]}
    if isinstance(payload, FinGenMonoid):
        return {"kind": "monoid", "dim": payload.dim,
                "gens": [[_s(c) for c in g] for g in payload.gens]}
    if isinstance(payload, GroupPresentation):
        return {"kind": "presentation", "num_gens": payload.num_gens,
                "equalities": [[_s(c) for c in r] for r in payload.equalities],
                "positives": [[_s(c) for c in r] for r in payload.positives]}
    if isinstance(payload, QSpaceCone):
        if payload.kind == STRICT_QUADRANT:
            return {"kind": "qcone", "dim": payload.dim, "predicate": STRICT_QUADRANT}
        return {"kind": "qcone", "dim": payload.dim,
                "generators": [[_s(c) for c in g] for g in payload.generators]}
    raise OrdconeError(f"not an instance payload: {type(payload).__name__}")


def dump_instance(inst: Union[InstanceFile, Payload]) -> str:
    return dumps(instance_to_dict(inst))
