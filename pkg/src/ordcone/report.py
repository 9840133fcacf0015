"""Deterministic reports in text and JSON form.

Values are built from ``str``, ``bool``, ``None``, integers, ``Fraction``
and (nested) lists or tuples of those.  JSON writes every number as a
fraction string so parsing a report back and emitting it again reproduces
the same bytes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

_NUMBER = re.compile(r"^-?\d+(/\d+)?$")


@dataclass
class Report:
    command: str
    fields: list[tuple[str, Any]] = field(default_factory=list)
    status: int = EXIT_OK

    def add(self, key: str, value: Any) -> "Report":
        self.fields.append((key, value))
        return self

    def get(self, key: str, default=None):
        return next((v for k, v in self.fields if k == key), default)


def _to_json_value(v: Any):
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, (int, Fraction)):
        return str(Fraction(v))
    if isinstance(v, (list, tuple)):
        return [_to_json_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _to_json_value(x) for k, x in v.items()}
    raise TypeError(f"unsupported report value {v!r}")


def dumps(obj: dict) -> str:
    """One top-level key per line, values inline."""
    if not obj:
        return "{}\n"
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v, separators=(', ', ': '))}"
                      for k, v in obj.items())
    return "{\n" + body + "\n}\n"


def _text_value(v: Any) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, Fraction)):
        return str(Fraction(v))
    if isinstance(v, str):
        return v
    if isinstance(v, tuple):
        return "(" + ", ".join(_text_value(x) for x in v) + ")"
    if isinstance(v, list):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_text_value(x)}" for k, x in v.items()) + "}"
    raise TypeError(f"unsupported report value {v!r}")


def emit_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return dumps({"command": report.command, "status": report.status,
                      "result": {k: _to_json_value(v) for k, v in report.fields}})
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    if not report.fields:
        return "OK\n"
    return "".join(f"{k}: {_text_value(v)}\n" for k, v in report.fields)


def _from_json_value(v: Any):
    if isinstance(v, str) and _NUMBER.match(v):
        return Fraction(v)
    if isinstance(v, list):
        return [_from_json_value(x) for x in v]
    if isinstance(v, dict):
        return {k: _from_json_value(x) for k, x in v.items()}
    return v


def parse_report(text: str) -> Report:
    """Inverse of ``emit_report(..., "json")`` up to list/tuple distinction."""
    obj = json.loads(text)
    return Report(obj["command"], [(k, _from_json_value(v)) for k, v in obj["result"].items()],
                  int(obj["status"]))
