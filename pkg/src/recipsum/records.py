"""Line-oriented result records and resume tokens.

Every integer is written as a decimal string, because most values here are
far outside any fixed-width range.  Field order is fixed, so identical runs
produce byte-identical output.
"""

from __future__ import annotations

import base64
import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO

from .errors import DomainError
from .exact_arith import FinSet, format_rational, to_decimal

__all__ = ["ScanRecord", "jsonable", "RecordWriter", "encode_token", "decode_token",
           "STATUSES", "FORMATS"]

STATUSES = ("ok", "violation", "truncated")
FORMATS = ("json", "csv", "plain")


def jsonable(obj):
    """Convert to JSON-ready values: ints and rationals become strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return to_decimal(obj)
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, FinSet):
        return str(obj)
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(x) for x in items]
    if hasattr(obj, "_asdict"):
        return jsonable(obj._asdict())
    return str(obj)


@dataclass(frozen=True)
class ScanRecord:
    kind: str
    parameters: dict = field(default_factory=dict)
    payload: dict = field(default_factory=dict)
    status: str = "ok"

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "parameters": jsonable(self.parameters),
                "payload": jsonable(self.payload), "status": self.status}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "ScanRecord":
        d = json.loads(line)
        return cls(d["kind"], d.get("parameters", {}), d.get("payload", {}),
                   d.get("status", "ok"))


def _plain_value(v) -> str:
    if isinstance(v, list):
        return "[" + ",".join(_plain_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ",".join(f"{k}:{_plain_value(x)}" for k, x in v.items()) + "}"
    return str(v)


class RecordWriter:
    """Serializes records in arrival order to a single stream."""

    def __init__(self, stream: IO[str], fmt: str = "json"):
        if fmt not in FORMATS:
            raise DomainError(f"format must be one of {FORMATS}, got {fmt!r}")
        self.stream = stream
        self.fmt = fmt
        self.count = 0
        self._csv = None

    def write(self, rec: ScanRecord) -> None:
        d = rec.to_dict()
        if self.fmt == "json":
            self.stream.write(rec.to_json() + "\n")
        elif self.fmt == "csv":
            if self._csv is None:
                self._csv = csv.writer(self.stream, lineterminator="\n")
                self._csv.writerow(["kind", "status", "parameters", "payload"])
            self._csv.writerow([d["kind"], d["status"],
                                json.dumps(d["parameters"], separators=(",", ":")),
                                json.dumps(d["payload"], separators=(",", ":"))])
        else:
            parts = [d["kind"], d["status"]]
            parts += [f"{k}={_plain_value(v)}" for k, v in d["parameters"].items()]
            parts += [f"{k}={_plain_value(v)}" for k, v in d["payload"].items()]
            self.stream.write(" ".join(parts) + "\n")
        self.count += 1


def encode_token(state: dict) -> str:
    body = json.dumps(state, sort_keys=True, separators=(",", ":")).encode()
    digest = hashlib.sha256(body).hexdigest()[:16]
    return "v1." + base64.urlsafe_b64encode(body).decode().rstrip("=") + "." + digest


def decode_token(token: str) -> dict:
    """Inverse of :func:`encode_token`; raises DomainError on any corruption."""
    try:
        version, body, digest = token.strip().split(".")
        if version != "v1":
            raise ValueError("version")
        raw = base64.urlsafe_b64decode(body + "=" * (-len(body) % 4))
        if hashlib.sha256(raw).hexdigest()[:16] != digest:
            raise ValueError("checksum")
        state = json.loads(raw)
        if not isinstance(state, dict):
            raise ValueError("shape")
        return state
    except (ValueError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise DomainError(f"corrupt resume token ({exc})") from None


def records_text(records, fmt: str = "json") -> str:
    buf = io.StringIO()
    w = RecordWriter(buf, fmt)
    for r in records:
        w.write(r)
    return buf.getvalue()
