"""Truth-table files and JSON certificates.

A truth-table file is a header line ``n=<int>`` followed by the table as
lowercase hex: bit t of the table is bit (t mod 8), LSB first, of byte t/8,
and bytes are written in order as two hex digits each. Tables with n < 3
fill less than a byte and are written as a single hex digit.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from pathlib import Path

import numpy as np

from .core import TruthTable

SCHEMA = 1
_HEADER = re.compile(r"n=(\d+)")


class ParseError(ValueError):
    pass


def dumps_truth_table(f: TruthTable) -> str:
    packed = np.packbits(f.bits, bitorder="little")
    body = packed.tobytes().hex()
    if f.n < 3:
        body = body[1]  # low nibble of the only byte
    return f"n={f.n}\n{body}\n"


def loads_truth_table(text: str) -> TruthTable:
    lines = text.strip().splitlines()
    if not lines:
        raise ParseError("empty file")
    head = _HEADER.fullmatch(lines[0].strip())
    if head is None:
        raise ParseError(f"bad header {lines[0]!r}, expected n=<int>")
    n = int(head.group(1))
    if n > 40:
        raise ParseError(f"n={n} is not a storable table size")
    body = "".join(line.strip() for line in lines[1:])
    want = 1 if n < 3 else (1 << n) // 4
    if len(body) != want:
        raise ParseError(f"body has {len(body)} hex digits, n={n} needs {want}")
    if not re.fullmatch(r"[0-9a-f]*", body):
        raise ParseError("body is not lowercase hex")
    raw = bytes.fromhex(body if n >= 3 else "0" + body)
    if n < 3 and raw[0] >> (1 << n):
        raise ParseError(f"digit {body} has bits beyond the 2^{n} table entries")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[: 1 << n]
    return TruthTable(n, bits)


def _atomic_write(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_truth_table(path, f: TruthTable) -> None:
    _atomic_write(path, dumps_truth_table(f))


def read_truth_table(path) -> TruthTable:
    try:
        text = Path(path).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads_truth_table(text)


def write_certificate(path, doc: dict) -> None:
    doc = {"schema": SCHEMA, **doc}
    _atomic_write(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def read_certificate(path) -> dict:
    doc = json.loads(Path(path).read_text())
    if doc.get("schema") != SCHEMA:
        raise ParseError(f"unsupported certificate schema {doc.get('schema')!r}")
    return doc
