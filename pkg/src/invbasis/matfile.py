"""Matrix text files.

A file is a header of ``key: value`` lines followed by the entries::

    # comment
    ring: analytic        # polyQ | int | analytic
    rows: 3
    cols: 3
    point: 0              # analytic only, default 0
    trunc: 16             # analytic only, default 16
    2*z*exp(2*z), z*exp(z), z*sinh(z)
    ...

Rows are separated by newlines or ``;`` and entries within a row by ``,``.
Entries are kept as text so analytic files can be expanded at any point.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from .errors import DomainError
from .matrix import RingMatrix
from .parser import RINGS, parse_entry
from .rings import QX, ZZ, format_poly
from .series import DEFAULT_TRUNCATION, JetRing

_HEADER = re.compile(r"^\s*([A-Za-z_]+)\s*:\s*(.*?)\s*$")


@dataclass
class MatrixFile:
    ring: str
    rows: int
    cols: int
    entries: List[List[str]]
    point: Fraction = Fraction(0)
    trunc: int = DEFAULT_TRUNCATION

    def to_matrix(self, point=None, trunc: Optional[int] = None) -> RingMatrix:
        point = self.point if point is None else Fraction(point)
        N = self.trunc if trunc is None else trunc
        values = [[parse_entry(e, self.ring, point, N) for e in row] for row in self.entries]
        ring = {"polyQ": QX, "int": ZZ}.get(self.ring) or JetRing(point, N)
        return RingMatrix(values, ring, self.cols)

    def parse_vector(self, text: str, point=None, trunc: Optional[int] = None) -> list:
        point = self.point if point is None else Fraction(point)
        N = self.trunc if trunc is None else trunc
        ring = "polyQ" if self.ring == "int" else self.ring
        items = text.split(",")
        if len(items) != self.cols:
            raise DomainError(f"vector has {len(items)} entries, matrix has {self.cols} columns")
        return [parse_entry(s, ring, point, N) for s in items]


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_matrix_text(text: str) -> MatrixFile:
    header = {}
    body: List[str] = []
    for raw in text.splitlines():
        line = _strip_comment(raw)
        if not line.strip():
            continue
        m = _HEADER.match(line)
        if m and not body:
            header[m.group(1).lower()] = m.group(2)
            continue
        body.append(line)
    try:
        ring = header.get("ring", "polyQ")
        if ring not in RINGS:
            raise DomainError(f"unknown ring {ring!r}; expected one of {', '.join(RINGS)}")
        rows_text = [r for line in body for r in line.split(";") if r.strip()]
        entries = [[e.strip() for e in r.split(",")] for r in rows_text]
        nrows = int(header.get("rows", len(entries)))
        ncols = int(header.get("cols", len(entries[0]) if entries else 0))
        point = Fraction(header.get("point", "0"))
        trunc = int(header.get("trunc", DEFAULT_TRUNCATION))
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad matrix header: {exc}") from exc
    if len(entries) != nrows or any(len(r) != ncols for r in entries):
        found = sum(len(r) for r in entries)
        raise DomainError(f"expected {nrows}x{ncols} = {nrows * ncols} entries, found {found}")
    if trunc < 1:
        raise DomainError("trunc must be positive")
    mf = MatrixFile(ring, nrows, ncols, entries, point, trunc)
    # surface syntax errors at load time
    for row in entries:
        for e in row:
            parse_entry(e, ring, point, trunc)
    return mf


def read_matrix_file(path) -> MatrixFile:
    return parse_matrix_text(Path(path).read_text())


def format_matrix_file(A: RingMatrix) -> str:
    """Text form of a polynomial or integer matrix; round-trips through the parser."""
    if A.ring is QX:
        tag, fmt = "polyQ", format_poly
    elif A.ring is ZZ:
        tag, fmt = "int", str
    else:
        raise DomainError("only polynomial and integer matrices can be written")
    lines = [f"ring: {tag}", f"rows: {A.rows}", f"cols: {A.cols}"]
    lines += [", ".join(fmt(e) for e in A.row(i)) for i in range(A.rows)]
    return "\n".join(lines) + "\n"


def bundled(name: str = "worked_example.mat") -> Path:
    return Path(__file__).with_name("data") / name

