"""Matrix files, JSON reports and the m-table CSV.

Matrix file layout::

    p e modulus k n
    <k lines of n space-separated element encodings>

Every line ends with a single newline and carries no trailing whitespace.
Parsing is strict, so parse followed by emit reproduces the input bytes.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gf import GF, FieldError
from .linalg import Matrix

_UINT = re.compile(r"0|[1-9][0-9]*")


class MatrixFileError(ValueError):
    def __init__(self, line: int, column: int, msg: str):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


@dataclass(frozen=True, eq=False)
class MatrixFile:
    p: int
    e: int
    modulus: int
    rows: np.ndarray

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def field(self) -> GF:
        return GF(self.p, self.e, self.modulus if self.modulus or self.e > 1 else None)

    def matrix(self) -> Matrix:
        return Matrix(self.field(), self.rows)

    @classmethod
    def from_matrix(cls, G: Matrix) -> "MatrixFile":
        F = G.field
        return cls(F.p, F.e, F.modulus, np.array(G.data, dtype=np.int64))

    def __eq__(self, other) -> bool:
        return (isinstance(other, MatrixFile) and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
                and np.array_equal(self.rows, other.rows))

    def emit(self) -> str:
        lines = [f"{self.p} {self.e} {self.modulus} {self.k} {self.n}"]
        lines += [" ".join(str(int(x)) for x in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "MatrixFile":
        if not text.endswith("\n"):
            raise MatrixFileError(max(1, text.count("\n") + 1), len(text.rsplit("\n", 1)[-1]) + 1,
                                  "file must end with a newline")
        lines = text[:-1].split("\n")
        header = _tokens(lines[0], 1, 5)
        p, e, modulus, k, n = (v for v, _ in header)
        try:
            F = GF(p, e, modulus if modulus or e > 1 else None)
        except (FieldError, ValueError) as exc:
            raise MatrixFileError(1, 1, str(exc)) from None
        if len(lines) != k + 1:
            # first missing line, or first surplus line
            raise MatrixFileError(len(lines) + 1 if len(lines) <= k else k + 2, 1,
                                  f"expected {k} matrix rows, found {len(lines) - 1}")
        rows = np.zeros((k, n), dtype=np.int64)
        for i in range(k):
            for j, (v, col) in enumerate(_tokens(lines[i + 1], i + 2, n)):
                if v >= F.q:
                    raise MatrixFileError(i + 2, col, f"element {v} is not in GF({F.q})")
                rows[i, j] = v
        return cls(p, e, modulus, rows)

    @classmethod
    def read(cls, path) -> "MatrixFile":
        with open(path, newline="") as fh:
            return cls.parse(fh.read())

    def write(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(self.emit())


def _tokens(line: str, lineno: int, count: int) -> list[tuple[int, int]]:
    if line == "":
        raise MatrixFileError(lineno, 1, "empty line")
    if line != line.rstrip():
        raise MatrixFileError(lineno, len(line.rstrip()) + 1, "trailing whitespace")
    out = []
    col = 1
    for tok in line.split(" "):
        if not _UINT.fullmatch(tok):
            raise MatrixFileError(lineno, col, f"expected an unsigned integer, got {tok!r}")
        out.append((int(tok), col))
        col += len(tok) + 1
    if len(out) != count:
        raise MatrixFileError(lineno, col, f"expected {count} entries, found {len(out)}")
    return out


# -- JSON reports --------------------------------------------------------------

SCHEMA_VERSION = "1"
KINDS = ("construction", "analysis", "feasibility", "mtable")


def jsonable(x):
    """Convert to plain JSON types; rationals become {"num", "den"}."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return [jsonable(v) for v in x.tolist()]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def make_report(kind: str, params: dict, results: dict, citations: list | dict) -> dict:
    if kind not in KINDS:
        raise ValueError(f"unknown report kind {kind!r}")
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "params": jsonable(params),
        "results": jsonable(results),
        "citations": jsonable(citations),
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def validate_report(report: dict):
    keys = list(report)
    if keys != ["schema_version", "kind", "params", "results", "citations"]:
        raise ValueError(f"report keys out of order: {keys}")
    if report["schema_version"] != SCHEMA_VERSION or report["kind"] not in KINDS:
        raise ValueError("bad schema_version or kind")


# -- m-table CSV ---------------------------------------------------------------

MTABLE_COLUMNS = ["q", "k", "lower", "lower_source", "upper", "upper_source", "exact",
                  "literature", "nonconstructive"]


def mtable_csv(entries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(MTABLE_COLUMNS)
    for e in entries:
        lit = ";".join(f"{k}={v}" for k, v in e.literature.items())
        w.writerow([e.q, e.k, e.lower, e.lower_source, e.upper, e.upper_source,
                    "" if e.exact is None else e.exact, lit, f"{e.nonconstructive:.3f}"])
    return buf.getvalue()
