"""JSON schemas for spectra, matrices and circulant rows, plus text renderers.

Spectrum:      {"values": [[re, im], ...]}   (plain numbers allowed for reals)
Matrix:        {"rows": r, "cols": c, "entries": [...]}  row-major
CirculantRow:  {"row": [[re, im], ...]}
"""
import csv
from fractions import Fraction
import io
import json
from pathlib import Path

import numpy as np

from .circulant import CirculantRow
from .spectra import Spectrum, as_spectrum

FORMATS = ("json", "csv", "pretty")


def _parse_scalar(item):
    if isinstance(item, bool):
        raise ValueError(f"not a number: {item!r}")
    if isinstance(item, (int, float)):
        return complex(item), False
    if isinstance(item, (list, tuple)) and len(item) == 2 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in item):
        return complex(item[0], item[1]), True
    raise ValueError(f"expected a number or an [re, im] pair, got {item!r}")


def parse_values(items):
    """Array from a list of numbers and/or ``[re, im]`` pairs.

    Real dtype when every item is a plain number, complex otherwise.
    """
    if not isinstance(items, list):
        raise ValueError(f"expected a list of values, got {type(items).__name__}")
    parsed = [_parse_scalar(item) for item in items]
    if any(pair for _, pair in parsed):
        return np.array([v for v, _ in parsed], dtype=np.complex128)
    return np.array([v.real for v, _ in parsed], dtype=np.float64)


def values_to_json(values):
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return [[v.real, v.imag] for v in values.ravel().tolist()]
    return [float(v) for v in values.ravel().tolist()]


def pairs_to_json(values):
    return [[v.real, v.imag] for v in np.asarray(values, dtype=complex).ravel().tolist()]


def spectrum_from_json(obj):
    if not isinstance(obj, dict) or "values" not in obj:
        raise ValueError('a spectrum must be an object with a "values" list')
    return Spectrum(parse_values(obj["values"]))


def spectrum_to_json(sigma):
    return {"values": pairs_to_json(as_spectrum(sigma).values)}


def matrix_from_json(obj):
    if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= obj.keys():
        raise ValueError('a matrix must be an object with "rows", "cols" and "entries"')
    rows, cols = obj["rows"], obj["cols"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
        raise ValueError(f"invalid dimensions {rows!r} x {cols!r}")
    entries = parse_values(obj["entries"])
    if entries.size != rows * cols:
        raise ValueError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {entries.size}")
    if not np.all(np.isfinite(entries)):
        raise ValueError("matrix entries must be finite")
    return entries.reshape(rows, cols)


def matrix_to_json(A):
    A = np.asarray(A)
    if A.dtype.kind in "iub":
        A = A.astype(np.float64)
    return {"rows": int(A.shape[0]), "cols": int(A.shape[1]), "entries": values_to_json(A)}


def row_from_json(obj):
    if not isinstance(obj, dict) or "row" not in obj:
        raise ValueError('a circulant row must be an object with a "row" list')
    return CirculantRow(parse_values(obj["row"]))


def row_to_json(row):
    r = row.row if isinstance(row, CirculantRow) else np.asarray(row)
    return {"row": pairs_to_json(r)}


def load_json(arg):
    """Parse ``arg`` as inline JSON when it looks like JSON, else read it as a UTF-8 file."""
    text = arg.strip()
    if text.startswith(("{", "[")):
        return json.loads(text)
    return json.loads(Path(arg).read_text(encoding="utf-8"))


def _num(v):
    if float(v).is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(float(v))


def _complex_text(z, fmt):
    z = complex(z)
    if z.imag == 0:
        return fmt(z.real)
    sign = "-" if z.imag < 0 else "+"
    return f"{fmt(z.real)}{sign}{fmt(abs(z.imag))}j"


def _dyadic(v):
    """Fractions with denominator 1, 2 or 4 as ``p/q``, anything else as a short decimal."""
    v = float(v)
    if v == 0:
        return "0"
    frac = Fraction(v)
    if frac.denominator in (1, 2, 4):
        return str(frac.numerator) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"
    return f"{v:.6g}"


def emit(A, fmt="json"):
    """Render a matrix as JSON, CSV or an aligned table."""
    A = np.asarray(A)
    if fmt == "json":
        return json.dumps(matrix_to_json(A))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in A:
            writer.writerow([_complex_text(v, _num) for v in row])
        return buf.getvalue()
    if fmt == "pretty":
        cells = [[_complex_text(v, _dyadic) for v in row] for row in A]
        width = max((len(c) for row in cells for c in row), default=0)
        return "".join("  ".join(c.rjust(width) for c in row) + "\n" for row in cells)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
