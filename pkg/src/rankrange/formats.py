"""Matrix files, result documents, and CSV/SVG exports.

A matrix file is JSON ``{"n": N, "entries": [[[re, im], ...], ...]}``.
Result documents are JSON objects; every float is written with 17
significant digits so documents round-trip bit-exactly and identical
inputs give identical bytes.
"""

import json
import math

import numpy as np

from .geometry import ConvexRegion

__all__ = [
    "MatrixFormatError",
    "parse_matrix",
    "dump_matrix",
    "result_document",
    "region_from_document",
    "dumps",
    "export_csv",
    "export_svg",
    "fmt",
]


class MatrixFormatError(ValueError):
    pass


def fmt(x):
    """Float with 17 significant digits; negative zero printed as 0."""
    x = float(x)
    if x == 0.0:
        return "0"
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite value {x}")
    return "%.17g" % x


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        # short numeric rows stay on one line
        if all(isinstance(x, (int, float, np.integer, np.floating)) for x in obj):
            return "[" + ", ".join(_encode(x, indent, level + 1) for x in obj) + "]"
        items = [pad + _encode(x, indent, level + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent=2):
    """Deterministic JSON text with 17-significant-digit floats."""
    return _encode(obj, indent, 0) + "\n"


def _where(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return f"line {line}, column {col}"


def parse_matrix(text):
    """Parse a matrix file into a complex ndarray."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"malformed JSON at {_where(text, exc.pos)}: {exc.msg}") from None
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise MatrixFormatError("matrix document needs keys 'n' and 'entries'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFormatError(f"'n' must be a positive integer, got {n!r}")
    rows = doc["entries"]
    if not isinstance(rows, list) or len(rows) != n:
        got = len(rows) if isinstance(rows, list) else type(rows).__name__
        raise MatrixFormatError(f"'entries' has {got} rows, expected {n}")
    out = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise MatrixFormatError(f"row {i} has {got} entries, expected {n}")
        for j, pair in enumerate(row):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                               for x in pair)):
                raise MatrixFormatError(f"entry ({i}, {j}) must be a [re, im] pair of numbers")
            re, im = float(pair[0]), float(pair[1])
            if not (math.isfinite(re) and math.isfinite(im)):
                raise MatrixFormatError(f"entry ({i}, {j}) is not finite")
            out[i, j] = complex(re, im)
    return out


def dump_matrix(T):
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError("dump_matrix expects a square matrix")
    entries = [[[float(z.real), float(z.imag)] for z in row] for row in T]
    return dumps({"n": T.shape[0], "entries": entries})


def result_document(result, radius_info=None):
    """ResultDocument dictionary for a :class:`RankRangeResult`."""
    region = result.region
    doc = {
        "k": int(result.k),
        "theta_samples": int(result.theta_samples),
        "kind": region.kind,
        "vertices": [[float(z.real), float(z.imag)] for z in region.vertices],
        "supports": [[float(t), float(c)] for t, c in result.supports],
        "outer_error_estimate": float(result.outer_error_estimate),
    }
    if radius_info is not None:
        doc["radius_info"] = radius_info
    return doc


def region_from_document(doc):
    v = [complex(x, y) for x, y in doc["vertices"]]
    return ConvexRegion(doc["kind"], v)


def export_csv(doc):
    """Supports then vertices, as two CSV blocks separated by a blank line."""
    lines = ["theta,c"]
    lines += [f"{fmt(t)},{fmt(c)}" for t, c in doc["supports"]]
    lines += ["", "x,y"]
    lines += [f"{fmt(x)},{fmt(y)}" for x, y in doc["vertices"]]
    return ("\n".join(lines) + "\n").encode("ascii")


_SVG_SIZE = 480
_FRAME = 1.2


def _px(x, y):
    s = _SVG_SIZE / (2 * _FRAME)
    return (x + _FRAME) * s, (_FRAME - y) * s


def export_svg(doc, reference=None):
    """Standalone SVG over the frame [-1.2, 1.2]^2 with the unit circle as a guide."""
    s = _SVG_SIZE / (2 * _FRAME)
    cx, cy = _px(0.0, 0.0)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_SIZE}" height="{_SVG_SIZE}" '
        f'viewBox="0 0 {_SVG_SIZE} {_SVG_SIZE}">',
        f'<rect width="{_SVG_SIZE}" height="{_SVG_SIZE}" fill="white"/>',
        f'<line x1="0" y1="{cy:.3f}" x2="{_SVG_SIZE}" y2="{cy:.3f}" stroke="#bbb" stroke-width="0.5"/>',
        f'<line x1="{cx:.3f}" y1="0" x2="{cx:.3f}" y2="{_SVG_SIZE}" stroke="#bbb" stroke-width="0.5"/>',
        f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{s:.3f}" fill="none" stroke="#999" '
        f'stroke-width="0.75"/>',
    ]
    kind = doc["kind"]
    pts = [_px(x, y) for x, y in doc["vertices"]]
    if kind == "empty":
        parts.append(f'<text x="{cx + 6:.3f}" y="{cy - 6:.3f}" font-size="28" '
                     f'font-family="serif">∅</text>')
    elif kind == "point":
        px, py = pts[0]
        parts.append(f'<circle cx="{px:.3f}" cy="{py:.3f}" r="3" fill="#1f5fbf"/>')
    elif kind == "segment":
        (x1, y1), (x2, y2) = pts
        parts.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
                     f'stroke="#1f5fbf" stroke-width="2"/>')
    else:
        coords = " ".join(f"{x:.3f},{y:.3f}" for x, y in pts)
        parts.append(f'<polygon points="{coords}" fill="#1f5fbf" fill-opacity="0.35" '
                     f'stroke="#1f5fbf" stroke-width="1"/>')
    if reference is not None:
        rx, ry = _px(reference.center.real, reference.center.imag)
        parts.append(f'<circle cx="{rx:.3f}" cy="{ry:.3f}" r="{reference.radius * s:.3f}" '
                     f'fill="none" stroke="#c0392b" stroke-width="1.2" stroke-dasharray="6,4"/>')
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
