"""Edge-list and graph6 serialization, and the deterministic JSON writer."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

from gcomplex.errors import BadByte, BadLength, DuplicateEdgeError, Graph6Error, IndexOutOfRange, ParseError
from gcomplex.graph import Graph

_G6_HEADER = b">>graph6<<"


# -- edge lists --------------------------------------------------------------

def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(line: str, lineno: int, count: int) -> list[int]:
    parts = line.replace(",", " ").split()
    if len(parts) != count:
        raise ParseError(f"expected {count} integers, got {len(parts)}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"non-integer token in {line!r}", lineno) from None


def parse_edge_list(text: str) -> Graph:
    """Parse ``order size`` followed by ``size`` lines of 1-based vertex pairs.

    ``#`` starts a comment; blank lines are ignored.
    """
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty document", 1)
    head_no, head = lines[0]
    order, size = _ints(head, head_no, 2)
    if order < 0 or size < 0:
        raise ParseError("order and size must be nonnegative", head_no)
    body = lines[1:]
    if len(body) != size:
        where = body[size][0] if len(body) > size else (body[-1][0] + 1 if body else head_no + 1)
        raise ParseError(f"header announces {size} edges, found {len(body)}", where)
    seen = set()
    edges = []
    for lineno, line in body:
        u, v = _ints(line, lineno, 2)
        for x in (u, v):
            if not 1 <= x <= order:
                raise IndexOutOfRange(f"vertex {x} outside 1..{order}", lineno)
        if u == v:
            raise ParseError(f"self-pair {u} {v}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(f"edge {u} {v} listed twice", lineno)
        seen.add(key)
        edges.append((u - 1, v - 1))
    return Graph.from_edges(order, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.order} {g.size}"]
    lines += [f"{u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


# -- graph6 ------------------------------------------------------------------

def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    raise Graph6Error(f"order {n} too large for graph6")


def write_graph6(g: Graph) -> bytes:
    """Standard graph6 (no header): N(n) then the upper triangle column by column."""
    n = g.order
    out = bytearray(_encode_n(n))
    acc = nbits = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def parse_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(_G6_HEADER):
        data = data[len(_G6_HEADER):]
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise BadByte(f"byte {b} at offset {pos} outside 63..126")
    if not data:
        raise BadLength("empty graph6 string")
    if data[0] != 126:
        n, body = data[0] - 63, data[1:]
    else:
        if len(data) < 4 or data[1] == 126:
            raise BadLength("truncated or unsupported long-form order prefix")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise BadLength(f"order {n} needs {need} data bytes, got {len(body)}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] - 63) >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if k % 6 and (body[-1] - 63) & ((1 << (6 - k % 6)) - 1):
        raise Graph6Error("nonzero padding bits")
    return Graph(n, tuple(rows))


def read_graph_file(path: str | Path) -> Graph:
    """Edge list or graph6, told apart by suffix (``.g6``) or content."""
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix == ".g6" or raw.lstrip().startswith(_G6_HEADER):
        lines = [ln for ln in raw.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise Graph6Error(f"expected one graph per file, found {len(lines)}")
        return parse_graph6(lines[0])
    return parse_edge_list(raw.decode("utf-8"))


# -- JSON --------------------------------------------------------------------

def fraction_doc(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator), "decimal": _float_text(float(q))}


def _float_text(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    return format(x, ".17g")


def _prepare(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= 2 ** 53 else obj
    if isinstance(obj, float):
        return _RawFloat(obj)
    if isinstance(obj, Fraction):
        return fraction_doc(obj)
    if isinstance(obj, Graph):
        return write_graph6(obj).decode("ascii")
    if isinstance(obj, dict):
        return {str(k): _prepare(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_prepare(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return _prepare(obj.to_dict())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


class _RawFloat(float):
    """Float rendered with 17 significant digits (non-finite values as strings)."""

    def __repr__(self):
        x = float(self)
        if math.isfinite(x):
            return format(x, ".17g")
        return json.dumps(_float_text(x))


class _Encoder(json.JSONEncoder):
    def iterencode(self, o, _one_shot=False):
        # The C encoder ignores float subclasses' repr, so use the pure path.
        return json.encoder._make_iterencode(
            {}, self.default, json.encoder.encode_basestring_ascii, self.indent,
            lambda f: repr(_RawFloat(f)), self.key_separator, self.item_separator,
            self.sort_keys, self.skipkeys, _one_shot,
        )(o, 0)


def dumps(obj, indent: int | None = 2) -> str:
    """Byte-deterministic JSON: sorted keys, 17-digit floats, big ints as strings."""
    return json.dumps(_prepare(obj), cls=_Encoder, sort_keys=True, indent=indent, ensure_ascii=True)
