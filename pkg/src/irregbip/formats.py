"""graph6 and plain edge-list text formats.

graph6 follows the format description shipped with nauty: a size prefix
N(n) followed by the upper triangle of the adjacency matrix, column by
column, packed six bits per printable byte (value + 63). The long form
(``~`` prefix) is supported up to n = 258047, the 8-byte form above that.
"""

from __future__ import annotations

from typing import Iterable, TextIO

from .graph import Graph, GraphError

GRAPH6_HEADER = ">>graph6<<"


class FormatError(GraphError):
    """Malformed serialized graph."""


def _encode_size(n: int) -> list[int]:
    if n < 0:
        raise FormatError("negative vertex count")
    if n <= 62:
        return [n + 63]
    if n <= 258047:
        return [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    if n <= 68719476735:
        return [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    raise FormatError(f"n={n} too large for graph6")


def graph6_encode(g: Graph) -> str:
    out = _encode_size(g.n)
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out).decode("ascii")


def graph6_decode(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise FormatError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= x <= 63 for x in data):
        raise FormatError(f"graph6 byte out of range in {text!r}")
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise FormatError("truncated graph6 size field")
        n = 0
        for x in data[2:8]:
            n = (n << 6) | x
        pos = 8
    else:
        if len(data) < 4:
            raise FormatError("truncated graph6 size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if need and nbits % 6 and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise FormatError("nonzero graph6 padding bits")
    return Graph(n, edges)


def write_edge_list(g: Graph) -> str:
    """``"n m"`` header, then one ``"u v"`` line per edge in sorted order."""
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(src: str | TextIO | Iterable[str]) -> Graph:
    lines = src.splitlines() if isinstance(src, str) else list(src)
    rows = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise FormatError("empty edge list")
    try:
        n, m = (int(x) for x in rows[0])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise FormatError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise FormatError(f"header says {m} edges, found {len(edges)}")
    g = Graph(n, edges)
    if g.m != m:
        raise FormatError("edge list contains repeated edges")
    return g
