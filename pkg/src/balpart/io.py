"""Graph serialization: plain edge-list text and graph6 strings.

Edge-list format: first line "n m", then m lines "u v" with 0-indexed
endpoints.  Emission is byte-stable: edges sorted lexicographically,
single spaces, trailing newline.

graph6 is the usual 6-bit packed upper-triangle encoding (column order
x(0,1), x(0,2), x(1,2), x(0,3), ...), each group offset by 63.  Orders
up to 258047 are supported.
"""
from __future__ import annotations

from .graphs import Graph


class GraphFormatError(ValueError):
    """Malformed graph input; message names the offending line."""


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError("line 1: empty input, expected 'n m' header")
    try:
        n, m = map(int, lines[0].split())
    except ValueError:
        raise GraphFormatError(f"line 1: expected 'n m' header, got {lines[0]!r}") from None
    edges = []
    seen = 0
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {i}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {i}: non-integer endpoint in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise GraphFormatError(f"line {i}: invalid edge {u} {v} for n={n}")
        edges.append((u, v))
        seen += 1
    if seen != m:
        raise GraphFormatError(f"line 1: header declares m={m} but {seen} edges follow")
    return Graph.from_edges(n, edges)


def _g6_encode_n(n: int) -> str:
    if n < 0:
        raise GraphFormatError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise GraphFormatError(f"graph6 supports n <= 258047, got {n}")


def to_graph6(g: Graph) -> str:
    bits = []
    for v in range(1, g.n):
        row = g.adj[v]
        bits.extend((row >> u) & 1 for u in range(v))
    chunks = []
    for i in range(0, len(bits), 6):
        group = bits[i:i + 6] + [0] * (6 - len(bits[i:i + 6]))
        val = 0
        for b in group:
            val = val << 1 | b
        chunks.append(chr(val + 63))
    return _g6_encode_n(g.n) + "".join(chunks)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("line 1: empty graph6 string")
    pos = 0
    if s[0] == "~":
        if len(s) < 4:
            raise GraphFormatError("line 1: truncated graph6 order field")
        n = 0
        for c in s[1:4]:
            n = n << 6 | (ord(c) - 63)
        pos = 4
    else:
        n = ord(s[0]) - 63
        pos = 1
    if n < 0:
        raise GraphFormatError("line 1: invalid graph6 order byte")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[pos:]
    if len(body) != need:
        raise GraphFormatError(
            f"line 1: graph6 body has {len(body)} bytes, expected {need} for n={n}")
    bits = []
    for c in body:
        val = ord(c) - 63
        if not 0 <= val <= 63:
            raise GraphFormatError(f"line 1: graph6 byte {c!r} out of range")
        bits.extend((val >> s6) & 1 for s6 in (5, 4, 3, 2, 1, 0))
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(n, edges)


def write_graph(g: Graph, path: str, fmt: str = "edge-list") -> None:
    if fmt == "edge-list":
        data = to_edge_list(g)
    elif fmt == "graph6":
        data = to_graph6(g) + "\n"
    else:
        raise GraphFormatError(f"unknown graph format {fmt!r}")
    with open(path, "w") as fh:
        fh.write(data)


def read_graph(path: str) -> Graph:
    """Read a graph file, sniffing edge-list vs graph6 from the first line."""
    with open(path) as fh:
        text = fh.read()
    first = text.splitlines()[0].strip() if text.strip() else ""
    if first and (first.startswith(">>graph6<<") or not any(c.isspace() for c in first)
                  and not first.lstrip("-").isdigit()):
        return from_graph6(first)
    return from_edge_list(text)
