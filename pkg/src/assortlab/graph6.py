"""graph6 text encoding (McKay's format) for graphs of order <= 62."""

from __future__ import annotations

from .graph import Graph

HEADER = ">>graph6<<"


def encode(g: Graph) -> str:
    """Encode ``g`` as a graph6 string (no header, no newline)."""
    bits = []
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    chars = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return "".join(chars)


def decode(text: str) -> Graph:
    text = text.strip()
    if text.startswith(HEADER):
        text = text[len(HEADER):]
    if not text:
        raise ValueError("empty graph6 string")
    data = [ord(c) - 63 for c in text]
    if any(not 0 <= x < 64 for x in data):
        raise ValueError(f"invalid graph6 character in {text!r}")
    n = data[0]
    if n == 63:
        raise ValueError("graph6 orders above 62 are not supported")
    npairs = n * (n - 1) // 2
    need = -(-npairs // 6)
    if len(data) - 1 != need:
        raise ValueError(f"graph6 string {text!r} has wrong length for n={n}")
    bits = []
    for x in data[1:]:
        bits.extend((x >> s) & 1 for s in range(5, -1, -1))
    if any(bits[npairs:]):
        raise ValueError("nonzero padding bits in graph6 string")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)
