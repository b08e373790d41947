"""
graph6 codec backed by networkx.

Decoding first checks the byte range, the size field, the body length and the
padding bits so that a malformed string reports the offset of the bad byte;
networkx then unpacks the adjacency bits.
"""
from typing import List, Tuple

import networkx as nx

from twoeig.graphs.graph import Graph
from twoeig.utils.errors import Graph6ParseError, InvalidParameterError

HEADER = ">>graph6<<"
_BIAS = 63
_LONG = 126


def graph6_encode(g: Graph, header: bool = False) -> str:
    try:
        raw = nx.to_graph6_bytes(g.to_networkx(), header=header)
    except ValueError as e:
        raise InvalidParameterError(f"graph6 cannot encode n={g.n}: {e}")
    return raw.decode("ascii").rstrip("\n")


def _size_field(data: List[int], base: int) -> Tuple[int, int]:
    """(n, index of the first body byte) from 6-bit values."""
    if data[0] != _LONG - _BIAS:
        return data[0], 1
    if len(data) >= 2 and data[1] == _LONG - _BIAS:
        if len(data) < 8:
            raise Graph6ParseError("truncated 8-byte size field", base + len(data))
        fields, start = data[2:8], 8
    else:
        if len(data) < 4:
            raise Graph6ParseError("truncated 4-byte size field", base + len(data))
        fields, start = data[1:4], 4
    n = 0
    for value in fields:
        n = (n << 6) | value
    return n, start


def graph6_decode(s: str) -> Graph:
    text = s.rstrip()
    base = len(text) - len(text.lstrip())
    text = text.lstrip()
    if text.startswith(HEADER):
        text = text[len(HEADER):]
        base += len(HEADER)
    if not text:
        raise Graph6ParseError("empty graph6 string", base)

    data = []
    for pos, ch in enumerate(text):
        code = ord(ch)
        if not _BIAS <= code <= _LONG:
            raise Graph6ParseError(f"byte {ch!r} outside the graph6 range 63..126", base + pos)
        data.append(code - _BIAS)

    n, start = _size_field(data, base)
    if n < 1:
        raise Graph6ParseError("graph6 encodes zero vertices", base)
    bit_count = n * (n - 1) // 2
    expected = (bit_count + 5) // 6
    body = data[start:]
    if len(body) != expected:
        offset = base + start + min(len(body), expected)
        raise Graph6ParseError(f"expected {expected} data bytes for n={n}, found {len(body)}", offset)
    padding = expected * 6 - bit_count
    if padding and body[-1] & ((1 << padding) - 1):
        raise Graph6ParseError("nonzero padding bits", base + start + expected - 1)

    parsed = nx.from_graph6_bytes(text.encode("ascii"))
    return Graph.from_networkx(parsed)
