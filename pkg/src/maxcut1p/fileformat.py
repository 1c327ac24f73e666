"""Plain-text instance files.

::

    c optional comment lines
    p 1planar <n> <m> <k>
    e <edge_id> <u> <v> <weight>     (m lines, edge_id = 1..m in order)
    x <edge_id_1> <edge_id_2>        (k lines)

Node and edge ids are 1-based in files and 0-based in memory.
"""

from __future__ import annotations

from typing import Iterable

from .errors import ParseError
from .graph import EmbeddedInstance, build_instance

INT64_MIN, INT64_MAX = -(2**63), 2**63 - 1


def _int(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(lineno, f"{what} is not an integer: {token!r}") from None
    if not INT64_MIN <= value <= INT64_MAX:
        raise ParseError(lineno, f"{what} does not fit in 64 bits: {token}")
    return value


def parse(text: str) -> EmbeddedInstance:
    header: tuple[int, int, int] | None = None
    header_line = 0
    edges: list[tuple[int, int, int, int]] = []
    crossings: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        kind = tok[0]
        if kind == "p":
            if header is not None:
                raise ParseError(lineno, "second problem line")
            if len(tok) != 5 or tok[1] != "1planar":
                raise ParseError(lineno, "expected 'p 1planar <n> <m> <k>'")
            n, m, k = (_int(t, lineno, name) for t, name in zip(tok[2:], ("n", "m", "k")))
            if min(n, m, k) < 0:
                raise ParseError(lineno, "negative count in problem line")
            header, header_line = (n, m, k), lineno
            continue
        if header is None:
            raise ParseError(lineno, f"'{kind}' line before the problem line")
        n, m, k = header
        if kind == "e":
            if len(tok) != 5:
                raise ParseError(lineno, "expected 'e <edge_id> <u> <v> <weight>'")
            eid, u, v, w = (
                _int(t, lineno, name) for t, name in zip(tok[1:], ("edge id", "u", "v", "weight"))
            )
            if eid != len(edges) + 1:
                raise ParseError(lineno, f"edge id {eid} out of order, expected {len(edges) + 1}")
            if len(edges) >= m:
                raise ParseError(lineno, f"more than the declared {m} edges")
            for x in (u, v):
                if not 1 <= x <= n:
                    raise ParseError(lineno, f"node {x} outside 1..{n}")
            edges.append((eid - 1, u - 1, v - 1, w))
        elif kind == "x":
            if len(tok) != 3:
                raise ParseError(lineno, "expected 'x <edge_id_1> <edge_id_2>'")
            if len(crossings) >= k:
                raise ParseError(lineno, f"more than the declared {k} crossings")
            e1, e2 = (_int(t, lineno, "edge id") for t in tok[1:])
            crossings.append((e1 - 1, e2 - 1))
        else:
            raise ParseError(lineno, f"unknown line type {kind!r}")
    if header is None:
        raise ParseError(0, "missing problem line")
    n, m, k = header
    if len(edges) != m:
        raise ParseError(header_line, f"header declares {m} edges, file has {len(edges)}")
    if len(crossings) != k:
        raise ParseError(header_line, f"header declares {k} crossings, file has {len(crossings)}")
    return build_instance(range(n), edges, crossings)


def serialize(instance: EmbeddedInstance, comments: Iterable[str] = ()) -> str:
    g = instance.graph
    nodes = sorted(g.nodes)
    if nodes != list(range(len(nodes))):
        raise ValueError("serialize needs dense node ids 0..n-1")
    edges = g.edges
    if [e.id for e in edges] != list(range(len(edges))):
        raise ValueError("serialize needs dense edge ids 0..m-1")
    lines = [f"c {c}" for c in comments]
    lines.append(f"p 1planar {len(nodes)} {len(edges)} {len(instance.crossings)}")
    lines.extend(f"e {e.id + 1} {e.u + 1} {e.v + 1} {e.weight}" for e in edges)
    lines.extend(f"x {a + 1} {b + 1}" for a, b in instance.crossings)
    return "\n".join(lines) + "\n"


def read_instance(path: str) -> EmbeddedInstance:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
