"""Plain-text digraph files (``.gdx``).

Line 1 holds the order n; the next n lines list the out-neighbours of
vertices 0..n-1, space separated.  An empty line is a sink.  Lines starting
with ``#`` are comments and may appear anywhere.
"""

from __future__ import annotations

from pathlib import Path

from geodex.digraph import Digraph
from geodex.errors import ParseError


def _int_token(tok: str, line: int, col: int) -> int:
    if not tok.isdigit():
        raise ParseError(f"expected a non-negative integer, got {tok!r}", line, col)
    return int(tok)


def _tokens(text: str):
    pos = 0
    for tok in text.split():
        pos = text.index(tok, pos)
        yield tok, pos + 1
        pos += len(tok)


def parse(text: str) -> Digraph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    body = [(i + 1, ln.rstrip("\r")) for i, ln in enumerate(lines) if not ln.startswith("#")]
    if not body:
        raise ParseError("missing vertex count", 1)
    lineno, head = body[0]
    toks = list(_tokens(head))
    if len(toks) != 1:
        raise ParseError("first line must hold exactly the vertex count", lineno)
    n = _int_token(toks[0][0], lineno, toks[0][1])
    if n < 1:
        raise ParseError("vertex count must be at least 1", lineno, toks[0][1])
    rows = body[1:]
    if len(rows) != n:
        where = rows[n][0] if len(rows) > n else (rows[-1][0] if rows else lineno) + 1
        raise ParseError(f"expected {n} adjacency lines, found {len(rows)}", where)
    adj = []
    for u, (lineno, ln) in enumerate(rows):
        seen: set[int] = set()
        for tok, col in _tokens(ln):
            v = _int_token(tok, lineno, col)
            if v >= n:
                raise ParseError(f"vertex id {v} out of range for order {n}", lineno, col)
            if v == u:
                raise ParseError(f"loop at vertex {u}", lineno, col)
            if v in seen:
                raise ParseError(f"duplicate arc {u}->{v}", lineno, col)
            seen.add(v)
        adj.append(sorted(seen))
    return Digraph(n, adj)


def render(g: Digraph) -> str:
    lines = [str(g.n)] + [" ".join(map(str, row)) for row in g.out_adj]
    return "\n".join(lines) + "\n"


def read(path: str | Path) -> Digraph:
    return parse(Path(path).read_text(encoding="utf-8"))


def write(g: Digraph, path: str | Path) -> None:
    Path(path).write_text(render(g), encoding="utf-8", newline="\n")
