"""Standard families and the splitting / amalgamation transformations."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from geodex.digraph import Digraph, degrees, min_out_degree
from geodex.errors import PreconditionError


def complete_digraph(m: int) -> Digraph:
    if m < 2:
        raise PreconditionError(f"complete digraph needs m >= 2, got {m}")
    return Digraph(m, [[v for v in range(m) if v != u] for u in range(m)])


def directed_cycle(m: int) -> Digraph:
    if m < 2:
        raise PreconditionError(f"directed cycle needs m >= 2, got {m}")
    return Digraph(m, [[(u + 1) % m] for u in range(m)])


def amalgamate(g: Digraph, u1: int, u2: int) -> tuple[Digraph, list[int]]:
    """Merge two non-adjacent vertices with equal out-neighbourhoods.

    The merged vertex takes id ``min(u1, u2)`` and inherits the in-arcs of
    both; the other id is removed and higher ids shift down by one.  Returns
    the new digraph and ``mapping`` with ``mapping[old] = new``.
    """
    g._check_vertex(u1)
    g._check_vertex(u2)
    if u1 == u2:
        raise PreconditionError("amalgamation needs two distinct vertices")
    if g.out_masks[u1] != g.out_masks[u2]:
        diff = sorted(set(g.out_adj[u1]) ^ set(g.out_adj[u2]))
        raise PreconditionError(
            f"out-neighbourhoods of {u1} and {u2} differ (symmetric difference {diff})"
        )
    if g.has_arc(u1, u2) or g.has_arc(u2, u1):
        raise PreconditionError(f"vertices {u1} and {u2} are adjacent")
    keep, drop = min(u1, u2), max(u1, u2)
    mapping = [v if v < drop else v - 1 for v in range(g.n)]
    mapping[drop] = keep
    rows: list[set[int]] = [set() for _ in range(g.n - 1)]
    for u in range(g.n):
        if u == drop:
            continue
        rows[mapping[u]].update(mapping[v] for v in g.out_adj[u])
    return Digraph(g.n - 1, rows), mapping


def default_redirect(g: Digraph, u: int, count: int) -> list[int]:
    """The ``count`` lowest-id in-neighbours of u."""
    return list(g.in_neighbors(u)[:count])


def vertex_split(
    g: Digraph,
    u: int,
    r: int,
    redirect: Iterable[int] | None = None,
    *,
    d: int | None = None,
) -> Digraph:
    """Split u: add vertex ``w = n`` with ``N+(w) = N+(u)`` and move d-r in-arcs of u onto w.

    ``redirect`` names the sources x of the arcs x->u to move; by default the
    lowest-id in-neighbours.  ``d`` defaults to the minimum out-degree of g.
    """
    g._check_vertex(u)
    if d is None:
        d = min_out_degree(g)
    if not 0 <= r <= d:
        raise PreconditionError(f"r must lie in 0..{d}, got {r}")
    _, inn = degrees(g)
    if inn[u] < d:
        raise PreconditionError(f"vertex {u} has in-degree {inn[u]} < d = {d}")
    count = d - r
    sources: Sequence[int] = default_redirect(g, u, count) if redirect is None else list(redirect)
    if len(set(sources)) != len(sources):
        raise PreconditionError("redirect lists a source twice")
    if len(sources) != count:
        raise PreconditionError(f"redirect must name exactly d - r = {count} arcs, got {len(sources)}")
    stray = [x for x in sources if not (0 <= x < g.n and g.has_arc(x, u))]
    if stray:
        raise PreconditionError(f"not in-arcs of {u}: sources {stray}")
    w = g.n
    rows = [set(row) for row in g.out_adj] + [set(g.out_adj[u])]
    for x in sources:
        rows[x].discard(u)
        rows[x].add(w)
    return Digraph(g.n + 1, rows)


def split_choices(g: Digraph, u: int, r: int, d: int | None = None):
    """Every admissible redirect set for splitting u with parameter r."""
    if d is None:
        d = min_out_degree(g)
    return [list(c) for c in combinations(g.in_neighbors(u), d - r)]
