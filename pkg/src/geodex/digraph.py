"""Small dense digraphs and exact reachability / geodecity primitives.

Vertices are the integers ``0..n-1``.  Out-neighbourhoods are kept both as
sorted tuples and as integer bitmasks; the bitmask form drives every hot loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from geodex.errors import InvalidVertexError, PreconditionError


def bits(mask: int) -> list[int]:
    """Positions of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Digraph:
    """Simple digraph (no loops, no parallel arcs) on vertices ``0..n-1``.

    ``out_adj`` may be given as any iterable of iterables; it is normalised to
    a tuple of sorted tuples.  Instances are immutable and hashable.
    """

    n: int
    out_adj: tuple[tuple[int, ...], ...]
    out_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.n
        if not isinstance(n, int) or n < 1:
            raise PreconditionError(f"order must be a positive integer, got {n!r}")
        rows = [list(r) for r in self.out_adj]
        if len(rows) != n:
            raise PreconditionError(f"expected {n} adjacency rows, got {len(rows)}")
        out_masks = []
        in_masks = [0] * n
        norm = []
        for u, row in enumerate(rows):
            mask = 0
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise InvalidVertexError(v, n)
                if v == u:
                    raise PreconditionError(f"loop at vertex {u}")
                if mask >> v & 1:
                    raise PreconditionError(f"parallel arc {u}->{v}")
                mask |= 1 << v
                in_masks[v] |= 1 << u
            out_masks.append(mask)
            norm.append(tuple(sorted(row)))
        object.__setattr__(self, "out_adj", tuple(norm))
        object.__setattr__(self, "out_masks", tuple(out_masks))
        object.__setattr__(self, "in_masks", tuple(in_masks))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
        rows: list[list[int]] = [[] for _ in range(n)]
        for u, v in arcs:
            if not 0 <= u < n:
                raise InvalidVertexError(u, n)
            rows[u].append(v)
        return cls(n, rows)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> Digraph:
        return cls(len(masks), [bits(m) for m in masks])

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.out_adj[u]]

    @property
    def arc_count(self) -> int:
        return sum(len(r) for r in self.out_adj)

    def out_neighbors(self, u: int) -> tuple[int, ...]:
        self._check_vertex(u)
        return self.out_adj[u]

    def in_neighbors(self, u: int) -> tuple[int, ...]:
        self._check_vertex(u)
        return tuple(bits(self.in_masks[u]))

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def relabel(self, perm: Sequence[int]) -> Digraph:
        """Image of the digraph under ``u -> perm[u]``."""
        if sorted(perm) != list(range(self.n)):
            raise PreconditionError("relabel needs a permutation of 0..n-1")
        rows: list[list[int]] = [[] for _ in range(self.n)]
        for u, row in enumerate(self.out_adj):
            rows[perm[u]] = [perm[v] for v in row]
        return Digraph(self.n, rows)

    def _check_vertex(self, u: int) -> None:
        if not isinstance(u, int) or not 0 <= u < self.n:
            raise InvalidVertexError(u, self.n)


class GeodecityWitness(NamedTuple):
    """Two distinct walks of length at most k sharing both endpoints.

    A walk is the vertex sequence it visits; ``(u,)`` is the empty walk at u.
    """

    source: int
    target: int
    walk_a: tuple[int, ...]
    walk_b: tuple[int, ...]


class Regularity(NamedTuple):
    out_regular: bool
    diregular: bool
    in_degree_sequence: tuple[int, ...]


def moore_bound(d: int, k: int) -> int:
    """Return ``1 + d + ... + d**k``, or 0 when ``k < 0``."""
    if d < 0:
        raise PreconditionError(f"degree must be non-negative, got {d}")
    if k < 0:
        return 0
    return sum(d**i for i in range(k + 1))


def degrees(g: Digraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    out = tuple(len(r) for r in g.out_adj)
    inn = tuple(m.bit_count() for m in g.in_masks)
    return out, inn


def n_step(g: Digraph, u: int, l: int) -> frozenset[int]:
    """Endpoints of length-``l`` walks from u (start points of walks into u if l < 0)."""
    g._check_vertex(u)
    if abs(l) > g.n:
        raise PreconditionError(f"|l| must be at most n={g.n}, got {l}")
    masks = g.out_masks if l >= 0 else g.in_masks
    frontier = 1 << u
    for _ in range(abs(l)):
        nxt = 0
        for x in bits(frontier):
            nxt |= masks[x]
        frontier = nxt
    return frozenset(bits(frontier))


def t_mask(g: Digraph, u: int, l: int) -> int:
    """Bitmask form of :func:`t_set`."""
    masks = g.out_masks if l >= 0 else g.in_masks
    seen = frontier = 1 << u
    for _ in range(abs(l)):
        nxt = 0
        for x in bits(frontier):
            nxt |= masks[x]
        frontier = nxt & ~seen
        seen |= nxt
        if not frontier:
            break
    return seen


def t_set(g: Digraph, u: int, l: int) -> frozenset[int]:
    """Vertices reachable from u by walks of length 0..l (or reaching u, if l < 0)."""
    g._check_vertex(u)
    if abs(l) > g.n:
        raise PreconditionError(f"|l| must be at most n={g.n}, got {l}")
    return frozenset(bits(t_mask(g, u, l)))


def distance(g: Digraph, u: int, v: int) -> int | None:
    """Length of a shortest directed u-v path; ``None`` if v is unreachable."""
    g._check_vertex(u)
    g._check_vertex(v)
    seen = frontier = 1 << u
    dist = 0
    while frontier:
        if frontier >> v & 1:
            return dist
        nxt = 0
        for x in bits(frontier):
            nxt |= g.out_masks[x]
        frontier = nxt & ~seen
        seen |= nxt
        dist += 1
    return None


def _source_witness(out_masks: Sequence[int], u: int, k: int) -> GeodecityWitness | None:
    # Layered walk expansion from u; a vertex hit twice means two <=k walks.
    walk_to = {u: (u,)}
    frontier = [u]
    seen = 1 << u
    for _ in range(k):
        layer = 0
        nxt = []
        for x in frontier:
            m = out_masks[x]
            clash = m & (seen | layer)
            if clash:
                y = (clash & -clash).bit_length() - 1
                return GeodecityWitness(u, y, walk_to[y], walk_to[x] + (y,))
            layer |= m
            for y in bits(m):
                walk_to[y] = walk_to[x] + (y,)
                nxt.append(y)
        seen |= layer
        frontier = nxt
    return None


def geodecity_witness(g: Digraph, k: int) -> GeodecityWitness | None:
    """Two distinct walks of length <= k with common ends, or ``None`` if g is k-geodetic.

    Closed walks count: any cycle of length <= k conflicts with the empty
    walk at its vertices.
    """
    if k < 1:
        raise PreconditionError(f"k must be at least 1, got {k}")
    for u in range(g.n):
        w = _source_witness(g.out_masks, u, k)
        if w is not None:
            return w
    return None


def is_k_geodetic(g: Digraph, k: int) -> bool:
    return geodecity_witness(g, k) is None


def walk_counts(g: Digraph, k: int, cap: int = 2) -> list[list[int]]:
    """Entrywise ``min(cap, sum_{i<=k} A^i)`` via saturating matrix powers."""
    n = g.n
    power = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    total = [row[:] for row in power]
    for _ in range(k):
        power = [
            [min(cap, sum(power[i][x] for x in g.in_neighbors(j))) for j in range(n)]
            for i in range(n)
        ]
        total = [[min(cap, a + b) for a, b in zip(r, s)] for r, s in zip(total, power)]
    return total


def girth(g: Digraph) -> int | None:
    """Length of a shortest directed cycle, ``None`` for acyclic digraphs."""
    best = None
    for u in range(g.n):
        for v in g.in_neighbors(u):
            dv = distance(g, u, v)
            if dv is not None and (best is None or dv + 1 < best):
                best = dv + 1
    return best


def excess(g: Digraph, d: int, k: int) -> int:
    return g.n - moore_bound(d, k)


def regularity(g: Digraph, d: int) -> Regularity:
    out, inn = degrees(g)
    out_regular = all(x == d for x in out)
    return Regularity(out_regular, out_regular and all(x == d for x in inn), tuple(sorted(inn)))


def min_out_degree(g: Digraph) -> int:
    return min(len(r) for r in g.out_adj)
