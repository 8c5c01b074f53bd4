"""Canonical labelling by colour refinement plus individualisation.

Every leaf of the individualise/refine tree gives a vertex ordering; the
canonical form is the least adjacency encoding over all leaves.  No
automorphism pruning is done, which is fine for the structured digraphs this
package searches but exponential on very symmetric inputs (empty or
complete digraphs much beyond eight vertices).
"""

from __future__ import annotations

from dataclasses import dataclass

from geodex.digraph import Digraph, bits, t_mask


@dataclass(frozen=True, order=True)
class CanonicalForm:
    data: bytes

    def hex(self) -> str:
        return self.data.hex()


def _rank(sigs: list) -> list[int]:
    table = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [table[s] for s in sigs]


def _refine(outs: list[list[int]], ins: list[list[int]], colors: list[int]) -> list[int]:
    ncol = len(set(colors))
    while True:
        sigs = [
            (
                colors[v],
                tuple(sorted(colors[x] for x in outs[v])),
                tuple(sorted(colors[x] for x in ins[v])),
            )
            for v in range(len(colors))
        ]
        colors = _rank(sigs)
        new = max(colors) + 1
        if new == ncol:
            return colors
        ncol = new


def _encode(g: Digraph, pos: list[int]) -> bytes:
    n = g.n
    order = [0] * n
    for v, p in enumerate(pos):
        order[p] = v
    value = 0
    for v in order:
        row = 0
        for x in g.out_adj[v]:
            row |= 1 << (n - 1 - pos[x])
        value = value << n | row
    nbytes = (n * n + 7) // 8
    return n.to_bytes(2, "big") + value.to_bytes(nbytes, "big")


def canonical_labeling(g: Digraph) -> tuple[CanonicalForm, list[int]]:
    """Return the canonical form and a permutation ``perm`` realising it.

    ``g.relabel(perm)`` is the canonical representative of g's isomorphism
    class.
    """
    n = g.n
    outs = [list(r) for r in g.out_adj]
    ins = [bits(m) for m in g.in_masks]
    init = [(len(outs[v]), len(ins[v]), t_mask(g, v, n).bit_count()) for v in range(n)]
    best: list = [None, None]

    def walk(colors: list[int]) -> None:
        colors = _refine(outs, ins, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            code = _encode(g, colors)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, colors
            return
        target = min((len(vs), c) for c, vs in cells.items() if len(vs) > 1)[1]
        for v in cells[target]:
            walk(_rank([(c, 0 if u == v else 1) for u, c in enumerate(colors)]))

    walk(_rank(init))
    return CanonicalForm(best[0]), best[1]


def canonical_form(g: Digraph) -> CanonicalForm:
    return canonical_labeling(g)[0]


def canonical_digraph(g: Digraph) -> Digraph:
    return g.relabel(canonical_labeling(g)[1])
