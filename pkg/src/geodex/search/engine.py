"""Isomorph-free exhaustive search for (d,k,+eps)-digraphs.

Labelling convention: vertex 0 is a vertex of maximum out-degree and the
depth-k breadth-first tree hanging from it occupies ids ``0..t-1`` in BFS
order.  In a k-geodetic digraph that tree has no repeated vertices, so every
vertex at depth < k has an out-set made of fresh consecutive ids.  Only the
remaining vertices (depth-k leaves and the outliers of 0) get their out-sets
by backtracking, with incremental geodecity pruning.  Surviving digraphs are
deduplicated by canonical form and emitted as canonical representatives in
sorted order, so output does not depend on scheduling.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterator, Sequence

from geodex.digraph import Digraph, bits, is_k_geodetic, moore_bound, regularity
from geodex.errors import OrderGuardError, PreconditionError
from geodex.search.canonical import CanonicalForm, canonical_labeling

log = logging.getLogger(__name__)

DEFAULT_ORDER_GUARD = 24


class DiregularFilter(str, Enum):
    ALL = "all"
    ONLY_DIREGULAR = "diregular"
    ONLY_NON_DIREGULAR = "non-diregular"


def order_guard() -> int:
    raw = os.environ.get("GEODEX_ORDER_GUARD")
    return int(raw) if raw else DEFAULT_ORDER_GUARD


@dataclass(frozen=True)
class SearchSpec:
    d: int
    k: int
    epsilon: int
    out_regular_exactly_d: bool | None = None
    in_degree_sequence: tuple[int, ...] | None = None
    diregular_filter: DiregularFilter = DiregularFilter.ALL
    count_only: bool = False
    max_results: int | None = None

    def __post_init__(self) -> None:
        if self.d < 1 or self.k < 1:
            raise PreconditionError("search needs d >= 1 and k >= 1")
        if self.order < 1:
            raise PreconditionError(f"order M(d,k)+eps = {self.order} is not positive")
        if self.out_regular_exactly_d is None:
            # out-degree is forced to d below the threshold eps < M(d,k-1)
            object.__setattr__(
                self, "out_regular_exactly_d", self.epsilon < moore_bound(self.d, self.k - 1)
            )
        object.__setattr__(self, "diregular_filter", DiregularFilter(self.diregular_filter))
        if self.in_degree_sequence is not None:
            seq = tuple(sorted(self.in_degree_sequence))
            if len(seq) != self.order:
                raise PreconditionError(
                    f"in-degree sequence has length {len(seq)}, order is {self.order}"
                )
            if sum(seq) != self.d * self.order:
                raise PreconditionError(
                    f"in-degree sequence sums to {sum(seq)}, expected {self.d * self.order}"
                )
            object.__setattr__(self, "in_degree_sequence", seq)

    @property
    def order(self) -> int:
        return moore_bound(self.d, self.k) + self.epsilon


@dataclass
class SearchResult:
    digraphs: list[Digraph]
    forms: list[CanonicalForm]
    count: int
    all_diregular: bool
    nodes: int = 0

    def __iter__(self) -> Iterator[Digraph]:
        return iter(self.digraphs)


@dataclass
class _Problem:
    n: int
    k: int
    dmin: int
    dmax: int
    target_in: tuple[int, ...] | None  # sorted descending
    filt: DiregularFilter
    d: int
    candidates: dict[int, list[int]] = field(default_factory=dict)


def _tree_shapes(n: int, k: int, dmin: int, dmax: int) -> Iterator[tuple[list[int], int]]:
    """Yield (out-degree per internal tree vertex in BFS order, tree size)."""

    def rec(degs, depth_of, nxt_id, idx, root_deg):
        if idx == len(depth_of) or depth_of[idx] >= k:
            # all remaining tree vertices sit at depth k
            yield list(degs), nxt_id
            return
        hi = root_deg if idx else dmax
        for deg in range(dmin, hi + 1):
            if nxt_id + deg > n:
                break
            depth_of.extend([depth_of[idx] + 1] * deg)
            degs.append(deg)
            yield from rec(degs, depth_of, nxt_id + deg, idx + 1, root_deg if idx else deg)
            degs.pop()
            del depth_of[len(depth_of) - deg :]

    yield from rec([], [0], 1, 0, dmax)


class _State:
    __slots__ = ("out", "inn", "indeg", "nodes")

    def __init__(self, n: int) -> None:
        self.out = [0] * n
        self.inn = [0] * n
        self.indeg = [0] * n
        self.nodes = 0

    def set_out(self, v: int, mask: int) -> None:
        self.out[v] = mask
        for y in bits(mask):
            self.inn[y] |= 1 << v
            self.indeg[y] += 1

    def clear_out(self, v: int) -> None:
        for y in bits(self.out[v]):
            self.inn[y] &= ~(1 << v)
            self.indeg[y] -= 1
        self.out[v] = 0


def source_ok(out: Sequence[int], u: int, k: int) -> bool:
    """True iff no two walks of length <= k from u share an endpoint."""
    seen = 1 << u
    frontier = [u]
    for _ in range(k):
        layer = 0
        nxt = []
        for x in frontier:
            m = out[x]
            if m & (seen | layer):
                return False
            layer |= m
            nxt.extend(bits(m))
        seen |= layer
        frontier = nxt
    return True


def partial_ok(out: Sequence[int], k: int) -> bool:
    """Geodecity of a partial assignment (unassigned vertices have empty out-sets)."""
    return all(source_ok(out, u, k) for u in range(len(out)))


def _affected_ok(st: _State, v: int, k: int) -> bool:
    # sources whose <=k walks may use an arc leaving v: those reaching v in <= k-1 steps
    reach = frontier = 1 << v
    for _ in range(k - 1):
        nxt = 0
        for x in bits(frontier):
            nxt |= st.inn[x]
        frontier = nxt & ~reach
        reach |= nxt
        if not frontier:
            break
    out = st.out
    for u in bits(reach):
        if not source_ok(out, u, k):
            return False
    return True


def _in_feasible(indeg: list[int], target_desc: tuple[int, ...]) -> bool:
    cur = sorted(indeg, reverse=True)
    return all(c <= t for c, t in zip(cur, target_desc))


def _candidates(p: _Problem, v: int, root_deg: int) -> list[int]:
    key = v * 64 + root_deg
    cached = p.candidates.get(key)
    if cached is None:
        others = [x for x in range(p.n) if x != v]
        cached = []
        for size in range(p.dmin, min(root_deg, p.n - 1) + 1):
            for combo in combinations(others, size):
                m = 0
                for x in combo:
                    m |= 1 << x
                cached.append(m)
        p.candidates[key] = cached
    return cached


def _build_tree(p: _Problem, degs: list[int]) -> _State:
    st = _State(p.n)
    nxt = 1
    for v, deg in enumerate(degs):
        st.set_out(v, ((1 << deg) - 1) << nxt)
        nxt += deg
    return st


def _accept(p: _Problem, st: _State) -> bool:
    if p.target_in is not None and sorted(st.indeg, reverse=True) != list(p.target_in):
        return False
    if p.filt is DiregularFilter.ALL:
        return True
    direg = all(m.bit_count() == p.d for m in st.out) and all(x == p.d for x in st.indeg)
    return direg == (p.filt is DiregularFilter.ONLY_DIREGULAR)


def _extend(p: _Problem, st: _State, free: list[int], idx: int, root_deg: int, sink) -> None:
    if idx == len(free):
        if _accept(p, st):
            sink(list(st.out))
        return
    v = free[idx]
    for mask in _candidates(p, v, root_deg):
        st.nodes += 1
        st.set_out(v, mask)
        if (p.target_in is None or _in_feasible(st.indeg, p.target_in)) and _affected_ok(st, v, p.k):
            _extend(p, st, free, idx + 1, root_deg, sink)
        st.clear_out(v)


def _tasks(p: _Problem, split_depth: int = 2) -> list[tuple[list[int], list[int]]]:
    """Independent subproblems: a tree shape plus the first ``split_depth`` free out-sets."""
    tasks = []
    for degs, size in _tree_shapes(p.n, p.k, p.dmin, p.dmax):
        root_deg = degs[0]
        free = list(range(len(degs), p.n))
        st = _build_tree(p, degs)
        if any(not source_ok(st.out, u, p.k) for u in range(p.n)):
            continue
        depth = min(split_depth, len(free))

        def rec(idx: int, chosen: list[int]) -> None:
            if idx == depth:
                tasks.append((list(degs), list(chosen)))
                return
            v = free[idx]
            for mask in _candidates(p, v, root_deg):
                st.set_out(v, mask)
                if (p.target_in is None or _in_feasible(st.indeg, p.target_in)) and _affected_ok(
                    st, v, p.k
                ):
                    chosen.append(mask)
                    rec(idx + 1, chosen)
                    chosen.pop()
                st.clear_out(v)

        rec(0, [])
    return tasks


def _run_task(p: _Problem, task: tuple[list[int], list[int]]) -> tuple[dict[bytes, list[int]], int]:
    degs, prefix = task
    st = _build_tree(p, degs)
    free = list(range(len(degs), p.n))
    for v, mask in zip(free, prefix):
        st.set_out(v, mask)
    found: dict[bytes, list[int]] = {}

    def sink(masks: list[int]) -> None:
        g = Digraph.from_masks(masks)
        form, perm = canonical_labeling(g)
        if form.data not in found:
            found[form.data] = list(g.relabel(perm).out_masks)

    _extend(p, st, free, len(prefix), degs[0], sink)
    return found, st.nodes


def _run_chunk(p: _Problem, chunk: list) -> list[tuple[dict[bytes, list[int]], int]]:
    return [_run_task(p, t) for t in chunk]


def _problem(spec: SearchSpec) -> _Problem:
    n = spec.order
    dmax = spec.d if spec.out_regular_exactly_d else n - 1
    target = None
    if spec.in_degree_sequence is not None:
        target = tuple(sorted(spec.in_degree_sequence, reverse=True))
    return _Problem(n, spec.k, spec.d, dmax, target, spec.diregular_filter, spec.d)


def enumerate_digraphs(spec: SearchSpec, workers: int = 1) -> SearchResult:
    """Run the search; one canonical representative per isomorphism class.

    Results are sorted by canonical form and identical for every ``workers``.
    """
    guard = order_guard()
    if spec.order > guard:
        raise OrderGuardError(
            f"order {spec.order} exceeds search guard {guard} (set GEODEX_ORDER_GUARD)"
        )
    p = _problem(spec)
    if p.dmin > p.n - 1:
        return SearchResult([], [], 0, True)
    tasks = _tasks(p)
    log.info("order %d: %d subtasks", p.n, len(tasks))
    merged: dict[bytes, list[int]] = {}
    nodes = 0
    if workers <= 1 or len(tasks) < 2:
        outcomes = [_run_task(p, t) for t in tasks]
    else:
        # strided chunks balance load; output order is restored by sorting keys
        nchunks = min(len(tasks), workers * 8)
        chunks = [tasks[i::nchunks] for i in range(nchunks)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = [o for part in pool.map(_run_chunk, [p] * nchunks, chunks) for o in part]
    for found, cnt in outcomes:
        nodes += cnt
        for key, masks in found.items():
            merged.setdefault(key, masks)
    keys = sorted(merged)
    if spec.max_results is not None:
        keys = keys[: spec.max_results]
    digraphs = [Digraph.from_masks(merged[key]) for key in keys]
    all_direg = all(regularity(g, spec.d).diregular for g in digraphs)
    return SearchResult(
        [] if spec.count_only else digraphs,
        [CanonicalForm(key) for key in keys],
        len(keys),
        all_direg,
        nodes,
    )


def verify_result(g: Digraph, spec: SearchSpec) -> bool:
    """Re-check an emitted digraph against its SearchSpec with the core primitives."""
    reg = regularity(g, spec.d)
    out = [len(r) for r in g.out_adj]
    if g.n != spec.order or min(out) < spec.d:
        return False
    if spec.out_regular_exactly_d and not reg.out_regular:
        return False
    if spec.in_degree_sequence is not None and reg.in_degree_sequence != spec.in_degree_sequence:
        return False
    if spec.diregular_filter is DiregularFilter.ONLY_DIREGULAR and not reg.diregular:
        return False
    if spec.diregular_filter is DiregularFilter.ONLY_NON_DIREGULAR and reg.diregular:
        return False
    return is_k_geodetic(g, spec.k)
