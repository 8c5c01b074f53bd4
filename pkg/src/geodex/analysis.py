"""Outlier structure of k-geodetic digraphs and the structural lemma checks.

Each ``check_*`` function returns a :class:`LemmaVerdict`.  A verdict records
separately whether the lemma's hypotheses held and whether its conclusion
held; ``holds`` is the implication (a lemma cannot fail outside its
hypotheses).  With ``strict=True`` (the default) a non-geodetic input is
rejected with :class:`NotGeodeticError` instead of being evaluated.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Mapping

from geodex.digraph import (
    Digraph,
    bits,
    degrees,
    geodecity_witness,
    moore_bound,
    t_mask,
)
from geodex.errors import NotGeodeticError, PreconditionError


class LemmaId(str, Enum):
    OUT_REGULARITY_THRESHOLD = "out_regularity_threshold"
    S_OUTLIER_CONTAINMENT = "S_outlier_containment"
    SPRIME_NEIGHBOR_CONTAINMENT = "Sprime_neighbor_containment"
    SIZE_BOUNDS = "size_bounds"
    IN_DEGREE_RANGE = "in_degree_range"
    DEGREE_BALANCE = "degree_balance"
    MAX_INDEGREE_OUTLIER_CONTAINMENT = "max_indegree_outlier_containment"
    AMALGAMATION = "amalgamation"


@dataclass(frozen=True)
class LemmaVerdict:
    lemma_id: LemmaId
    holds: bool
    hypotheses_hold: bool
    conclusion_holds: bool
    witness: Mapping[str, Any] | None = None
    notes: tuple[str, ...] = ()


def _verdict(lemma, hyp_failures, witness, notes=()) -> LemmaVerdict:
    hyp = not hyp_failures
    concl = witness is None
    return LemmaVerdict(
        lemma, concl or not hyp, hyp, concl, witness, tuple(hyp_failures) + tuple(notes)
    )


@dataclass(frozen=True)
class OutlierReport:
    k: int
    d: int
    epsilon: int
    outliers: tuple[frozenset[int], ...]
    inverse_outliers: tuple[frozenset[int], ...]
    s_set: frozenset[int]
    s_prime_set: frozenset[int]
    omega_census: dict[tuple[int, ...], int] = field(hash=False)

    def omega_sets(self) -> list[frozenset[int]]:
        return [frozenset(key) for key in self.omega_census]


def _outliers(g: Digraph, k: int) -> list[frozenset[int]]:
    full = (1 << g.n) - 1
    return [frozenset(bits(full & ~t_mask(g, u, k))) for u in range(g.n)]


def _census(outliers) -> dict[tuple[int, ...], int]:
    counts = Counter(tuple(sorted(o)) for o in outliers)
    return {key: counts[key] for key in sorted(counts, key=lambda t: (len(t), t))}


def _require_geodetic(g: Digraph, k: int) -> None:
    w = geodecity_witness(g, k)
    if w is not None:
        raise NotGeodeticError(w, k)


def _build_report(g: Digraph, d: int, k: int) -> OutlierReport:
    outs = _outliers(g, k)
    inverse: list[set[int]] = [set() for _ in range(g.n)]
    for u, o in enumerate(outs):
        for v in o:
            inverse[v].add(u)
    _, inn = degrees(g)
    return OutlierReport(
        k=k,
        d=d,
        epsilon=g.n - moore_bound(d, k),
        outliers=tuple(outs),
        inverse_outliers=tuple(frozenset(s) for s in inverse),
        s_set=frozenset(v for v in range(g.n) if inn[v] < d),
        s_prime_set=frozenset(v for v in range(g.n) if inn[v] > d),
        omega_census=_census(outs),
    )


def outlier_report(g: Digraph, d: int, k: int) -> OutlierReport:
    """Outlier sets O(u) = V - T_k(u), their inverses, S, S' and the Omega-set census."""
    if k < 1:
        raise PreconditionError(f"k must be at least 1, got {k}")
    _require_geodetic(g, k)
    return _build_report(g, d, k)


def omega_census(g: Digraph, d: int, k: int) -> dict[tuple[int, ...], int]:
    """Multiplicity of each distinct outlier set, keyed by sorted vertex tuple."""
    return outlier_report(g, d, k).omega_census


def _prepare(g, d, k, strict, report):
    if strict:
        _require_geodetic(g, k)
    if report is None:
        report = _build_report(g, d, k)
    return report


def _hypotheses(g: Digraph, d: int, k: int, strict: bool) -> list[str]:
    failures = []
    if not strict and geodecity_witness(g, k) is not None:
        failures.append(f"not {k}-geodetic")
    out, _ = degrees(g)
    if any(x != d for x in out):
        failures.append(f"not out-regular with degree {d}")
    return failures


def check_out_regularity_threshold(
    g: Digraph, d: int, k: int, epsilon: int, *, strict: bool = True
) -> LemmaVerdict:
    """Below the threshold eps < M(d,k-1), every out-degree equals d."""
    out, _ = degrees(g)
    failures = []
    if g.n != moore_bound(d, k) + epsilon:
        failures.append(f"order {g.n} != M({d},{k}) + {epsilon}")
    if min(out) < d:
        failures.append(f"minimum out-degree {min(out)} < {d}")
    if strict:
        if failures:
            raise PreconditionError("; ".join(failures))
        _require_geodetic(g, k)
    elif geodecity_witness(g, k) is not None:
        failures.append(f"not {k}-geodetic")
    threshold = moore_bound(d, k - 1)
    if epsilon >= threshold:
        failures.append(f"eps={epsilon} >= M({d},{k - 1})={threshold}: out-regularity not forced")
    bad = [v for v in range(g.n) if out[v] != d]
    witness = {"vertex": bad[0], "out_degree": out[bad[0]]} if bad else None
    return _verdict(LemmaId.OUT_REGULARITY_THRESHOLD, failures, witness)


def check_S_outlier_containment(
    g: Digraph, d: int, k: int, *, strict: bool = True, report: OutlierReport | None = None
) -> LemmaVerdict:
    """Every deficient vertex is an outlier of some out-neighbour of every vertex."""
    rep = _prepare(g, d, k, strict, report)
    failures = _hypotheses(g, d, k, strict)
    for v in sorted(rep.s_set):
        for u in range(g.n):
            if not any(v in rep.outliers[x] for x in g.out_adj[u]):
                return _verdict(LemmaId.S_OUTLIER_CONTAINMENT, failures, {"v": v, "u": u})
    return _verdict(LemmaId.S_OUTLIER_CONTAINMENT, failures, None)


def check_Sprime_neighbor_containment(
    g: Digraph, d: int, k: int, *, strict: bool = True, report: OutlierReport | None = None
) -> LemmaVerdict:
    """Every excess vertex is an out-neighbour of some outlier of every vertex."""
    rep = _prepare(g, d, k, strict, report)
    failures = _hypotheses(g, d, k, strict)
    for vp in sorted(rep.s_prime_set):
        for u in range(g.n):
            if not any(g.has_arc(x, vp) for x in rep.outliers[u]):
                return _verdict(LemmaId.SPRIME_NEIGHBOR_CONTAINMENT, failures, {"v_prime": vp, "u": u})
    return _verdict(LemmaId.SPRIME_NEIGHBOR_CONTAINMENT, failures, None)


def check_size_bounds(
    g: Digraph, d: int, k: int, epsilon: int, *, strict: bool = True,
    report: OutlierReport | None = None,
) -> LemmaVerdict:
    rep = _prepare(g, d, k, strict, report)
    failures = _hypotheses(g, d, k, strict)
    bound = epsilon * d
    witness = None
    if len(rep.s_set) > bound:
        witness = {"set": "S", "size": len(rep.s_set), "bound": bound}
    elif len(rep.s_prime_set) > bound:
        witness = {"set": "S'", "size": len(rep.s_prime_set), "bound": bound}
    return _verdict(LemmaId.SIZE_BOUNDS, failures, witness)


def check_in_degree_range(
    g: Digraph, d: int, k: int, epsilon: int, *, strict: bool = True,
    report: OutlierReport | None = None,
) -> LemmaVerdict:
    """Every vertex of S' has in-degree in [d+1, d+eps]."""
    rep = _prepare(g, d, k, strict, report)
    failures = _hypotheses(g, d, k, strict)
    _, inn = degrees(g)
    for vp in sorted(rep.s_prime_set):
        if not d + 1 <= inn[vp] <= d + epsilon:
            return _verdict(
                LemmaId.IN_DEGREE_RANGE, failures, {"v_prime": vp, "in_degree": inn[vp]}
            )
    return _verdict(LemmaId.IN_DEGREE_RANGE, failures, None)


def check_degree_balance(g: Digraph, d: int) -> LemmaVerdict:
    # handshake identity; only a theorem when every out-degree is d
    out, inn = degrees(g)
    failures = [] if all(x == d for x in out) else [f"not out-regular with degree {d}"]
    deficit = sum(d - x for x in inn if x < d)
    surplus = sum(x - d for x in inn if x > d)
    witness = None if deficit == surplus else {"deficit": deficit, "surplus": surplus}
    return _verdict(LemmaId.DEGREE_BALANCE, failures, witness)


def check_max_indegree_outlier_containment(
    g: Digraph, d: int, k: int, epsilon: int, *, strict: bool = True,
    report: OutlierReport | None = None,
) -> LemmaVerdict:
    """A vertex of in-degree d+eps has every Omega-set among its in-neighbours."""
    rep = _prepare(g, d, k, strict, report)
    failures = _hypotheses(g, d, k, strict)
    _, inn = degrees(g)
    for vp in sorted(rep.s_prime_set):
        if inn[vp] != d + epsilon:
            continue
        in_nbrs = set(g.in_neighbors(vp))
        for u in range(g.n):
            if not rep.outliers[u] <= in_nbrs:
                return _verdict(
                    LemmaId.MAX_INDEGREE_OUTLIER_CONTAINMENT,
                    failures,
                    {"v_prime": vp, "u": u, "outliers": tuple(sorted(rep.outliers[u]))},
                )
    return _verdict(LemmaId.MAX_INDEGREE_OUTLIER_CONTAINMENT, failures, None)


def twin_pairs(g: Digraph) -> list[tuple[int, int]]:
    """Pairs u1 < u2 with identical out-neighbourhoods."""
    return [(a, b) for a, b in combinations(range(g.n), 2) if g.out_masks[a] == g.out_masks[b]]


def check_amalgamation_lemma(
    g: Digraph, d: int, k: int, *, strict: bool = True, report: OutlierReport | None = None
) -> LemmaVerdict:
    """No twin pair may meet every Omega-set (for (2,k,+2)-digraphs, k >= 2)."""
    rep = _prepare(g, d, k, strict, report)
    failures = _hypotheses(g, d, k, strict)
    if d != 2 or rep.epsilon != 2 or k < 2:
        # relies on there being no (2,k,+1)-digraph, which fails at k = 1
        failures.append(
            f"hypothesis mismatch: lemma is stated for d=2, eps=2, k>=2 "
            f"(got d={d}, eps={rep.epsilon}, k={k})"
        )
    for a, b in twin_pairs(g):
        if all(a in o or b in o for o in rep.outliers):
            return _verdict(LemmaId.AMALGAMATION, failures, {"u1": a, "u2": b})
    return _verdict(LemmaId.AMALGAMATION, failures, None)


def lemma_suite(g: Digraph, d: int, k: int, *, strict: bool = True) -> list[LemmaVerdict]:
    """All structural checks in a fixed order, sharing one outlier report."""
    epsilon = g.n - moore_bound(d, k)
    if strict:
        _require_geodetic(g, k)
    rep = _build_report(g, d, k)
    return [
        check_out_regularity_threshold(g, d, k, epsilon, strict=strict),
        check_S_outlier_containment(g, d, k, strict=strict, report=rep),
        check_Sprime_neighbor_containment(g, d, k, strict=strict, report=rep),
        check_size_bounds(g, d, k, epsilon, strict=strict, report=rep),
        check_in_degree_range(g, d, k, epsilon, strict=strict, report=rep),
        check_degree_balance(g, d),
        check_max_indegree_outlier_containment(g, d, k, epsilon, strict=strict, report=rep),
        check_amalgamation_lemma(g, d, k, strict=strict, report=rep),
    ]
