"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line."""

from __future__ import annotations

import io as stdio
import random
import time

import pytest

from geodex.analysis import lemma_suite
from geodex.cli import run_cli
from geodex.constructions import amalgamate, complete_digraph, directed_cycle, split_choices, vertex_split
from geodex.digraph import Digraph, is_k_geodetic, min_out_degree, regularity
from geodex.search.canonical import canonical_form
from geodex.search.engine import SearchSpec, enumerate_digraphs

from oracles import brute_geodetic
from test_digraph import every_digraph

SEQUENCES = [
    (1, 2, 2, 2, 2, 2, 2, 2, 3),
    (1, 1, 2, 2, 2, 2, 2, 3, 3),
    (1, 1, 1, 2, 2, 2, 3, 3, 3),
    (1, 1, 1, 1, 2, 3, 3, 3, 3),
    (1, 1, 1, 1, 2, 2, 2, 4, 4),
    (1, 1, 1, 1, 2, 2, 3, 3, 4),
    # excluded before the case split, searched anyway
    (1, 1, 2, 2, 2, 2, 2, 2, 4),
    (1, 1, 1, 2, 2, 2, 2, 3, 4),
]


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def split_derivatives(g: Digraph):
    for u in range(g.n):
        for r in (0, 1, 2):
            for redirect in split_choices(g, u, r, d=2):
                yield u, vertex_split(g, u, r, redirect, d=2)


def test_criterion_1_trivial_cases(criterion):
    res, secs = timed(lambda: enumerate_digraphs(SearchSpec(2, 1, 0)))
    assert res.count == 1 and canonical_form(res.digraphs[0]) == canonical_form(complete_digraph(3))
    assert secs < 1
    worst = secs
    for m in range(3, 7):
        res, secs = timed(lambda: enumerate_digraphs(SearchSpec(1, m - 1, 0)))
        assert res.count == 1
        assert canonical_form(res.digraphs[0]) == canonical_form(directed_cycle(m))
        assert secs < 1
        worst = max(worst, secs)
    criterion.detail = f"K3 and cycles C3..C6 unique, slowest {worst:.2f}s"


def test_criterion_2_excess_one(criterion):
    res, secs = timed(lambda: enumerate_digraphs(SearchSpec(2, 2, 1), workers=1))
    assert res.count == 0
    assert secs < 60
    criterion.detail = f"(2,2,+1): 0 classes in {secs:.2f}s"


@pytest.mark.parametrize("workers, budget", [(1, 600), (4, 180)])
def test_criterion_3_excess_two(criterion, cages, workers, budget):
    res, secs = timed(lambda: enumerate_digraphs(SearchSpec(2, 2, 2), workers=workers))
    assert res.count == 2 and res.all_diregular
    assert all(regularity(g, 2).diregular for g in res.digraphs)
    assert res.digraphs == cages
    assert secs < budget
    criterion.detail = f"(2,2,+2): 2 diregular classes, {workers} worker(s), {secs:.2f}s"


def test_criterion_4_in_degree_sequences(criterion):
    total = 0.0
    for seq in SEQUENCES:
        res, secs = timed(lambda: enumerate_digraphs(SearchSpec(2, 2, 2, in_degree_sequence=seq)))
        assert res.count == 0, seq
        total += secs
    assert total < 600
    criterion.detail = f"{len(SEQUENCES)} sequences, 0 classes each, {total:.2f}s total"


def test_criterion_5_lemma_suite(criterion, cages):
    targets = list(cages) + [h for g in cages for _, h in split_derivatives(g)]
    failures = []
    for g in targets:
        for v in lemma_suite(g, 2, 2):
            if not v.holds:
                failures.append((g, v))
    assert not failures
    criterion.detail = f"8 checks hold on {len(targets)} digraphs"


def test_criterion_6_split_contract(criterion, cages):
    start = time.perf_counter()
    count = 0
    for g in cages:
        original = canonical_form(g)
        for u, h in split_derivatives(g):
            assert h.n == 10
            assert is_k_geodetic(h, 2)
            assert min_out_degree(h) == 2
            assert not regularity(h, 2).diregular
            back, _ = amalgamate(h, u, g.n)
            assert canonical_form(back) == original
            count += 1
    secs = time.perf_counter() - start
    assert count > 0 and secs < 30
    criterion.detail = f"{count} splits checked in {secs:.2f}s"


def test_criterion_7_oracle_equivalence(criterion):
    checked = 0
    for n in range(1, 5):
        for g in every_digraph(n):
            for k in (1, 2, 3):
                assert is_k_geodetic(g, k) == brute_geodetic(g, k), (g, k)
                checked += 1
    rng = random.Random(20261016)
    for _ in range(1500):
        n = rng.randint(1, 8)
        p = rng.random()
        g = Digraph.from_arcs(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])
        k = rng.randint(1, 4)
        assert is_k_geodetic(g, k) == brute_geodetic(g, k), (g, k)
        checked += 1
    criterion.detail = f"{checked} comparisons, 0 disagreements"


def test_criterion_8_determinism(criterion, tmp_path):
    dirs = {}
    for threads in (1, 8):
        out = tmp_path / f"t{threads}"
        code = run_cli(
            ["search", "--d", "2", "--k", "2", "--excess", "2", "--out", str(out), "--threads", str(threads)],
            stdio.StringIO(), stdio.StringIO(),
        )
        assert code == 0
        dirs[threads] = {p.name: p.read_bytes() for p in sorted(out.iterdir())}
    assert len(dirs[1]) == 2 and dirs[1] == dirs[8]
    criterion.detail = "threads 1 and 8 give identical files " + ", ".join(sorted(dirs[1]))
