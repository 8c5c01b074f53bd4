import random
from itertools import permutations

from hypothesis import given, settings
from hypothesis import strategies as st

from geodex.constructions import complete_digraph, directed_cycle
from geodex.digraph import Digraph
from geodex.search.canonical import canonical_digraph, canonical_form, canonical_labeling

from test_digraph import digraphs
from oracles import all_walks


def random_perm(n, rng):
    p = list(range(n))
    rng.shuffle(p)
    return p


def brute_isomorphic(g, h):
    if g.n != h.n or g.arc_count != h.arc_count:
        return False
    arcs = set(h.arcs())
    return any(all((p[u], p[v]) in arcs for u, v in g.arcs()) for p in permutations(range(g.n)))


def test_k3_all_relabelings_agree():
    g = complete_digraph(3)
    assert len({canonical_form(g.relabel(list(p))) for p in permutations(range(3))}) == 1


def test_random_relabelings(cages):
    rng = random.Random(7)
    for g in [directed_cycle(7), *cages, Digraph(6, [[1, 2], [2], [3, 4], [5], [0], [1, 3]])]:
        form = canonical_form(g)
        for _ in range(100):
            assert canonical_form(g.relabel(random_perm(g.n, rng))) == form


def test_cages_distinct(cages):
    assert len(cages) == 2
    assert canonical_form(cages[0]) != canonical_form(cages[1])


def test_labeling_realises_form():
    g = Digraph(5, [[1], [2, 3], [4], [4], [0]])
    form, perm = canonical_labeling(g)
    h = g.relabel(perm)
    assert canonical_form(h) == form
    assert canonical_digraph(g.relabel([4, 3, 2, 1, 0])) == h


@settings(max_examples=150, deadline=None)
@given(digraphs(max_n=6), st.randoms(use_true_random=False))
def test_invariant_under_relabeling(g, rnd):
    assert canonical_form(g.relabel(random_perm(g.n, rnd))) == canonical_form(g)


@settings(max_examples=150, deadline=None)
@given(digraphs(max_n=5), digraphs(max_n=5))
def test_equal_forms_iff_isomorphic(g, h):
    same = canonical_form(g) == canonical_form(h)
    assert same == brute_isomorphic(g, h)
