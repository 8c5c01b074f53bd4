"""Analysis, construction and isomorph-free search of k-geodetic digraphs."""

from geodex.analysis import LemmaVerdict, OutlierReport, lemma_suite, outlier_report
from geodex.constructions import amalgamate, complete_digraph, directed_cycle, vertex_split
from geodex.digraph import (
    Digraph,
    GeodecityWitness,
    degrees,
    distance,
    excess,
    geodecity_witness,
    is_k_geodetic,
    moore_bound,
    n_step,
    regularity,
    t_set,
)
from geodex.io import parse, render
from geodex.search.canonical import CanonicalForm, canonical_form
from geodex.search.engine import SearchSpec, enumerate_digraphs

__all__ = [
    "CanonicalForm",
    "Digraph",
    "GeodecityWitness",
    "LemmaVerdict",
    "OutlierReport",
    "SearchSpec",
    "amalgamate",
    "canonical_form",
    "complete_digraph",
    "degrees",
    "directed_cycle",
    "distance",
    "enumerate_digraphs",
    "excess",
    "geodecity_witness",
    "is_k_geodetic",
    "lemma_suite",
    "moore_bound",
    "n_step",
    "outlier_report",
    "parse",
    "regularity",
    "render",
    "t_set",
    "vertex_split",
]
