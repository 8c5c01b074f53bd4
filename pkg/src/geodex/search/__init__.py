from geodex.search.canonical import CanonicalForm, canonical_digraph, canonical_form, canonical_labeling
from geodex.search.engine import DiregularFilter, SearchResult, SearchSpec, enumerate_digraphs, verify_result

__all__ = [
    "CanonicalForm",
    "DiregularFilter",
    "SearchResult",
    "SearchSpec",
    "canonical_digraph",
    "canonical_form",
    "canonical_labeling",
    "enumerate_digraphs",
    "verify_result",
]
