"""Pairwise program comparison functions.

Existence sets are compared with Jaccard similarity, frequency vectors
with cosine similarity (bag-of-words), and n-gram pattern sets with the
Euclidean distance between their boolean presence vectors.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Mapping, NamedTuple

from .errors import EmptyProgramError, PatternMismatchError
from .features import PatternSet, PatternUniverse, ProgramFeatures, build_universe


class MetricKind(str, Enum):
    JACCARD = "jaccard"
    COSINE = "cosine"
    EUCLIDEAN2 = "euclidean2"
    EUCLIDEAN3 = "euclidean3"

    @property
    def is_distance(self) -> bool:
        """Distances shrink with similarity; jaccard/cosine grow with it."""
        return self in (MetricKind.EUCLIDEAN2, MetricKind.EUCLIDEAN3)

    @property
    def ngram_length(self) -> int | None:
        if self is MetricKind.EUCLIDEAN2:
            return 2
        if self is MetricKind.EUCLIDEAN3:
            return 3
        return None


METRIC_ORDER = (MetricKind.JACCARD, MetricKind.COSINE,
                MetricKind.EUCLIDEAN2, MetricKind.EUCLIDEAN3)


class SimilarityValue(NamedTuple):
    """A metric result tagged with the metric that produced it."""

    kind: MetricKind
    value: float


def jaccard(s1: frozenset[str], s2: frozenset[str]) -> float:
    """|s1 & s2| / |s1 | s2|, in [0, 1].

    Two empty sets count as identical (1.0); empty versus non-empty is 0.
    """
    if not s1 and not s2:
        return 1.0
    return len(s1 & s2) / len(s1 | s2)


def cosine(a: Mapping[str, int], b: Mapping[str, int]) -> float:
    """Cosine of the angle between two frequency vectors, in [0, 1].

    The sum runs over the union of mnemonics; counts are integers, so the
    dot product and squared norms are exact and the result is reproducible
    regardless of key order. Raises :class:`EmptyProgramError` for an
    empty vector, for which the cosine is undefined.
    """
    if not a or not b:
        raise EmptyProgramError("cosine similarity is undefined for an empty program")
    if dict(a) == dict(b):
        return 1.0
    dot = 0
    for key in sorted(set(a) | set(b)):
        dot += a.get(key, 0) * b.get(key, 0)
    norm_sq_a = sum(v * v for v in a.values())
    norm_sq_b = sum(v * v for v in b.values())
    # One sqrt of the exact integer product keeps identical inputs at 1.0.
    value = dot / math.sqrt(norm_sq_a * norm_sq_b)
    return min(max(value, 0.0), 1.0)


def euclidean_pattern_distance(p1: PatternSet, p2: PatternSet,
                               universe: PatternUniverse) -> float:
    """Euclidean distance between the boolean presence vectors of p1 and p2.

    Equals the square root of the symmetric-difference size, so the value
    does not change when the universe is extended with patterns absent
    from both arguments. The universe is still required and validated:
    a pattern outside it means it was built from the wrong corpus.
    """
    if p1.n != p2.n:
        raise PatternMismatchError(
            f"cannot compare pattern sets of lengths {p1.n} and {p2.n}")
    for ps in (p1, p2):
        if not ps.patterns:
            continue
        if ps.n != universe.n:
            raise PatternMismatchError(
                f"pattern set of length {ps.n} does not match universe of "
                f"length {universe.n}")
        missing = ps.patterns.difference(universe.index)
        if missing:
            raise PatternMismatchError(
                f"pattern {sorted(missing)[0]!r} is missing from the universe")
    return math.sqrt(len(p1.patterns ^ p2.patterns))


def measure(kind: MetricKind, a: ProgramFeatures, b: ProgramFeatures,
            universes: Mapping[int, PatternUniverse] | None = None) -> SimilarityValue:
    """Apply one metric to two feature bundles.

    For the pattern metrics a universe per n may be supplied (corpus-wide
    layout); otherwise one is built from the two programs alone, which
    yields the same distance.
    """
    if kind is MetricKind.JACCARD:
        return SimilarityValue(kind, jaccard(a.existence, b.existence))
    if kind is MetricKind.COSINE:
        return SimilarityValue(kind, cosine(a.frequency, b.frequency))
    n = kind.ngram_length
    assert n is not None
    pa, pb = (a.patterns2, b.patterns2) if n == 2 else (a.patterns3, b.patterns3)
    if universes is not None and n in universes:
        universe = universes[n]
    else:
        universe = build_universe([pa, pb], n=n)
    return SimilarityValue(kind, euclidean_pattern_distance(pa, pb, universe))
