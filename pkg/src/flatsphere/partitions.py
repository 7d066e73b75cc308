"""Enumeration of the boundary partition families driving the recursion.

Indices are 0-based throughout.  Four families of partitions of
``{0, ..., n-1}`` are enumerated, each with the derived data the recursion
needs: the excess weights mu(I_j) - 1 of the heavy blocks, the induced
lower-dimensional weight vectors, their minimal denominators, and the
multiplicity flag epsilon for the four-block family.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .core import ValidationError, WeightVector

FAMILIES = ("T1a", "T1b", "T2a", "T2b")


@dataclass(frozen=True)
class TwoBlockPartition:
    """A two-block partition of {0..n-1} with both blocks of size >= 2."""

    light_block: frozenset[int]
    heavy_block: frozenset[int]

    def blocks(self) -> tuple[frozenset[int], frozenset[int]]:
        return (self.light_block, self.heavy_block)

    def oriented(self, mu: WeightVector) -> "TwoBlockPartition":
        """Reorient so the heavy block carries weight >= 1."""
        a, b = self.light_block, self.heavy_block
        if mu.subset_sum(a) > mu.subset_sum(b):
            a, b = b, a
        return TwoBlockPartition(a, b)


@dataclass(frozen=True)
class PartitionRecord:
    """One primary partition together with its recursion parameters.

    ``blocks`` lays out the index sets family by family:
    T1a ``(I0, I1)``, T1b ``(I00, I01, I1)``, T2a ``(I0, I1, I2)``,
    T2b ``(I01, I02, I1, I2)`` with I0j paired to Ij.
    """

    family: str
    blocks: tuple[frozenset[int], ...]
    mu_bars: tuple[Fraction, ...]
    block_sizes: tuple[int, ...]
    sub_weights: tuple[WeightVector, ...]
    min_denoms: tuple[int, ...]
    epsilon: int = 1

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "blocks": [sorted(b) for b in self.blocks],
            "mu_bars": [str(x) for x in self.mu_bars],
            "block_sizes": list(self.block_sizes),
            "sub_weights": [[str(x) for x in w] for w in self.sub_weights],
            "min_denoms": list(self.min_denoms),
            "epsilon": self.epsilon,
        }


def _sort_key(record: PartitionRecord):
    return tuple(tuple(sorted(b)) for b in record.blocks)


def _sub_vector(mu: WeightVector, heavy: Iterable[int]) -> WeightVector:
    """Weight vector induced by a heavy block: (2 - mu(I), sorted mu_i for i in I)."""
    heavy = sorted(heavy)
    first = 2 - mu.subset_sum(heavy)
    rest = sorted(mu[i] for i in heavy)
    return WeightVector((first, *rest))


def _heavy_denominator(mu: WeightVector, heavy: Iterable[int]) -> int:
    """Smallest e with e*mu_i integral for every i in the heavy block."""
    return math.lcm(*(mu[i].denominator for i in heavy))


def enum_P(n: int) -> list[TwoBlockPartition]:
    """All two-block partitions with both block sizes >= 2 (none for n < 4)."""
    if n < 4:
        return []
    out = []
    indices = range(n)
    # dedup up to swap: keep the block containing index 0 second
    for size in range(2, n - 1):
        for block in combinations(range(1, n), size):
            rest = frozenset(indices) - frozenset(block)
            if len(rest) < 2:
                continue
            out.append(TwoBlockPartition(frozenset(block), rest))
    out.sort(key=lambda p: tuple(sorted(p.light_block)))
    return out


def enum_P0(kappa) -> list[frozenset[int]]:
    """All subsets I with sum of orders -2, for an orders vector summing to -4.

    Both I and its complement appear when both qualify.
    """
    orders = tuple(getattr(kappa, "orders", kappa))
    if sum(orders) != -4:
        raise ValidationError("enum_P0 expects orders summing to -4")
    n = len(orders)
    out = []
    for size in range(1, n):
        for block in combinations(range(n), size):
            if sum(orders[i] for i in block) == -2:
                out.append(frozenset(block))
    out.sort(key=lambda b: (len(b), sorted(b)))
    return out


def enum_T1a(mu) -> list[PartitionRecord]:
    """Two-block partitions {I0, I1}: |I0| = 2, mu(I0) < 1 and non-integral."""
    mu = WeightVector.coerce(mu)
    n = mu.n
    out = []
    for pair in combinations(range(n), 2):
        light = mu.subset_sum(pair)
        if light >= 1 or light.denominator == 1:
            continue
        heavy = sorted(set(range(n)) - set(pair))
        out.append(
            PartitionRecord(
                family="T1a",
                blocks=(frozenset(pair), frozenset(heavy)),
                mu_bars=(mu.subset_sum(heavy) - 1,),
                block_sizes=(len(heavy),),
                sub_weights=(_sub_vector(mu, heavy),),
                min_denoms=(_heavy_denominator(mu, heavy),),
            )
        )
    out.sort(key=_sort_key)
    return out


def enum_T1b(mu) -> list[PartitionRecord]:
    """Three-block partitions {I00, I01, I1}: a weight-1 pair, a negative
    singleton, and a heavy block of non-integral weight > 1."""
    mu = WeightVector.coerce(mu)
    n = mu.n
    out = []
    for pair in combinations(range(n), 2):
        if mu.subset_sum(pair) != 1:
            continue
        rest = set(range(n)) - set(pair)
        for single in sorted(rest):
            if mu[single] >= 0:
                continue
            heavy = sorted(rest - {single})
            hw = mu.subset_sum(heavy)
            if hw <= 1 or hw.denominator == 1:
                continue
            out.append(
                PartitionRecord(
                    family="T1b",
                    blocks=(frozenset(pair), frozenset({single}), frozenset(heavy)),
                    mu_bars=(hw - 1,),
                    block_sizes=(len(heavy),),
                    sub_weights=(_sub_vector(mu, heavy),),
                    min_denoms=(_heavy_denominator(mu, heavy),),
                )
            )
    out.sort(key=_sort_key)
    return out


def enum_T2a(mu) -> list[PartitionRecord]:
    """Three-block partitions {I0, I1, I2}: a negative singleton and two heavy
    blocks of non-integral weight > 1; the unordered pair {I1, I2} appears once.
    """
    mu = WeightVector.coerce(mu)
    n = mu.n
    out = []
    for single in range(n):
        if mu[single] >= 0:
            continue
        rest = sorted(set(range(n)) - {single})
        anchor = rest[0]
        others = rest[1:]
        for size in range(1, len(rest)):
            for tail in combinations(others, size - 1):
                block1 = sorted((anchor, *tail))
                block2 = sorted(set(rest) - set(block1))
                if not block2:
                    continue
                w1, w2 = mu.subset_sum(block1), mu.subset_sum(block2)
                if w1 <= 1 or w2 <= 1:
                    continue
                if w1.denominator == 1 or w2.denominator == 1:
                    continue
                out.append(
                    PartitionRecord(
                        family="T2a",
                        blocks=(frozenset({single}), frozenset(block1),
                                frozenset(block2)),
                        mu_bars=(w1 - 1, w2 - 1),
                        block_sizes=(len(block1), len(block2)),
                        sub_weights=(_sub_vector(mu, block1),
                                     _sub_vector(mu, block2)),
                        min_denoms=(_heavy_denominator(mu, block1),
                                    _heavy_denominator(mu, block2)),
                    )
                )
    out.sort(key=_sort_key)
    return out


def enum_T2b(mu) -> list[PartitionRecord]:
    """Four-block partitions {I01, I02, I1, I2}: two singletons paired with two
    heavy blocks so that mu(I0j) + mu(Ij) = 1 for the paired blocks.

    Each block set appears once; epsilon = 2 exactly when the two singleton
    weights coincide (both pairings are then valid).
    """
    mu = WeightVector.coerce(mu)
    n = mu.n
    out = []
    for s1, s2 in combinations(range(n), 2):
        rest = sorted(set(range(n)) - {s1, s2})
        if len(rest) < 4:
            continue
        anchor = rest[0]
        others = rest[1:]
        for size in range(1, len(rest)):
            for tail in combinations(others, size - 1):
                block1 = sorted((anchor, *tail))
                block2 = sorted(set(rest) - set(block1))
                if not block2:
                    continue
                w1, w2 = mu.subset_sum(block1), mu.subset_sum(block2)
                if w1 <= 1 or w2 <= 1:
                    continue
                if w1.denominator == 1 or w2.denominator == 1:
                    continue
                direct = mu[s1] + w1 == 1 and mu[s2] + w2 == 1
                swapped = mu[s2] + w1 == 1 and mu[s1] + w2 == 1
                if not (direct or swapped):
                    continue
                first, second = (s1, s2) if direct else (s2, s1)
                epsilon = 2 if mu[s1] == mu[s2] else 1
                out.append(
                    PartitionRecord(
                        family="T2b",
                        blocks=(frozenset({first}), frozenset({second}),
                                frozenset(block1), frozenset(block2)),
                        mu_bars=(w1 - 1, w2 - 1),
                        block_sizes=(len(block1), len(block2)),
                        sub_weights=(_sub_vector(mu, block1),
                                     _sub_vector(mu, block2)),
                        min_denoms=(_heavy_denominator(mu, block1),
                                    _heavy_denominator(mu, block2)),
                        epsilon=epsilon,
                    )
                )
    out.sort(key=_sort_key)
    return out


def enum_all(mu) -> dict[str, list[PartitionRecord]]:
    """All four families at once, keyed by family tag."""
    return {
        "T1a": enum_T1a(mu),
        "T1b": enum_T1b(mu),
        "T2a": enum_T2a(mu),
        "T2b": enum_T2b(mu),
    }
