"""Heaps of fully commutative elements and the ideal <-> group element bijection.

Orientation: an earlier letter of the source word sits *higher* in the heap,
and ``phi`` multiplies the labels of a bottom-up linear extension of an ideal
so that the first-listed (lowest) element is the rightmost factor.  The full
ideal therefore maps to the source element itself.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .coxeter import (
    ParabolicQuotient, RootSystem, WeylElement, braid_obstruction,
    coset_canonicalize, coxeter_element, generator, heap_poset, is_below_left,
    length, longest_rep, minuscule_weights, reduced_word, weight_quotient,
    word_element,
)
from .errors import (
    DomainError, MixedParityError, NotBelowError, NotFullyCommutativeError,
    NotMinusculeError, NotRankedError, NotReducedError,
)
from .poset import OrderIdeal, Poset, iter_bits, linear_extension, rank_function, to_dot, write_poset
from .toggle import IdealSpace, ToggleWord

__all__ = [
    "LabeledHeap", "EquivarianceReport", "heap_of", "minuscule_heap", "phi",
    "phi_table", "phi_inverse", "label_toggle", "coxeter_toggle_word",
    "bipartite_ordering", "generator_orderings", "verify_equivariance", "verify_generator_actions",
    "heap_to_text", "heap_to_dot",
]


@dataclass(frozen=True)
class LabeledHeap:
    rs: RootSystem
    poset: Poset  # labels are generator indices
    source_word: tuple[int, ...]

    @property
    def labels(self) -> tuple[int, ...]:
        return self.poset.labels

    @cached_property
    def element(self) -> WeylElement:
        return word_element(self.rs, self.source_word)

    @cached_property
    def chains(self) -> dict[int, tuple[int, ...]]:
        """Label class of each generator, lowest element first."""
        out: dict[int, list[int]] = {}
        for pos in reversed(range(self.poset.n)):
            out.setdefault(self.source_word[pos], []).append(pos)
        return {k: tuple(v) for k, v in out.items()}


def heap_of(rs: RootSystem, word: Sequence[int]) -> LabeledHeap:
    word = tuple(int(i) for i in word)
    for i in word:
        generator(rs, i)
    if length(rs, word_element(rs, word)) != len(word):
        raise NotReducedError(f"{word} is not reduced in {rs.name}")
    P = heap_poset(rs, word)
    bad = braid_obstruction(rs, word, P)
    if bad is not None:
        raise NotFullyCommutativeError(f"braid move available at positions {bad}")
    return LabeledHeap(rs, P, word)


def minuscule_heap(rs: RootSystem, k: int, pq: Optional[ParabolicQuotient] = None) -> LabeledHeap:
    """Heap of the longest minimal representative for the quotient omitting ``k``."""
    if k not in minuscule_weights(rs):
        raise NotMinusculeError(f"node {k} of {rs.name} is not a minuscule weight")
    w = longest_rep(pq or weight_quotient(rs, k))
    return heap_of(rs, reduced_word(rs, w))


def phi(h: LabeledHeap, ideal: OrderIdeal) -> WeylElement:
    rs = h.rs
    m = rs.identity.matrix
    for x in linear_extension(h.poset):
        if ideal >> x & 1:
            m = rs.generators[h.labels[x] - 1].matrix @ m
    return WeylElement(m)


def phi_table(h: LabeledHeap, space: IdealSpace) -> list[WeylElement]:
    """``phi`` of every ideal in ``space``, built up one maximal element at a time."""
    rs, P = h.rs, h.poset
    values: dict[int, WeylElement] = {0: rs.identity}
    for I in sorted(space.ideals, key=int.bit_count):
        if I == 0:
            continue
        x = next(x for x in iter_bits(I) if not P.upper[x] & I)
        values[I] = rs.generators[h.labels[x] - 1] * values[I ^ (1 << x)]
    return [values[I] for I in space.ideals]


def phi_inverse(h: LabeledHeap, x: WeylElement) -> OrderIdeal:
    if not is_below_left(h.rs, x, h.element):
        raise NotBelowError("element is not below the heap's element in left weak order")
    counts = Counter(reduced_word(h.rs, x))
    ideal = 0
    for k, nu in counts.items():
        chain = h.chains.get(k, ())
        if nu > len(chain):
            raise NotBelowError(f"s_{k} occurs {nu} times but the heap has {len(chain)}")
        for pos in chain[:nu]:
            ideal |= 1 << pos
    return ideal


def label_toggle(h: LabeledHeap, k: int) -> ToggleWord:
    """Toggles at every element labeled ``s_k``, in increasing element order."""
    return tuple(x for x in range(h.poset.n) if h.labels[x] == k)


def _check_ordering(h: LabeledHeap, ordering: Sequence[int]) -> tuple[int, ...]:
    ordering = tuple(ordering)
    if sorted(ordering) != list(range(1, h.rs.rank + 1)):
        raise DomainError(f"{ordering} is not a permutation of 1..{h.rs.rank}")
    return ordering


def coxeter_toggle_word(h: LabeledHeap, ordering: Sequence[int]) -> ToggleWord:
    """Toggle word for ``(i_1, ..., i_n)``: the ``s_{i_n}`` class first, ``s_{i_1}`` last."""
    word: tuple[int, ...] = ()
    for k in reversed(_check_ordering(h, ordering)):
        word += label_toggle(h, k)
    return word


def bipartite_ordering(h: LabeledHeap) -> tuple[int, ...]:
    """Generators whose elements have even rank, then those of odd rank.

    The matching Coxeter toggle word toggles all odd ranks first and then all
    even ranks.
    """
    ranks = rank_function(h.poset)
    if ranks is None:
        raise NotRankedError("heap is not ranked")
    parity: dict[int, set[int]] = {}
    for x, r in enumerate(ranks):
        parity.setdefault(h.labels[x], set()).add(r % 2)
    mixed = [k for k, p in parity.items() if len(p) > 1]
    if mixed:
        raise MixedParityError(f"label classes with mixed rank parity: {sorted(mixed)}")
    gens = range(1, h.rs.rank + 1)
    odd = tuple(k for k in gens if parity.get(k) == {1})
    even = tuple(k for k in gens if parity.get(k) != {1})
    return even + odd


def generator_orderings(rank: int, *, exhaustive_limit: int = 720, sample: int = 100,
                        seed: int = 0) -> list[tuple[int, ...]]:
    """Every ordering of ``1..rank`` if there are at most ``exhaustive_limit``,
    otherwise ``sample`` distinct orderings drawn with ``random.Random(seed)``."""
    nodes = tuple(range(1, rank + 1))
    if math.factorial(rank) <= exhaustive_limit:
        return list(itertools.permutations(nodes))
    rng = random.Random(seed)
    seen: dict[tuple[int, ...], None] = {}
    while len(seen) < min(sample, math.factorial(rank)):
        seen[tuple(rng.sample(nodes, rank))] = None
    return list(seen)


@dataclass(frozen=True)
class EquivarianceReport:
    ordering: tuple[int, ...]
    checked: int
    counterexample: Optional[tuple[OrderIdeal, WeylElement, WeylElement]] = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def verify_equivariance(h: LabeledHeap, pq: ParabolicQuotient, ordering: Sequence[int],
                        space: Optional[IdealSpace] = None,
                        phis: Optional[list[WeylElement]] = None) -> EquivarianceReport:
    """Check ``phi(t(I)) == canonical(c * phi(I))`` on every ideal ``I``.

    ``t`` is the Coxeter toggle word of ``ordering`` and ``c`` the matching
    Coxeter element.  The counterexample, if any, is
    ``(I, expected, got)``.
    """
    ordering = _check_ordering(h, ordering)
    space = space or IdealSpace(h.poset)
    phis = phis or phi_table(h, space)
    perm = space.permutation(coxeter_toggle_word(h, ordering))
    c = coxeter_element(h.rs, ordering)
    for i, I in enumerate(space.ideals):
        expected = coset_canonicalize(pq, c * phis[i])
        got = phis[perm[i]]
        if got != expected:
            return EquivarianceReport(ordering, i + 1, (I, expected, got))
    return EquivarianceReport(ordering, len(space))


def verify_generator_actions(h: LabeledHeap, pq: ParabolicQuotient,
                             space: Optional[IdealSpace] = None,
                             phis: Optional[list[WeylElement]] = None):
    """Per-generator check; returns ``None`` or ``(k, I, expected, got)``."""
    space = space or IdealSpace(h.poset)
    phis = phis or phi_table(h, space)
    for k in range(1, h.rs.rank + 1):
        perm = space.permutation(label_toggle(h, k))
        s = h.rs.generators[k - 1]
        for i, I in enumerate(space.ideals):
            expected = coset_canonicalize(pq, s * phis[i])
            if phis[perm[i]] != expected:
                return (k, I, expected, phis[perm[i]])
    return None


def heap_to_text(h: LabeledHeap) -> str:
    return f"# heap of {h.rs.name} word {' '.join(map(str, h.source_word))}\n" + write_poset(h.poset)


def heap_to_dot(h: LabeledHeap, name: str = "heap") -> str:
    return to_dot(h.poset, name, lambda x, lab: f"s{lab}")
