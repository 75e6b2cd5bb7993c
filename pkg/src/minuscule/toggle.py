"""Toggles, rowmotion and orbit decompositions of permutations of ``J(P)``.

Single-ideal operations work on int bitmasks.  Whole-space permutations are
computed on a numpy ``uint64`` array of all ideals when the poset has at most
64 elements, and ideal by ideal otherwise; both paths give identical results.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from math import lcm
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import NotRankedError
from .poset import OrderIdeal, Poset, bitstring, ideals, rank_function

__all__ = [
    "ToggleWord", "toggle", "rowmotion", "apply_word", "rank_toggle",
    "even_odd_word", "IdealSpace", "OrbitStructure", "orbit_structure",
    "fixed_point_counts", "cycle_type",
]

ToggleWord = tuple[int, ...]
Action = Union[Callable[[OrderIdeal], OrderIdeal], Sequence[int], None]

_WORD_BITS = 64


def toggle(P: Poset, p: int, ideal: OrderIdeal) -> OrderIdeal:
    """Add or remove ``p`` when the result is still an ideal, else return ``ideal``."""
    if not 0 <= p < P.n:
        raise IndexError(f"element {p} out of range")
    bit = 1 << p
    if ideal & bit:
        if not P.upper[p] & ideal:
            return ideal ^ bit
    elif P.lower[p] & ideal == P.lower[p]:
        return ideal | bit
    return ideal


def rowmotion(P: Poset, ideal: OrderIdeal) -> OrderIdeal:
    """The ideal generated by the minimal elements of the complement."""
    out = 0
    for x in range(P.n):
        if not ideal >> x & 1 and P.lower[x] & ideal == P.lower[x]:
            out |= P.below[x]
    return out


def apply_word(P: Poset, word: Sequence[int], ideal: OrderIdeal) -> OrderIdeal:
    """Apply the toggles of ``word`` left to right."""
    for p in word:
        ideal = toggle(P, p, ideal)
    return ideal


def _ranks(P: Poset, ranks) -> tuple[int, ...]:
    if ranks is None:
        ranks = rank_function(P)
    if ranks is None:
        raise NotRankedError("poset is not ranked")
    return tuple(ranks)


def rank_toggle(P: Poset, i: int, ranks=None) -> ToggleWord:
    """Toggles at every element of rank ``i``, in increasing index order."""
    r = _ranks(P, ranks)
    return tuple(x for x in range(P.n) if r[x] == i)


def even_odd_word(P: Poset, ranks=None) -> ToggleWord:
    """All odd-rank toggles followed by all even-rank toggles."""
    r = _ranks(P, ranks)
    odd = tuple(x for x in range(P.n) if r[x] % 2 == 1)
    even = tuple(x for x in range(P.n) if r[x] % 2 == 0)
    return odd + even


class IdealSpace:
    """All ideals of a poset in canonical order, with index lookup.

    ``permutation(action)`` returns ``perm`` with ``perm[i]`` the index of the
    image of ideal ``i``.
    """

    def __init__(self, P: Poset, limit: Optional[int] = None):
        self.poset = P
        self.ideals = ideals(P, limit)
        self.vectorized = P.n <= _WORD_BITS
        self._array = np.array(self.ideals, dtype=np.uint64) if self.vectorized else None
        self._index: Optional[dict[int, int]] = None

    def __len__(self) -> int:
        return len(self.ideals)

    def index(self, ideal: OrderIdeal) -> int:
        if self._index is None:
            self._index = {I: i for i, I in enumerate(self.ideals)}
        return self._index[ideal]

    def _lookup(self, images: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self._array, images)
        if np.any(pos >= len(self._array)) or np.any(self._array[np.minimum(pos, len(self._array) - 1)] != images):
            raise ValueError("action produced a non-ideal")
        return pos.astype(np.int64)

    def _rowmotion_array(self) -> np.ndarray:
        P, arr = self.poset, self._array
        out = np.zeros_like(arr)
        zero = np.uint64(0)
        for x in range(P.n):
            bit, low = np.uint64(1 << x), np.uint64(P.lower[x])
            hit = ((arr & bit) == zero) & ((arr & low) == low)
            out |= np.where(hit, np.uint64(P.below[x]), zero)
        return out

    def _word_array(self, word: Sequence[int]) -> np.ndarray:
        P, arr = self.poset, self._array.copy()
        zero = np.uint64(0)
        for p in word:
            if not 0 <= p < P.n:
                raise IndexError(f"element {p} out of range")
            bit, low, up = np.uint64(1 << p), np.uint64(P.lower[p]), np.uint64(P.upper[p])
            has = (arr & bit) != zero
            flip = (~has & ((arr & low) == low)) | (has & ((arr & up) == zero))
            arr ^= np.where(flip, bit, zero)
        return arr

    def permutation(self, action: Action = None) -> np.ndarray:
        """Permutation induced by rowmotion (``None``), a toggle word, or a callable."""
        P = self.poset
        if self.vectorized and (action is None or action is rowmotion):
            return self._lookup(self._rowmotion_array())
        if self.vectorized and not callable(action):
            return self._lookup(self._word_array(action))
        if action is None or action is rowmotion:
            fn = lambda I: rowmotion(P, I)
        elif not callable(action):
            word = tuple(action)
            fn = lambda I: apply_word(P, word, I)
        else:
            fn = action
        return np.array([self.index(fn(I)) for I in self.ideals], dtype=np.int64)

    def apply(self, action: Action, ideal: OrderIdeal) -> OrderIdeal:
        if action is None or action is rowmotion:
            return rowmotion(self.poset, ideal)
        if callable(action):
            return action(ideal)
        return apply_word(self.poset, action, ideal)


@dataclass(frozen=True)
class OrbitStructure:
    """Orbits as ``(representative, length)`` pairs; representatives are the least ideals."""

    n: int  # element count of the poset, for bitstring output
    orbits: tuple[tuple[OrderIdeal, int], ...]
    order: int

    @property
    def size(self) -> int:
        return sum(length for _, length in self.orbits)

    @property
    def multiset(self) -> Counter:
        """Orbit length -> number of orbits of that length."""
        return Counter(length for _, length in self.orbits)

    def summary(self) -> str:
        """E.g. ``3 x 18 + 1 x 2``, longest orbits first."""
        parts = [f"{cnt} x {length}" for length, cnt in sorted(self.multiset.items(), reverse=True)]
        return " + ".join(parts)

    def to_lines(self) -> str:
        return "".join(f"orbit {length} {bitstring(rep, self.n)}\n" for rep, length in self.orbits)

    def to_dict(self) -> dict:
        fix = fixed_point_counts(self)
        return {
            "size": self.size,
            "order": self.order,
            "orbits": {str(k): v for k, v in sorted(self.multiset.items())},
            "fixed_points": [fix[d] for d in range(self.order)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _decompose(perm: np.ndarray) -> list[tuple[int, int]]:
    """Cycles of ``perm`` as (least index, length), in increasing index order."""
    p = perm.tolist()
    seen = bytearray(len(p))
    cycles = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length, i = 0, start
        while not seen[i]:
            seen[i] = 1
            i = p[i]
            length += 1
        if i != start:
            raise ValueError("action is not a bijection")
        cycles.append((start, length))
    return cycles


def orbit_structure(P: Poset, action: Action = None, space: Optional[IdealSpace] = None,
                    limit: Optional[int] = None) -> OrbitStructure:
    """Orbit decomposition of ``J(P)`` under ``action`` (rowmotion by default)."""
    space = space or IdealSpace(P, limit)
    cycles = _decompose(space.permutation(action))
    orbits = tuple((space.ideals[i], length) for i, length in cycles)
    order = lcm(*(length for _, length in orbits)) if orbits else 1
    return OrbitStructure(P.n, orbits, order)


def fixed_point_counts(o: OrbitStructure) -> dict[int, int]:
    """Number of ideals fixed by the ``d``-th power, for ``0 <= d < order``."""
    mult = o.multiset
    fix = {0: o.size}
    for d in range(1, o.order):
        fix[d] = sum(length * cnt for length, cnt in mult.items() if d % length == 0)
    return fix


def cycle_type(perm: np.ndarray) -> Counter:
    return Counter(length for _, length in _decompose(perm))
