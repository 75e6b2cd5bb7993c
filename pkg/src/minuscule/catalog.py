"""Minuscule posets built directly, paired with the heaps that realize them.

Entry names have the form ``TYPE<rank>:<weight>``, e.g. ``A4:2`` or ``E7:7``.
Within one D or E root system, weights giving isomorphic posets are merged
into the entry of the smallest weight and listed in ``duplicates``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .coxeter import ParabolicQuotient, RootSystem, minuscule_weights, root_system, weight_quotient
from .errors import DomainError, NotMinusculeError
from .heap import LabeledHeap, minuscule_heap
from .poset import Poset, chain, from_covers, ideal_lattice, is_isomorphic, product

__all__ = [
    "rectangle", "shifted_staircase", "propeller", "exceptional",
    "MinusculeEntry", "make_entry", "all_entries", "entry", "parse_entry_name",
]

# smallest rank admitted for each type; smaller ranks repeat other types
MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}


def rectangle(j: int, l: int) -> Poset:
    return product(chain(j), chain(l))


def shifted_staircase(n: int) -> Poset:
    """Pairs ``(i, j)`` with ``1 <= i <= j <= n``, ordered componentwise."""
    if n < 1:
        raise DomainError("staircase size must be positive")
    cells = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    index = {c: x for x, c in enumerate(cells)}
    covers = []
    for (i, j), x in index.items():
        for nxt in ((i + 1, j), (i, j + 1)):
            if nxt in index:
                covers.append((x, index[nxt]))
    return from_covers(len(cells), covers, labels=tuple(cells))


def _iterate_lattice(P: Poset, times: int) -> Poset:
    for _ in range(times):
        P = ideal_lattice(P)
    return P


def propeller(n: int) -> Poset:
    """``J^{n-3}([2] x [2])``, the D_n poset of the vector weight."""
    if n < 3:
        raise DomainError("propeller needs n >= 3")
    return _iterate_lattice(rectangle(2, 2), n - 3)


def exceptional(which: str) -> Poset:
    times = {"E6": 2, "E7": 3}.get(which.upper())
    if times is None:
        raise DomainError(f"unknown exceptional poset {which!r}")
    return _iterate_lattice(rectangle(2, 3), times)


def _direct(t: str, n: int, k: int) -> tuple[str, Poset]:
    if t == "A":
        return "rectangle", rectangle(k, n + 1 - k)
    if t == "B":
        return "staircase", shifted_staircase(n)
    if t == "C":
        return "rectangle", chain(2 * n - 1)
    if t == "D":
        return ("propeller", propeller(n)) if k == n else ("staircase", shifted_staircase(n - 1))
    return f"E{n}", exceptional(f"E{n}")


@dataclass(frozen=True)
class MinusculeEntry:
    rs: RootSystem
    weight: int
    family: str
    poset: Poset
    heap: LabeledHeap
    quotient: ParabolicQuotient
    iso: Optional[tuple[int, ...]]  # poset element -> heap element, None if not isomorphic
    duplicates: tuple[int, ...] = ()

    @property
    def name(self) -> str:
        return f"{self.rs.name}:{self.weight}"

    @property
    def verified(self) -> bool:
        return self.iso is not None


@lru_cache(maxsize=None)
def make_entry(t: str, n: int, k: int) -> MinusculeEntry:
    rs = root_system(t, n)
    if k not in minuscule_weights(rs):
        raise NotMinusculeError(f"node {k} of {rs.name} is not a minuscule weight")
    pq = weight_quotient(rs, k)
    heap = minuscule_heap(rs, k, pq)
    family, P = _direct(t, n, k)
    return MinusculeEntry(rs, k, family, P, heap, pq, is_isomorphic(P, heap.poset))


def _types(max_rank: int):
    for n in range(1, max_rank + 1):
        for t in "ABCD":
            if n >= MIN_RANK[t]:
                yield t, n
        if n in (6, 7):
            yield "E", n


@lru_cache(maxsize=None)
def all_entries(max_rank: int = 7) -> tuple[MinusculeEntry, ...]:
    if max_rank < 1:
        raise DomainError("max_rank must be positive")
    out = []
    for t, n in _types(max_rank):
        kept: list[MinusculeEntry] = []
        dups: dict[int, list[int]] = {}
        for k in minuscule_weights(root_system(t, n)):
            e = make_entry(t, n, k)
            twin = None
            if t in "DE":
                twin = next((i for i, f in enumerate(kept) if is_isomorphic(f.poset, e.poset)), None)
            if twin is None:
                kept.append(e)
                dups[len(kept) - 1] = []
            else:
                dups[twin].append(k)
        for i, e in enumerate(kept):
            if dups[i]:
                e = MinusculeEntry(e.rs, e.weight, e.family, e.poset, e.heap, e.quotient,
                                   e.iso, tuple(dups[i]))
            out.append(e)
    return tuple(out)


_NAME = re.compile(r"^\s*([A-Ea-e])(\d+)(?::(\d+))?\s*$")


def parse_entry_name(name: str) -> tuple[str, int, int]:
    """``"A4:2" -> ("A", 4, 2)``; the weight may be omitted when it is the first minuscule one."""
    m = _NAME.match(name)
    if not m:
        raise DomainError(f"bad catalog name {name!r}; expected e.g. A4:2 or E7")
    t, n = m.group(1).upper(), int(m.group(2))
    rs = root_system(t, n)
    weights = minuscule_weights(rs)
    if m.group(3) is not None:
        k = int(m.group(3))
    elif len(weights) == 1 or t == "E":
        k = weights[0]
    else:
        raise DomainError(f"{rs.name} has several minuscule weights {weights}; name one")
    return t, n, k


def entry(name: str) -> MinusculeEntry:
    return make_entry(*parse_entry_name(name))
