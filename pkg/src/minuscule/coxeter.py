"""Finite Weyl groups of types A-E7 acting on simple-root coordinates.

Generators are numbered from 1.  Classical types use the node numbering in
which the distinguished root sits at node 1:

    A_n   alpha_j = e_{j+1} - e_j
    B_n   alpha_1 = e_1,        alpha_j = e_j - e_{j-1}
    C_n   alpha_1 = 2 e_1,      alpha_j = e_j - e_{j-1}
    D_n   alpha_1 = e_1 + e_2,  alpha_j = e_j - e_{j-1}

so B_n has its minuscule node at 1, C_n at n, and D_n at 1, 2 and n.  E6 and
E7 use the Bourbaki diagram (2 attached to 4; E7 adds the 6-7 edge).

A group element is the integer matrix of its action on simple-root
coordinates: column ``j`` is the image of ``alpha_j``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import CapacityError, DomainError, NonUniqueError
from .poset import Poset, from_covers

__all__ = [
    "RootSystem", "WeylElement", "ParabolicQuotient", "root_system", "parse_type",
    "generator", "identity", "word_element", "inverse", "length", "reduced_word",
    "reduced_words", "commutation_class", "braid_obstruction",
    "is_fully_commutative", "is_below_left", "parabolic_quotient", "weight_quotient",
    "longest_rep", "coset_canonicalize", "coxeter_element", "MINUSCULE_WEIGHTS",
    "minuscule_weights",
]

DEFAULT_MAX_WORDS = 10**6

_E_EDGES = {
    6: [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    7: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
}


class WeylElement:
    """Immutable integer matrix; equality and hashing go by entries."""

    __slots__ = ("matrix", "_key")

    def __init__(self, matrix):
        m = np.array(matrix, dtype=np.int64)
        m.setflags(write=False)
        self.matrix = m
        self._key = m.tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.matrix @ other.matrix)

    def __call__(self, root) -> np.ndarray:
        return self.matrix @ np.asarray(root, dtype=np.int64)

    def __repr__(self) -> str:
        return f"WeylElement({self.matrix.tolist()})"


class RootSystem:
    """Cartan data, positive roots and simple reflections of one finite type."""

    def __init__(self, type_label: str, rank: int, cartan):
        self.type_label = type_label
        self.rank = rank
        c = np.array(cartan, dtype=np.int64)
        c.setflags(write=False)
        self.cartan = c  # cartan[i, j] = <alpha_j, alpha_i^vee>, 0-based
        self.positive_roots = _positive_roots(c)
        self._roots_t = self.positive_roots.T.copy()
        gens = []
        for i in range(rank):
            s = np.eye(rank, dtype=np.int64)
            s[i, :] -= c[i, :]
            gens.append(WeylElement(s))
        self.generators = tuple(gens)
        self._lengths: dict[bytes, int] = {}

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    def commutes(self, i: int, j: int) -> bool:
        """True for distinct commuting generators (a generator does not count as commuting with itself)."""
        return i != j and self.cartan[i - 1, j - 1] == 0

    def bond_order(self, i: int, j: int) -> int:
        """Order of ``s_i s_j``."""
        if i == j:
            return 1
        prod = int(self.cartan[i - 1, j - 1] * self.cartan[j - 1, i - 1])
        return {0: 2, 1: 3, 2: 4, 3: 6}[prod]

    @cached_property
    def identity(self) -> WeylElement:
        return WeylElement(np.eye(self.rank, dtype=np.int64))


def _positive_roots(cartan: np.ndarray) -> np.ndarray:
    n = cartan.shape[0]
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        beta = frontier.pop()
        for i in range(n):
            if beta == simple[i]:
                continue
            pairing = sum(beta[j] * int(cartan[i, j]) for j in range(n))
            gamma = list(beta)
            gamma[i] -= pairing
            gamma = tuple(gamma)
            if gamma not in seen:
                if min(gamma) < 0:
                    raise AssertionError("closure left the positive cone")
                seen.add(gamma)
                frontier.append(gamma)
    return np.array(sorted(seen, key=lambda r: (sum(r), r)), dtype=np.int64)


def _classical_simple_roots(t: str, n: int) -> list[list[int]]:
    dim = n + 1 if t == "A" else n

    def e(i):
        v = [0] * dim
        v[i - 1] = 1
        return v

    def diff(i, j):
        return [a - b for a, b in zip(e(i), e(j))]

    if t == "A":
        return [diff(j + 1, j) for j in range(1, n + 1)]
    tail = [diff(j, j - 1) for j in range(2, n + 1)]
    first = {
        "B": e(1),
        "C": [2 * x for x in e(1)],
        "D": [a + b for a, b in zip(e(1), e(2))],
    }[t]
    return [first] + tail


def _cartan_from_roots(roots: list[list[int]]) -> list[list[int]]:
    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    n = len(roots)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            num = 2 * dot(roots[j], roots[i])
            den = dot(roots[i], roots[i])
            if num % den:
                raise AssertionError("non-integral Cartan entry")
            out[i][j] = num // den
    return out


def root_system(type_label: str, rank: int) -> RootSystem:
    t = type_label.upper()
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7),
    }.get(t, False)
    if not ok:
        raise DomainError(f"no root system {type_label}{rank} in scope")
    if t == "E":
        cartan = 2 * np.eye(rank, dtype=np.int64)
        for i, j in _E_EDGES[rank]:
            cartan[i - 1, j - 1] = cartan[j - 1, i - 1] = -1
    else:
        cartan = _cartan_from_roots(_classical_simple_roots(t, rank))
    return RootSystem(t, rank, cartan)


def parse_type(name: str) -> RootSystem:
    """``"A4"`` -> the A_4 root system."""
    m = re.fullmatch(r"\s*([A-Ea-e])\s*(\d+)\s*", name)
    if not m:
        raise DomainError(f"cannot parse root system {name!r}")
    return root_system(m.group(1), int(m.group(2)))


MINUSCULE_WEIGHTS = {"B": lambda n: (1,), "C": lambda n: (n,), "D": lambda n: (1, 2, n)}


def minuscule_weights(rs: RootSystem) -> tuple[int, ...]:
    if rs.type_label == "A" or (rs.type_label == "D" and rs.rank == 3):
        return tuple(range(1, rs.rank + 1))
    if rs.type_label == "E":
        return (1, 6) if rs.rank == 6 else (7,)
    return MINUSCULE_WEIGHTS[rs.type_label](rs.rank)


def generator(rs: RootSystem, i: int) -> WeylElement:
    if not 1 <= i <= rs.rank:
        raise IndexError(f"generator s_{i} out of range for {rs.name}")
    return rs.generators[i - 1]


def identity(rs: RootSystem) -> WeylElement:
    return rs.identity


def word_element(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    """The product ``s_{w[0]} s_{w[1]} ...``."""
    m = np.eye(rs.rank, dtype=np.int64)
    for i in word:
        m = m @ generator(rs, i).matrix
    return WeylElement(m)


def inverse(rs: RootSystem, w: WeylElement) -> WeylElement:
    inv = np.rint(np.linalg.inv(w.matrix.astype(float))).astype(np.int64)
    if not np.array_equal(inv @ w.matrix, np.eye(rs.rank, dtype=np.int64)):
        raise AssertionError("matrix inverse is not integral")
    return WeylElement(inv)


def length(rs: RootSystem, w: WeylElement) -> int:
    """Number of positive roots sent to negative roots."""
    cached = rs._lengths.get(w._key)
    if cached is None:
        images = w.matrix @ rs._roots_t
        cached = int((images.sum(axis=0) < 0).sum())
        if len(rs._lengths) < 200_000:
            rs._lengths[w._key] = cached
    return cached


def _left_descents(winv: np.ndarray) -> list[int]:
    """Left descents of ``w`` from the matrix of ``w^-1`` (1-based)."""
    return [int(j) + 1 for j in np.flatnonzero(winv.sum(axis=0) < 0)]


def _times_generator(rs: RootSystem, m: np.ndarray, i: int) -> np.ndarray:
    return m @ rs.generators[i - 1].matrix


def reduced_word(rs: RootSystem, w: WeylElement) -> tuple[int, ...]:
    """A reduced word, peeling the smallest left descent at each step."""
    winv = inverse(rs, w).matrix
    word = []
    while True:
        desc = _left_descents(winv)
        if not desc:
            return tuple(word)
        i = desc[0]
        word.append(i)
        winv = _times_generator(rs, winv, i)


def reduced_words(rs: RootSystem, w: WeylElement, limit: Optional[int] = None) -> set[tuple[int, ...]]:
    """Every reduced word of ``w`` (brute force)."""
    bound = DEFAULT_MAX_WORDS if limit is None else limit
    memo: dict[bytes, list[tuple[int, ...]]] = {}

    def words(winv: np.ndarray) -> list[tuple[int, ...]]:
        key = winv.tobytes()
        if key in memo:
            return memo[key]
        desc = _left_descents(winv)
        if not desc:
            out = [()]
        else:
            out = []
            for i in desc:
                out += [(i,) + tail for tail in words(_times_generator(rs, winv, i))]
                if len(out) > bound:
                    raise CapacityError(f"more than {bound} reduced words")
        memo[key] = out
        return out

    return set(words(inverse(rs, w).matrix))


def commutation_class(rs: RootSystem, word: Sequence[int], limit: Optional[int] = None) -> set[tuple[int, ...]]:
    """Words reachable from ``word`` by swapping adjacent commuting letters."""
    bound = DEFAULT_MAX_WORDS if limit is None else limit
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for k in range(len(u) - 1):
            if rs.commutes(u[k], u[k + 1]):
                v = u[:k] + (u[k + 1], u[k]) + u[k + 2:]
                if v not in seen:
                    seen.add(v)
                    if len(seen) > bound:
                        raise CapacityError(f"commutation class exceeds {bound} words")
                    queue.append(v)
    return seen


def heap_poset(rs: RootSystem, word: Sequence[int]) -> Poset:
    """Positions of ``word``; an earlier position lies above a later non-commuting one."""
    l = len(word)
    covers = [
        (jp, j)
        for j in range(l)
        for jp in range(j + 1, l)
        if not rs.commutes(word[j], word[jp])
    ]
    return from_covers(l, covers, labels=tuple(word))


def braid_obstruction(rs: RootSystem, word: Sequence[int], heap: Optional[Poset] = None):
    """Positions of a convex alternating chain ``s t s ...`` of length ``m(s, t) >= 3``.

    Such a chain exists in the heap of a reduced word exactly when some
    commutation-equivalent word admits a braid move.  Returns ``None`` when
    there is none.
    """
    heap = heap or heap_poset(rs, word)
    letters = sorted(set(word))
    for a, s in enumerate(letters):
        for t in letters[a + 1:]:
            m = rs.bond_order(s, t)
            if m < 3:
                continue
            seq = [j for j, x in enumerate(word) if x in (s, t)]
            for start in range(len(seq) - m + 1):
                window = seq[start:start + m]
                if any(word[window[k]] == word[window[k + 1]] for k in range(m - 1)):
                    continue
                top, bottom = window[0], window[-1]
                between = heap.above[bottom] & heap.below[top] & ~((1 << top) | (1 << bottom))
                inner = sum(1 << j for j in window[1:-1])
                if between & ~inner == 0:
                    return tuple(window)
    return None


def is_fully_commutative(rs: RootSystem, w: WeylElement) -> bool:
    """True when all reduced words of ``w`` are related by commutations alone."""
    return braid_obstruction(rs, reduced_word(rs, w)) is None


def is_below_left(rs: RootSystem, x: WeylElement, w: WeylElement) -> bool:
    """``x <=_L w``: some reduced word of ``w`` ends with one of ``x``."""
    return length(rs, w * inverse(rs, x)) + length(rs, x) == length(rs, w)


def _has_right_descent_in(w: WeylElement, J: Iterable[int]) -> bool:
    sums = w.matrix.sum(axis=0)
    return any(sums[j - 1] < 0 for j in J)


@dataclass
class ParabolicQuotient:
    """Minimal coset representatives of ``W / W_J`` with left weak order."""

    rs: RootSystem
    J: frozenset[int]
    reps: list[WeylElement]
    lengths: list[int]
    weak_order: Poset
    index: dict[WeylElement, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def omitted(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.rs.rank + 1) if i not in self.J)


def parabolic_quotient(rs: RootSystem, J: Iterable[int], limit: Optional[int] = None) -> ParabolicQuotient:
    """Breadth-first generation of ``W^J`` from the identity by left multiplication."""
    J = frozenset(J)
    if any(not 1 <= j <= rs.rank for j in J):
        raise IndexError("J references a missing generator")
    bound = DEFAULT_MAX_WORDS if limit is None else limit
    reps = [rs.identity]
    lengths = [0]
    index = {rs.identity: 0}
    covers = []
    queue = deque([0])
    while queue:
        a = queue.popleft()
        w = reps[a]
        for k in range(1, rs.rank + 1):
            u = rs.generators[k - 1] * w
            if length(rs, u) != lengths[a] + 1 or _has_right_descent_in(u, J):
                continue
            b = index.get(u)
            if b is None:
                b = len(reps)
                if b >= bound:
                    raise CapacityError(f"quotient larger than {bound}")
                reps.append(u)
                lengths.append(lengths[a] + 1)
                index[u] = b
                queue.append(b)
            covers.append((a, b))
    weak = from_covers(len(reps), covers)
    return ParabolicQuotient(rs, J, reps, lengths, weak, index)


def weight_quotient(rs: RootSystem, k: int) -> ParabolicQuotient:
    """The maximal quotient whose ``J`` omits node ``k``."""
    if not 1 <= k <= rs.rank:
        raise IndexError(f"node {k} out of range for {rs.name}")
    return parabolic_quotient(rs, set(range(1, rs.rank + 1)) - {k})


def longest_rep(pq: ParabolicQuotient) -> WeylElement:
    top = max(pq.lengths)
    hits = [w for w, l in zip(pq.reps, pq.lengths) if l == top]
    if len(hits) != 1:
        raise NonUniqueError(f"{len(hits)} representatives of maximal length {top}")
    return hits[0]


def coset_canonicalize(pq: ParabolicQuotient, x: WeylElement) -> WeylElement:
    """Minimal representative of ``x W_J``: strip right descents in ``J``."""
    rs = pq.rs
    J = sorted(pq.J)
    m = x.matrix
    while True:
        sums = m.sum(axis=0)
        j = next((j for j in J if sums[j - 1] < 0), None)
        if j is None:
            return WeylElement(m)
        m = _times_generator(rs, m, j)


def coxeter_element(rs: RootSystem, ordering: Sequence[int]) -> WeylElement:
    """``s_{i_1} s_{i_2} ... s_{i_n}`` for a permutation ``(i_1, ..., i_n)`` of the nodes."""
    ordering = tuple(ordering)
    if sorted(ordering) != list(range(1, rs.rank + 1)):
        raise DomainError(f"{ordering} is not a permutation of 1..{rs.rank}")
    return word_element(rs, ordering)
