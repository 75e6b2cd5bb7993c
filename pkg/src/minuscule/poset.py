"""Finite posets on ``range(n)`` and their order ideals.

Order ideals are plain ``int`` bitmasks: bit ``i`` is set when element ``i``
belongs to the ideal.  The canonical order on ideals is the numeric order of
these masks, i.e. lexicographic on the membership bitstring with element 0 as
the least significant position.
"""

from __future__ import annotations

import heapq
import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CapacityError, CycleError, DomainError
from .qpoly import QPolynomial

__all__ = [
    "Poset", "OrderIdeal", "RankFunction", "DEFAULT_MAX_IDEALS", "ENV_MAX_IDEALS",
    "max_ideals", "iter_bits", "from_covers", "chain", "antichain", "product",
    "ideals", "is_ideal", "ideal_lattice", "rank_function", "linear_extension",
    "linear_extensions", "is_isomorphic", "rank_generating_function",
    "read_poset", "write_poset", "to_dot", "bitstring",
]

OrderIdeal = int
RankFunction = tuple[int, ...]

DEFAULT_MAX_IDEALS = 10**7
ENV_MAX_IDEALS = "MINUSCULE_MAX_IDEALS"


def max_ideals(limit: Optional[int] = None) -> int:
    """Resolve the enumeration bound: explicit argument, then environment, then default."""
    if limit is not None:
        return limit
    env = os.environ.get(ENV_MAX_IDEALS)
    return int(env) if env else DEFAULT_MAX_IDEALS


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bitstring(ideal: OrderIdeal, n: int) -> str:
    """Membership string; character ``i`` is ``1`` when element ``i`` is present."""
    return "".join("1" if ideal >> i & 1 else "0" for i in range(n))


@dataclass(frozen=True)
class Poset:
    """A finite poset given by its (irredundant) cover relation.

    Build instances through :func:`from_covers` or the other constructors;
    the raw initializer does not validate its input.
    """

    n: int
    covers: frozenset[tuple[int, int]]
    labels: Optional[tuple] = None

    @cached_property
    def lower(self) -> tuple[int, ...]:
        """Mask of the elements each element covers."""
        masks = [0] * self.n
        for a, b in self.covers:
            masks[b] |= 1 << a
        return tuple(masks)

    @cached_property
    def upper(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for a, b in self.covers:
            masks[a] |= 1 << b
        return tuple(masks)

    @cached_property
    def below(self) -> tuple[int, ...]:
        """Principal order ideal of each element (the element included)."""
        masks = [0] * self.n
        for x in linear_extension(self):
            m = 1 << x
            for y in iter_bits(self.lower[x]):
                m |= masks[y]
            masks[x] = m
        return tuple(masks)

    @cached_property
    def above(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for x in reversed(linear_extension(self)):
            m = 1 << x
            for y in iter_bits(self.upper[x]):
                m |= masks[y]
            masks[x] = m
        return tuple(masks)

    @property
    def full(self) -> OrderIdeal:
        return (1 << self.n) - 1

    def leq(self, x: int, y: int) -> bool:
        return bool(self.below[y] >> x & 1)

    def minimal(self) -> list[int]:
        return [x for x in range(self.n) if not self.lower[x]]

    def maximal(self) -> list[int]:
        return [x for x in range(self.n) if not self.upper[x]]

    def label(self, x: int):
        if self.labels is None:
            return x
        lab = self.labels[x]
        return x if lab is None else lab

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={sorted(self.covers)})"


def _topological_order(n: int, succ: Sequence[int]) -> list[int]:
    indeg = [0] * n
    for x in range(n):
        for y in iter_bits(succ[x]):
            indeg[y] += 1
    avail = [x for x in range(n) if indeg[x] == 0]
    heapq.heapify(avail)
    order = []
    while avail:
        x = heapq.heappop(avail)
        order.append(x)
        for y in iter_bits(succ[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(avail, y)
    if len(order) != n:
        raise CycleError("cover relation contains a cycle")
    return order


def from_covers(n: int, covers: Iterable[tuple[int, int]], labels=None) -> Poset:
    """Build a poset from (lower, upper) pairs, dropping pairs implied by the others.

    >>> from_covers(3, [(0, 1), (1, 2), (0, 2)]).covers == {(0, 1), (1, 2)}
    True
    """
    if n < 0:
        raise DomainError("element count must be nonnegative")
    pairs = set()
    for a, b in covers:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexError(f"cover ({a}, {b}) out of range for n={n}")
        if a == b:
            raise CycleError(f"element {a} cannot cover itself")
        pairs.add((a, b))
    succ = [0] * n
    for a, b in pairs:
        succ[a] |= 1 << b
    order = _topological_order(n, succ)
    strictly_above = [0] * n
    for x in reversed(order):
        m = 0
        for y in iter_bits(succ[x]):
            m |= (1 << y) | strictly_above[y]
        strictly_above[x] = m
    reduced = set()
    for a, b in pairs:
        others = succ[a] & ~(1 << b)
        if not any(strictly_above[c] >> b & 1 for c in iter_bits(others)):
            reduced.add((a, b))
    if labels is not None:
        if isinstance(labels, dict):
            labels = tuple(labels.get(i) for i in range(n))
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise DomainError("labels must have one entry per element")
    return Poset(n, frozenset(reduced), labels)


def chain(m: int) -> Poset:
    """The total order ``[m]`` on ``0 < 1 < ... < m-1``."""
    if m < 1:
        raise DomainError("chain length must be at least 1")
    return Poset(m, frozenset((i, i + 1) for i in range(m - 1)))


def antichain(m: int) -> Poset:
    if m < 0:
        raise DomainError("antichain size must be nonnegative")
    return Poset(m, frozenset())


def product(P: Poset, Q: Poset) -> Poset:
    """Cartesian product; element ``(p, q)`` has index ``p * Q.n + q``."""
    k = Q.n
    covers = set()
    for a, b in P.covers:
        for q in range(k):
            covers.add((a * k + q, b * k + q))
    for c, d in Q.covers:
        for p in range(P.n):
            covers.add((p * k + c, p * k + d))
    labels = tuple((P.label(p), Q.label(q)) for p in range(P.n) for q in range(k))
    return Poset(P.n * k, frozenset(covers), labels)


def is_ideal(P: Poset, ideal: OrderIdeal) -> bool:
    if ideal < 0 or ideal >> P.n:
        return False
    return all(P.lower[x] & ideal == P.lower[x] for x in iter_bits(ideal))


def ideals(P: Poset, limit: Optional[int] = None) -> list[OrderIdeal]:
    """All order ideals of ``P`` in canonical (numeric mask) order.

    Elements are decided in linear-extension order, so every partial choice
    extends and the work is linear in the output size.
    """
    bound = max_ideals(limit)
    result = [0]
    for x in linear_extension(P):
        low = P.lower[x]
        bit = 1 << x
        result += [I | bit for I in result if I & low == low]
        if len(result) > bound:
            raise CapacityError(f"more than {bound} order ideals")
    result.sort()
    return result


def ideal_lattice(P: Poset, limit: Optional[int] = None) -> Poset:
    """``J(P)`` ordered by inclusion; element ``i`` is the ``i``-th canonical ideal.

    Labels carry the ideal masks.
    """
    ids = ideals(P, limit)
    index = {I: i for i, I in enumerate(ids)}
    covers = set()
    for i, I in enumerate(ids):
        for x in range(P.n):
            if not I >> x & 1 and P.lower[x] & I == P.lower[x]:
                covers.add((i, index[I | 1 << x]))
    return Poset(len(ids), frozenset(covers), tuple(ids))


def rank_function(P: Poset) -> Optional[RankFunction]:
    """Ranks with minimal elements at 0 and +1 along every cover, or ``None``."""
    r = [0] * P.n
    for x in linear_extension(P):
        low = P.lower[x]
        if low:
            r[x] = r[(low & -low).bit_length() - 1] + 1
    if any(r[b] - r[a] != 1 for a, b in P.covers):
        return None
    return tuple(r)


def linear_extension(P: Poset) -> list[int]:
    """Topological order, smallest available index first."""
    return _topological_order(P.n, P.upper)


def linear_extensions(P: Poset, limit: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Every linear extension of ``P`` (bottom first)."""
    bound = max_ideals(limit)
    count = 0
    prefix: list[int] = []

    def walk(done: int):
        nonlocal count
        if len(prefix) == P.n:
            count += 1
            if count > bound:
                raise CapacityError(f"more than {bound} linear extensions")
            yield tuple(prefix)
            return
        for x in range(P.n):
            if not done >> x & 1 and P.lower[x] & done == P.lower[x]:
                prefix.append(x)
                yield from walk(done | 1 << x)
                prefix.pop()

    yield from walk(0)


def rank_generating_function(P: Poset, limit: Optional[int] = None) -> QPolynomial:
    """``sum over ideals I of q^|I|`` by direct enumeration."""
    counts = Counter(I.bit_count() for I in ideals(P, limit))
    return QPolynomial([counts.get(k, 0) for k in range(P.n + 1)])


# -- isomorphism ---------------------------------------------------------------

def _heights(P: Poset) -> list[int]:
    h = [0] * P.n
    for x in linear_extension(P):
        h[x] = max((h[y] + 1 for y in iter_bits(P.lower[x])), default=0)
    return h


def _depths(P: Poset) -> list[int]:
    d = [0] * P.n
    for x in reversed(linear_extension(P)):
        d[x] = max((d[y] + 1 for y in iter_bits(P.upper[x])), default=0)
    return d


def _refine(P: Poset, Q: Poset, use_labels: bool) -> tuple[list[int], list[int]]:
    """Joint colour refinement of two posets so colours are comparable."""
    def initial(R: Poset):
        hs, ds = _heights(R), _depths(R)
        return [
            (hs[x], ds[x], R.lower[x].bit_count(), R.upper[x].bit_count(),
             R.labels[x] if use_labels and R.labels is not None else None)
            for x in range(R.n)
        ]

    keys = initial(P) + initial(Q)
    n = P.n
    both = (P, Q)
    while True:
        palette = {k: i for i, k in enumerate(sorted(set(keys), key=repr))}
        colors = [palette[k] for k in keys]
        new_keys = []
        for side, R in enumerate(both):
            off = side * n
            for x in range(R.n):
                new_keys.append((
                    colors[off + x],
                    tuple(sorted(colors[off + y] for y in iter_bits(R.lower[x]))),
                    tuple(sorted(colors[off + y] for y in iter_bits(R.upper[x]))),
                ))
        if len(set(new_keys)) == len(palette):
            return colors[:n], colors[n:]
        keys = new_keys


def is_isomorphic(P: Poset, Q: Poset, *, labels: bool = False) -> Optional[tuple[int, ...]]:
    """A cover-preserving bijection ``f`` (``f[x]`` in ``Q``) or ``None``.

    With ``labels=True`` the bijection must also preserve element labels.
    """
    if P.n != Q.n or len(P.covers) != len(Q.covers):
        return None
    if labels and (P.labels is None) != (Q.labels is None):
        return None
    cp, cq = _refine(P, Q, labels)
    if sorted(cp) != sorted(cq):
        return None
    by_color: dict[int, list[int]] = {}
    for y, c in enumerate(cq):
        by_color.setdefault(c, []).append(y)
    order = linear_extension(P)
    f = [-1] * P.n

    def search(pos: int, used: int) -> bool:
        if pos == P.n:
            return True
        x = order[pos]
        image = 0
        for z in iter_bits(P.lower[x]):
            image |= 1 << f[z]
        for y in by_color[cp[x]]:
            if used >> y & 1 or Q.lower[y] != image:
                continue
            f[x] = y
            if search(pos + 1, used | 1 << y):
                return True
        f[x] = -1
        return False

    return tuple(f) if search(0, 0) else None


# -- text formats --------------------------------------------------------------

def read_poset(text: str) -> Poset:
    """Parse the ``poset <n>`` / ``cover i j`` / ``label i text`` format."""
    n = None
    covers = []
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split(None, 1)
        args = rest[0] if rest else ""
        try:
            if head == "poset":
                if n is not None:
                    raise ValueError("duplicate poset header")
                n = int(args)
            elif n is None:
                raise ValueError("missing 'poset <n>' header")
            elif head == "cover":
                i, j = (int(t) for t in args.split())
                covers.append((i, j))
            elif head == "label":
                i, value = args.split(None, 1)
                labels[int(i)] = value.strip()
            else:
                raise ValueError(f"unknown directive {head!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ValueError("missing 'poset <n>' header")
    return from_covers(n, covers, labels if labels else None)


def write_poset(P: Poset, labels: bool = True) -> str:
    lines = [f"poset {P.n}"]
    lines += [f"cover {a} {b}" for a, b in sorted(P.covers)]
    if labels and P.labels is not None:
        lines += [f"label {i} {lab}" for i, lab in enumerate(P.labels) if lab is not None]
    return "\n".join(lines) + "\n"


def to_dot(P: Poset, name: str = "P", label_format=None) -> str:
    """Hasse diagram in DOT, drawn bottom to top."""
    fmt = label_format or (lambda x, lab: str(lab))
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for x in range(P.n):
        text = fmt(x, P.label(x)).replace('"', r"\"")
        lines.append(f'  {x} [label="{text}"];')
    for a, b in sorted(P.covers):
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
