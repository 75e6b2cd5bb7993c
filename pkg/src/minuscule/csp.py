"""Cyclic sieving checks: fixed-point counts against exact root-of-unity values."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError, MismatchedSizeError
from .poset import Poset, chain, product
from .qpoly import QPolynomial, RootOfUnityValue, eval_at_root
from .toggle import OrbitStructure, fixed_point_counts, orbit_structure

__all__ = [
    "CspRow", "CspReport", "verify_csp", "orbit_lengths_from_fixed_points",
    "DivisibilityReport", "check_orbit_divisibility", "StaircaseReport",
    "check_free_orbits_staircase", "divisors",
]


@dataclass(frozen=True)
class CspRow:
    d: int
    fixed: int
    value: RootOfUnityValue

    @property
    def ok(self) -> bool:
        return self.value.is_integer and self.value.value == self.fixed


@dataclass(frozen=True)
class CspReport:
    set_size: int
    order: int
    rows: tuple[CspRow, ...]

    @property
    def first_failure(self) -> Optional[int]:
        return next((r.d for r in self.rows if not r.ok), None)

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    @property
    def verdict(self) -> str:
        bad = self.first_failure
        return "pass" if bad is None else f"fail at d={bad}"

    def to_dict(self) -> dict:
        return {
            "size": self.set_size,
            "order": self.order,
            "rows": [
                {"d": r.d, "fixed": r.fixed, "evaluation": str(r.value), "ok": r.ok}
                for r in self.rows
            ],
            "verdict": "pass" if self.passed else "fail",
            "first_failure": self.first_failure,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        head = ("d", "fixed", "X(zeta^d)", "ok")
        body = [(str(r.d), str(r.fixed), str(r.value), "yes" if r.ok else "NO") for r in self.rows]
        widths = [max(len(row[i]) for row in [head, *body]) for i in range(4)]
        fmt = lambda row: "  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip()
        lines = [f"|X| = {self.set_size}, order = {self.order}", fmt(head)]
        lines += [fmt(row) for row in body]
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"


def verify_csp(o: OrbitStructure, f: QPolynomial) -> CspReport:
    """Compare fixed points of every power of the action with ``f`` at ``zeta^d``.

    ``zeta`` is a primitive root of unity of the action's computed order.
    Every row is evaluated, including those after a failure.
    """
    if f(1) != o.size:
        raise MismatchedSizeError(f"f(1) = {f(1)} but the set has {o.size} elements")
    fix = fixed_point_counts(o)
    rows = tuple(CspRow(d, fix[d], eval_at_root(f, o.order, d)) for d in range(o.order))
    return CspReport(o.size, o.order, rows)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def orbit_lengths_from_fixed_points(fix: dict[int, int], order: int) -> Counter:
    """Recover ``length -> orbit count`` from fixed-point counts of each power.

    Points of exact period ``l`` number ``sum over e | l of mu(l/e) fix(e)``,
    with ``fix(order)`` read as ``fix(0)``.
    """
    out: Counter = Counter()
    for l in divisors(order):
        exact = sum(_mobius(l // e) * fix[e % order] for e in divisors(l))
        if exact % l:
            raise ValueError(f"{exact} points of period {l} do not form whole orbits")
        if exact:
            out[l] = exact // l
    return out


@dataclass(frozen=True)
class DivisibilityReport:
    k: int
    n: int
    orbits: Counter
    # (orbit length, d) pairs found although neither d | n nor d | n+1
    violations: tuple[tuple[int, int], ...] = field(default=())

    @property
    def modulus(self) -> int:
        return self.k + self.n + 1

    @property
    def lengths_divide(self) -> bool:
        return all(self.modulus % l == 0 for l in self.orbits)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_orbit_divisibility(k: int, n: int, limit: Optional[int] = None) -> DivisibilityReport:
    """Rowmotion orbits of ``J([k] x [n] x [2])`` against the divisor restriction.

    For a proper divisor ``l`` of ``k+n+1`` with ``d = (k+n+1)/l``, orbits of
    length ``l`` may only occur when ``d`` divides ``n`` or ``n+1``.
    """
    if k < 1 or n < 1:
        raise DomainError("k and n must be positive")
    P = product(product(chain(k), chain(n)), chain(2))
    counts = orbit_structure(P, limit=limit).multiset
    total = k + n + 1
    bad = []
    for l in divisors(total)[:-1]:
        d = total // l
        if counts.get(l) and n % d and (n + 1) % d:
            bad.append((l, d))
    return DivisibilityReport(k, n, counts, tuple(bad))


@dataclass(frozen=True)
class StaircaseReport:
    n: int
    size: int
    order: int
    orbits: Counter

    @property
    def ok(self) -> bool:
        return set(self.orbits) == {2 * self.n + 1} and self.order == 2 * self.n + 1


def check_free_orbits_staircase(n: int, limit: Optional[int] = None) -> StaircaseReport:
    """Orbits of rowmotion on ``J(staircase(n) x [2])``; all should have length ``2n+1``."""
    from .catalog import shifted_staircase

    P: Poset = product(shifted_staircase(n), chain(2))
    o = orbit_structure(P, limit=limit)
    return StaircaseReport(n, o.size, o.order, o.multiset)
