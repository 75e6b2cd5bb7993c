"""Exact integer polynomials in ``q`` and the product formulas built from them.

Everything here is exact: coefficients are Python ints and roots of unity are
handled through residues modulo cyclotomic polynomials, never floats.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb, gcd
from typing import Iterable, Optional

from .errors import DomainError, InexactDivisionError, NotRankedError

__all__ = [
    "QPolynomial", "RootOfUnityValue", "GuoZengFactor", "qint", "qfactorial",
    "qbinomial", "qint_ratio", "macmahon", "bender_knuth", "gaussian_product",
    "cyclotomic", "eval_at_root", "guo_zeng",
]


class QPolynomial:
    """Immutable polynomial with integer coefficients; ``coeffs[i]`` multiplies ``q**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("QPolynomial is immutable")

    @classmethod
    def constant(cls, c: int) -> "QPolynomial":
        return cls([c])

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "QPolynomial":
        return cls([0] * e + [c])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @staticmethod
    def _coerce(other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, int):
            return QPolynomial([other])
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative power")
        result, base = QPolynomial([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, divisor: "QPolynomial") -> tuple["QPolynomial", "QPolynomial"]:
        """Long division over the integers.

        Raises :class:`InexactDivisionError` when a quotient coefficient would
        not be an integer.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        d = divisor.coeffs
        lead, dd = d[-1], len(d) - 1
        rem = list(self.coeffs)
        if len(rem) <= dd:
            return QPolynomial(), QPolynomial(rem)
        quot = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            t, r = divmod(c, lead)
            if r:
                raise InexactDivisionError("quotient leaves the integers")
            quot[i - dd] = t
            for j, y in enumerate(d):
                rem[i - dd + j] -= t * y
        return QPolynomial(quot), QPolynomial(rem)

    def exact_div(self, divisor: "QPolynomial") -> "QPolynomial":
        q, r = self.divmod(divisor)
        if r:
            raise InexactDivisionError(f"nonzero remainder {r}")
        return q

    def __mod__(self, divisor):
        return self.divmod(divisor)[1]

    def __repr__(self) -> str:
        return f"QPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        terms = [(e, c) for e, c in enumerate(self.coeffs) if c]
        if not terms:
            return "0"
        out = []
        for k, (e, c) in enumerate(terms):
            if k == 0:
                out.append(f"{c}*q^{e}")
            else:
                out.append(f"{'-' if c < 0 else '+'} {abs(c)}*q^{e}")
        return " ".join(out)

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> "QPolynomial":
        return cls(int(c) for c in json.loads(text))


ONE = QPolynomial([1])


def qint(m: int) -> QPolynomial:
    """``[m]_q = 1 + q + ... + q^(m-1)``; ``[0]_q = 0``."""
    if m < 0:
        raise DomainError("q-integer of a negative number")
    return QPolynomial([1] * m)


def qfactorial(m: int) -> QPolynomial:
    if m < 0:
        raise DomainError("q-factorial of a negative number")
    result = ONE
    for i in range(2, m + 1):
        result = result * qint(i)
    return result


def qint_ratio(numerator: Iterable[int], denominator: Iterable[int]) -> QPolynomial:
    """``prod [a]_q / prod [b]_q`` over the given multisets, divided once at the end.

    Identical factors on both sides are cancelled before multiplying.
    """
    num, den = Counter(numerator), Counter(denominator)
    common = num & den
    num -= common
    den -= common
    if any(a <= 0 for a in num) or any(b <= 0 for b in den):
        raise DomainError("q-integer factors must be positive")
    top, bottom = ONE, ONE
    for a, k in sorted(num.items()):
        top = top * qint(a) ** k
    for b, k in sorted(den.items()):
        bottom = bottom * qint(b) ** k
    return top.exact_div(bottom)


def qbinomial(a: int, b: int) -> QPolynomial:
    """Gaussian binomial ``[a choose b]_q``."""
    if not 0 <= b <= a:
        raise DomainError(f"qbinomial needs 0 <= b <= a, got a={a}, b={b}")
    return qint_ratio(range(a - b + 1, a + 1), range(1, b + 1))


def macmahon(k: int, n: int, m: int) -> QPolynomial:
    """Plane partitions in a ``k x n x m`` box counted by size."""
    if min(k, n, m) < 1:
        raise DomainError("box dimensions must be positive")
    num, den = [], []
    for i in range(1, k + 1):
        for j in range(1, n + 1):
            for l in range(1, m + 1):
                num.append(i + j + l - 1)
                den.append(i + j + l - 2)
    den = [b for b in den if b > 0]
    return qint_ratio(num, den)


def bender_knuth(n: int, m: int) -> QPolynomial:
    """Symmetric plane partitions in an ``n x n x m`` box counted by total size."""
    if min(n, m) < 1:
        raise DomainError("box dimensions must be positive")
    num, den = [], []
    for i in range(1, n + 1):
        num.append(m + 2 * i - 1)
        den.append(2 * i - 1)
        for h in range(i + 1, n + 1):
            num.append(2 * (m + i + h - 1))
            den.append(2 * (i + h - 1))
    return qint_ratio(num, den)


def gaussian_product(P, m: int) -> QPolynomial:
    """``prod over p of (1 - q^(m+r(p)+1)) / (1 - q^(r(p)+1))`` with ``r`` the rank."""
    from .poset import rank_function

    if m < 1:
        raise DomainError("m must be positive")
    ranks = rank_function(P)
    if ranks is None:
        raise NotRankedError("gaussian_product needs a ranked poset")
    return qint_ratio((m + r + 1 for r in ranks), (r + 1 for r in ranks))


@lru_cache(maxsize=None)
def cyclotomic(e: int) -> QPolynomial:
    """The ``e``-th cyclotomic polynomial."""
    if e < 1:
        raise DomainError("cyclotomic index must be positive")
    poly = QPolynomial.monomial(e) - 1
    for d in range(1, e):
        if e % d == 0:
            poly = poly.exact_div(cyclotomic(d))
    return poly


@dataclass(frozen=True)
class RootOfUnityValue:
    """Exact value of a polynomial at ``zeta**d`` for primitive ``n``-th roots ``zeta``.

    ``residue`` is the polynomial reduced modulo the cyclotomic polynomial of
    ``e = n / gcd(n, d)``; the value is an integer exactly when it is constant.
    """

    order_n: int
    power_d: int
    e: int
    residue: QPolynomial

    @property
    def is_integer(self) -> bool:
        return self.residue.degree <= 0

    @property
    def value(self) -> Optional[int]:
        if not self.is_integer:
            return None
        return self.residue.coeffs[0] if self.residue.coeffs else 0

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.value)
        return f"non-rational ({self.residue} mod Phi_{self.e})"

    def scale(self, c: int) -> "RootOfUnityValue":
        return RootOfUnityValue(self.order_n, self.power_d, self.e, self.residue * c)

    def __mul__(self, other: "RootOfUnityValue") -> "RootOfUnityValue":
        if self.e != other.e:
            raise DomainError("values at roots of different orders")
        res = (self.residue * other.residue) % cyclotomic(self.e)
        return RootOfUnityValue(self.order_n, self.power_d, self.e, res)


def eval_at_root(f: QPolynomial, n: int, d: int) -> RootOfUnityValue:
    """Evaluate ``f`` at ``zeta**d`` where ``zeta`` is any primitive ``n``-th root of unity."""
    if n < 1:
        raise DomainError("root order must be positive")
    e = n // gcd(n, d % n)
    folded = [0] * e
    for i, c in enumerate(f.coeffs):
        folded[i % e] += c
    residue = QPolynomial(folded) % cyclotomic(e)
    return RootOfUnityValue(n, d, e, residue)


@dataclass(frozen=True)
class GuoZengFactor:
    """``binomial * residual`` where ``residual`` is a small q-binomial (or zero)."""

    binomial: int
    residual: QPolynomial

    def value_at_root(self, d: int) -> RootOfUnityValue:
        return eval_at_root(self.residual, d, 1).scale(self.binomial)


def guo_zeng(a: int, b: int, d: int) -> GuoZengFactor:
    """Split ``[a choose b]`` at a primitive ``d``-th root into integer and residual parts."""
    if not 0 <= b <= a or d < 1:
        raise DomainError("guo_zeng needs 0 <= b <= a and d >= 1")
    a1, r = divmod(a, d)
    b1, s = divmod(b, d)
    residual = qbinomial(r, s) if s <= r else QPolynomial()
    return GuoZengFactor(comb(a1, b1), residual)
