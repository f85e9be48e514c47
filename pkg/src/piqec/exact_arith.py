"""Exact scalars: rationals, canonical square-root radicals and sums of radicals.

Rationals are :class:`fractions.Fraction`.  A :class:`Radical` is ``coef * sqrt(rad)``
with ``rad`` a squarefree positive integer, and a :class:`RadicalSum` is a finite
sum of radicals over distinct radicands.  Square roots of distinct squarefree
integers are linearly independent over Q, so a ``RadicalSum`` is zero exactly
when it has no terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Union

import mpmath
import numpy as np

__all__ = [
    "DEFAULT_TRIAL_BOUND",
    "Radical",
    "RadicalSum",
    "SquarefreeError",
    "binom_gen",
    "binom_int",
    "radical_mul",
    "radical_sum_add",
    "radical_sum_is_zero",
    "set_trial_bound",
    "sqrt_canonical",
    "squarefree_decompose",
    "to_fraction",
]

RationalLike = Union[int, Fraction]

#: Primes up to this bound are tried when extracting square factors.
DEFAULT_TRIAL_BOUND = 10**6

_trial_bound = DEFAULT_TRIAL_BOUND


class SquarefreeError(ArithmeticError):
    """Raised when a cofactor above ``bound**2`` cannot be decomposed."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# binomials


def binom_int(n: int, k: int) -> Fraction:
    """C(n, k) as a Fraction; zero unless 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


def binom_gen(x, k: int) -> Fraction:
    """Falling-factorial binomial x(x-1)...(x-k+1)/k! for rational x.

    Negative k gives 0, matching :func:`binom_int`.
    """
    if k < 0:
        return Fraction(0)
    x = to_fraction(x)
    num = Fraction(1)
    for i in range(k):
        num *= x - i
    return num / math.factorial(k)


# ---------------------------------------------------------------------------
# squarefree decomposition


def set_trial_bound(bound: int) -> None:
    """Change the trial-division prime bound (clears the decomposition cache)."""
    global _trial_bound
    if bound < 2:
        raise ValueError("bound must be >= 2")
    _trial_bound = int(bound)
    squarefree_decompose.cache_clear()


@lru_cache(maxsize=4)
def _primes_upto(limit: int) -> np.ndarray:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    # deterministic Miller-Rabin bases for n < 3.3e24, probabilistic beyond
    bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in bases:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in bases:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=65536)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Split a positive integer as ``(s, d)`` with ``n == s*s*d`` and d squarefree.

    Primes up to the configured bound (default 10**6) are divided out.  A
    leftover cofactor r is accepted when r <= bound**2 (then it is 1 or prime),
    when it is a perfect square of a prime-free-below-bound number handled the
    same way, or when it is a probable prime; anything else raises
    :class:`SquarefreeError`.
    """
    if n <= 0:
        raise ValueError("squarefree_decompose expects a positive integer")
    bound = _trial_bound
    s, d, r = 1, 1, n
    if r > 1:
        limit = min(bound, math.isqrt(r))
        for p in _primes_upto(max(limit, 2)).tolist():
            if p * p > r:
                break
            if r % p:
                continue
            e = 0
            while r % p == 0:
                r //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
    if r > 1:
        if r <= bound * bound:
            d *= r
        else:
            root = math.isqrt(r)
            if root * root == r and (root <= bound * bound or _is_probable_prime(root)):
                s *= root
            elif _is_probable_prime(r):
                d *= r
            else:
                raise SquarefreeError(
                    f"cofactor {r} exceeds trial bound {bound}**2 and is not prime"
                )
    return s, d


# ---------------------------------------------------------------------------
# radicals


@dataclass(frozen=True)
class Radical:
    """``coef * sqrt(rad)`` in canonical form (rad squarefree, zero is 0*sqrt(1))."""

    coef: Fraction
    rad: int = 1

    def __post_init__(self):
        coef = to_fraction(self.coef)
        rad = int(self.rad)
        if rad <= 0:
            raise ValueError("radicand must be positive")
        if coef == 0:
            rad = 1
        elif rad != 1:
            s, d = squarefree_decompose(rad)
            coef *= s
            rad = d
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "rad", rad)

    @classmethod
    def _raw(cls, coef: Fraction, rad: int) -> "Radical":
        # caller guarantees canonical form
        obj = object.__new__(cls)
        object.__setattr__(obj, "coef", coef)
        object.__setattr__(obj, "rad", rad if coef else 1)
        return obj

    @classmethod
    def of(cls, x) -> "Radical":
        if isinstance(x, Radical):
            return x
        return cls(to_fraction(x), 1)

    @property
    def is_zero(self) -> bool:
        return self.coef == 0

    @property
    def is_rational(self) -> bool:
        return self.rad == 1

    def square(self) -> Fraction:
        return self.coef * self.coef * self.rad

    def sign(self) -> int:
        return (self.coef > 0) - (self.coef < 0)

    def __neg__(self) -> "Radical":
        return Radical._raw(-self.coef, self.rad)

    def __mul__(self, other) -> "Radical":
        if not isinstance(other, Radical):
            try:
                other = Radical.of(other)
            except TypeError:
                return NotImplemented
        return radical_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Radical":
        other = Radical.of(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero radical")
        # 1/(c sqrt(d)) = sqrt(d) / (c d)
        return radical_mul(self, Radical(1 / (other.coef * other.rad), other.rad))

    def __add__(self, other) -> "RadicalSum":
        return RadicalSum.of(self) + other

    __radd__ = __add__

    def __sub__(self, other) -> "RadicalSum":
        return RadicalSum.of(self) - other

    def __float__(self) -> float:
        return float(self.coef) * math.sqrt(self.rad)

    def to_mpf(self) -> mpmath.mpf:
        return mpmath.mpf(self.coef.numerator) / self.coef.denominator * mpmath.sqrt(self.rad)

    def __repr__(self) -> str:
        if self.rad == 1:
            return f"Radical({self.coef})"
        return f"Radical({self.coef}*sqrt({self.rad}))"

    def __str__(self) -> str:
        if self.rad == 1:
            return str(self.coef)
        return f"{self.coef}*sqrt({self.rad})"

    def to_json(self, approx: bool = True) -> dict:
        out = {
            "num": str(self.coef.numerator),
            "den": str(self.coef.denominator),
            "rad": str(self.rad),
        }
        if approx:
            # convenience only; loaders ignore it
            out["approx"] = f"{float(self):.15g}"
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "Radical":
        return cls(Fraction(int(obj["num"]), int(obj["den"])), int(obj["rad"]))


def sqrt_canonical(q) -> Radical:
    """Canonical radical equal to sqrt(q) for a rational q >= 0."""
    q = to_fraction(q)
    if q < 0:
        raise ValueError(f"square root of negative rational {q}")
    if q == 0:
        return Radical(Fraction(0), 1)
    # sqrt(a/b) = sqrt(a*b)/b
    s, d = squarefree_decompose(q.numerator * q.denominator)
    return Radical._raw(Fraction(s, q.denominator), d)


def radical_mul(a: Radical, b: Radical) -> Radical:
    if a.is_zero or b.is_zero:
        return Radical._raw(Fraction(0), 1)
    g = math.gcd(a.rad, b.rad)
    # sqrt(d1) sqrt(d2) = g sqrt(d1 d2 / g^2); d1/g and d2/g are coprime squarefree
    return Radical._raw(a.coef * b.coef * g, (a.rad // g) * (b.rad // g))


# ---------------------------------------------------------------------------
# radical sums


class RadicalSum:
    """Immutable finite sum of radicals keyed by squarefree radicand."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        clean = {}
        for rad, coef in (terms or {}).items():
            coef = to_fraction(coef)
            if coef == 0:
                continue
            r = Radical(coef, rad)
            clean[r.rad] = clean.get(r.rad, Fraction(0)) + r.coef
        self._terms = {d: c for d, c in sorted(clean.items()) if c != 0}
        self._hash = None

    @classmethod
    def of(cls, x) -> "RadicalSum":
        if isinstance(x, RadicalSum):
            return x
        r = Radical.of(x)
        return cls({r.rad: r.coef})

    @classmethod
    def sum(cls, items: Iterable) -> "RadicalSum":
        acc: dict[int, Fraction] = {}
        for x in items:
            if isinstance(x, RadicalSum):
                for d, c in x._terms.items():
                    acc[d] = acc.get(d, Fraction(0)) + c
            else:
                r = Radical.of(x)
                if r.coef:
                    acc[r.rad] = acc.get(r.rad, Fraction(0)) + r.coef
        out = cls.__new__(cls)
        out._terms = {d: c for d, c in sorted(acc.items()) if c != 0}
        out._hash = None
        return out

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def radicals(self) -> list[Radical]:
        return [Radical._raw(c, d) for d, c in self._terms.items()]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other) -> "RadicalSum":
        try:
            return RadicalSum.sum((self, other))
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "RadicalSum":
        out = RadicalSum.__new__(RadicalSum)
        out._terms = {d: -c for d, c in self._terms.items()}
        out._hash = None
        return out

    def __sub__(self, other) -> "RadicalSum":
        return self + (-RadicalSum.of(other))

    def __rsub__(self, other) -> "RadicalSum":
        return RadicalSum.of(other) - self

    def __mul__(self, other) -> "RadicalSum":
        if isinstance(other, RadicalSum):
            return RadicalSum.sum(
                radical_mul(x, y) for x in self.radicals() for y in other.radicals()
            )
        try:
            r = Radical.of(other)
        except TypeError:
            return NotImplemented
        return RadicalSum.sum(radical_mul(x, r) for x in self.radicals())

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (RadicalSum, Radical, int, Fraction)):
            return self._terms == RadicalSum.of(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __float__(self) -> float:
        return math.fsum(float(c) * math.sqrt(d) for d, c in self._terms.items())

    def to_mpf(self) -> mpmath.mpf:
        return mpmath.fsum(Radical(c, d).to_mpf() for d, c in self._terms.items())

    def __repr__(self) -> str:
        if not self._terms:
            return "RadicalSum(0)"
        return "RadicalSum(" + " + ".join(str(r) for r in self.radicals()) + ")"

    def to_json(self) -> list[dict]:
        return [r.to_json(approx=False) for r in self.radicals()]

    @classmethod
    def from_json(cls, items: Iterable[Mapping]) -> "RadicalSum":
        return cls.sum(Radical.from_json(x) for x in items)


def radical_sum_add(s: RadicalSum, t: Radical) -> RadicalSum:
    return s + t


def radical_sum_is_zero(s: RadicalSum) -> bool:
    return s.is_zero()
