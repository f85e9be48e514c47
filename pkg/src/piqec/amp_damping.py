"""Amplitude-damping analysis of (g, m, delta) codes with exact polynomials in p.

Kraus operators of the truncated set with at most t damped qubits are
grouped into classes (a, c): ``a = |supp A| = |supp B|`` and
``c = |supp A u supp B| - a``.  By permutation invariance every Dicke-state
matrix element depends only on the class, so nothing of size
``|eps| x |eps|`` is ever built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import mpmath

from .exact_arith import binom_gen, binom_int, to_fraction
from .picode import GmdParams, PICode, construct_gmdelta

__all__ = [
    "ADClass",
    "BoundReport",
    "OutOfRangeError",
    "PolyP",
    "ad_classes",
    "ad_dicke_inner",
    "bound_ratio_limit",
    "bound_report",
    "check_identity_E2",
    "code_diagonal_poly",
    "constant_C",
    "constant_D",
    "cross_terms_vanish",
    "hadamard_cross_poly",
    "infidelity_bound",
    "kraus_set_size",
    "lowest_powers",
    "threshold_p0",
    "vanishing_order_ok",
]


class OutOfRangeError(ValueError):
    """p outside the validity range; carries the computed threshold."""

    def __init__(self, msg: str, p0: mpmath.mpf | None = None):
        super().__init__(msg)
        self.p0 = p0


class PolyP:
    """Polynomial in p with rational coefficients (index = power)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [to_fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def monomial(cls, k: int, coef=1) -> "PolyP":
        return cls([0] * k + [coef])

    @classmethod
    def binomial_power(cls, e: int, sign: int = -1) -> "PolyP":
        """(1 + sign*p)^e"""
        return cls(Fraction(math.comb(e, k) * sign**k) for k in range(e + 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def lowest_power(self) -> int | None:
        return next((k for k, c in enumerate(self.coeffs) if c), None)

    def __add__(self, other: "PolyP") -> "PolyP":
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyP(self[k] + other[k] for k in range(n))

    def __neg__(self) -> "PolyP":
        return PolyP(-c for c in self.coeffs)

    def __sub__(self, other: "PolyP") -> "PolyP":
        return self + (-other)

    def __mul__(self, other) -> "PolyP":
        if isinstance(other, PolyP):
            out = [Fraction(0)] * max(0, len(self.coeffs) + len(other.coeffs) - 1)
            for i, x in enumerate(self.coeffs):
                if x:
                    for j, y in enumerate(other.coeffs):
                        out[i + j] += x * y
            return PolyP(out)
        s = to_fraction(other)
        return PolyP(c * s for c in self.coeffs)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyP) and self.coeffs == other.coeffs

    def __call__(self, p) -> Fraction:
        p = to_fraction(p)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * p + c
        return acc

    def eval_float(self, p: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * p + float(c)
        return acc

    def shift_down(self, k: int) -> "PolyP":
        """Divide by p^k (lower coefficients must vanish)."""
        if any(self[i] for i in range(k)):
            raise ValueError(f"polynomial not divisible by p^{k}")
        return PolyP(self.coeffs[k:])

    def __repr__(self) -> str:
        if not self.coeffs:
            return "PolyP(0)"
        return "PolyP(" + " + ".join(f"{c}*p^{k}" for k, c in enumerate(self.coeffs) if c) + ")"


@dataclass(frozen=True)
class ADClass:
    a: int
    c: int = 0

    def __post_init__(self):
        if not 0 <= self.c <= self.a:
            raise ValueError(f"need 0 <= c <= a, got {self}")


def ad_classes(t: int) -> list[ADClass]:
    return [ADClass(a, c) for a in range(t + 1) for c in range(a + 1)]


def kraus_set_size(n: int, t: int) -> int:
    return sum(math.comb(n, i) for i in range(t + 1))


def ad_dicke_inner(n: int, w: int, cls: ADClass) -> PolyP:
    """``<D^n_w| A^dag B |D^n_w>`` = p^a (1-p)^(w-a) C(n-c-a, w-a) / C(n, w)."""
    if not 0 <= w <= n:
        raise ValueError(f"weight {w} outside 0..{n}")
    a, c = cls.a, cls.c
    coef = binom_int(n - c - a, w - a) / binom_int(n, w)
    if coef == 0:
        return PolyP()
    return PolyP.monomial(a) * PolyP.binomial_power(w - a) * coef


def _check_regime(params: GmdParams, t: int) -> None:
    if params.g < t + 1 or params.delta < t:
        raise ValueError(
            f"cross terms are only known to vanish for g >= t+1 and delta >= t "
            f"(got g={params.g}, delta={params.delta}, t={t})"
        )


def hadamard_cross_poly(params: GmdParams, t: int, cls: ADClass) -> PolyP:
    """``<c_+| A^dag B |c_->`` for the (g, m, delta) code as a polynomial in p."""
    _check_regime(params, t)
    if cls.a > t:
        raise ValueError(f"class {cls} outside the truncated set for t={t}")
    g, m, n = params.g, params.m, params.n
    acc = PolyP()
    for l in range(m + 1):
        f2 = params.f_sq(l) / 2
        term = ad_dicke_inner(n, g * l, cls) - ad_dicke_inner(n, n - g * l, cls)
        acc = acc + term * (f2 if l % 2 == 0 else -f2)
    return acc


def constant_C(params: GmdParams, t: int) -> Fraction:
    """max over classes of the absolute coefficient mass at powers >= 2m-t+1."""
    start = 2 * params.m - t + 1
    best = Fraction(0)
    for cls in ad_classes(t):
        poly = hadamard_cross_poly(params, t, cls)
        best = max(best, sum((abs(poly[k]) for k in range(max(start, 0), poly.degree + 1)), Fraction(0)))
    return best


def code_diagonal_poly(code: PICode, which: int, cls: ADClass) -> PolyP:
    vec = code.alpha if which == 0 else code.beta
    acc = PolyP()
    for w, x in enumerate(vec):
        if not x.is_zero:
            acc = acc + ad_dicke_inner(code.n, w, cls) * x.square()
    return acc


def constant_D(code: PICode, t: int, p_ref=0) -> tuple[Fraction, ADClass]:
    """min over A of min_i <c_i|A^dag A|c_i> / p^a, evaluated at ``p_ref``.

    The default p_ref = 0 takes the leading coefficient of each diagonal.
    """
    if not code.normalized:
        raise ValueError("constant_D needs a normalized code")
    best: tuple[Fraction, ADClass] | None = None
    for a in range(t + 1):
        cls = ADClass(a, 0)
        for which in (0, 1):
            val = code_diagonal_poly(code, which, cls).shift_down(a)(p_ref)
            if best is None or val < best[0]:
                best = (val, cls)
    assert best is not None
    return best


def threshold_p0(n: int, t: int, m: int, C: Fraction, D: Fraction, dps: int = 30) -> mpmath.mpf:
    """``n^(-t/e) (D/(2C))^(1/e)`` with e = 2m-2t+1 (infinite when C = 0)."""
    e = 2 * m - 2 * t + 1
    with mpmath.workdps(dps + 10):
        if C == 0:
            return mpmath.inf
        if e <= 0:
            return mpmath.mpf(0)
        val = mpmath.power(n, mpmath.mpf(-t) / e) * mpmath.power(
            mpmath.mpf(D.numerator) / D.denominator / (2 * mpmath.mpf(C.numerator) / C.denominator),
            mpmath.mpf(1) / e,
        )
    return +val


def _p_below_p0(p: Fraction, n: int, t: int, m: int, C: Fraction, D: Fraction) -> bool:
    # p < p0  <=>  2 C n^t p^e < D, exact in rationals
    e = 2 * m - 2 * t + 1
    if C == 0:
        return True
    if e <= 0:
        return False
    return 2 * C * Fraction(n) ** t * p**e < D


@dataclass(frozen=True)
class BoundReport:
    C: Fraction
    D: Fraction
    D_class: ADClass
    p0: mpmath.mpf
    kraus_size: int
    bound: Fraction | None


def infidelity_bound(params: GmdParams, t: int, p, check_range: bool = True) -> Fraction:
    """Exact worst-case infidelity upper bound at decay probability p.

    ``1 - (1 - C(n,t+1) p^(t+1) - |eps|^2 C p^(2m-t+1))
         / (1 + 2 C |eps|^2 (|eps|-1) / D * p^(2m-2t+1))``

    Raises :class:`OutOfRangeError` unless 0 < p < min(p0, 1/2).
    """
    return bound_report(params, t, p, check_range).bound


def bound_report(params: GmdParams, t: int, p=None, check_range: bool = True) -> BoundReport:
    code = construct_gmdelta(params)
    n, m = params.n, params.m
    C = constant_C(params, t)
    D, D_cls = constant_D(code, t)
    p0 = threshold_p0(n, t, m, C, D)
    size = kraus_set_size(n, t)
    if p is None:
        return BoundReport(C, D, D_cls, p0, size, None)
    p = to_fraction(p)
    if check_range:
        if not (0 < p < Fraction(1, 2)) or not _p_below_p0(p, n, t, m, C, D):
            raise OutOfRangeError(
                f"p={p} outside validity range (0, min(p0, 1/2)), p0={mpmath.nstr(p0, 15)}", p0
            )
    numer = 1 - binom_int(n, t + 1) * p ** (t + 1) - size**2 * C * p ** (2 * m - t + 1)
    denom = 1 + 2 * C * size**2 * (size - 1) / D * p ** (2 * m - 2 * t + 1)
    return BoundReport(C, D, D_cls, p0, size, 1 - numer / denom)


def cross_terms_vanish(code: PICode, t: int) -> bool:
    """Weight bookkeeping: A^dag B moves weight by at most t, so supports of
    c0 and c1 that are more than t apart give zero cross terms."""
    s0, s1 = code.support(0), code.support(1)
    return all(abs(u - v) > t for u in s0 for v in s1)


def check_identity_E2(n: int, g: int, m: int, a: int, c: int, k: int, t: int) -> bool:
    """Exact check that the alternating sum behind the vanishing low-order
    coefficients of the cross polynomial is zero."""
    if not (n > 2 * g * m and 0 <= k <= 2 * m - t and 0 <= c <= a <= t <= m and g > 0):
        raise ValueError(f"E2 preconditions violated for {(n, g, m, a, c, k, t)}")
    total = Fraction(0)
    for l in range(m + 1):
        w = binom_int(m, l) / binom_gen(Fraction(n, g) - l, m + 1)
        gl = g * l
        left = binom_int(gl - a, k - a) * binom_int(n - c - a, gl - a)
        right = binom_int(n - gl - a, k - a) * binom_int(n - c - a, n - gl - a)
        term = w * (left - right) / binom_int(n, gl)
        total += term if l % 2 == 0 else -term
    return total == 0


def vanishing_order_ok(params: GmdParams, t: int) -> bool:
    """All coefficients through p^(2m-t) of every class polynomial vanish."""
    top = 2 * params.m - t
    return all(
        all(hadamard_cross_poly(params, t, cls)[k] == 0 for k in range(top + 1))
        for cls in ad_classes(t)
    )


def lowest_powers(params: GmdParams, t: int) -> dict[ADClass, int | None]:
    return {cls: hadamard_cross_poly(params, t, cls).lowest_power() for cls in ad_classes(t)}


def bound_ratio_limit(params: GmdParams, t: int) -> Fraction | None:
    """Exact limit of bound(p) / p^(t+1) as p -> 0, or None when it diverges.

    The bound is ``(K p^e + C(n,t+1) p^(t+1) + |eps|^2 C p^(2m-t+1)) / (1 + K p^e)``
    with ``K = 2 C |eps|^2 (|eps|-1) / D`` and e = 2m-2t+1, so the limit is
    finite exactly when every nonzero numerator term has order >= t+1.
    """
    rep = bound_report(params, t)
    n, m = params.n, params.m
    size = rep.kraus_size
    K = 2 * rep.C * size**2 * (size - 1) / rep.D
    terms = {t + 1: Fraction(binom_int(n, t + 1))}
    for order, coef in ((2 * m - 2 * t + 1, K), (2 * m - t + 1, size**2 * rep.C)):
        if coef:
            terms[order] = terms.get(order, Fraction(0)) + coef
    if any(order < t + 1 and coef for order, coef in terms.items()):
        return None
    return terms[t + 1]
