"""Exact error-correction conditions for permutation-invariant codes.

For a code with real Dicke coefficients, correcting t Pauli errors is
equivalent to the Knill-Laflamme conditions for the 2t-deletion channel,
whose Kraus set on symmetric states is ``E_a = G^a F^(s-a)``, a = 0..s.
The conditions reduce to the sums

    sum_j C(n-s, j) / sqrt(C(n, j+a) C(n, j+b)) * alpha_{j+a} beta_{j+b}      (C3)
    sum_j C(n-s, j) / sqrt(C(n, j+a) C(n, j+b)) * (alpha alpha - beta beta)   (C4)

vanishing for all 0 <= a, b <= s, with s = 2t for Pauli errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .exact_arith import Radical, RadicalSum, binom_int, radical_mul, sqrt_canonical
from .picode import PICode, code_inner_products

__all__ = [
    "ConditionReport",
    "DeletionKrausIndex",
    "all_passed",
    "c3_residual",
    "c4_residual",
    "deletion_kraus_action",
    "kraus_completeness",
    "residual_mp",
    "verify_deletion",
    "verify_pauli",
]


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    residual: RadicalSum
    a: int | None = None
    b: int | None = None
    t: int | None = None
    s: int | None = None
    codeword: int | None = None

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()

    def to_json(self) -> dict:
        out: dict = {"condition": self.condition, "a": self.a, "b": self.b}
        if self.s is not None:
            out["s"] = self.s
        else:
            out["t"] = self.t
        if self.codeword is not None:
            out["codeword"] = self.codeword
        out["residual"] = self.residual.to_json()
        out["passed"] = self.passed
        return out


@dataclass(frozen=True)
class DeletionKrausIndex:
    s: int
    a: int

    def __post_init__(self):
        if not 0 <= self.a <= self.s:
            raise ValueError(f"need 0 <= a <= s, got a={self.a}, s={self.s}")


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)


# weights C(n-s, j) / sqrt(C(n, j+a) C(n, j+b)) as canonical radicals
def _weight(n: int, s: int, j: int, a: int, b: int) -> Radical | None:
    ca, cb = binom_int(n, j + a), binom_int(n, j + b)
    num = binom_int(n - s, j)
    if ca == 0 or cb == 0 or num == 0:
        return None
    return sqrt_canonical(1 / (ca * cb)) * num


def _condition_sum(code: PICode, s: int, a: int, b: int, integrand: Callable[[int, int], RadicalSum | Radical]) -> RadicalSum:
    n = code.n
    if s > n:
        raise ValueError(f"parameter s={s} exceeds code length n={n}")
    if not (0 <= a <= s and 0 <= b <= s):
        raise ValueError(f"need 0 <= a, b <= {s}")
    terms = []
    for j in range(0, n - s + 1):
        if j + a > n or j + b > n:
            continue
        w = _weight(n, s, j, a, b)
        if w is None:
            continue
        val = integrand(j + a, j + b)
        if isinstance(val, RadicalSum):
            terms.append(val * w)
        elif not val.is_zero:
            terms.append(radical_mul(val, w))
    return RadicalSum.sum(terms)


def _c3(code: PICode, s: int, a: int, b: int) -> RadicalSum:
    return _condition_sum(code, s, a, b, lambda i, k: code.alpha[i] * code.beta[k])


def _c4(code: PICode, s: int, a: int, b: int) -> RadicalSum:
    al, be = code.alpha, code.beta
    return _condition_sum(
        code, s, a, b, lambda i, k: RadicalSum.sum((al[i] * al[k], -(be[i] * be[k])))
    )


def c3_residual(code: PICode, t: int, a: int, b: int) -> RadicalSum:
    """Exact (C3) sum for t Pauli errors (deletion parameter 2t)."""
    return _c3(code, 2 * t, a, b)


def c4_residual(code: PICode, t: int, a: int, b: int) -> RadicalSum:
    """Exact (C4) sum for t Pauli errors (deletion parameter 2t)."""
    return _c4(code, 2 * t, a, b)


def _reports(code: PICode, s: int, key: str) -> list[ConditionReport]:
    par = {key: (s // 2 if key == "t" else s)}
    inner, n0, n1 = code_inner_products(code)
    out = [
        ConditionReport("C1", inner, **par),
        ConditionReport("C2", n0, codeword=0, **par),
        ConditionReport("C2", n1, codeword=1, **par),
    ]
    for a in range(s + 1):
        for b in range(s + 1):
            out.append(ConditionReport("C3", _c3(code, s, a, b), a=a, b=b, **par))
    for a in range(s + 1):
        for b in range(s + 1):
            out.append(ConditionReport("C4", _c4(code, s, a, b), a=a, b=b, **par))
    return out


def verify_pauli(code: PICode, t: int) -> list[ConditionReport]:
    """(C1)-(C4) reports for t Pauli errors; the code passes iff every report passes."""
    if t < 0 or 2 * t > code.n:
        raise ValueError(f"need 0 <= 2t <= n; got t={t}, n={code.n}")
    return _reports(code, 2 * t, "t")


def verify_deletion(code: PICode, s: int) -> list[ConditionReport]:
    """Same conditions with the deletion count s in place of 2t."""
    if s < 0 or s > code.n:
        raise ValueError(f"need 0 <= s <= n; got s={s}, n={code.n}")
    return _reports(code, s, "s")


def deletion_kraus_action(code: PICode, idx: DeletionKrausIndex) -> tuple[list[Radical], list[Radical]]:
    """Images ``E_a|c0>``, ``E_a|c1>`` on the (n-s)-qubit Dicke basis.

    ``E_a |D^n_w> = sqrt(C(n-s, w-a) / C(n, w)) |D^(n-s)_(w-a)>``.
    """
    n, s, a = code.n, idx.s, idx.a
    if s > n:
        raise ValueError("cannot delete more qubits than the code has")
    out0 = [Radical(0)] * (n - s + 1)
    out1 = [Radical(0)] * (n - s + 1)
    for w in range(n + 1):
        num = binom_int(n - s, w - a)
        if num == 0:
            continue
        factor = sqrt_canonical(num / binom_int(n, w))
        out0[w - a] = radical_mul(code.alpha[w], factor)
        out1[w - a] = radical_mul(code.beta[w], factor)
    return out0, out1


def kraus_completeness(code: PICode, s: int) -> tuple[Fraction, Fraction]:
    """``sum_a C(s, a) <c_i|E_a^dag E_a|c_i>`` for i = 0, 1.

    The factor C(s, a) counts the bra strings of weight a that all act as E_a
    on symmetric states; with it the sum is the trace of the deletion output.
    """
    totals = []
    for which in (0, 1):
        tot = Fraction(0)
        for a in range(s + 1):
            img = deletion_kraus_action(code, DeletionKrausIndex(s, a))[which]
            tot += binom_int(s, a) * sum((x.square() for x in img), Fraction(0))
        totals.append(tot)
    return totals[0], totals[1]


def residual_mp(code: PICode, s: int, a: int, b: int, kind: str = "C3", dps: int = 50) -> mpmath.mpf:
    """The (C3)/(C4) sum evaluated independently in mpmath at ``dps`` digits."""
    with mpmath.workdps(dps):
        al = [x.to_mpf() for x in code.alpha]
        be = [x.to_mpf() for x in code.beta]
        n = code.n
        acc = []
        for j in range(n - s + 1):
            if j + a > n or j + b > n:
                continue
            ca, cb = math.comb(n, j + a), math.comb(n, j + b)
            w = mpmath.mpf(math.comb(n - s, j)) / mpmath.sqrt(mpmath.mpf(ca) * cb)
            if kind == "C3":
                acc.append(w * al[j + a] * be[j + b])
            else:
                acc.append(w * (al[j + a] * al[j + b] - be[j + a] * be[j + b]))
        return mpmath.fsum(acc)
