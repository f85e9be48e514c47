"""Permutation-invariant codes stored as exact Dicke-weight coefficient vectors."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact_arith import (
    Radical,
    RadicalSum,
    binom_gen,
    binom_int,
    sqrt_canonical,
)

__all__ = [
    "CodeError",
    "GmdParams",
    "PICode",
    "code_inner_products",
    "construct_gmdelta",
    "construct_pr_code",
    "gmdelta_weights",
]


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class PICode:
    """Two codewords ``sum_j alpha_j |D^n_j>`` and ``sum_j beta_j |D^n_j>``.

    ``alpha`` and ``beta`` are dense tuples of n+1 :class:`Radical` values.
    """

    n: int
    alpha: tuple[Radical, ...]
    beta: tuple[Radical, ...]
    label: str = ""
    normalized: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise CodeError("n must be positive")
        alpha = tuple(Radical.of(x) for x in self.alpha)
        beta = tuple(Radical.of(x) for x in self.beta)
        if len(alpha) != self.n + 1 or len(beta) != self.n + 1:
            raise CodeError(f"coefficient vectors must have length n+1 = {self.n + 1}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def support(self, which: int = 0) -> list[int]:
        vec = self.alpha if which == 0 else self.beta
        return [j for j, x in enumerate(vec) if not x.is_zero]

    def float_coefficients(self):
        import numpy as np

        return (
            np.array([float(x) for x in self.alpha]),
            np.array([float(x) for x in self.beta]),
        )

    def checked(self) -> "PICode":
        """Return a copy marked normalized after an exact (C1)/(C2) check."""
        inner, n0, n1 = code_inner_products(self)
        if inner or n0 or n1:
            raise CodeError(
                f"code {self.label!r} fails orthonormality: "
                f"<c0|c1>={inner!r}, |c0|^2-1={n0!r}, |c1|^2-1={n1!r}"
            )
        return PICode(self.n, self.alpha, self.beta, self.label, normalized=True)

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "label": self.label,
            "alpha": [x.to_json() for x in self.alpha],
            "beta": [x.to_json() for x in self.beta],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict, check: bool = True) -> "PICode":
        code = cls(
            int(obj["n"]),
            tuple(Radical.from_json(x) for x in obj["alpha"]),
            tuple(Radical.from_json(x) for x in obj["beta"]),
            obj.get("label", ""),
        )
        if check:
            inner, n0, n1 = code_inner_products(code)
            if not (inner or n0 or n1):
                code = PICode(code.n, code.alpha, code.beta, code.label, normalized=True)
        return code

    @classmethod
    def loads(cls, text: str) -> "PICode":
        return cls.from_json(json.loads(text))


@dataclass(frozen=True)
class GmdParams:
    g: int
    m: int
    delta: int

    def __post_init__(self):
        if self.g < 1 or self.m < 1 or self.delta < 0:
            raise CodeError(f"need g >= 1, m >= 1, delta >= 0; got {self}")

    @property
    def n(self) -> int:
        return 2 * self.g * self.m + self.delta + 1

    def gamma_sq(self) -> Fraction:
        g, m, n = self.g, self.m, self.n
        return binom_gen(Fraction(n, 2 * g), m) * Fraction(n - 2 * g * m, g * (m + 1))

    def b_sq(self, l: int) -> Fraction:
        return binom_int(self.m, l) / binom_gen(Fraction(self.n, self.g) - l, self.m + 1)

    def f_sq(self, l: int) -> Fraction:
        """Squared amplitude (gamma*b_l)^2 placed on weight g*l or n-g*l."""
        return self.gamma_sq() * self.b_sq(l)


def gmdelta_weights(params: GmdParams) -> tuple[dict[int, tuple[int, int]], dict[int, tuple[int, int]]]:
    """Weight -> (l, sign) placement for c0 and c1 of the (g, m, delta) code."""
    g, m, n = params.g, params.m, params.n
    c0: dict[int, tuple[int, int]] = {}
    c1: dict[int, tuple[int, int]] = {}
    for l in range(m + 1):
        if l % 2 == 0:
            c0[g * l] = (l, 1)
            c1[n - g * l] = (l, -1)
        else:
            c0[n - g * l] = (l, 1)
            c1[g * l] = (l, 1)
    return c0, c1


def construct_gmdelta(params: GmdParams) -> PICode:
    n = params.n
    alpha = [Radical(0)] * (n + 1)
    beta = [Radical(0)] * (n + 1)
    c0, c1 = gmdelta_weights(params)
    amps = {}
    for l in range(params.m + 1):
        sq = params.f_sq(l)
        if sq < 0:
            raise CodeError(f"negative squared amplitude at l={l} for {params}")
        amps[l] = sqrt_canonical(sq)
    for w, (l, sign) in c0.items():
        alpha[w] = amps[l] if sign > 0 else -amps[l]
    for w, (l, sign) in c1.items():
        beta[w] = amps[l] if sign > 0 else -amps[l]
    label = f"Q_{{{params.g},{params.m},{params.delta}}}"
    return PICode(n, tuple(alpha), tuple(beta), label).checked()


def construct_pr_code(n: int, q: Sequence, label: str = "") -> PICode:
    """Normalized code from coefficients q_0, q_2, ..., q_{n-1} (odd n).

    ``q[i]`` is q_{2i}; entries may be rationals or :class:`Radical` values.
    Codewords ``sum_l q_{2l} sqrt(C(n,2l)) |D_{2l}>`` and
    ``sum_l q_{n-2l-1} sqrt(C(n,2l+1)) |D_{2l+1}>`` are each rescaled to unit norm.
    """
    if n < 1 or n % 2 == 0:
        raise CodeError("n must be an odd positive integer")
    if len(q) != (n + 1) // 2:
        raise CodeError(f"expected {(n + 1) // 2} coefficients, got {len(q)}")
    qr = [Radical.of(x) for x in q]
    if all(x.is_zero for x in qr):
        raise CodeError("zero coefficient vector")

    def qv(j: int) -> Radical:
        return qr[j // 2]

    # squared entries are rational, so norms are rational
    sq0 = [qv(2 * l).square() * binom_int(n, 2 * l) for l in range((n + 1) // 2)]
    sq1 = [qv(n - 2 * l - 1).square() * binom_int(n, 2 * l + 1) for l in range((n + 1) // 2)]
    norm0, norm1 = sum(sq0), sum(sq1)
    if norm0 == 0 or norm1 == 0:
        raise CodeError("a codeword has zero norm")
    alpha = [Radical(0)] * (n + 1)
    beta = [Radical(0)] * (n + 1)
    for l in range((n + 1) // 2):
        a = qv(2 * l)
        if not a.is_zero:
            alpha[2 * l] = sqrt_canonical(sq0[l] / norm0) * a.sign()
        b = qv(n - 2 * l - 1)
        if not b.is_zero:
            beta[2 * l + 1] = sqrt_canonical(sq1[l] / norm1) * b.sign()
    return PICode(n, tuple(alpha), tuple(beta), label or f"PR_{n}").checked()


def code_inner_products(code: PICode) -> tuple[RadicalSum, RadicalSum, RadicalSum]:
    """Exact (sum a_j b_j, sum a_j^2 - 1, sum b_j^2 - 1)."""
    cross = RadicalSum.sum(a * b for a, b in zip(code.alpha, code.beta))
    n0 = RadicalSum.of(sum((a.square() for a in code.alpha), Fraction(0)) - 1)
    n1 = RadicalSum.of(sum((b.square() for b in code.beta), Fraction(0)) - 1)
    return cross, n0, n1


def unnormalized_pr_vectors(n: int, q: Sequence) -> tuple[list[Radical], list[Radical]]:
    """The raw PR coefficient vectors before rescaling (exact)."""
    qr = [Radical.of(x) for x in q]
    alpha = [Radical(0)] * (n + 1)
    beta = [Radical(0)] * (n + 1)
    for l in range((n + 1) // 2):
        alpha[2 * l] = qr[l] * sqrt_canonical(binom_int(n, 2 * l))
        beta[2 * l + 1] = qr[(n - 2 * l - 1) // 2] * sqrt_canonical(binom_int(n, 2 * l + 1))
    return alpha, beta

