"""Quadratic systems for t-error-correcting codes of Pollatsek-Ruskai form.

Variables are q_0, q_2, ..., q_{n-1} (odd n); the code has
``|c0> = sum_l q_{2l} sqrt(C(n,2l)) |D_{2l}>`` and
``|c1> = sum_l q_{n-2l-1} sqrt(C(n,2l+1)) |D_{2l+1}>``.  Three families of
homogeneous quadratics with binomial coefficients C(n-2t, 2k) must vanish:

* D1, even a and odd b <= 2t:  sum_k C(n-2t,2k) q_{2k+a} q_{n-2k-b}
* D2, even a <= b, a+b < 2t:   sum_k C(n-2t,2k) (q_{2k+a} q_{2k+b} - q_{2k+2t-a} q_{2k+2t-b})
* D3, odd a <= b, a+b < 2t:    sum_k C(n-2t,2k) (q_{n-2k-a} q_{n-2k-b} - q_{n-2k-2t+a} q_{n-2k-2t+b})
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np
from scipy.optimize import least_squares

from .exact_arith import Radical, RadicalSum, sqrt_canonical, to_fraction

log = logging.getLogger(__name__)

__all__ = [
    "Equation",
    "QuadraticSystem",
    "Solution",
    "SolveConfig",
    "canonical_sign",
    "generate_system",
    "induced_coefficients",
    "recognize_closed_form",
    "relative_residuals",
    "residual",
    "residual_exact",
    "published_q19",
    "solve",
]

# published coefficients of the ((19,2,5)) code, even q_0..q_18
PUBLISHED_Q19 = (
    "1", "0.0477572", "-0.0267249", "-0.00506367", "0.00332914",
    "0.00527235", "-0.000947223", "0.0152707", "0.00888631", "0.32678",
)


@dataclass(frozen=True)
class Equation:
    """``sum coeffs[(i, j)] * q_i * q_j`` with i <= j the actual subscripts."""

    tag: str
    a: int
    b: int
    coeffs: dict

    def simplified(self) -> dict:
        """Coefficients divided by their (positive) gcd."""
        vals = [v for v in self.coeffs.values() if v]
        if not vals:
            return {}
        g = reduce(math.gcd, (abs(v) for v in vals))
        return {k: v // g for k, v in self.coeffs.items() if v}

    def __str__(self) -> str:
        parts = []
        for (i, j), c in sorted(self.coeffs.items()):
            mono = f"q{i}^2" if i == j else f"q{i}*q{j}"
            parts.append(f"{c:+d}*{mono}")
        return f"{self.tag}(a={self.a},b={self.b}): " + " ".join(parts) + " = 0"


@dataclass(frozen=True)
class QuadraticSystem:
    n: int
    t: int
    equations: tuple[Equation, ...]

    @property
    def variables(self) -> list[int]:
        return list(range(0, self.n, 2))

    @property
    def nvars(self) -> int:
        return (self.n + 1) // 2

    def matrices(self) -> np.ndarray:
        """Symmetric matrices M_e with residual_e = q^T M_e q (q indexed by i//2)."""
        M = np.zeros((len(self.equations), self.nvars, self.nvars))
        for e, eq in enumerate(self.equations):
            for (i, j), c in eq.coeffs.items():
                if i == j:
                    M[e, i // 2, i // 2] += c
                else:
                    M[e, i // 2, j // 2] += c / 2
                    M[e, j // 2, i // 2] += c / 2
        return M


def _accumulate(coeffs: dict, i: int, j: int, c: int, n: int) -> None:
    if not (0 <= i <= n - 1 and 0 <= j <= n - 1):
        return
    key = (min(i, j), max(i, j))
    coeffs[key] = coeffs.get(key, 0) + c


def generate_system(n: int, t: int) -> QuadraticSystem:
    if n % 2 == 0:
        raise ValueError("n must be odd")
    if t < 0 or n < 2 * t + 1:
        raise ValueError(f"need n >= 2t+1 (n={n}, t={t})")
    kmax = (n - 1) // 2 - t
    eqs: list[Equation] = []
    if t == 0:
        return QuadraticSystem(n, t, ())
    for a in range(0, 2 * t + 1, 2):
        for b in range(1, 2 * t + 1, 2):
            co: dict = {}
            for k in range(kmax + 1):
                _accumulate(co, 2 * k + a, n - 2 * k - b, math.comb(n - 2 * t, 2 * k), n)
            eqs.append(Equation("D1", a, b, {k: v for k, v in co.items() if v}))
    for tag, par in (("D2", 0), ("D3", 1)):
        for a in range(par, 2 * t, 2):
            for b in range(a, 2 * t, 2):
                if a + b >= 2 * t:
                    continue
                co = {}
                for k in range(kmax + 1):
                    c = math.comb(n - 2 * t, 2 * k)
                    if tag == "D2":
                        _accumulate(co, 2 * k + a, 2 * k + b, c, n)
                        _accumulate(co, 2 * k + 2 * t - a, 2 * k + 2 * t - b, -c, n)
                    else:
                        _accumulate(co, n - 2 * k - a, n - 2 * k - b, c, n)
                        _accumulate(co, n - 2 * k - 2 * t + a, n - 2 * k - 2 * t + b, -c, n)
                eqs.append(Equation(tag, a, b, {k: v for k, v in co.items() if v}))
    return QuadraticSystem(n, t, tuple(eqs))


def _check_len(system: QuadraticSystem, q: Sequence) -> None:
    if len(q) != system.nvars:
        raise ValueError(f"expected {system.nvars} coefficients, got {len(q)}")


def residual(system: QuadraticSystem, q: Sequence) -> list[Fraction]:
    """Exact residual of every equation at rational q (q[i] is q_{2i})."""
    _check_len(system, q)
    qf = [to_fraction(x) for x in q]
    return [
        sum((c * qf[i // 2] * qf[j // 2] for (i, j), c in eq.coeffs.items()), Fraction(0))
        for eq in system.equations
    ]


def residual_exact(system: QuadraticSystem, q: Sequence) -> list[RadicalSum]:
    """Exact residuals when the entries of q are radicals."""
    _check_len(system, q)
    qr = [Radical.of(x) for x in q]
    return [
        RadicalSum.sum(qr[i // 2] * qr[j // 2] * c for (i, j), c in eq.coeffs.items())
        for eq in system.equations
    ]


def relative_residuals(system: QuadraticSystem, q: Sequence) -> list[float]:
    """|residual| divided by the sum of absolute monomial contributions."""
    _check_len(system, q)
    qf = [to_fraction(x) for x in q]
    out = []
    for eq in system.equations:
        terms = [c * qf[i // 2] * qf[j // 2] for (i, j), c in eq.coeffs.items()]
        scale = sum(abs(x) for x in terms)
        out.append(float(abs(sum(terms)) / scale) if scale else 0.0)
    return out


# -- numerical search -----------------------------------------------------------


@dataclass(frozen=True)
class SolveConfig:
    restarts: int = 50
    seed: int = 0
    gauge: int | str = 0  # variable index pinned to 1, or "norm" for |q| = 1
    tolerance: float = 1e-10
    max_iter: int = 2000
    norm_fallback: bool = True
    initial: tuple = ()  # extra starting points tried before random restarts

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass
class Solution:
    q: np.ndarray  # q_0, q_2, ..., q_{n-1}
    residual_max: float  # exact residual of the rationalized point
    restart: int
    closed_form: list[Radical] | None = field(default=None)

    @property
    def exact(self) -> bool:
        return self.closed_form is not None

    def to_json(self) -> dict:
        out = {
            "q": [repr(float(x)) for x in self.q],
            "residual_certificate": f"{self.residual_max:.6e}",
            "restart": self.restart,
        }
        if self.closed_form is not None:
            out["closed_form"] = [r.to_json() for r in self.closed_form]
        return out


def canonical_sign(q: np.ndarray) -> np.ndarray:
    """Representative under q -> -q and q_j -> (-1)^(j/2) q_j (both map solutions to solutions)."""
    q = np.array(q, dtype=float)
    nz = np.flatnonzero(np.abs(q) > 1e-14)
    if nz.size and q[nz[0]] < 0:
        q = -q
    odd_half = np.arange(q.size) % 2 == 1  # subscripts j = 2i with j/2 odd
    nz = np.flatnonzero(odd_half & (np.abs(q) > 1e-14))
    if nz.size and q[nz[0]] < 0:
        q = np.where(odd_half, -q, q)
    return q


def recognize_closed_form(system: QuadraticSystem, q: np.ndarray, max_den: int = 10**4) -> list[Radical] | None:
    """Guess q_j = +-sqrt(rational) and keep it if the exact residuals vanish."""
    guess = []
    for x in q:
        sq = Fraction(float(x * x)).limit_denominator(max_den)
        if abs(float(sq) - x * x) > 1e-11 * max(1.0, x * x):
            return None
        r = sqrt_canonical(sq)
        guess.append(-r if x < 0 else r)
    if all(r.is_zero() for r in residual_exact(system, guess)):
        return guess
    return None


def _certify(system: QuadraticSystem, q: np.ndarray) -> float:
    return float(max((abs(r) for r in residual(system, [Fraction(float(x)) for x in q])), default=0))


def _search(system: QuadraticSystem, cfg: SolveConfig, gauge) -> list[Solution]:
    M = system.matrices()
    nv = system.nvars
    rng = np.random.default_rng(cfg.seed)

    if gauge == "norm":
        free = np.arange(nv)

        def full(x):
            return x

        def fun(x):
            return np.concatenate([np.einsum("eij,i,j->e", M, x, x), [x @ x - 1.0]])

        def jac(x):
            return np.vstack([2 * (M @ x), 2 * x[None, :]])
    else:
        g = int(gauge)
        free = np.array([i for i in range(nv) if i != g])

        def full(x):
            q = np.empty(nv)
            q[g] = 1.0
            q[free] = x
            return q

        def fun(x):
            q = full(x)
            return np.einsum("eij,i,j->e", M, q, q)

        def jac(x):
            return 2 * (M @ full(x))[:, free]

    starts = [np.asarray(s, dtype=float) for s in cfg.initial]
    found: list[Solution] = []
    for r in range(len(starts) + cfg.restarts):
        if r < len(starts):
            q0 = starts[r]
            x0 = q0 / np.linalg.norm(q0) if gauge == "norm" else q0[free] / q0[int(gauge)]
        else:
            scale = 10 ** rng.uniform(-2.5, 0.5)
            x0 = rng.normal(scale=scale, size=free.size)
            if gauge == "norm":
                x0 /= np.linalg.norm(x0)
        try:
            res = least_squares(
                fun, x0, jac=jac, method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15,
                max_nfev=cfg.max_iter,
            )
        except (ValueError, np.linalg.LinAlgError):
            continue
        x = res.x
        # Newton polish on the (possibly rectangular) system
        for _ in range(20):
            step, *_ = np.linalg.lstsq(jac(x), -fun(x), rcond=None)
            x = x + step
            if np.linalg.norm(step) < 1e-16 * max(1.0, np.linalg.norm(x)):
                break
        q = full(x)
        if not np.all(np.isfinite(q)) or np.abs(q).max() > 1e8:
            continue
        if gauge == "norm":
            q = q / np.linalg.norm(q)
        q = canonical_sign(q)
        if np.abs(fun(x)).max() > 1e3 * cfg.tolerance:
            continue
        cert = _certify(system, q)
        if cert >= cfg.tolerance:
            continue
        if any(np.abs(s.q - q).max() < 1e-6 for s in found):
            continue
        found.append(Solution(q, cert, r, recognize_closed_form(system, q)))
        log.debug("restart %d: solution with certificate %.3e", r, cert)
    return found


def solve(system: QuadraticSystem, cfg: SolveConfig = SolveConfig()) -> list[Solution]:
    """Random-restart least squares for nontrivial real solutions.

    Deterministic for a given seed.  An empty list means nothing was found
    within the restart budget, which is evidence, not a proof, that no
    solution exists.
    """
    if not system.equations:
        return []
    sols = _search(system, cfg, cfg.gauge)
    if not sols and cfg.norm_fallback and cfg.gauge != "norm":
        sols = _search(system, cfg, "norm")
    return sols


def published_q19() -> list[Fraction]:
    return [Fraction(x) for x in PUBLISHED_Q19]


def induced_coefficients(n: int, q: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    """Normalized float Dicke coefficients (alpha, beta) of the code built from q."""
    q = np.asarray(q, dtype=float)
    if n % 2 == 0 or q.size != (n + 1) // 2:
        raise ValueError(f"need odd n and {(n + 1) // 2} coefficients")
    alpha = np.zeros(n + 1)
    beta = np.zeros(n + 1)
    for l in range((n + 1) // 2):
        alpha[2 * l] = q[l] * math.sqrt(math.comb(n, 2 * l))
        beta[2 * l + 1] = q[(n - 2 * l - 1) // 2] * math.sqrt(math.comb(n, 2 * l + 1))
    na, nb = np.linalg.norm(alpha), np.linalg.norm(beta)
    if na == 0 or nb == 0:
        raise ValueError("a codeword has zero norm")
    return alpha / na, beta / nb
