"""Exact instance checks of the binomial identities behind the (g, m, delta) codes.

Each ``check_*`` evaluates both sides in rationals (generalized binomials for
rational upper arguments) and returns True iff the identity holds exactly.
Grid sweeps emit one JSON line per tuple, in sorted tuple order.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, TextIO

from .amp_damping import check_identity_E2
from .exact_arith import binom_gen, binom_int, to_fraction

__all__ = [
    "GridSpec",
    "LEMMAS",
    "check_E1",
    "check_E2",
    "check_two_sums",
    "check_telescoping",
    "check_Z",
    "default_grid",
    "run_sweep",
]


def _e1_pre(n: int, g: int, m: int, a: int, r: int) -> None:
    if not (g > 0 and 0 <= a <= r <= 2 * m and 2 * m * g < n):
        raise ValueError(f"need g > 0 and 0 <= a <= r <= 2m < n/g; got {(n, g, m, a, r)}")


def check_E1(n: int, g: int, m: int, a: int, r: int) -> bool:
    _e1_pre(n, g, m, a, r)
    total = Fraction(0)
    for l in range(m + 1):
        w = binom_int(m, l) / binom_gen(Fraction(n, g) - l, m + 1)
        gl = g * l
        term = w * Fraction(binom_int(n - r, gl - a) - binom_int(n - r, gl - r + a), binom_int(n, gl))
        total += term if l % 2 == 0 else -term
    return total == 0


def check_two_sums(n: int, g: int, m: int, a: int, r: int) -> bool:
    """The polynomial form: both sides are sums over l of
    C(n/g, l) C(2m - n/g, m - l) times C(gl, a) C(n-gl, r-a), or the swapped pair."""
    _e1_pre(n, g, m, a, r)
    x = Fraction(n, g)
    left = right = Fraction(0)
    for l in range(m + 1):
        w = binom_gen(x, l) * binom_gen(2 * m - x, m - l)
        gl = g * l
        left += w * binom_int(gl, a) * binom_int(n - gl, r - a)
        right += w * binom_int(gl, r - a) * binom_int(n - gl, a)
    return left == right


def check_E2(n: int, g: int, m: int, a: int, c: int, k: int, t: int) -> bool:
    return check_identity_E2(n, g, m, a, c, k, t)


def check_Z(x, m: int) -> bool:
    x = to_fraction(x)
    if not (x > m > 0):
        raise ValueError(f"need x > m > 0; got x={x}, m={m}")
    lhs = sum((binom_int(m, l) / binom_gen(2 * x - l, m + 1) for l in range(m + 1)), Fraction(0))
    rhs = (m + 1) / (binom_gen(x, m) * 2 * (x - m))
    return lhs == rhs


def _F(m: int, l: int, x: Fraction) -> Fraction:
    return binom_int(m, l) / binom_gen(2 * x - l, m + 1)


def _G(m: int, l: int, x: Fraction) -> Fraction:
    # F(m,l) l(m+2)/(m-l+1), written with C(m,l)/(m-l+1) = C(m+1,l)/(m+1)
    # so that the l = m+1 boundary term is defined
    return binom_int(m + 1, l) * Fraction(l * (m + 2), m + 1) / binom_gen(2 * x - l, m + 1)


def check_telescoping(m: int, l: int, x) -> bool:
    x = to_fraction(x)
    if not (0 <= l <= m and x > m + 1):
        raise ValueError(f"need 0 <= l <= m and x > m+1; got m={m}, l={l}, x={x}")
    lhs = 2 * (m + 2) * _F(m, l, x) - 2 * (x - m - 1) * _F(m + 1, l, x)
    return lhs == _G(m, l + 1, x) - _G(m, l, x)


LEMMAS: dict[str, Callable[..., bool]] = {
    "E1": check_E1,
    "two_sums": check_two_sums,
    "E2": check_E2,
    "Z": check_Z,
    "telescoping": check_telescoping,
}

_ARGNAMES = {
    "E1": ("n", "g", "m", "a", "r"),
    "two_sums": ("n", "g", "m", "a", "r"),
    "E2": ("n", "g", "m", "a", "c", "k", "t"),
    "Z": ("x", "m"),
    "telescoping": ("m", "l", "x"),
}


@dataclass(frozen=True)
class GridSpec:
    """Parameter ranges; every tuple produced satisfies the lemma's hypotheses."""

    g_max: int = 4
    m_max: int = 4
    n_extra: int = 8  # n runs over 2gm+1 .. 2gm+n_extra
    x_extra_halves: int = 8  # x runs over m+1, m+3/2, ..., m+1+x_extra_halves/2

    def _gmn(self) -> Iterator[tuple[int, int, int]]:
        for g in range(1, self.g_max + 1):
            for m in range(1, self.m_max + 1):
                for n in range(2 * g * m + 1, 2 * g * m + self.n_extra + 1):
                    yield g, m, n

    def _xs(self, m: int) -> list[Fraction]:
        return [m + 1 + Fraction(h, 2) for h in range(self.x_extra_halves + 1)]

    def tuples(self, lemma: str) -> list[tuple]:
        out: list[tuple] = []
        if lemma in ("E1", "two_sums"):
            for g, m, n in self._gmn():
                out += [(n, g, m, a, r) for r in range(2 * m + 1) for a in range(r + 1)]
        elif lemma == "E2":
            for g, m, n in self._gmn():
                for t in range(m + 1):
                    for a in range(t + 1):
                        for c in range(a + 1):
                            out += [(n, g, m, a, c, k, t) for k in range(2 * m - t + 1)]
        elif lemma == "Z":
            out = [(x, m) for m in range(1, self.m_max + 1) for x in self._xs(m)]
        elif lemma == "telescoping":
            out = [
                (m, l, x)
                for m in range(1, self.m_max + 1)
                for l in range(m + 1)
                for x in self._xs(m)
                if x > m + 1
            ]
        else:
            raise ValueError(f"unknown lemma {lemma!r}; choose from {sorted(LEMMAS)}")
        return sorted(out)


def default_grid() -> GridSpec:
    return GridSpec()


def _run_one(job: tuple[str, tuple]) -> bool:
    lemma, args = job
    return LEMMAS[lemma](*args)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    return v


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PIQEC_THREADS", "1")))
    except ValueError:
        return 1


def run_sweep(lemma: str, grid: GridSpec | None = None, out: TextIO | None = None,
              workers: int | None = None) -> tuple[int, int]:
    """Check every grid tuple; returns (passed, total) and writes a JSON-lines ledger."""
    grid = grid or default_grid()
    tuples = grid.tuples(lemma)
    workers = workers or _threads()
    jobs = [(lemma, t) for t in tuples]
    if workers > 1 and len(jobs) > 64:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_one, jobs, chunksize=64))
    else:
        results = [_run_one(j) for j in jobs]
    if out is not None:
        names = _ARGNAMES[lemma]
        for args, ok in zip(tuples, results):
            rec = {"lemma": lemma, "params": {k: _jsonable(v) for k, v in zip(names, args)}, "passed": ok}
            out.write(json.dumps(rec, sort_keys=True) + "\n")
    return sum(results), len(results)
