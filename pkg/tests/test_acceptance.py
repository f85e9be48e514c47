"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from piqec.amp_damping import (
    ad_classes,
    bound_ratio_limit,
    check_identity_E2,
    hadamard_cross_poly,
    infidelity_bound,
)
from piqec.exact_arith import Radical, RadicalSum, sqrt_canonical
from piqec.identities import run_sweep
from piqec.kl_verifier import all_passed, kraus_completeness, verify_deletion, verify_pauli
from piqec.oracle import (
    DenseState,
    delete_kraus,
    delete_partial_trace,
    deletion_bra_errors,
    expand_code,
    expand_dicke,
    kl_gram_check,
    pauli_errors,
)
from piqec.picode import GmdParams, construct_gmdelta, construct_pr_code
from piqec.pr_conditions import (
    SolveConfig,
    generate_system,
    induced_coefficients,
    published_q19,
    relative_residuals,
    residual,
    solve,
)


@pytest.fixture()
def report(capsys):
    def _report(num, ok, label, t0, detail=""):
        line = f"[acceptance {num}] {'PASS' if ok else 'FAIL'} {label} ({time.perf_counter() - t0:.2f}s)"
        if detail:
            line += f" {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return _report


def _sq(vec):
    return {j: x.square() for j, x in enumerate(vec) if not x.is_zero}


def test_1_construction_fixtures(report):
    t0 = time.perf_counter()
    q212 = construct_gmdelta(GmdParams(2, 1, 2))
    q424 = construct_gmdelta(GmdParams(4, 2, 4))
    q111 = construct_gmdelta(GmdParams(1, 1, 1))
    q332 = construct_gmdelta(GmdParams(3, 3, 2))
    F = Fraction
    checks = [
        _sq(q212.alpha) == {0: F(3, 10), 5: F(7, 10)},
        _sq(q212.beta) == {2: F(7, 10), 7: F(3, 10)},
        q212.alpha[0].sign() > 0 and q212.alpha[5].sign() > 0,
        q212.beta[2].sign() > 0 and q212.beta[7].sign() < 0,
        _sq(q424.alpha) == {0: F(5, 68), 8: F(7, 12), 17: F(35, 102)},
        _sq(q111.alpha) == {0: F(1, 3), 3: F(2, 3)},
        _sq(q111.beta) == {1: F(2, 3), 4: F(1, 3)},
        sorted(_sq(q332.alpha).values()) == sorted(F(k, 64) for k in (1, 21, 35, 7)),
        _sq(q332.alpha) == {0: F(1, 64), 6: F(21, 64), 12: F(35, 64), 18: F(7, 64)},
        _sq(q332.beta) == {3: F(7, 64), 9: F(35, 64), 15: F(21, 64), 21: F(1, 64)},
    ]
    elapsed = time.perf_counter() - t0
    report(1, all(checks) and elapsed < 1.0, "construction fixtures exact", t0)


def test_2_pauli_correction(report):
    t0 = time.perf_counter()
    q = {k: construct_gmdelta(GmdParams(*k)) for k in [(2, 1, 2), (4, 2, 4), (3, 3, 2), (1, 1, 1)]}
    passes = [
        all_passed(verify_pauli(q[(2, 1, 2)], 1)),
        all_passed(verify_pauli(q[(4, 2, 4)], 2)),
        all_passed(verify_pauli(q[(3, 3, 2)], 1)),
    ]
    fails = [
        not all_passed(verify_pauli(q[(2, 1, 2)], 2)),
        not all_passed(verify_pauli(q[(1, 1, 1)], 1)),
    ]
    elapsed = time.perf_counter() - t0
    report(2, all(passes) and all(fails) and elapsed < 5.0, "exact Pauli verification", t0)


def test_3_deletion_correction(report):
    t0 = time.perf_counter()
    ok = [
        all_passed(verify_deletion(construct_gmdelta(GmdParams(1, 1, 1)), 1)),
        all_passed(verify_deletion(construct_gmdelta(GmdParams(2, 1, 2)), 2)),
        all_passed(verify_deletion(construct_gmdelta(GmdParams(4, 2, 4)), 4)),
    ]
    # shortest member of the family satisfying g >= s, m >= ceil(s/2), delta >= s
    for s in range(1, 5):
        P = GmdParams(s, math.ceil(s / 2), s)
        want = (s + 1) ** 2 - s if s % 2 == 0 else (s + 1) ** 2
        ok.append(P.n == want)
        ok.append(all_passed(verify_deletion(construct_gmdelta(P), s)))
    ok.append(GmdParams(2, 1, 2).n == (2 + 1) ** 2 - 2 == 7)
    report(3, all(ok), "deletion verification and shortest lengths", t0)


def test_4_oracle_agreement(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst = 0.0
    fixtures = [construct_gmdelta(GmdParams(*k)) for k in [(2, 1, 2), (1, 1, 1), (2, 1, 0), (1, 2, 1)]]
    for code in fixtures:
        for st in expand_code(code):
            for E in ([1], [2, 5], [1, 3, 4]):
                E = [e for e in E if e <= code.n]
                worst = max(worst, np.abs(delete_kraus(st, E) - delete_partial_trace(st, E)).max())
    for n in range(1, 9):
        v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        st = DenseState(n, v / np.linalg.norm(v))
        E = sorted(rng.choice(np.arange(1, n + 1), size=min(3, n), replace=False).tolist())
        worst = max(worst, np.abs(delete_kraus(st, E) - delete_partial_trace(st, E)).max())
    agree = True
    for code in fixtures:
        for t in (1, 2):
            if 2 * t <= code.n:
                dense = kl_gram_check(code, deletion_bra_errors(2 * t))["passed"]
                agree &= dense == all_passed(verify_deletion(code, 2 * t))
    pauli = kl_gram_check(fixtures[0], pauli_errors(7, 1), tol=1e-10)["passed"]
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-12 and agree and pauli and len(pauli_errors(7, 1)) == 22 and elapsed < 30
    report(4, ok, "dense oracle agreement", t0, f"max|kraus-trace|={worst:.1e}")


def test_5_pr_systems(report):
    t0 = time.perf_counter()
    sys7 = generate_system(7, 1)
    printed = sorted([
        (((2, 6), 3), ((4, 4), 5)),
        (((0, 6), 1), ((2, 4), 15)),
        (((0, 0), 1), ((2, 2), 9), ((4, 4), -5), ((6, 6), -5)),
    ])
    ok = [sorted(tuple(sorted(e.simplified().items())) for e in sys7.equations) == printed]
    sols7 = solve(sys7, SolveConfig(restarts=20, seed=0))
    ok.append(bool(sols7) and sols7[0].residual_max < 1e-12)
    if sols7 and sols7[0].closed_form is not None:
        ok.append(all_passed(verify_pauli(construct_pr_code(7, sols7[0].closed_form), 1)))
    else:
        ok.append(False)
    sys19 = generate_system(19, 2)
    ok.append(len(sys19.equations) == 9)
    rel = max(relative_residuals(sys19, published_q19()))
    ok.append(rel < 1e-4)
    sols19 = solve(sys19, SolveConfig(restarts=200, seed=7))
    good = []
    for s in sols19:
        if s.residual_max < 1e-10:
            a, b = induced_coefficients(19, s.q)
            good.append(kl_gram_check((19, a, b), deletion_bra_errors(4), tol=1e-6)["passed"])
    ok.append(any(good))
    elapsed = time.perf_counter() - t0
    report(5, all(ok) and elapsed < 300, "PR systems and solver", t0,
           f"published point rel.res={rel:.1e}, {len(sols19)} solutions for (19,2)")


def test_6_amplitude_damping(report):
    t0 = time.perf_counter()
    P = GmdParams(3, 3, 2)
    vanish = all(
        all(hadamard_cross_poly(P, 2, cls)[k] == 0 for k in range(5)) for cls in ad_classes(2)
    )
    # p = 1/100 lies above p0 for this code; the formula is evaluated there without the range guard
    ps = [Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10000)]
    ratios = [infidelity_bound(P, 2, p, check_range=False) / p**3 for p in ps]
    limit = bound_ratio_limit(P, 2)
    bounded = limit is not None and all(r <= limit for r in ratios)
    # non-increasing as a function of p: larger p never gives a larger ratio
    monotone = ratios[0] <= ratios[1] <= ratios[2]
    counter = GmdParams(3, 2, 2)
    cps = [Fraction(1, 10**k) for k in range(2, 7)]
    cr = [infidelity_bound(counter, 2, p, check_range=False) / p**3 for p in cps]
    diverges = bound_ratio_limit(counter, 2) is None and all(b > 10 * a for a, b in zip(cr, cr[1:]))
    elapsed = time.perf_counter() - t0
    ok = vanish and bounded and monotone and diverges and elapsed < 60
    report(6, ok, "amplitude-damping bound scaling", t0,
           f"limit bound/p^3={float(limit):.4e}" if limit is not None else "")


def test_7_identity_sweeps(report):
    t0 = time.perf_counter()
    total = 0
    ok = True
    for lemma in ("E1", "two_sums", "E2", "Z", "telescoping"):
        passed, n = run_sweep(lemma)
        ok &= passed == n
        total += n
    ok &= check_identity_E2(21, 3, 3, 1, 0, 2, 2)
    elapsed = time.perf_counter() - t0
    report(7, ok and total > 3000 and elapsed < 120, "identity sweeps", t0, f"{total} tuples")


def test_8_property_suites(report):
    t0 = time.perf_counter()
    rnd = random.Random(8)
    ok = True
    sys19 = generate_system(19, 2)
    for _ in range(50):
        q = [Fraction(rnd.randint(-50, 50), rnd.randint(1, 30)) for _ in range(10)]
        lam = Fraction(rnd.choice([-1, 1]) * rnd.randint(1, 40), rnd.randint(1, 40))
        ok &= residual(sys19, [lam * x for x in q]) == [lam * lam * r for r in residual(sys19, q)]
    for n in range(1, 9):
        for w in range(n + 1):
            s = expand_dicke(n, w)
            base = delete_partial_trace(s, [1])
            for e in range(2, n + 1):
                ok &= np.abs(delete_partial_trace(s, [e]) - base).max() < 1e-12
    for gmd in [(2, 1, 2), (4, 2, 4), (1, 1, 1), (3, 3, 2)]:
        code = construct_gmdelta(GmdParams(*gmd))
        for s in range(4):
            ok &= kraus_completeness(code, s) == (1, 1)
    for _ in range(300):
        q = Fraction(rnd.randint(0, 10**9), rnd.randint(1, 10**6))
        r = sqrt_canonical(q)
        ok &= r.coef**2 * r.rad == q and Radical.from_json(r.to_json()) == r
        s = RadicalSum.sum([r, Radical(rnd.randint(1, 9), rnd.randint(1, 50))])
        ok &= RadicalSum.from_json(s.to_json()) == s
    report(8, bool(ok), "property suites", t0)
