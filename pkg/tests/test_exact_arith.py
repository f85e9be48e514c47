from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from piqec.exact_arith import (
    Radical,
    RadicalSum,
    SquarefreeError,
    binom_gen,
    binom_int,
    radical_mul,
    radical_sum_add,
    radical_sum_is_zero,
    set_trial_bound,
    sqrt_canonical,
    squarefree_decompose,
)


def _is_squarefree(d: int) -> bool:
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


def test_binom_int():
    assert binom_int(7, 2) == 21
    assert binom_int(5, -1) == 0
    assert binom_int(4, 4) == 1
    assert binom_int(3, 5) == 0
    assert binom_int(-2, 1) == 0


def test_binom_gen_examples():
    assert binom_gen(Fraction(7, 2), 2) == Fraction(35, 8)
    assert binom_gen(Fraction(7, 4), 1) == Fraction(7, 4)
    assert binom_gen(Fraction(5, 2), 2) == Fraction(15, 8)
    assert binom_gen(Fraction(5, 2), -1) == 0
    assert binom_gen(Fraction(-1, 2), 0) == 1
    # C(-1/2, 2) = (-1/2)(-3/2)/2
    assert binom_gen(Fraction(-1, 2), 2) == Fraction(3, 8)


def test_binom_gen_feeds_q212_amplitude():
    # gamma^2 b_1^2 for (2,1,2): C(7/4,1)*(7-4)/(2*2) * 1/C(5/2,2)
    gamma2 = binom_gen(Fraction(7, 4), 1) * Fraction(3, 4)
    assert gamma2 / binom_gen(Fraction(5, 2), 2) == Fraction(7, 10)


def test_binom_gen_matches_int_grid():
    for x in range(0, 31):
        for k in range(-2, 33):
            assert binom_gen(x, k) == binom_int(x, k), (x, k)


def test_sqrt_canonical_examples():
    assert sqrt_canonical(Fraction(9, 4)) == Radical(Fraction(3, 2), 1)
    r = sqrt_canonical(Fraction(8, 15))
    assert (r.coef, r.rad) == (Fraction(2, 15), 30)
    z = sqrt_canonical(0)
    assert (z.coef, z.rad) == (0, 1)
    with pytest.raises(ValueError):
        sqrt_canonical(Fraction(-1, 3))


def test_zero_radical_is_unique():
    assert Radical(0, 7) == Radical(0, 1)
    assert Radical(0, 7).rad == 1


def test_radical_canonicalizes_on_construction():
    r = Radical(Fraction(1, 3), 12)
    assert (r.coef, r.rad) == (Fraction(2, 3), 3)


def test_radical_mul_examples():
    assert radical_mul(Radical(1, 2), Radical(1, 2)) == Radical(2, 1)
    r = radical_mul(Radical(1, 6), Radical(1, 10))
    assert (r.coef, r.rad) == (2, 15)
    assert r.square() == 60


def test_radical_sum_cancellation():
    s = RadicalSum.sum([Radical(1, 2), Radical(-1, 2)])
    assert radical_sum_is_zero(s)
    assert s.terms == {}
    s2 = radical_sum_add(RadicalSum.of(Radical(3, 5)), Radical(-3, 5))
    assert s2.is_zero()


def test_radical_sum_keeps_distinct_radicands():
    s = RadicalSum.sum([Radical(1, 2), Radical(1, 3), Radical(2, 2)])
    assert s.terms == {2: 3, 3: 1}
    assert not s.is_zero()


def test_json_roundtrip_and_encoding():
    r = Radical(Fraction(-2, 15), 30)
    obj = r.to_json()
    assert obj["num"] == "-2" and obj["den"] == "15" and obj["rad"] == "30"
    assert Radical.from_json(obj) == r
    s = RadicalSum.sum([r, Radical(1, 7)])
    assert RadicalSum.from_json(s.to_json()) == s


def test_squarefree_decompose():
    assert squarefree_decompose(360) == (6, 10)
    assert squarefree_decompose(1) == (1, 1)
    # large prime cofactor beyond the trial bound
    p = 1_000_000_007
    assert squarefree_decompose(4 * p) == (2, p)
    assert squarefree_decompose(p * p) == (p, 1)


def test_squarefree_error_on_unfactorable():
    try:
        set_trial_bound(10)
        squarefree_decompose.cache_clear()
        with pytest.raises(SquarefreeError):
            squarefree_decompose(101 * 103)
    finally:
        set_trial_bound(10**6)
        squarefree_decompose.cache_clear()


rationals = st.fractions(min_value=0, max_value=10**6, max_denominator=10**6)
radicals = st.builds(
    lambda c, d: Radical(c, d),
    st.fractions(min_value=-1000, max_value=1000, max_denominator=1000),
    st.integers(min_value=1, max_value=10**5),
)


@given(rationals)
def test_sqrt_canonical_roundtrip(q):
    r = sqrt_canonical(q)
    assert r.coef**2 * r.rad == q
    assert r.coef >= 0
    assert _is_squarefree(r.rad)


@given(radicals, radicals, radicals)
def test_mul_associative_commutative(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@given(st.lists(radicals, max_size=6), radicals)
def test_add_negation_cancels(items, t):
    s = RadicalSum.sum(items)
    assert (s + RadicalSum.of(t) - RadicalSum.of(t)) == s
    assert RadicalSum.sum([t, -t]).is_zero()


@given(radicals)
def test_radical_float_consistent(r):
    assert float(r) == pytest.approx(float(r.coef) * r.rad**0.5, rel=1e-12, abs=1e-300)
