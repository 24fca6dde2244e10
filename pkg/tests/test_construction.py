import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from raregraph.construction import (
    F_minus_f,
    TruncatedValue,
    digits_F,
    eval_F,
    g,
    h,
    scaled_residue,
    y_digit,
)
from raregraph.errors import DomainError
from raregraph.exact import Dyadic, bit
from raregraph.family import IDENTITY, MIXED, ZERO, FunctionFamily
from raregraph.partition import classify, s_of

from conftest import naive_bit


def brute_F(x, N, family):
    """Truncated F from the defining series, with digits taken by floor."""
    x = Fraction(x)
    cube_limit = round(N ** (1 / 3)) + 2
    reserved = {}
    for k in range(1, cube_limit + 1):
        s = (k + 1) ** 3
        d = (1 + math.isqrt(8 * k - 7)) // 2
        i = k - d * (d - 1) // 2
        reserved[s] = (i, d + 1 - i)
    taken = {s + p for s in reserved for p in range(3)}
    total = sum(
        (Fraction(naive_bit(x, n * n), 2**n) for n in range(1, N + 1) if n not in taken),
        Fraction(0),
    )
    for s, (i, j) in reserved.items():
        if i > family.m or s > N:
            continue
        a = family[i](x) + Fraction(naive_bit(x, j), 2**s)
        total += Fraction(naive_bit(a, s), 2**s) + Fraction(naive_bit(a, s + 1), 2 ** (s + 1))
    return Fraction(math.floor(total * 2**N), 2**N)


def random_family(rng):
    return FunctionFamily.of(
        *[
            [Fraction(rng.randint(-64, 64), rng.randint(1, 64)) for _ in range(rng.randint(1, 3))]
            for _ in range(rng.randint(1, 3))
        ]
    )


def test_g_examples():
    assert g(1, Fraction(3, 4)) == Dyadic(3, 2)
    assert g(3, Fraction(1, 4)) == Dyadic(0)
    assert g(2, Fraction(9, 4)) == g(2, Fraction(1, 4)) == Dyadic(1, 2)


@given(st.integers(1, 200), st.fractions())
def test_g_matches_digits_and_range(s, a):
    v = g(s, a).to_fraction()
    assert v == Fraction(naive_bit(a, s), 2**s) + Fraction(naive_bit(a, s + 1), 2 ** (s + 1))
    assert v in {0, Fraction(1, 2 ** (s + 1)), Fraction(1, 2**s), Fraction(3, 2 ** (s + 1))}


def test_h_examples():
    half = Fraction(1, 2)
    assert h(1, 1, half, ZERO) == Dyadic(1, 8)
    assert h(1, 2, half, ZERO) == Dyadic(0)  # x_2 = 0
    assert h(1, 1, half, IDENTITY) == Dyadic(1, 8)


@given(st.integers(1, 3), st.integers(1, 8), st.integers(0, 2**20 - 1))
@settings(max_examples=200, deadline=None)
def test_h_equals_g_of_shifted_value(i, j, m):
    x = Fraction(m, 2**20)
    s = s_of(i, j)
    expected = g(s, MIXED[i](x) + Fraction(bit(x, j), 2**s))
    assert h(i, j, x, MIXED) == expected


def test_y_digit_examples():
    half = Fraction(1, 2)
    assert y_digit(1, half, ZERO) == 1
    assert y_digit(8, half, ZERO) == 1
    assert [y_digit(n, half, ZERO) for n in [2, 3, 4, 5, 6, 7, 9, 10]] == [0] * 8
    assert all(y_digit(n, Fraction(0), ZERO) == 0 for n in range(1, 300))
    for i in range(1, 4):
        for j in range(1, 4):
            assert y_digit(s_of(i, j) + 2, Fraction(5, 7), MIXED) == 0


def test_y_digit_domain():
    with pytest.raises(DomainError):
        y_digit(1, Fraction(1), ZERO)


def test_eval_F_examples():
    tv = eval_F(Fraction(1, 2), 10, ZERO)
    assert tv.value.to_fraction() == Fraction(129, 256)
    assert tv.tail_exponent == 10
    assert eval_F(Fraction(1, 4), 30, ZERO).value == Dyadic(1, 27)
    for fam in (ZERO, IDENTITY, MIXED):
        for N in (1, 7, 64):
            assert eval_F(Fraction(0), N, fam).value == Dyadic(0)


def test_F_minus_f_examples():
    x = Fraction(3, 8)
    assert F_minus_f(x, 1, 40, ZERO)[0] == eval_F(x, 40, ZERO).lower
    assert F_minus_f(Fraction(0), 1, 20, IDENTITY) == (0, 20)
    assert F_minus_f(Fraction(1, 2), 1, 10, IDENTITY) == (Fraction(1, 256), 10)


def test_two_paths_and_brute_force_agree():
    rng = random.Random(2024)
    for _ in range(300):
        fam = random_family(rng)
        x = Fraction(rng.getrandbits(20), 2**20)
        N = rng.randint(1, 90)
        series = eval_F(x, N, fam).lower
        assert series == digits_F(x, N, fam).value()
        assert series == brute_F(x, N, fam)


def test_two_paths_agree_for_non_dyadic_x():
    rng = random.Random(99)
    for _ in range(150):
        fam = random_family(rng)
        q = rng.randint(2, 500)
        x = Fraction(rng.randint(0, q - 1), q)
        N = rng.randint(1, 80)
        assert eval_F(x, N, fam).lower == digits_F(x, N, fam).value() == brute_F(x, N, fam)


def test_dyadic_and_fraction_inputs_agree():
    rng = random.Random(5)
    for _ in range(100):
        d = Dyadic(rng.getrandbits(30), 30)
        assert eval_F(d, 70, MIXED) == eval_F(d.to_fraction(), 70, MIXED)


def test_monotone_refinement():
    rng = random.Random(17)
    for _ in range(300):
        fam = random_family(rng)
        x = Fraction(rng.getrandbits(40), 2**40)
        N = rng.randint(1, 60)
        N2 = N + rng.randint(1, 60)
        low, high = eval_F(x, N, fam), eval_F(x, N2, fam)
        diff = high.lower - low.lower
        assert 0 <= diff < Fraction(1, 2**N)
        assert low.brackets(high.lower)


def test_digit_support():
    rng = random.Random(8)
    fam = FunctionFamily.of([0, 1], [Fraction(1, 3)])
    for _ in range(50):
        x = Fraction(rng.getrandbits(24), 2**24)
        for n in range(1, 400):
            c = classify(n)
            if c is not None and (c.position == 2 or c.i > fam.m):
                assert y_digit(n, x, fam) == 0


def test_reading_property():
    rng = random.Random(4)
    for _ in range(200):
        x = Fraction(rng.getrandbits(900), 2**900)
        for n in range(1, 31):
            if classify(n) is None:
                assert y_digit(n, x, MIXED) == bit(x, n * n) == naive_bit(x, n * n)


def test_scaled_residue_matches_full_evaluation():
    rng = random.Random(21)
    for _ in range(200):
        fam = random_family(rng)
        i = rng.randint(1, fam.m)
        x = Fraction(rng.getrandbits(16), 2**16)
        e = rng.randint(0, 60)
        N = e + rng.randint(1, 20)
        full, _ = F_minus_f(x, i, N, fam)
        v = scaled_residue(x, i, e, N, fam)
        assert v == (full * 2**e) - math.floor(full * 2**e)


def test_truncated_value_bracket():
    tv = TruncatedValue(Dyadic(129, 8), 10)
    assert tv.brackets(Fraction(129, 256))
    assert tv.brackets(Fraction(129, 256) + Fraction(1, 2048))
    assert not tv.brackets(Fraction(129, 256) + Fraction(1, 1024))
