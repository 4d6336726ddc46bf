from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import GOLDEN, float_value, squarefree_part

from lcsystems.exact import (
    ExactScalar,
    as_exact,
    from_json,
    is_rational,
    sign_of,
    squarefree_decomposition,
    to_json,
)

S = ExactScalar.sqrt

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 15])


@st.composite
def scalars(draw, max_terms=3):
    out = ExactScalar(0)
    for _ in range(draw(st.integers(0, max_terms))):
        out = out + ExactScalar(draw(fractions)) * S(draw(radicands))
    return out


def test_like_terms_and_radical_reduction():
    assert S(2) + S(2) == 2 * S(2)
    assert S(2) * S(2) == 2
    assert S(6) * S(10) == 2 * S(15)
    assert S(8) == 2 * S(2)
    assert S(Fraction(1, 2)) == S(2) / 2


def test_canonical_representation():
    x = S(2) - S(2)
    assert x.is_zero() and x.terms == {}
    assert all(squarefree_decomposition(k)[1] == k for k in (S(12) + S(18)).terms)


@pytest.mark.parametrize("n", [1, 2, 12, 60, 72, 97, 360, 1001, 4096])
def test_squarefree_decomposition_matches_trial_division(n):
    s, k = squarefree_decomposition(n)
    assert (s, k) == squarefree_part(n)
    assert s * s * k == n


def test_sign_examples():
    assert sign_of(ExactScalar(0)) == 0
    assert sign_of(S(2) - 1) == 1
    assert sign_of(3 - S(2) - S(3)) == GOLDEN["sign_3_minus_sqrt2_minus_sqrt3"]


def test_sign_of_near_cancellation():
    # (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6 ~ 9.898979...; compare against tight rationals
    x = S(2) + S(3)
    assert sign_of(x * x - Fraction(9898979, 1000000)) == 1
    assert sign_of(x * x - Fraction(9898980, 1000000)) == -1


def test_is_rational():
    assert is_rational(Fraction(7, 3)) == (True, Fraction(7, 3))
    assert is_rational(S(5))[0] is False
    b = (2, 3, 5)
    prod = S(b[0] * b[1]) * S(b[1] * b[2]) * S(b[0] * b[2])
    assert is_rational(prod) == (True, Fraction(30))


def test_json_round_trip_and_shapes():
    assert to_json(Fraction(-3, 4)) == "-3/4"
    assert to_json(ExactScalar(5)) == "5"
    x = 1 - S(2) / 5
    assert from_json(to_json(x)) == x
    assert from_json(7) == 7
    assert from_json("2/6") == Fraction(1, 3)


def test_division_and_inverse():
    x = 1 + S(2) + S(3)
    assert x * x.inverse() == 1
    assert (S(6) / S(2)) == S(3)
    with pytest.raises(ZeroDivisionError):
        ExactScalar(0).inverse()


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(scalars())
def test_square_is_nonnegative(x):
    assert sign_of(x * x) in (0, 1)


@given(scalars(max_terms=4))
def test_sign_agrees_with_floating_point(x):
    v = float_value(x.terms)
    if abs(v) > 1e-6:
        assert sign_of(x) == (1 if v > 0 else -1)


def test_sign_bulk_against_floats():
    import random

    rng = random.Random(7)
    checked = 0
    for _ in range(10_000):
        x = ExactScalar(0)
        for _ in range(rng.randint(1, 4)):
            x = x + ExactScalar(Fraction(rng.randint(-30, 30), rng.randint(1, 9))) * S(rng.choice([1, 2, 3, 5, 6, 7, 10, 11, 13]))
        v = float_value(x.terms)
        if abs(v) > 1e-6:
            checked += 1
            assert sign_of(x) == (1 if v > 0 else -1), x
    assert checked > 9000


def test_as_exact_coercions():
    assert as_exact(3) == ExactScalar(3)
    assert as_exact(Fraction(1, 2)) == ExactScalar(Fraction(1, 2))
    with pytest.raises(TypeError):
        as_exact(0.5)
