"""Prime field arithmetic."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permrat.field import (
    DivisionByZero,
    FieldContext,
    FieldElement,
    MixedContext,
    NotPrime,
    is_probable_prime,
    make_rng,
)

PRIMES = [5, 97, 1009, 2**61 - 1]


def test_context_rejects_nonprimes():
    for bad in (0, 1, 4, 6, 91, 2**32):
        with pytest.raises(NotPrime):
            FieldContext(bad)


def test_context_rejects_tiny_characteristic():
    for bad in (2, 3):
        with pytest.raises(NotPrime):
            FieldContext(bad)


def test_is_probable_prime_small_table():
    primes_below_60 = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59}
    for n in range(60):
        assert is_probable_prime(n) == (n in primes_below_60)


def test_is_probable_prime_large():
    assert is_probable_prime(2**127 - 1)
    assert is_probable_prime(2**255 - 19)
    assert not is_probable_prime(2**128 - 1)


def test_element_canonicalization():
    ctx = FieldContext(97)
    assert ctx.element(100).value == 3
    assert ctx.element(-1).value == 96
    assert ctx.element(97).value == 0


def test_arithmetic_identities():
    ctx = FieldContext(97)
    a = ctx.element(45)
    b = ctx.element(80)
    assert (a + b).value == (45 + 80) % 97
    assert (a - b).value == (45 - 80) % 97
    assert (a * b).value == 45 * 80 % 97
    assert (-a).value == 97 - 45
    assert (a + 0) == a
    assert (a * 1) == a
    assert a + b == b + a
    assert (a / b) * b == a


def test_int_mixing():
    ctx = FieldContext(97)
    a = ctx.element(10)
    assert a + 90 == ctx.element(3)
    assert 90 + a == ctx.element(3)
    assert 5 - a == ctx.element(92)
    assert a == 107


def test_mixed_context_raises():
    a = FieldContext(97).element(1)
    b = FieldContext(101).element(1)
    with pytest.raises(MixedContext):
        a + b


def test_division_by_zero():
    ctx = FieldContext(97)
    with pytest.raises(DivisionByZero):
        ctx.zero.inverse()


def test_inverse_and_pow():
    ctx = FieldContext(1009)
    for v in (1, 2, 500, 1008):
        a = ctx.element(v)
        assert (a * a.inverse()).value == 1
        assert a ** (1009 - 1) == ctx.one  # Fermat
        assert a**-1 == a.inverse()


def test_legendre_counts():
    # exactly (p-1)/2 nonzero squares
    ctx = FieldContext(97)
    squares = sum(1 for v in range(1, 97) if ctx.element(v).legendre() == 1)
    assert squares == 48
    assert ctx.zero.legendre() == 0


@pytest.mark.parametrize("p", PRIMES)
def test_sqrt_roundtrip(p):
    ctx = FieldContext(p)
    rng = make_rng(11)
    for _ in range(20):
        a = ctx.random_element(rng)
        sq = a * a
        r = sq.sqrt(rng)
        assert r * r == sq


def test_sqrt_of_nonsquare_raises():
    ctx = FieldContext(97)
    rng = make_rng(0)
    nonsquare = next(
        ctx.element(v) for v in range(2, 97) if ctx.element(v).legendre() == -1
    )
    from permrat.field import FieldError

    with pytest.raises(FieldError):
        nonsquare.sqrt(rng)


def test_make_rng_is_deterministic():
    a = [make_rng(42).randrange(10**9) for _ in range(3)]
    b = [make_rng(42).randrange(10**9) for _ in range(3)]
    assert a[0] == b[0]
    # seeds are folded to 64 bits
    assert make_rng(1 << 64).randrange(10**9) == make_rng(0).randrange(10**9)


def test_immutability():
    ctx = FieldContext(97)
    a = ctx.element(3)
    with pytest.raises(AttributeError):
        a.value = 5
    with pytest.raises(AttributeError):
        ctx.p = 11


@settings(max_examples=60, deadline=None)
@given(x=st.integers(min_value=-(10**9), max_value=10**9),
       y=st.integers(min_value=-(10**9), max_value=10**9))
def test_field_homomorphism_property(x, y):
    ctx = FieldContext(1009)
    assert ctx.element(x) + ctx.element(y) == ctx.element(x + y)
    assert ctx.element(x) * ctx.element(y) == ctx.element(x * y)


def test_hash_and_eq_consistency():
    ctx = FieldContext(97)
    assert hash(ctx.element(5)) == hash(ctx.element(5 + 97))
    assert len({ctx.element(v % 97) for v in range(200)}) == 97
