"""Trapdoor permutation over Z/NZ: keygen, evaluation, inversion, faults."""

import pytest

from permrat.trapdoor import (
    FactorFound,
    MultipleRoots,
    NoRoot,
    TrapdoorError,
    TrapdoorPrivateKey,
    TrapdoorPublicKey,
    eval_public,
    invert,
    keygen,
    keygen_with_primes,
)


@pytest.fixture(scope="module")
def tiny_key():
    return keygen_with_primes(11, 19, 5, seed=0)


@pytest.fixture(scope="module")
def small_key():
    return keygen(32, 5, seed=7)


def test_tiny_key_is_a_permutation(tiny_key):
    pk, sk = tiny_key
    assert pk.N == 209
    images = [eval_public(pk, x) for x in range(209)]
    assert sorted(images) == list(range(209))
    for x in range(209):
        assert invert(sk, eval_public(pk, x)) == x


def test_key_shapes(tiny_key):
    pk, sk = tiny_key
    assert len(pk.r) == pk.ell + 1 and pk.r[-1] == 1  # monic degree ell
    assert len(pk.s) == pk.ell and pk.s[-1] == 1  # monic degree ell-1
    assert all(-pk.N // 2 <= c <= pk.N // 2 for c in pk.r + pk.s)
    assert sk.N == pk.N
    # public polynomials reduce to the private per-prime maps
    for k, c in enumerate(pk.r):
        assert c % sk.p == (sk.u.num.coeffs[k] if k < len(sk.u.num.coeffs) else 0)
        assert c % sk.q == (sk.v.num.coeffs[k] if k < len(sk.v.num.coeffs) else 0)


def test_roundtrip_random_values(small_key):
    pk, sk = small_key
    import random

    rng = random.Random(3)
    for _ in range(50):
        x = rng.randrange(pk.N)
        y = eval_public(pk, x)
        assert 0 <= y < pk.N
        assert invert(sk, y) == x


def test_keygen_determinism():
    a = keygen(24, 5, seed=5)
    b = keygen(24, 5, seed=5)
    assert a[0] == b[0]
    c = keygen(24, 5, seed=6)
    assert a[0] != c[0]


def test_serialization_roundtrip(small_key, tmp_path):
    pk, sk = small_key
    assert TrapdoorPublicKey.from_json(pk.to_json()) == pk
    sk2 = TrapdoorPrivateKey.from_json(sk.to_json())
    assert (sk2.p, sk2.q, sk2.ell) == (sk.p, sk.q, sk.ell)
    assert sk2.u.num == sk.u.num and sk2.v.den == sk.v.den
    x = 12345 % pk.N
    assert invert(sk2, eval_public(pk, x)) == x


def test_serialization_kind_check(small_key):
    pk, sk = small_key
    with pytest.raises(TrapdoorError):
        TrapdoorPublicKey.from_json(sk.to_json())
    with pytest.raises(TrapdoorError):
        TrapdoorPrivateKey.from_json(pk.to_json())


def test_keys_carry_experimental_warning(tiny_key):
    pk, sk = tiny_key
    assert "EXPERIMENTAL" in pk.to_json()
    assert "EXPERIMENTAL" in sk.to_json()


def test_input_range_checks(tiny_key):
    pk, sk = tiny_key
    for bad in (-1, pk.N, pk.N + 5):
        with pytest.raises(TrapdoorError):
            eval_public(pk, bad)
        with pytest.raises(TrapdoorError):
            invert(sk, bad)


def test_keygen_parameter_checks():
    with pytest.raises(TrapdoorError):
        keygen_with_primes(11, 11, 5)
    with pytest.raises(TrapdoorError):
        keygen_with_primes(5, 19, 5)
    with pytest.raises(TrapdoorError):
        keygen(2, 5)


def test_corrupt_denominator_surfaces_factor(tiny_key):
    # force s to vanish mod p at some x: a rational root mod 11 makes
    # gcd(s(x), N) = 11 and evaluation must refuse and name the factor
    pk, _ = tiny_key
    s = list(pk.s)
    # craft s'(x) = s(x) - s(3) mod 11, keeping it unchanged mod 19
    s3 = sum(c * 3**k for k, c in enumerate(s)) % pk.N
    delta = (s3 * pow(19, -1, 11) % 11) * 19  # == s(3) mod 11, == 0 mod 19
    s[0] = s[0] - delta
    bad = TrapdoorPublicKey(pk.N, pk.ell, pk.r, tuple(s))
    with pytest.raises(FactorFound) as info:
        eval_public(bad, 3)
    assert info.value.factor in (11, 19)
    assert pk.N % info.value.factor == 0


def test_corrupt_key_inversion_faults(tiny_key):
    # a non-permutation map mod p produces NoRoot for some y and
    # MultipleRoots for another
    pk, sk = tiny_key
    from permrat.field import FieldContext
    from permrat.poly import Polynomial, RationalMap

    cp = FieldContext(11)
    square = RationalMap(
        Polynomial(cp, [0, 0, 1]), Polynomial.constant(cp, 1)
    )  # x^2 mod 11: 2-to-1 on squares, misses non-squares
    broken = TrapdoorPrivateKey(11, 19, sk.ell, square, sk.v)
    saw_noroot = saw_multi = False
    for y in range(pk.N):
        try:
            invert(broken, y)
        except NoRoot:
            saw_noroot = True
        except MultipleRoots:
            saw_multi = True
        if saw_noroot and saw_multi:
            break
    assert saw_noroot and saw_multi
