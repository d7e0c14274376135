"""Kernel polynomial search: conjugacy test, orbit assembly, full driver."""

import pytest

from permrat.ec import Curve, monic_division_polynomial
from permrat.field import FieldContext, make_rng
from permrat.kernelsearch import (
    KernelRecord,
    KernelSearchError,
    AssemblyMismatch,
    algorithm1,
    conjugacy_test,
    primitive_root,
    tau_for,
)
from permrat.poly import Polynomial

from conftest import F1, F2, F3, F1F2, GOLDEN_ELL, OMEGA, TAU_D3, TAU_D6
from oracles import enumerate_permutation_kernels


def test_primitive_root_values():
    assert primitive_root(5) == 2
    assert primitive_root(7) == 3
    assert primitive_root(13) == OMEGA
    assert primitive_root(23) == 5


def test_tau_for_golden_values():
    assert tau_for(13, OMEGA, 3) == TAU_D3
    assert tau_for(13, OMEGA, 6) == TAU_D6


def test_tau_for_rejects_bad_degree():
    with pytest.raises(KernelSearchError):
        tau_for(13, OMEGA, 1)
    with pytest.raises(KernelSearchError):
        tau_for(13, OMEGA, 4)  # 4 does not divide 6


def test_conjugacy_test_on_golden_factors(golden_ctx, golden_curve):
    f1 = Polynomial(golden_ctx, list(F1))
    f2 = Polynomial(golden_ctx, list(F2))
    f3 = Polynomial(golden_ctx, list(F3))
    assert conjugacy_test(golden_curve, f1, TAU_D3)
    assert conjugacy_test(golden_curve, f2, TAU_D3)
    assert conjugacy_test(golden_curve, f3, TAU_D6)


def test_algorithm1_golden_output(golden_ctx, golden_curve):
    records = algorithm1(golden_curve, GOLDEN_ELL, make_rng(7))
    assert [(r.factor_degree, r.kernel_poly.coeffs) for r in records] == [
        (3, F1F2),
        (6, F3),
    ]
    assert {f.coeffs for f in records[0].factors} == {F1, F2}
    assert records[1].factors == (records[1].kernel_poly,)


def test_algorithm1_output_is_seed_independent(golden_curve):
    a = algorithm1(golden_curve, GOLDEN_ELL, make_rng(0))
    b = algorithm1(golden_curve, GOLDEN_ELL, make_rng(12345))
    assert [r.kernel_poly for r in a] == [r.kernel_poly for r in b]


def test_kernel_polys_divide_division_polynomial(golden_curve):
    psi = monic_division_polynomial(golden_curve, GOLDEN_ELL)
    for r in algorithm1(golden_curve, GOLDEN_ELL, make_rng(1)):
        assert r.kernel_poly.is_monic
        assert r.kernel_poly.degree == (GOLDEN_ELL - 1) // 2
        assert (psi % r.kernel_poly).is_zero


def test_half_degree_factor_is_not_automatically_a_kernel():
    # On y^2 = x^3 + x + 3 over F_101 the 5-division polynomial splits into
    # six quadratics, i.e. six factors of degree (5-1)/2, but only two of
    # them pass the conjugacy test and survive as kernel polynomials.
    ctx = FieldContext(101)
    E = Curve(ctx.element(1), ctx.element(3))
    records = algorithm1(E, 5, make_rng(3))
    assert {r.kernel_poly.coeffs for r in records} == {(37, 80, 1), (56, 63, 1)}
    oracle = enumerate_permutation_kernels(E, 5, make_rng(4))
    assert [r.kernel_poly for r in records] == oracle


def test_matches_enumeration_oracle_on_random_small_curves():
    rng = make_rng(99)
    checked = 0
    for p in (97, 101, 103, 113):
        ctx = FieldContext(p)
        for _ in range(3):
            for ell in (5, 7):
                while True:
                    a = ctx.random_element(rng)
                    b = ctx.random_element(rng)
                    if (4 * a**3 + 27 * b**2).value != 0:
                        break
                E = Curve(a, b)
                got = [r.kernel_poly for r in algorithm1(E, ell, rng)]
                want = enumerate_permutation_kernels(E, ell, rng)
                assert got == want, (p, ell, a.value, b.value)
                checked += 1
    assert checked == 24


def test_record_validates_factor_product(golden_ctx):
    f1 = Polynomial(golden_ctx, list(F1))
    f3 = Polynomial(golden_ctx, list(F3))
    with pytest.raises(AssemblyMismatch):
        KernelRecord(f3, 3, (f1, f1))


def test_rejects_bad_ell(golden_curve):
    for bad in (3, 4, 9):
        with pytest.raises(KernelSearchError):
            algorithm1(golden_curve, bad, make_rng(0))


def test_rejects_ell_equal_characteristic():
    ctx = FieldContext(5)
    E = Curve(ctx.element(1), ctx.element(1))
    with pytest.raises(KernelSearchError):
        algorithm1(E, 5, make_rng(0))
