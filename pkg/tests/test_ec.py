"""Elliptic curve group law, invariants, and division polynomials."""

import pytest

from permrat.ec import (
    Curve,
    Point,
    SingularCurve,
    curve_from_j,
    division_polynomials,
    is_on_curve,
    j_invariant,
    monic_division_polynomial,
    point_add,
    point_neg,
    scalar_mul,
    x_multiplication_map,
)
from permrat.field import FieldContext, make_rng
from permrat.poly import Polynomial

from conftest import F1, F2, F3, GOLDEN_ELL, GOLDEN_J

CTX = FieldContext(97)


def small_curve():
    return Curve(CTX.element(2), CTX.element(3))


def all_points(E):
    pts = [Point.infinity()]
    ctx = E.context
    rng = make_rng(0)
    for x in range(ctx.p):
        rhs = E.rhs(ctx.element(x))
        if rhs.legendre() == -1:
            continue
        y = rhs.sqrt(rng)
        pts.append(Point(ctx.element(x), y))
        if y.value != 0:
            pts.append(Point(ctx.element(x), -y))
    return pts


def test_singular_curve_rejected():
    ctx = FieldContext(5)
    with pytest.raises(SingularCurve):
        Curve(ctx.element(0), ctx.element(0))


def test_group_law_closure_and_associativity():
    E = small_curve()
    pts = all_points(E)
    rng = make_rng(1)
    for _ in range(60):
        P, Q, R = (pts[rng.randrange(len(pts))] for _ in range(3))
        assert is_on_curve(E, point_add(E, P, Q))
        lhs = point_add(E, point_add(E, P, Q), R)
        rhs = point_add(E, P, point_add(E, Q, R))
        assert lhs == rhs


def test_group_identity_and_inverse():
    E = small_curve()
    for P in all_points(E)[:40]:
        assert point_add(E, P, Point.infinity()) == P
        assert point_add(E, P, point_neg(P)) == Point.infinity()


def test_scalar_mul_matches_repeated_add():
    E = small_curve()
    P = next(p for p in all_points(E) if not p.is_infinity)
    acc = Point.infinity()
    for k in range(12):
        assert scalar_mul(E, k, P) == acc
        acc = point_add(E, acc, P)
    assert scalar_mul(E, -1, P) == point_neg(P)


def test_order_divides_group_order():
    E = small_curve()
    pts = all_points(E)
    n = len(pts)
    for P in pts[:25]:
        assert scalar_mul(E, n, P) == Point.infinity()  # Lagrange


def test_j_invariant_values():
    # j of y^2 = x^3 + b is 0; j of y^2 = x^3 + ax is 1728
    assert j_invariant(Curve(CTX.element(0), CTX.element(5))) == CTX.element(0)
    assert j_invariant(Curve(CTX.element(5), CTX.element(0))) == CTX.element(1728)


def test_curve_from_j_roundtrip():
    rng = make_rng(2)
    for _ in range(30):
        j = CTX.random_element(rng)
        try:
            E = curve_from_j(j)
        except SingularCurve:
            continue
        assert j_invariant(E) == j


def test_golden_curve_j():
    E = Curve(CTX.element(25), CTX.element(58))
    assert j_invariant(E) == CTX.element(GOLDEN_J)


def test_division_polynomial_small_values():
    E = small_curve()
    a, b = 2, 3
    mm3 = division_polynomials(E, 3)
    expect3 = Polynomial(
        CTX, [-a * a, 12 * b, 6 * a, 0, 3]
    )  # 3x^4 + 6ax^2 + 12bx - a^2
    assert mm3.psi_k_univariate_part == expect3


def test_division_polynomial_vanishes_on_torsion():
    # roots of the univariate part of psi_k are x-coordinates of k-torsion
    E = small_curve()
    pts = all_points(E)
    n = len(pts)
    for k in (3, 5, 7):
        psi = division_polynomials(E, k).psi_k_univariate_part
        for P in pts:
            if P.is_infinity:
                continue
            is_tors = scalar_mul(E, k, P) == Point.infinity()
            if is_tors:
                assert psi(P.x).value == 0
            # the converse over the algebraic closure: rational roots of psi
        for x in range(97):
            if psi(x).value == 0:
                rhs = E.rhs(CTX.element(x))
                if rhs.legendre() >= 0:
                    y = rhs.sqrt(make_rng(3))
                    Q = Point(CTX.element(x), y)
                    assert scalar_mul(E, k, Q) == Point.infinity()


def test_x_multiplication_map_matches_group_law():
    E = small_curve()
    pts = all_points(E)
    for k in (2, 3, 5):
        u = x_multiplication_map(E, k)
        for P in pts:
            if P.is_infinity:
                continue
            kP = scalar_mul(E, k, P)
            val = u(P.x)
            if kP.is_infinity:
                assert val is None
            else:
                assert val == kP.x


def test_monic_division_polynomial_golden_factors():
    E = Curve(CTX.element(25), CTX.element(58))
    psi = monic_division_polynomial(E, GOLDEN_ELL)
    assert psi.is_monic
    assert psi.degree == (GOLDEN_ELL * GOLDEN_ELL - 1) // 2
    for coeffs in (F1, F2, F3):
        f = Polynomial(CTX, list(coeffs))
        assert (psi % f).is_zero


def test_division_polynomial_degree_formula():
    E = small_curve()
    for k in (3, 5, 7, 9, 11, 13):
        psi = division_polynomials(E, k).psi_k_univariate_part
        assert psi.degree == (k * k - 1) // 2  # odd k


def test_multiplication_map_commutes_with_itself():
    # x-map of [6] equals x-map of [2] composed with x-map of [3]
    E = small_curve()
    u2 = x_multiplication_map(E, 2)
    u3 = x_multiplication_map(E, 3)
    u6 = x_multiplication_map(E, 6)
    comp = u2.compose(u3)
    assert comp == u6
