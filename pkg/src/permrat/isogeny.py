"""Normalized prime-degree isogenies from kernel polynomials.

Given a monic kernel polynomial h of degree n = (ell-1)/2, the x-coordinate
map of the degree-ell isogeny with kernel {roots of h} is

    u(x) = ell*x - 2*p1 - 2*(3x^2 + a) h'/h + 4 f (h'^2 - h h'') / h^2

with f = x^3 + ax + b and p1, p2, p3 the power sums of the roots of h; the
codomain is a' = a - 5t, b' = b - 7w with t = 6p2 + 2an, w = 10p3 + 6ap1 +
4bn.  The construction always verifies the curve identity
u^3 + a'u + b' = f * (u')^2 before returning, so a transcription error in
the closed form can never produce plausible wrong output.  The y-map of the
normalized isogeny is simply u'.

velu_oracle rebuilds the same map by summing x(P+Q) - x(Q) over the kernel
points realized in quotient-ring extensions; test scales only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ec import Curve
from .kernelsearch import KernelRecord
from .poly import Polynomial, RationalMap, gcd_monic


class IsogenyError(Exception):
    pass


class IdentityCheckFailed(IsogenyError):
    """The curve identity u^3 + a'u + b' = f*(u')^2 does not hold."""


class KernelNotSquarefree(IsogenyError):
    pass


class OracleScaleExceeded(IsogenyError):
    pass


@dataclass(frozen=True)
class IsogenyData:
    domain: Curve
    codomain: Curve
    u: RationalMap
    kernel: KernelRecord


def _power_sums(h: Polynomial) -> tuple[int, int, int]:
    """p1, p2, p3 of the roots of monic h, by Newton's identities with
    h = x^n - e1 x^(n-1) + e2 x^(n-2) - ..."""
    p = h.ctx.p
    n = h.degree

    def e(k: int) -> int:
        if k > n:
            return 0
        sign = -1 if k % 2 else 1
        return sign * h.coeffs[n - k] % p

    p1 = e(1)
    p2 = (e(1) * p1 - 2 * e(2)) % p
    p3 = (e(1) * p2 - e(2) * p1 + 3 * e(3)) % p
    return p1 % p, p2, p3


def isogeny_from_kernel(E: Curve, rec: KernelRecord) -> IsogenyData:
    """The normalized isogeny with kernel polynomial rec.kernel_poly."""
    h = rec.kernel_poly
    if not h.is_monic:
        raise IsogenyError("kernel polynomial must be monic")
    if gcd_monic(h, h.derivative()).degree != 0:
        raise KernelNotSquarefree(repr(h))
    ctx = E.context
    n = h.degree
    ell = 2 * n + 1
    a, b = E.a.value, E.b.value
    f = E.rhs_poly()
    p1, p2, p3 = _power_sums(h)

    t = (6 * p2 + 2 * a * n) % ctx.p
    w = (10 * p3 + 6 * a * p1 + 4 * b * n) % ctx.p
    E2 = Curve(ctx.element(a - 5 * t), ctx.element(b - 7 * w))

    hp = h.derivative()
    hpp = hp.derivative()
    x = Polynomial.x(ctx)
    # numerator of u over h^2
    base = (ell * x - Polynomial.constant(ctx, 2 * p1)) * h * h
    mid = 2 * (3 * x * x + Polynomial.constant(ctx, a)) * hp * h
    top = 4 * f * (hp * hp - h * hpp)
    num = base - mid + top
    den = h * h
    if not num.is_monic or num.degree != ell:
        raise IdentityCheckFailed(
            f"numerator degree {num.degree} (want {ell}), monic={num.is_monic}"
        )
    _check_curve_identity(E, E2, num, h)
    u = RationalMap(num, den)
    if u.den != den:
        raise IdentityCheckFailed("x-map not in lowest terms over the kernel square")
    return IsogenyData(E, E2, u, rec)


def _check_curve_identity(E: Curve, E2: Curve, N: Polynomial, h: Polynomial):
    """u^3 + a'u + b' = f*(u')^2 with u = N/h^2, cross-multiplied by h^6."""
    ctx = E.context
    D = h * h
    Dp = D.derivative()
    Np = N.derivative()
    lhs = (N * N * N + E2.a.value * N * D * D + E2.b.value * D * D * D) * D
    w = Np * D - N * Dp
    rhs = E.rhs_poly() * w * w
    if lhs != rhs:
        raise IdentityCheckFailed("curve identity violated")


def y_map(iso: IsogenyData) -> RationalMap:
    """v with phi(x, y) = (u(x), y*v(x)); equals u' for the normalized map."""
    return iso.u.derivative()


def velu_oracle(E: Curve, rec: KernelRecord) -> IsogenyData:
    """Independent reconstruction by explicit summation over kernel points.

    For each irreducible factor g of the kernel polynomial, the paired sum
    over its roots x_i of  t(x_i)/(x - x_i) + u(x_i)/(x - x_i)^2  (with
    t = 6x^2 + 2a, u = 4f) is computed exactly in F_q[x]/(g) via the trace
    trick:  sum t(x_i)/(X - x_i) = ((t g') mod g)/g.
    """
    if E.context.p > 1000:
        raise OracleScaleExceeded(f"p={E.context.p} > 1000")
    if rec.factor_degree > 8:
        raise OracleScaleExceeded(f"factor degree {rec.factor_degree} > 8")
    ctx = E.context
    a, b = E.a.value, E.b.value
    h = rec.kernel_poly
    n = h.degree
    ell = 2 * n + 1
    f = E.rhs_poly()
    x = Polynomial.x(ctx)
    tpoly = 6 * x * x + Polynomial.constant(ctx, 2 * a)
    upoly = 4 * f

    # u(X) = X + sum over kernel x_i of [ t(x_i)/(X-x_i) + u(x_i)/(X-x_i)^2 ]
    # assembled as a single fraction over h^2.
    num_acc = x * h * h
    t_sum = 0
    w_sum = 0
    for g in rec.factors:
        gp = g.derivative()
        A = (tpoly * gp) % g  # sum t(x_i) prod_{j!=i}(X-x_j) folded mod g
        B = (upoly * gp) % g
        cof = h // g
        # t-part: A/g -> A*cof*h over h^2
        num_acc = num_acc + A * cof * h
        # u-part: (B g' - B' g)/g^2 -> (B g' - B' g)*cof^2 over h^2
        num_acc = num_acc + (B * gp - B.derivative() * g) * cof * cof
        # codomain sums: t(g) = sum t(x_i), w(g) = sum (u(x_i) + x_i t(x_i))
        t_sum += _trace_sum(tpoly, g)
        w_sum += _trace_sum(upoly + x * tpoly, g)
    t_sum %= ctx.p
    w_sum %= ctx.p
    E2 = Curve(ctx.element(a - 5 * t_sum), ctx.element(b - 7 * w_sum))
    u = RationalMap(num_acc, h * h)
    if u.num.degree != ell or not u.num.is_monic:
        raise IsogenyError("oracle produced a malformed x-map")
    return IsogenyData(E, E2, u, rec)


def _trace_sum(t: Polynomial, g: Polynomial) -> int:
    """sum of t(x_i) over the roots x_i of g (with multiplicity 1)."""
    # Newton power sums from g: s_k = sum x_i^k, via s = rev(g')/rev(g) series
    p = g.ctx.p
    n = g.degree
    acc = 0
    powers = _root_power_sums(g, t.degree)
    for k, c in enumerate(t.coeffs):
        acc = (acc + c * powers[k]) % p
    return acc


def _root_power_sums(g: Polynomial, upto: int) -> list[int]:
    p = g.ctx.p
    n = g.degree
    c = [g.coeffs[n - k] for k in range(n + 1)]  # c[k] = coeff of x^(n-k)
    s = [n % p]
    for k in range(1, upto + 1):
        acc = -k * c[k] if k <= n else 0
        for i in range(1, min(k - 1, n) + 1):
            acc -= c[i] * s[k - i]
        s.append(acc % p)
    return s
