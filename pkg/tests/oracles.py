"""Independent oracles used only by the test suite.

enumerate_permutation_kernels reimplements the kernel search from first
principles: factor the ell-division polynomial completely, adjoin a root of
each irreducible factor to get the x-coordinate of an order-ell point in an
explicit extension field, walk the whole subgroup with the division
polynomials of the multiplication maps, and keep the subgroups whose kernel
polynomial has base-field coefficients and that have no nontrivial point
over the quadratic extension.  It shares no logic with the Galois-orbit
conjugacy test in the library proper.
"""

from permrat.ec import Curve, division_polynomials, monic_division_polynomial
from permrat.poly import (
    Polynomial,
    QuotientRing,
    SingularRing,
    _FrobeniusChain,
    _horner_ring,
    distinct_degree_part,
    equal_degree_split,
    powmod,
)


def factor_completely(f, rng):
    """All monic irreducible factors of a squarefree monic polynomial."""
    chain = _FrobeniusChain(f)
    handled = []
    out = []
    total = 0
    d = 1
    while total < f.degree:
        part = distinct_degree_part(f, d, handled, chain)
        if part.degree > 0:
            handled.append(part)
            pieces = equal_degree_split(part, d, rng)
            out.extend(pieces)
            total += part.degree
        d += 1
    return out


def enumerate_permutation_kernels(E: Curve, ell: int, rng) -> list[Polynomial]:
    """Kernel polynomials of all rational order-ell subgroups of E with no
    nontrivial point over the quadratic extension, by direct enumeration."""
    ctx = E.context
    p = ctx.p
    n = (ell - 1) // 2
    psi = monic_division_polynomial(E, ell)
    factors = factor_completely(psi, rng)

    out: dict[tuple, Polynomial] = {}
    rhs = E.rhs_poly()
    for f in factors:
        ring = QuotientRing(f)
        xbar = ring.x if f.degree > 1 else ring.element(
            Polynomial(ctx, [-f.coeffs[0]])
        )
        # x-coordinates of P, 2P, ..., nP in the extension field
        xs = [xbar]
        ok = True
        for k in range(2, n + 1):
            mm = division_polynomials(E, k)
            num = _horner_ring(mm.phi_k, xbar)
            den = _horner_ring(mm.psi_sq_k, xbar)
            try:
                xs.append(num * den.inverse())
            except SingularRing:
                ok = False
                break
        if not ok:
            continue
        # kernel polynomial prod (X - x_k), built with extension coefficients
        coeffs = [ring.one]
        for xv in xs:
            nxt = [ring.zero] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - c * xv
            coeffs = nxt
        if any(c.rep.degree > 0 for c in coeffs):
            continue  # subgroup is not rational
        g = Polynomial(
            ctx, [(c.rep.coeffs[0] if c.rep.coeffs else 0) for c in coeffs]
        )
        if g.coeffs in out:
            continue
        # quadratic-extension condition: reject if some point of the kernel
        # is rational over F_{p^2}
        e2 = (p * p - 1) // 2
        has_quadratic_point = False
        for xv in xs:
            if powmod(xv, p * p) != xv:
                continue  # x-coordinate not in F_{p^2}
            z = _horner_ring(rhs, xv)
            if (not z) or powmod(z, e2) == ring.one:
                has_quadratic_point = True
                break
        if not has_quadratic_point:
            out[g.coeffs] = g
    return sorted(out.values(), key=lambda g: g.coeffs)
