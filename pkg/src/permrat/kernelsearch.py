"""Search for kernel polynomials of rational prime-degree isogenies whose
kernels have no nontrivial points over the quadratic extension.

The driver factors the monic ell-division polynomial degree by degree.  A
degree-d irreducible factor f (d | (ell-1)/2, d > 1) belongs to a rational
kernel exactly when the Galois orbit of a root closes up under the
multiplication-by-tau map on x-coordinates, which reduces to the residue
test f(phi_tau/psi_tau^2) = 0 in F_q[x]/(f).  The remaining factors of the
same kernel are collected with resultants against phi_rho/psi_rho^2.
Factors of degree (ell-1)/2 are complete kernel polynomials on their own
and skip both steps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .ec import Curve, division_polynomials, monic_division_polynomial
from .poly import (
    Polynomial,
    QuotientRing,
    SingularRing,
    _FrobeniusChain,
    _horner_ring,
    distinct_degree_part,
    equal_degree_split,
    gcd_monic,
    linear_resultant,
)


class KernelSearchError(Exception):
    pass


class NonInvertibleDenominator(KernelSearchError):
    """gcd(psi_tau^2, f) != 1: f is not a torsion factor coprime to lower
    torsion, which indicates an upstream bug."""


class AssemblyMismatch(KernelSearchError):
    """Orbit assembly did not produce a degree-(ell-1)/2 divisor of psi_ell."""


@dataclass(frozen=True)
class SearchParams:
    ell: int
    omega: int

    def __post_init__(self):
        from .field import is_probable_prime

        if self.ell < 5 or not is_probable_prime(self.ell):
            raise KernelSearchError(f"ell={self.ell} must be a prime >= 5")


@dataclass(frozen=True)
class KernelRecord:
    kernel_poly: Polynomial
    factor_degree: int
    factors: tuple[Polynomial, ...]

    def __post_init__(self):
        prod = self.factors[0]
        for f in self.factors[1:]:
            prod = prod * f
        if prod != self.kernel_poly:
            raise AssemblyMismatch("factors do not multiply to the kernel polynomial")


def primitive_root(ell: int) -> int:
    """Smallest positive generator of the multiplicative group mod ell."""
    from .poly import _prime_factors

    qs = _prime_factors(ell - 1)
    g = 2
    while True:
        if all(pow(g, (ell - 1) // q, ell) != 1 for q in qs):
            return g
        g += 1


def tau_for(ell: int, omega: int, d: int) -> int:
    """Smallest tau with tau = +-omega^((ell-1)/(2d)) mod ell."""
    if d <= 1 or ((ell - 1) // 2) % d != 0:
        raise KernelSearchError(f"d={d} must be a divisor > 1 of (ell-1)/2")
    t = pow(omega, (ell - 1) // (2 * d), ell)
    tau = min(t, ell - t)
    # tau must have order exactly d in (Z/ell)^x / {+-1}
    assert _pm_order(tau, ell) == d
    return tau


def _pm_order(t: int, ell: int) -> int:
    acc = t % ell
    k = 1
    while acc != 1 and acc != ell - 1:
        acc = acc * t % ell
        k += 1
    return k


def conjugacy_test(E: Curve, f: Polynomial, tau: int) -> bool:
    """True iff f(phi_tau/psi_tau^2) = 0 mod f, i.e. multiplication by tau
    permutes the roots of f."""
    mm = division_polynomials(E, tau)
    ring = QuotientRing(f.monic())
    num = _horner_ring(mm.phi_k, ring.x)
    den = _horner_ring(mm.psi_sq_k, ring.x)
    try:
        a_f = num * den.inverse()
    except SingularRing as exc:
        raise NonInvertibleDenominator(
            f"psi_{tau}^2 shares a factor with the candidate: {exc.factor!r}"
        ) from exc
    acc = ring.zero
    for c in reversed(f.coeffs):
        acc = acc * a_f + c
    return not bool(acc)


def orbit_assemble(
    E: Curve,
    f: Polynomial,
    ell: int,
    omega: int,
    d: int,
    factor_pool: list[Polynomial],
    psi_ell: Polynomial,
) -> KernelRecord:
    """Collect the full kernel polynomial containing the factor f.

    For m = 1 .. (ell-1)/(2d) - 1, rho = min(+-omega^m mod ell), the next
    chunk is gcd(psi_ell, Res_y(f(y), phi_rho - psi_rho^2 y)); each chunk is
    removed from factor_pool by exact equality of its irreducible parts.
    """
    n = (ell - 1) // 2
    k = f
    parts = [f]
    for m in range(1, n // d):
        t = pow(omega, m, ell)
        rho = min(t, ell - t)
        mm = division_polynomials(E, rho)
        res = linear_resultant(f, mm.phi_k, mm.psi_sq_k)
        g = gcd_monic(psi_ell, res).monic()
        common = gcd_monic(g, k)
        if common.degree > 0:
            g = g // common
        if g.degree == 0:
            continue
        k = k * g
        # split g back into pool members by exact division
        rem = g
        for member in list(factor_pool):
            if (rem % member).is_zero:
                parts.append(member)
                factor_pool.remove(member)
                rem = rem // member
        if rem.degree > 0:
            parts.append(rem.monic())
    if k.degree != n or not (psi_ell % k).is_zero:
        raise AssemblyMismatch(
            f"assembled degree {k.degree}, expected {n}, divides={(psi_ell % k).is_zero}"
        )
    parts.sort(key=lambda q: q.coeffs)
    return KernelRecord(k.monic(), d, tuple(parts))


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def algorithm1(E: Curve, ell: int, rng: random.Random) -> list[KernelRecord]:
    """All kernel polynomials of rational ell-isogenies from E whose kernels
    have no nontrivial points over the quadratic extension; deterministic as
    a sorted list."""
    params = SearchParams(ell, primitive_root(ell))
    if ell % E.context.p == 0:
        raise KernelSearchError("ell must differ from the characteristic")
    omega = params.omega
    n = (ell - 1) // 2
    psi_ell = monic_division_polynomial(E, ell)
    chain = _FrobeniusChain(psi_ell)

    records: list[KernelRecord] = []
    handled: list[Polynomial] = []
    for d in _divisors(n):
        if d == 1:
            # factors with rational roots can never satisfy the
            # quadratic-extension condition; record them only for stripping
            part = distinct_degree_part(psi_ell, 1, handled, chain)
            if part.degree > 0:
                handled.append(part)
            continue
        part = distinct_degree_part(psi_ell, d, handled, chain)
        if part.degree == 0:
            continue
        handled.append(part)
        factors = equal_degree_split(part, d, rng)
        tau = tau_for(ell, omega, d)
        if d == n:
            # a passing factor of maximal degree is already a complete
            # kernel polynomial; no orbit assembly needed
            for f in factors:
                if conjugacy_test(E, f, tau):
                    records.append(KernelRecord(f, d, (f,)))
            continue
        pool = list(factors)
        while pool:
            f = pool.pop(0)
            if not conjugacy_test(E, f, tau):
                continue
            records.append(orbit_assemble(E, f, ell, omega, d, pool, psi_ell))
    records.sort(key=lambda r: (r.factor_degree, r.kernel_poly.coeffs))
    return records
