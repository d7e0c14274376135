"""End-to-end generation of degree-ell permutation rational functions over
F_p, with fast structural verification and exhaustive bijectivity checks.

The generation loop draws random j-invariants, optionally filters them by
whether the level-ell modular polynomial specialized at j has a root (an
exact test for the existence of a rational ell-isogeny), runs the kernel
search on a curve with that j, and turns each kernel into an x-coordinate
map.  Every emitted function carries its provenance and has already passed
verify_fast.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .ec import Curve, curve_from_j, j_invariant
from .field import FieldContext, FieldElement, is_probable_prime, make_rng
from .isogeny import IsogenyData, isogeny_from_kernel
from .kernelsearch import KernelRecord, algorithm1
from .modpoly import MissingData, ModularPolynomial, load, specialize_and_roots
from .poly import (
    Polynomial,
    QuotientRing,
    RationalMap,
    _FrobeniusChain,
    equal_degree_split,
    gcd_monic,
    powmod,
)


class GeneratorError(Exception):
    pass


class Unsatisfiable(GeneratorError):
    """Parameter check failed or the iteration cap was reached."""


class ScaleExceeded(GeneratorError):
    pass


@dataclass(frozen=True)
class GenRequest:
    p: int
    ell: int
    count: int = 1
    seed: int = 0
    use_modpoly: bool = True

    def __post_init__(self):
        if self.ell < 5 or not is_probable_prime(self.ell):
            raise Unsatisfiable(f"ell={self.ell} must be a prime >= 5")
        if self.p < 5 or not is_probable_prime(self.p):
            raise Unsatisfiable(f"p={self.p} must be a prime >= 5")
        if self.p == self.ell:
            raise Unsatisfiable("ell must differ from p")
        if self.count < 1:
            raise Unsatisfiable("count must be positive")


@dataclass(frozen=True)
class Provenance:
    j: FieldElement
    curve: Curve
    kernel: KernelRecord
    seed: int


@dataclass(frozen=True)
class PermutationFunction:
    u: RationalMap
    provenance: Provenance


@dataclass
class GenStats:
    """Loop accounting for the heuristic rate claims."""

    j_drawn: int = 0
    j_passed_filter: int = 0
    kernels_found: int = 0
    reducible_kernels: int = 0
    emitted: int = 0


def iteration_cap(ell: int) -> int:
    return 64 * max(5, -(-2 * ell // (ell - 3)))


def generate(
    req: GenRequest,
    j_override: int | None = None,
    curve_override: tuple[int, int] | None = None,
    stats: GenStats | None = None,
    isogenies: list[IsogenyData] | None = None,
) -> list[PermutationFunction]:
    """Produce req.count permutation functions, deterministically from the
    seed.  The override hooks pin j (and optionally the exact curve) instead
    of sampling; they exist to reproduce fixed examples."""
    ctx = FieldContext(req.p)
    rng = make_rng(req.seed)
    if stats is None:
        stats = GenStats()
    phi: ModularPolynomial | None = None
    if req.use_modpoly:
        try:
            phi = load(req.ell)
        except MissingData:
            phi = None

    out: list[PermutationFunction] = []
    cap = iteration_cap(req.ell) * req.count
    tries = 0
    while len(out) < req.count:
        if tries >= cap:
            raise Unsatisfiable(
                f"no success after {tries} candidate j (cap {cap}); "
                f"p={req.p}, ell={req.ell}"
            )
        tries += 1
        if j_override is not None:
            j = ctx.element(j_override)
        else:
            j = ctx.random_element(rng)
        stats.j_drawn += 1
        if phi is not None and j_override is None:
            if not specialize_and_roots(phi, j, rng):
                continue
            stats.j_passed_filter += 1
        if curve_override is not None:
            E = Curve(ctx.element(curve_override[0]), ctx.element(curve_override[1]))
            if j_invariant(E) != j:
                raise Unsatisfiable("curve override does not match the requested j")
        else:
            try:
                E = curve_from_j(j)
            except Exception:
                continue  # singular j (0 or 1728 degeneracies never reach here)
        records = algorithm1(E, req.ell, rng)
        for rec in records:
            stats.kernels_found += 1
            if len(rec.factors) > 1:
                stats.reducible_kernels += 1
            iso = isogeny_from_kernel(E, rec)
            pf = PermutationFunction(iso.u, Provenance(j, E, rec, req.seed))
            res = verify_fast(iso.u, req.p, req.ell, rng)
            if not res:
                raise GeneratorError(f"generated function failed check: {res.reason}")
            out.append(pf)
            if isogenies is not None:
                isogenies.append(iso)
            stats.emitted += 1
            if len(out) >= req.count:
                break
        if j_override is not None and len(out) < req.count:
            raise Unsatisfiable("pinned j yields too few functions")
    return out


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_fast(
    u: RationalMap, p: int, ell: int, rng: random.Random
) -> VerifyResult:
    """Structural permutation check: numerator degree, an injectivity
    spot-check on random arguments, then the squared squarefree rootless
    denominator conditions."""
    if u.num.degree != ell:
        return VerifyResult(False, "WrongDegree")
    # injectivity spot-check first, so that a generic non-bijection is
    # reported as such rather than by its structural symptoms
    seen: dict[int, int] = {}
    for _ in range(256):
        x = rng.randrange(p)
        d = u.den(x)
        if d.value == 0:
            return VerifyResult(False, "RationalPole")
        y = (u.num(x) / d).value
        if y in seen and seen[y] != x:
            return VerifyResult(False, "NotInjective")
        seen[y] = x
    if u.den.degree != ell - 1:
        return VerifyResult(False, "WrongDegree")
    k = _square_root_of_denominator(u.den)
    if k is None:
        return VerifyResult(False, "DenNotSquare")
    if gcd_monic(k, k.derivative()).degree != 0:
        return VerifyResult(False, "DenNotSquare")
    # rootlessness: gcd(k, x^p - x) must be trivial
    frob = _FrobeniusChain(k).get(1)
    if gcd_monic(frob.rep - Polynomial.x(u.ctx), k).degree != 0:
        return VerifyResult(False, "RationalPole")
    return VerifyResult(True)


def _square_root_of_denominator(den: Polynomial) -> Polynomial | None:
    """k with k^2 = den (monic), or None."""
    if den.degree % 2 != 0 or not den.is_monic:
        return None
    k = gcd_monic(den, den.derivative())
    if k.degree != den.degree // 2:
        return None
    if k * k != den:
        return None
    return k


def verify_exhaustive(u: RationalMap, p: int, t: int = 1) -> bool:
    """Exhaustive bijectivity of u on the projective line over F_{p^t}.

    Poles map to infinity and infinity maps to infinity (deg num > deg den).
    t = 1 uses a vectorized Horner sweep; t > 1 enumerates a quotient-ring
    model of the extension field.
    """
    if p**t > 2**24:
        raise ScaleExceeded(f"p^t = {p**t} > 2^24")
    if t == 1:
        return _exhaustive_base(u, p)
    return _exhaustive_extension(u, p, t)


def _exhaustive_base(u: RationalMap, p: int) -> bool:
    xs = np.arange(p, dtype=np.int64)

    def horner(coeffs):
        acc = np.zeros(p, dtype=np.int64)
        for c in reversed(coeffs):
            acc = (acc * xs + c) % p
        return acc

    num = horner(u.num.coeffs)
    den = horner(u.den.coeffs)
    poles = den == 0
    vals = np.empty(p, dtype=np.int64)
    inv = np.array([pow(int(d), -1, p) if d else 0 for d in den], dtype=np.int64)
    vals = num * inv % p
    vals[poles] = p  # sentinel for infinity
    # bijection of P^1: finite values distinct, poles at most one
    if int(poles.sum()) > 1:
        return False
    finite = vals[~poles]
    if len(np.unique(finite)) != len(finite):
        return False
    # infinity is hit by infinity itself; a pole would duplicate it
    return int(poles.sum()) == 0


def _find_irreducible(ctx: FieldContext, t: int, rng: random.Random) -> Polynomial:
    from .poly import is_irreducible

    while True:
        coeffs = [rng.randrange(ctx.p) for _ in range(t)] + [1]
        f = Polynomial(ctx, coeffs)
        if f.degree == t and is_irreducible(f):
            return f


def _exhaustive_extension(u: RationalMap, p: int, t: int) -> bool:
    from .poly import _mul, _trim

    ctx = u.ctx
    rng = make_rng(0xE17)
    ring = QuotientRing(_find_irreducible(ctx, t, rng))
    q = p**t
    ncoef = list(u.num.coeffs)
    dcoef = list(u.den.coeffs)

    def horner(coeffs: list[int], x: list[int]) -> list[int]:
        acc: list[int] = []
        for c in reversed(coeffs):
            if acc and x:
                acc = ring.reduce_list(_mul(acc, x, p))
            else:
                acc = []
            if c:
                acc = acc + [0] if not acc else acc
                acc[0] = (acc[0] + c) % p
                acc = _trim(acc)
        return acc

    seen: set[tuple[int, ...]] = set()
    pole_count = 0
    for idx in range(q):
        v = idx
        x = []
        for _ in range(t):
            x.append(v % p)
            v //= p
        x = _trim(x)
        dacc = horner(dcoef, x)
        if not dacc:
            pole_count += 1
            if pole_count > 1:
                return False
            continue
        nacc = horner(ncoef, x)
        inv = ring.element(Polynomial._raw(ctx, dacc)).inverse()
        val = ring.reduce_list(_mul(nacc, list(inv.rep.coeffs), p)) if nacc else []
        key = tuple(val)
        if key in seen:
            return False
        seen.add(key)
    return pole_count == 0 and len(seen) == q


def kernel_definition_degree(E: Curve, rec: KernelRecord) -> int:
    """Degree over F_p of the field generated by the kernel's points: d if
    the y-coordinates already lie in the degree-d extension of the
    x-coordinates, else 2d."""
    f = rec.factors[0]
    d = rec.factor_degree
    ring = QuotientRing(f)
    rhs = ring.element(E.rhs_poly())
    p = E.context.p
    # rhs is a square in F_{p^d} iff rhs^((p^d - 1)/2) = 1
    e = (p**d - 1) // 2
    val = powmod(rhs, e)
    if val == ring.one:
        return d
    return 2 * d
