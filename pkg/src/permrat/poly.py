"""Dense univariate polynomial arithmetic over F_p.

Coefficients are stored ascending with no trailing zeros, as plain ints in
[0, p).  Multiplication switches from schoolbook to Kronecker substitution
(pack the coefficients into one big integer, multiply with GMP, unpack)
above FAST_MUL_THRESHOLD; the equivalence of the two paths is part of the
test suite.  QuotientRing precomputes a Newton-inverse of the reversed
modulus so that reduction in the hot exponentiation loops costs two
multiplications instead of a long division.

Also here: the finite-field factorization toolkit (distinct-degree part
extraction, equal-degree splitting, root finding), remainder-tree batch
reduction, the resultant against a y-linear second argument, and the
RationalMap value type used for x-coordinate maps.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

import gmpy2

from .field import DivisionByZero, FieldContext, FieldElement, MixedContext

try:  # optional compiled accelerator; everything works without it
    from . import _fastpoly
except ImportError:  # pragma: no cover - depends on the build environment
    _fastpoly = None

FAST_MUL_THRESHOLD = 32


class PolyError(Exception):
    pass


class NotSquarefree(PolyError):
    pass


class BadInput(PolyError):
    pass


# ---------------------------------------------------------------------------
# Raw coefficient-list kernels.  All lists are ascending, reduced mod p,
# and trimmed (no trailing zeros); [] is the zero polynomial.


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def _sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _neg(a: Sequence[int], p: int) -> list[int]:
    return [(-c) % p for c in a]


def _scale(a: Sequence[int], s: int, p: int) -> list[int]:
    s %= p
    if s == 0:
        return []
    return _trim([c * s % p for c in a])


def _mul_schoolbook(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _trim([c % p for c in out])


def _mul_kronecker(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    w = 2 * p.bit_length() + min(len(a), len(b)).bit_length() + 1
    prod = gmpy2.pack(list(a), w) * gmpy2.pack(list(b), w)
    n = len(a) + len(b) - 1
    coeffs = gmpy2.unpack(prod, w)
    if len(coeffs) < n:
        coeffs = list(coeffs) + [0] * (n - len(coeffs))
    return _trim([int(c % p) for c in coeffs[:n]])


# Kronecker packing beats schoolbook already at small sizes since the
# pack/square/unpack steps all run in C; crossover measured on CPython 3.10.
def _use_kronecker(nmin: int, p: int) -> bool:
    return nmin >= 8


def _mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    if _use_kronecker(min(len(a), len(b)), p):
        return _mul_kronecker(a, b, p)
    return _mul_schoolbook(a, b, p)


def _divrem(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _trim(r)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            c = c * inv_lead % p
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % p
        else:
            r[i] = 0
    return _trim(q), _trim(r[:db])


def _monic(a: Sequence[int], p: int) -> list[int]:
    if not a:
        return []
    if a[-1] == 1:
        return list(a)
    return _scale(a, pow(a[-1], -1, p), p)


def _gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _divrem(a, b, p)[1]
    return _monic(a, p)


def _deriv(a: Sequence[int], p: int) -> list[int]:
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def _eval(a: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _series_inverse(a: Sequence[int], n: int, p: int) -> list[int]:
    """Inverse of a power series with a[0] invertible, to n terms."""
    inv = [pow(a[0], -1, p)]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        t = _mul(list(a[:prec]), inv, p)[:prec]
        t = [(-c) % p for c in t]  # 2 - a*inv, Newton step
        t[0] = (t[0] + 2) % p
        inv = _mul(inv, t, p)[:prec]
    return inv


# ---------------------------------------------------------------------------
# Public polynomial type.


class Polynomial:
    """Dense univariate polynomial over a FieldContext. Immutable."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs: Iterable[int | FieldElement]):
        p = ctx.p
        raw = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.ctx.p != p:
                    raise MixedContext("coefficient from a different field")
                raw.append(c.value)
            else:
                raw.append(c % p)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", tuple(_trim(raw)))

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _raw(cls, ctx: FieldContext, coeffs: list[int]) -> "Polynomial":
        obj = object.__new__(cls)
        object.__setattr__(obj, "ctx", ctx)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        return obj

    @classmethod
    def x(cls, ctx: FieldContext) -> "Polynomial":
        return cls._raw(ctx, [0, 1])

    @classmethod
    def constant(cls, ctx: FieldContext, c: int) -> "Polynomial":
        return cls(ctx, [c])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _check(self, other: "Polynomial"):
        if self.ctx.p != other.ctx.p:
            raise MixedContext("polynomials over different fields")

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial._raw(self.ctx, _add(self.coeffs, other.coeffs, self.ctx.p))

    def __sub__(self, other):
        other = self._coerce(other)
        return Polynomial._raw(self.ctx, _sub(self.coeffs, other.coeffs, self.ctx.p))

    def __neg__(self):
        return Polynomial._raw(self.ctx, _neg(self.coeffs, self.ctx.p))

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial._raw(self.ctx, _scale(self.coeffs, other, self.ctx.p))
        other = self._coerce(other)
        return Polynomial._raw(self.ctx, _mul(self.coeffs, other.coeffs, self.ctx.p))

    __rmul__ = __mul__

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return Polynomial(self.ctx, [other])
        if isinstance(other, FieldElement):
            return Polynomial(self.ctx, [other])
        raise TypeError(f"cannot combine Polynomial with {type(other)!r}")

    def divrem(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        other = self._coerce(other)
        q, r = _divrem(self.coeffs, other.coeffs, self.ctx.p)
        return Polynomial._raw(self.ctx, q), Polynomial._raw(self.ctx, r)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def monic(self) -> "Polynomial":
        return Polynomial._raw(self.ctx, _monic(self.coeffs, self.ctx.p))

    def derivative(self) -> "Polynomial":
        return Polynomial._raw(self.ctx, _deriv(self.coeffs, self.ctx.p))

    def __call__(self, x: int | FieldElement) -> FieldElement:
        v = x.value if isinstance(x, FieldElement) else x % self.ctx.p
        return self.ctx.element(_eval(self.coeffs, v, self.ctx.p))

    def shift(self, n: int) -> "Polynomial":
        """Multiply by x^n."""
        if self.is_zero:
            return self
        return Polynomial._raw(self.ctx, [0] * n + list(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx.p == other.ctx.p and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == (tuple() if other % self.ctx.p == 0 else (other % self.ctx.p,))
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{'' if c == 1 else c}x")
            else:
                terms.append(f"{'' if c == 1 else c}x^{i}")
        return " + ".join(reversed(terms))


def gcd_monic(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    if a.is_zero and b.is_zero:
        raise BadInput("gcd(0, 0) undefined")
    if _fastpoly is not None:
        raw = _fastpoly.gcdmod(list(a.coeffs), list(b.coeffs), a.ctx.p)
        return Polynomial._raw(a.ctx, raw)
    return Polynomial._raw(a.ctx, _gcd(a.coeffs, b.coeffs, a.ctx.p))


# ---------------------------------------------------------------------------
# Quotient ring F_p[x]/(m) with fast reduction.


class QuotientRing:
    """F_p[x]/(m) with a precomputed Newton inverse for Barrett reduction."""

    __slots__ = ("modulus", "ctx", "_rev_inv", "_n", "_packed")

    def __init__(self, modulus: Polynomial):
        if modulus.degree < 1:
            raise BadInput("modulus must have degree >= 1")
        modulus = modulus.monic()
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "ctx", modulus.ctx)
        object.__setattr__(self, "_n", modulus.degree)
        object.__setattr__(self, "_rev_inv", None)
        object.__setattr__(self, "_packed", None)

    def __setattr__(self, *_):
        raise AttributeError("QuotientRing is immutable")

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("QuotientRing", self.modulus))

    def _rev_inv_list(self) -> list[int]:
        """Newton inverse of the reversed modulus, computed on first use."""
        if self._rev_inv is None:
            rev = list(reversed(self.modulus.coeffs))
            object.__setattr__(
                self, "_rev_inv", _series_inverse(rev, max(self._n, 1), self.ctx.p)
            )
        return self._rev_inv

    def reduce_list(self, c: Sequence[int]) -> list[int]:
        """Reduce a raw coefficient list of degree <= 2n-2 modulo m."""
        n = self._n
        p = self.ctx.p
        c = _trim(list(c))
        if len(c) <= n:
            return c
        k = len(c) - 1 - n  # quotient degree
        rev_a = c[::-1][: k + 1]
        q_rev = _mul(rev_a, self._rev_inv_list()[: k + 1], p)[: k + 1]
        q = q_rev[::-1]
        qm = _mul(q, list(self.modulus.coeffs), p)
        out = _sub(c, qm, p)
        if len(out) > n:  # numerical edge: fall back to long division
            out = _divrem(out, list(self.modulus.coeffs), p)[1]
        return out

    def _packed_ops(self):
        """Lazy Kronecker-packed copies of the modulus and its Newton inverse
        for the fused multiply-and-reduce path."""
        if self._packed is None:
            p = self.ctx.p
            n = self._n
            # every packed product in the pipeline sums at most n slot terms
            # of size < p^2, and the borrow-free subtraction trick needs
            # n * p^2 < 2^(w-1), so the headroom must grow with the degree
            w = 2 * p.bit_length() + max(8, n.bit_length() + 2)
            # per-coefficient offset: a multiple of p large enough to keep
            # every coefficient of (product - q*m) nonnegative inside the
            # packed integer, so the subtraction never borrows across slots
            off = ((1 << (w - 1)) // p) * p
            object.__setattr__(
                self,
                "_packed",
                (
                    w,
                    gmpy2.pack(list(self.modulus.coeffs), w),
                    gmpy2.pack(self._rev_inv_list(), w),
                    gmpy2.mpz(p),
                    gmpy2.mpz((1 << (w * n)) - 1),
                    gmpy2.pack([off] * n, w),
                ),
            )
        return self._packed

    def mulmod_raw(self, a: list, b: list) -> list:
        """(a * b) mod m on raw ascending coefficient lists (entries may be
        int or mpz, each reduced mod p); single fused Kronecker pipeline."""
        if not a or not b:
            return []
        n = self._n
        w, pm, pri, P, low_mask, off = self._packed_ops()
        if type(a) is not list:
            a = list(a)
        if a is b:
            A = gmpy2.pack(a, w)
            prod = A * A
        else:
            if type(b) is not list:
                b = list(b)
            prod = gmpy2.pack(a, w) * gmpy2.pack(b, w)
        # Kronecker coefficients stay below len*p^2 < 2^(w-1); the product is
        # kept packed and unreduced, and only small slices are unpacked.
        dn = len(a) + len(b) - 1
        high = prod >> (w * n)
        if not high:
            return _trim([c % P for c in gmpy2.unpack(prod, w)[:dn]])
        k = dn - 1 - n  # quotient degree
        # the quotient multiply packs rev_top again, so it must be reduced
        rev_top = [c % P for c in gmpy2.unpack(high, w)[: k + 1][::-1]]
        rev_top += [0] * (k + 1 - len(rev_top))
        qprod = gmpy2.pack(rev_top, w) * pri
        q_rev = [c % P for c in gmpy2.unpack(qprod, w)[: k + 1]]
        q_rev += [0] * (k + 1 - len(q_rev))
        q = _trim(q_rev[::-1])
        if not q:
            diff = prod & low_mask
        else:
            # the per-slot offset keeps every coefficient nonnegative, so the
            # packed subtraction cannot borrow across slots
            diff = (prod & low_mask) + off - (gmpy2.pack(q, w) * pm & low_mask)
        out = _trim([c % P for c in gmpy2.unpack(diff, w)[:n]]) if diff else []
        if len(out) > n:  # cannot happen when the Barrett inverse is exact
            out = _divrem(out, list(self.modulus.coeffs), self.ctx.p)[1]
        return out

    def element(self, poly: Polynomial) -> "QuotientElement":
        if poly.ctx.p != self.ctx.p:
            raise MixedContext("element from a different field")
        rep = poly % self.modulus if poly.degree >= self._n else poly
        return QuotientElement(self, rep)

    @property
    def zero(self) -> "QuotientElement":
        return QuotientElement(self, Polynomial._raw(self.ctx, []))

    @property
    def one(self) -> "QuotientElement":
        return QuotientElement(self, Polynomial._raw(self.ctx, [1]))

    @property
    def x(self) -> "QuotientElement":
        return self.element(Polynomial.x(self.ctx))

    def random_element(self, rng: random.Random) -> "QuotientElement":
        p = self.ctx.p
        coeffs = [rng.randrange(p) for _ in range(self._n)]
        return QuotientElement(self, Polynomial(self.ctx, coeffs))


class SingularRing(PolyError):
    """A required inverse does not exist in the quotient ring."""

    def __init__(self, factor: Polynomial):
        super().__init__(f"zero divisor; modulus factor {factor!r}")
        self.factor = factor


class QuotientElement:
    """Residue class in a QuotientRing. Immutable."""

    __slots__ = ("ring", "rep")

    def __init__(self, ring: QuotientRing, rep: Polynomial):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, *_):
        raise AttributeError("QuotientElement is immutable")

    def _check(self, other):
        if not isinstance(other, QuotientElement) or other.ring != self.ring:
            raise MixedContext("elements of different quotient rings")

    def __add__(self, other):
        other = self._coerce(other)
        return QuotientElement(self.ring, self.rep + other.rep)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return QuotientElement(self.ring, self.rep - other.rep)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return QuotientElement(self.ring, -self.rep)

    def __mul__(self, other):
        other = self._coerce(other)
        raw = _mul(self.rep.coeffs, other.rep.coeffs, self.ring.ctx.p)
        return QuotientElement(
            self.ring, Polynomial._raw(self.ring.ctx, self.ring.reduce_list(raw))
        )

    __rmul__ = __mul__

    def _coerce(self, other) -> "QuotientElement":
        if isinstance(other, QuotientElement):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.element(Polynomial(self.ring.ctx, [other]))
        if isinstance(other, Polynomial):
            return self.ring.element(other)
        raise TypeError(f"cannot combine QuotientElement with {type(other)!r}")

    def inverse(self) -> "QuotientElement":
        """Extended-gcd inverse; SingularRing carries the exposed factor."""
        p = self.ring.ctx.p
        r0, r1 = list(self.ring.modulus.coeffs), list(self.rep.coeffs)
        s0, s1 = [], [1]
        while r1:
            q, r = _divrem(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _sub(s0, _mul(q, s1, p), p)
        if len(r0) != 1:
            raise SingularRing(Polynomial._raw(self.ring.ctx, _monic(r0, p)))
        inv_c = pow(r0[0], -1, p)
        return QuotientElement(
            self.ring, Polynomial._raw(self.ring.ctx, _scale(s0, inv_c, p))
        )

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, e: int):
        return powmod(self, e)

    def __eq__(self, other):
        if isinstance(other, QuotientElement):
            return self.ring == other.ring and self.rep == other.rep
        if isinstance(other, (int, Polynomial, FieldElement)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.rep))

    def __bool__(self):
        return not self.rep.is_zero

    def __repr__(self):
        return f"({self.rep!r}) mod ({self.ring.modulus!r})"


def powmod(base: QuotientElement, e: int) -> QuotientElement:
    """base^e in the quotient ring, 4-bit fixed-window square-and-multiply
    over the fused raw-list multiply path."""
    if e < 0:
        raise BadInput("negative exponent")
    ring = base.ring
    if e == 0:
        return ring.one
    if e == 1:
        return base
    # the compiled path uses schoolbook products: a win for small moduli,
    # beaten by the Kronecker pipeline above roughly degree 64
    if _fastpoly is not None and e > 4 and ring._n <= 48:
        raw = _fastpoly.powmod(
            list(ring.modulus.coeffs), list(base.rep.coeffs), e, ring.ctx.p
        )
        return QuotientElement(ring, Polynomial._raw(ring.ctx, raw))
    b = list(base.rep.coeffs)
    table = [[1], b]
    for _ in range(14):
        table.append(ring.mulmod_raw(table[-1], b))
    digits = []
    n = e
    while n:
        digits.append(n & 15)
        n >>= 4
    acc = table[digits[-1]]
    mm = ring.mulmod_raw
    for d in reversed(digits[:-1]):
        acc = mm(acc, acc)
        acc = mm(acc, acc)
        acc = mm(acc, acc)
        acc = mm(acc, acc)
        if d:
            acc = mm(acc, table[d])
    return QuotientElement(ring, Polynomial._raw(ring.ctx, _trim([int(c) for c in acc])))


def frobenius_power(d: int, m: Polynomial) -> QuotientElement:
    """x^(q^d) in F_q[x]/(m), by d-fold application of the q-th power map."""
    if d < 1 or m.degree < 1:
        raise BadInput("need d >= 1 and deg m >= 1")
    ring = QuotientRing(m)
    q = m.ctx.p
    h = powmod(ring.x, q)
    for _ in range(d - 1):
        h = powmod(h, q)
    return h


class _FrobeniusChain:
    """Caches x^(q^d) mod m for increasing d, reusing earlier powers."""

    def __init__(self, m: Polynomial):
        self.ring = QuotientRing(m)
        self.q = m.ctx.p
        self._powers: dict[int, QuotientElement] = {}

    def get(self, d: int) -> QuotientElement:
        if d in self._powers:
            return self._powers[d]
        known = [k for k in self._powers if k < d]
        if known:
            start = max(known)
            h = self._powers[start]
        else:
            start = 0
            h = self.ring.x
        for i in range(start, d):
            h = powmod(h, self.q)
            self._powers[i + 1] = h
        return h


# ---------------------------------------------------------------------------
# Factorization toolkit.


def _require_squarefree(f: Polynomial):
    if gcd_monic(f, f.derivative()).degree != 0:
        raise NotSquarefree(f"gcd(f, f') is nonconstant for {f!r}")


def distinct_degree_part(
    f: Polynomial,
    d: int,
    strip: Sequence[Polynomial] = (),
    chain: "_FrobeniusChain | None" = None,
) -> Polynomial:
    """Product of the monic irreducible factors of f of degree exactly d.

    f must be squarefree and monic; strip lists the previously extracted
    parts of proper-divisor degrees d' | d, which are divided out of
    gcd(f, x^(q^d) - x).
    """
    if d < 1:
        raise BadInput("d must be positive")
    if not f.is_monic:
        raise BadInput("f must be monic")
    _require_squarefree(f)
    if chain is None:
        chain = _FrobeniusChain(f)
    frob = chain.get(d)
    g = gcd_monic(frob.rep - Polynomial.x(f.ctx), f)
    for s in strip:
        common = gcd_monic(g, s)
        if common.degree > 0:
            g = g // common
    return g.monic()


def equal_degree_split(r: Polynomial, d: int, rng: random.Random) -> list[Polynomial]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-d irreducibles."""
    if d < 1 or r.degree % d != 0:
        raise BadInput(f"degree {r.degree} is not a multiple of {d}")
    r = r.monic()
    q = r.ctx.p
    e = (q**d - 1) // 2

    out: list[Polynomial] = []

    def split(f: Polynomial):
        if f.degree == d:
            out.append(f)
            return
        ring = QuotientRing(f)
        while True:
            h = ring.random_element(rng)
            if h.rep.degree < 1 and f.degree > d:
                continue
            g = gcd_monic((powmod(h, e) - 1).rep, f)
            if 0 < g.degree < f.degree:
                split(g)
                split(f // g)
                return

    if r.degree:
        split(r)
    out.sort(key=lambda f: f.coeffs)
    return out


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's test: x^(q^d) = x mod f and no fixed points at proper divisors."""
    d = f.degree
    if d < 1:
        return False
    if d == 1:
        return True
    chain = _FrobeniusChain(f.monic())
    x = Polynomial.x(f.ctx)
    if chain.get(d).rep != x % f.monic():
        return False
    for t in _prime_factors(d):
        g = gcd_monic(chain.get(d // t).rep - x, f.monic())
        if g.degree > 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    t = 2
    while t * t <= n:
        if n % t == 0:
            out.append(t)
            while n % t == 0:
                n //= t
        t += 1
    if n > 1:
        out.append(n)
    return out


def batch_reduce(a: Polynomial, moduli: Sequence[Polynomial]) -> list[Polynomial]:
    """[a mod m for m in moduli], computed with a remainder tree."""
    if not moduli:
        return []
    for m in moduli:
        if m.is_zero:
            raise DivisionByZero("zero modulus in batch_reduce")
        a._check(m)

    def descend(x: Polynomial, ms: Sequence[Polynomial]) -> list[Polynomial]:
        if len(ms) == 1:
            return [x % ms[0]]
        mid = len(ms) // 2
        left, right = ms[:mid], ms[mid:]
        prod_l = left[0]
        for m in left[1:]:
            prod_l = prod_l * m
        prod_r = right[0]
        for m in right[1:]:
            prod_r = prod_r * m
        return descend(x % prod_l, left) + descend(x % prod_r, right)

    return descend(a, moduli)


def linear_resultant(f: Polynomial, a: Polynomial, b: Polynomial) -> Polynomial:
    """Res_y(f(y), a(x) - b(x) y) up to sign: b^n * f(a/b) homogenized."""
    if f.is_zero or f.degree < 1:
        raise BadInput("f must have degree >= 1")
    f._check(a)
    f._check(b)
    n = f.degree
    acc = Polynomial.constant(f.ctx, f.coeffs[n])
    bp = Polynomial.constant(f.ctx, 1)
    for k in range(n - 1, -1, -1):
        bp = bp * b
        acc = acc * a + f.coeffs[k] * bp
    return acc


def roots_in_field(f: Polynomial, rng: random.Random) -> list[FieldElement]:
    """All roots of f in F_p, each once, via gcd with x^q - x then splitting."""
    if f.is_zero:
        raise BadInput("zero polynomial")
    if f.degree < 1:
        return []
    f = f.monic()
    sf = f // gcd_monic(f, f.derivative()) if gcd_monic(f, f.derivative()).degree else f
    frob = frobenius_power(1, sf)
    g = gcd_monic(frob.rep - Polynomial.x(f.ctx), sf)
    if g.degree == 0:
        return []
    linears = equal_degree_split(g, 1, rng)
    roots = [f.ctx.element(-lin.coeffs[0]) for lin in linears]
    roots.sort(key=lambda r: r.value)
    return roots


# ---------------------------------------------------------------------------
# Rational maps.


class RationalMap:
    """Reduced fraction num/den of polynomials, den monic and nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        num._check(den)
        if den.is_zero:
            raise DivisionByZero("zero denominator")
        g = gcd_monic(num, den) if not num.is_zero else den.monic()
        if g.degree > 0:
            num, den = num // g, den // g
        lead_inv = pow(den.leading(), -1, den.ctx.p)
        object.__setattr__(self, "num", num * lead_inv)
        object.__setattr__(self, "den", den * lead_inv)

    def __setattr__(self, *_):
        raise AttributeError("RationalMap is immutable")

    @property
    def ctx(self) -> FieldContext:
        return self.den.ctx

    def __eq__(self, other):
        return (
            isinstance(other, RationalMap)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"

    def __call__(self, x: int | FieldElement):
        """Value at x in P^1: a FieldElement, or None for the point at infinity."""
        d = self.den(x)
        if d.value == 0:
            return None
        return self.num(x) / d

    def derivative(self) -> "RationalMap":
        n, d = self.num, self.den
        return RationalMap(n.derivative() * d - n * d.derivative(), d * d)

    def compose(self, inner: "RationalMap") -> "RationalMap":
        """self(inner(x)) as a reduced rational map."""
        a, b = inner.num, inner.den
        n = self.num.degree
        m = self.den.degree
        deg = max(n, m)
        # Homogenize both num and den of self with b^deg.
        bp = [Polynomial.constant(a.ctx, 1)]
        for _ in range(deg):
            bp.append(bp[-1] * b)
        ap = [Polynomial.constant(a.ctx, 1)]
        for _ in range(deg):
            ap.append(ap[-1] * a)
        num_acc = Polynomial(a.ctx, [])
        for k, c in enumerate(self.num.coeffs):
            num_acc = num_acc + c * ap[k] * bp[deg - k]
        den_acc = Polynomial(a.ctx, [])
        for k, c in enumerate(self.den.coeffs):
            den_acc = den_acc + c * ap[k] * bp[deg - k]
        return RationalMap(num_acc, den_acc)

    def evaluate_in(self, ring: QuotientRing):
        """Evaluate at the image of x in a quotient ring; None when not invertible."""
        xbar = ring.x
        num = _horner_ring(self.num, xbar)
        den = _horner_ring(self.den, xbar)
        try:
            return num * den.inverse()
        except SingularRing:
            return None


def _horner_ring(f: Polynomial, x: QuotientElement) -> QuotientElement:
    acc = x.ring.zero
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc
