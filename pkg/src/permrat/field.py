"""Arbitrary-precision prime field arithmetic.

A FieldContext is an odd prime modulus p >= 5; FieldElement values are
canonical residues in [0, p).  Every randomized operation in the package
takes an explicit PRNG handle created by make_rng(), so runs are
reproducible from a 64-bit seed.
"""

from __future__ import annotations

import random

import gmpy2

MR_ROUNDS = 40


class FieldError(Exception):
    pass


class MixedContext(FieldError):
    """Operands belong to different prime fields."""


class DivisionByZero(FieldError):
    """Inverse of zero requested."""


class NotPrime(FieldError):
    """Modulus failed the primality check."""


def make_rng(seed: int) -> random.Random:
    """The package-wide deterministic PRNG (Mersenne Twister, 64-bit seed)."""
    return random.Random(seed & 0xFFFFFFFFFFFFFFFF)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin style probabilistic primality test (>= MR_ROUNDS rounds)."""
    if n < 2:
        return False
    return bool(gmpy2.is_prime(gmpy2.mpz(n), MR_ROUNDS))


class FieldContext:
    """The prime field F_p for an odd prime p >= 5. Immutable."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if p in (2, 3):
            raise NotPrime(f"characteristic {p} not supported")
        if p < 5 or not is_probable_prime(p):
            raise NotPrime(f"{p} is not an odd prime >= 5")
        object.__setattr__(self, "p", int(p))

    def __setattr__(self, *_):
        raise AttributeError("FieldContext is immutable")

    def __eq__(self, other):
        return isinstance(other, FieldContext) and self.p == other.p

    def __hash__(self):
        return hash(("FieldContext", self.p))

    def __repr__(self):
        return f"FieldContext({self.p})"

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def random_element(self, rng: random.Random) -> "FieldElement":
        return FieldElement(rng.randrange(self.p), self)


class FieldElement:
    """A canonical residue in [0, p). Immutable value object."""

    __slots__ = ("value", "ctx")

    def __init__(self, value: int, ctx: FieldContext):
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "ctx", ctx)

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx.p != self.ctx.p:
                raise MixedContext(f"moduli differ: {self.ctx.p} vs {other.ctx.p}")
            return other.value
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement((self.value + v) % self.ctx.p, self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement((self.value - v) % self.ctx.p, self.ctx)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement((v - self.value) % self.ctx.p, self.ctx)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * v % self.ctx.p, self.ctx)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.ctx.p, self.ctx)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise DivisionByZero("inverse of 0")
        return FieldElement(pow(self.value, -1, self.ctx.p), self.ctx)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.ctx.element(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(pow(self.value, e, self.ctx.p), self.ctx)

    def legendre(self) -> int:
        """1 for a nonzero square, 0 for zero, -1 for a nonsquare."""
        if self.value == 0:
            return 0
        s = pow(self.value, (self.ctx.p - 1) // 2, self.ctx.p)
        return 1 if s == 1 else -1

    def sqrt(self, rng: random.Random) -> "FieldElement":
        """A square root, via Tonelli-Shanks. Requires legendre() == 1 or value 0."""
        p = self.ctx.p
        a = self.value
        if a == 0:
            return self
        if self.legendre() != 1:
            raise FieldError("not a square")
        if p % 4 == 3:
            return FieldElement(pow(a, (p + 1) // 4, p), self.ctx)
        # Tonelli-Shanks.
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z = rng.randrange(2, p)
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return FieldElement(r, self.ctx)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx.p == other.ctx.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.value))

    def __repr__(self):
        return f"{self.value} (mod {self.ctx.p})"

    def __bool__(self):
        return self.value != 0


def legendre(a: FieldElement) -> int:
    return a.legendre()
