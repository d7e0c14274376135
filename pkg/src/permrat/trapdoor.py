"""Factoring-based trapdoor permutation of Z/NZ.

Key generation picks two primes p != q, builds one degree-ell permutation
rational function over each, and combines numerators and denominators
coefficientwise with the Chinese Remainder Theorem into integer polynomials
r (monic, degree ell) and s (monic, degree ell-1) with coefficients in
(-N/2, N/2).  Public evaluation is x -> r(x) * s(x)^(-1) mod N; the
denominator is always invertible because its reductions mod p and mod q
have no roots.  Inversion reduces mod each prime, finds the unique rational
root of num - y*den, and recombines.

EXPERIMENTAL - NOT FOR PRODUCTION.  No security analysis is implied.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .field import FieldContext, is_probable_prime, make_rng
from .generator import GenRequest, Unsatisfiable, generate
from .poly import Polynomial, RationalMap, gcd_monic, roots_in_field


class TrapdoorError(Exception):
    pass


class FactorFound(TrapdoorError):
    """A nontrivial factor of N surfaced during evaluation — the key is
    corrupt, and the factor is security-relevant, so it is surfaced loudly."""

    def __init__(self, factor: int):
        super().__init__(f"nontrivial factor of the modulus: {factor}")
        self.factor = factor


class NoRoot(TrapdoorError):
    """Inversion found no preimage (corrupt key)."""


class MultipleRoots(TrapdoorError):
    """Inversion found several preimages (corrupt key)."""


@dataclass(frozen=True)
class TrapdoorPublicKey:
    N: int
    ell: int
    r: tuple[int, ...]  # ascending, centered in (-N/2, N/2), monic
    s: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": "public",
                "n": str(self.N),
                "ell": str(self.ell),
                "r": [str(c) for c in self.r],
                "s": [str(c) for c in self.s],
                "warning": "EXPERIMENTAL - NOT FOR PRODUCTION",
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "TrapdoorPublicKey":
        d = json.loads(text)
        if d.get("kind") != "public":
            raise TrapdoorError("not a public key file")
        return cls(
            int(d["n"]),
            int(d["ell"]),
            tuple(int(c) for c in d["r"]),
            tuple(int(c) for c in d["s"]),
        )


@dataclass(frozen=True)
class TrapdoorPrivateKey:
    p: int
    q: int
    ell: int
    u: RationalMap  # over F_p
    v: RationalMap  # over F_q

    @property
    def N(self) -> int:
        return self.p * self.q

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": "private",
                "n": str(self.N),
                "ell": str(self.ell),
                "p": str(self.p),
                "q": str(self.q),
                "u_num": [str(c) for c in self.u.num.coeffs],
                "u_den": [str(c) for c in self.u.den.coeffs],
                "v_num": [str(c) for c in self.v.num.coeffs],
                "v_den": [str(c) for c in self.v.den.coeffs],
                "warning": "EXPERIMENTAL - NOT FOR PRODUCTION",
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "TrapdoorPrivateKey":
        d = json.loads(text)
        if d.get("kind") != "private":
            raise TrapdoorError("not a private key file")
        p, q, ell = int(d["p"]), int(d["q"]), int(d["ell"])
        cp, cq = FieldContext(p), FieldContext(q)
        u = RationalMap(
            Polynomial(cp, [int(c) for c in d["u_num"]]),
            Polynomial(cp, [int(c) for c in d["u_den"]]),
        )
        v = RationalMap(
            Polynomial(cq, [int(c) for c in d["v_num"]]),
            Polynomial(cq, [int(c) for c in d["v_den"]]),
        )
        return cls(p, q, ell, u, v)


def _random_prime(bits: int, rng) -> int:
    while True:
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(cand):
            return cand


def _crt_coeffs(
    ap: tuple[int, ...], aq: tuple[int, ...], p: int, q: int, deg: int
) -> tuple[int, ...]:
    """Coefficientwise CRT into centered representatives of Z/NZ."""
    N = p * q
    q_inv = pow(q, -1, p)
    out = []
    for k in range(deg + 1):
        cp = ap[k] if k < len(ap) else 0
        cq = aq[k] if k < len(aq) else 0
        # x = cq + q * ((cp - cq) * q^-1 mod p)
        x = (cq + q * ((cp - cq) * q_inv % p)) % N
        if x > N // 2:
            x -= N
        out.append(x)
    return tuple(out)


def keygen(
    bits: int, ell: int, seed: int = 0
) -> tuple[TrapdoorPublicKey, TrapdoorPrivateKey]:
    """Generate a key with two distinct primes of the given bit size."""
    if bits < 4:
        raise TrapdoorError("bits too small")
    rng = make_rng(seed)
    while True:
        p = _random_prime(bits, rng)
        q = _random_prime(bits, rng)
        if p != q and p != ell and q != ell and p >= 5 and q >= 5:
            break
    return keygen_with_primes(p, q, ell, seed)


def keygen_with_primes(
    p: int, q: int, ell: int, seed: int = 0
) -> tuple[TrapdoorPublicKey, TrapdoorPrivateKey]:
    if p == q:
        raise TrapdoorError("primes must be distinct")
    if ell in (p, q):
        raise TrapdoorError("ell must differ from both primes")
    u = generate(GenRequest(p=p, ell=ell, count=1, seed=seed))[0].u
    v = generate(GenRequest(p=q, ell=ell, count=1, seed=seed + 1))[0].u
    sk = TrapdoorPrivateKey(p, q, ell, u, v)
    r = _crt_coeffs(u.num.coeffs, v.num.coeffs, p, q, ell)
    s = _crt_coeffs(u.den.coeffs, v.den.coeffs, p, q, ell - 1)
    pk = TrapdoorPublicKey(p * q, ell, r, s)
    return pk, sk


def _eval_int_poly(coeffs: tuple[int, ...], x: int, N: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % N
    return acc


def eval_public(pk: TrapdoorPublicKey, x: int) -> int:
    """r(x)/s(x) mod N; raises FactorFound on a corrupt key."""
    if not 0 <= x < pk.N:
        raise TrapdoorError("input out of range")
    sx = _eval_int_poly(pk.s, x, pk.N)
    g = math.gcd(sx, pk.N)
    if g != 1:
        raise FactorFound(g if g != pk.N else _split(pk, x))
    rx = _eval_int_poly(pk.r, x, pk.N)
    return rx * pow(sx, -1, pk.N) % pk.N


def _split(pk: TrapdoorPublicKey, x: int) -> int:
    # gcd(s(x), N) == N can only occur for dishonest keys; report N itself
    return pk.N


def _invert_one(umap: RationalMap, ybar: int, p: int) -> int:
    ctx = umap.ctx
    g = umap.num - ybar * umap.den
    roots = roots_in_field(g, make_rng(ybar ^ 0x5EED))
    if not roots:
        raise NoRoot(f"no preimage mod {p}")
    if len(roots) > 1:
        raise MultipleRoots(f"{len(roots)} preimages mod {p}")
    return roots[0].value


def invert(sk: TrapdoorPrivateKey, y: int) -> int:
    """The unique x with eval_public(pk, x) = y, via per-prime root finding."""
    if not 0 <= y < sk.N:
        raise TrapdoorError("input out of range")
    xp = _invert_one(sk.u, y % sk.p, sk.p)
    xq = _invert_one(sk.v, y % sk.q, sk.q)
    q_inv = pow(sk.q, -1, sk.p)
    return (xq + sk.q * ((xp - xq) * q_inv % sk.p)) % sk.N
