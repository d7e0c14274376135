#!/usr/bin/env python3
"""Generate the bundled classical modular polynomial data files.

Computes Phi_ell(X, Y) over Z for a list of primes ell by CRT over many
word-size primes. Per prime p, everything is done with q-expansions in
F_p[[q]]:

  * the j-series comes from E4^3 / eta^24 (pentagonal-number product,
    Newton inversion);
  * the power sums of the ell conjugates j((tau+i)/ell) are read off from
    the powers j^k by keeping only exponents divisible by ell (summing a
    primitive ell-th root of unity over a full period kills the rest), so
    no root of unity is ever materialized;
  * Newton's identities give the elementary symmetric functions, the
    j(ell*tau) root is multiplied back in, and each X-coefficient is
    rewritten as a polynomial in j by peeling off its principal part.

The reconstruction modulus is sized by the Broker-Sutherland height bound
6 ell ln ell + 16 ell + 14 sqrt(ell) ln ell, plus margin, and the result is
verified against one extra held-out prime, the symmetry Phi(X,Y)=Phi(Y,X),
and the Kronecker congruence Phi_ell = (X^ell - Y)(X - Y^ell) mod ell.

Series products use Kronecker substitution (pack coefficients into one big
integer, multiply with GMP, unpack).

Usage:
    python3 scripts/build_modpoly_data.py --out src/permrat/data 5 7 11 ...
    python3 scripts/build_modpoly_data.py --selftest
"""

import argparse
import math
import time
from pathlib import Path

from gmpy2 import is_prime, mpz


# ---------------------------------------------------------------------------
# Kronecker-substitution series multiplication mod p.


def kron_mul_mod(a, b, p, out_len):
    """Truncated product of two coefficient lists with entries in [0, p)."""
    a = a[:out_len]
    b = b[:out_len]
    if not a or not b:
        return []
    w = 2 * p.bit_length() + min(len(a), len(b)).bit_length() + 1
    w = (w + 7) & ~7
    wbytes = w // 8
    bufa = bytearray(wbytes * len(a))
    for i, c in enumerate(a):
        bufa[i * wbytes : i * wbytes + wbytes] = int(c).to_bytes(wbytes, "little")
    bufb = bytearray(wbytes * len(b))
    for i, c in enumerate(b):
        bufb[i * wbytes : i * wbytes + wbytes] = int(c).to_bytes(wbytes, "little")
    prod = mpz(int.from_bytes(bytes(bufa), "little")) * mpz(
        int.from_bytes(bytes(bufb), "little")
    )
    n = min(len(a) + len(b) - 1, out_len)
    raw = int(prod).to_bytes(wbytes * (len(a) + len(b)), "little")
    return [
        int.from_bytes(raw[i * wbytes : (i + 1) * wbytes], "little") % p
        for i in range(n)
    ]


def series_inv_mod(a, p, n):
    """Inverse of a power series with a[0] = 1, to n terms."""
    assert a[0] == 1
    inv = [1]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        t = kron_mul_mod(a, inv, p, prec)
        t = [(-c) % p for c in t]
        t[0] = (t[0] + 2) % p
        inv = kron_mul_mod(inv, t, p, prec)
    return inv


# ---------------------------------------------------------------------------
# Integer building blocks shared across primes.

_SIG3 = []
_PENT = []


def _extend_tables(n):
    global _SIG3, _PENT
    if len(_SIG3) >= n:
        return
    sig3 = [0] * n
    for d in range(1, n):
        d3 = d * d * d
        for m in range(d, n, d):
            sig3[m] += d3
    pent = [0] * n
    k = 0
    while True:
        hit = False
        for kk in (k, -k) if k else (0,):
            e = kk * (3 * kk - 1) // 2
            if e < n:
                pent[e] += -1 if kk % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    _SIG3, _PENT = sig3, pent


def j_series_mod(p, n):
    """j(q) mod p as a coefficient list where index i holds the q^{i-1} term."""
    _extend_tables(n)
    e4 = [(240 * c) % p for c in _SIG3[:n]]
    e4[0] = 1
    eta = [c % p for c in _PENT[:n]]
    e2 = kron_mul_mod(eta, eta, p, n)
    e4p = kron_mul_mod(e2, e2, p, n)
    e8 = kron_mul_mod(e4p, e4p, p, n)
    e16 = kron_mul_mod(e8, e8, p, n)
    eta24 = kron_mul_mod(e16, e8, p, n)
    num = kron_mul_mod(kron_mul_mod(e4, e4, p, n), e4, p, n)
    jq = kron_mul_mod(num, series_inv_mod(eta24, p, n), p, n)
    assert jq[0] == 1 and jq[1] == 744 % p and jq[2] == 196884 % p
    return jq


# ---------------------------------------------------------------------------
# Per-prime modular polynomial.


def modular_polynomial_mod(ell, p):
    """Phi_ell mod p as {(xdeg, ydeg): residue} with all terms present."""
    hi_e = ell + 2  # q-precision carried for the symmetric functions
    hi_p = ell + 3  # q-precision of the power sums
    wmax = ell * hi_p + 2
    jq = j_series_mod(p, wmax + 2)  # jq[i] = coeff of q^(i-1)

    # Powers j^k for k = 1..ell+1 (as w-series; index i = exponent i-k).
    jpow = [None, jq]
    for k in range(2, ell + 2):
        jpow.append(kron_mul_mod(jpow[k - 1], jq, p, wmax + 2))

    # Power sums of the ell conjugates, as q-series on [-1, hi_p]
    # (index i = exponent i-1 throughout the small windows below).
    psums = [None]
    for k in range(1, ell + 1):
        acc = [0] * (hi_p + 2)
        row = jpow[k]
        for m in range(-(k // ell), hi_p + 1):
            e = ell * m + k  # index into row for exponent ell*m
            if 0 <= e < len(row):
                acc[m + 1] = ell * row[e] % p
        psums.append(acc)

    # Newton's identities for the inner product over the ell conjugates.
    esym = [[0, 1] + [0] * hi_e]  # e_0 = 1, on the same [-1, ..] indexing
    for k in range(1, ell + 1):
        acc = [0] * (hi_e + 2)
        for i in range(1, k + 1):
            prod = kron_mul_mod(esym[k - i], psums[i], p, hi_e + 4)
            sign = 1 if i % 2 else -1
            for idx in range(hi_e + 2):
                acc[idx] = (acc[idx] + sign * prod[idx + 1]) % p
        kinv = pow(k, -1, p)
        esym.append([c * kinv % p for c in acc])

    # Multiply in the (X - j(ell*tau)) factor: coefficient of X^{ell+1-k} is
    # (-1)^k * (e_k + j(q^ell) * e_{k-1}).  Rows live on [-(ell+1), 1].
    def ecoeff(k, e):
        if 0 <= k <= ell and -1 <= e <= hi_e:
            return esym[k][e + 1]
        return 0

    rows = []
    for k in range(0, ell + 2):
        acc = [0] * (ell + 3)
        for e in range(-(ell + 1), 2):
            s = ecoeff(k, e)
            for m in range(-1, 2):
                s += jq[m + 1] * ecoeff(k - 1, e - ell * m)
            acc[e + ell + 1] = s % p
        rows.append(acc)

    # Peel each row into a polynomial in j.
    phi = {}
    for k in range(0, ell + 2):
        s = list(rows[k])  # window [-(ell+1), 1]
        sign = 1 if k % 2 == 0 else -1
        for m in range(ell + 1, 0, -1):
            c = s[-m + ell + 1]
            if c:
                row = jpow[m]  # index i = exponent i-m
                for e in range(-m, 2):
                    s[e + ell + 1] = (s[e + ell + 1] - c * row[e + m]) % p
                phi[(ell + 1 - k, m)] = sign * c % p
        c0 = s[ell + 1]
        if c0:
            phi[(ell + 1 - k, 0)] = sign * c0 % p
            s[ell + 1] = 0
        assert all(c == 0 for c in s), f"residual series: ell={ell}, p={p}, k={k}"
    assert phi[(ell + 1, 0)] == 1 % p
    return phi


# ---------------------------------------------------------------------------
# CRT reconstruction.


def height_bound_bits(ell):
    lnl = math.log(ell)
    nats = 6 * ell * lnl + 16 * ell + 14 * math.sqrt(ell) * lnl
    return int(nats / math.log(2)) + 64


def primes_for(ell, bits):
    """Deterministic list of ~62-bit primes (reconstruction set + 1 checker)."""
    out = []
    total = 0
    c = (1 << 62) - 1
    while total < bits or len(out) < 2:
        while not is_prime(c):
            c -= 2
        out.append(c)
        total += c.bit_length()
        c -= 2
    while not is_prime(c):
        c -= 2
    out.append(c)  # held-out verification prime
    return out


def modular_polynomial(ell, verbose=True):
    t0 = time.time()
    primes = primes_for(ell, height_bound_bits(ell))
    check_p = primes[-1]
    primes = primes[:-1]
    residues = []
    for idx, p in enumerate(primes):
        residues.append(modular_polynomial_mod(ell, p))
        if verbose and (idx + 1) % 10 == 0:
            print(
                f"[ell={ell}] {idx + 1}/{len(primes)} primes ({time.time()-t0:.1f}s)",
                flush=True,
            )
    keys = set()
    for r in residues:
        keys |= set(r)

    # Incremental CRT (Garner) per coefficient.
    modulus = mpz(1)
    for p in primes:
        modulus *= p
    phi = {}
    for key in keys:
        x = mpz(0)
        m = mpz(1)
        for p, r in zip(primes, residues):
            t = (r.get(key, 0) - x) * pow(m, -1, p) % p
            x += m * t
            m *= p
        if 2 * x > modulus:
            x -= modulus
        phi[key] = int(x)

    check = modular_polynomial_mod(ell, check_p)
    for key in keys | set(check):
        assert phi.get(key, 0) % check_p == check.get(key, 0), (
            f"CRT verification failed at ell={ell}, term {key}"
        )

    sym = {}
    for (i, j), c in phi.items():
        if i < j:
            assert phi.get((j, i)) == c, f"asymmetry at ell={ell}, ({i},{j})"
        else:
            assert phi.get((j, i), c if i == j else None) == c
            sym[(i, j)] = c
    _check_kronecker_congruence(ell, phi)
    if verbose:
        print(
            f"[ell={ell}] done: {len(sym)} stored terms, "
            f"{len(primes)} primes ({time.time()-t0:.1f}s)",
            flush=True,
        )
    return sym


def _check_kronecker_congruence(ell, phi):
    """Phi_ell = (X^ell - Y)(X - Y^ell) mod ell."""
    expect = {(ell + 1, 0): 1, (ell, ell): -1, (1, 1): -1, (0, ell + 1): 1}
    for key in set(phi) | set(expect):
        assert (phi.get(key, 0) - expect.get(key, 0)) % ell == 0, (
            f"Kronecker congruence fails at ell={ell}, term {key}"
        )


def write_file(sym, ell, path):
    lines = [
        f"# classical modular polynomial, level {ell}",
        "# format: i j c  (i >= j, symmetric terms stored once)",
    ]
    for i, j in sorted(sym, reverse=True):
        lines.append(f"{i} {j} {sym[(i, j)]}")
    path.write_text("\n".join(lines) + "\n")


PHI2_KNOWN = {
    (3, 0): 1,
    (2, 2): -1,
    (2, 1): 1488,
    (2, 0): -162000,
    (1, 1): 40773375,
    (1, 0): 8748000000,
    (0, 0): -157464000000000,
}


def selftest():
    sym = modular_polynomial(2, verbose=False)
    assert sym == PHI2_KNOWN, f"Phi_2 mismatch: {sym}"
    sym5 = modular_polynomial(5, verbose=False)
    assert sym5[(6, 0)] == 1 and sym5[(5, 5)] == -1 and sym5[(5, 4)] == 3720
    assert sym5[(5, 0)] == 1963211489280
    print("selftest ok")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("levels", nargs="*", type=int)
    ap.add_argument("--out", default="src/permrat/data")
    ap.add_argument("--selftest", action="store_true")
    args = ap.parse_args()
    if args.selftest:
        selftest()
        return
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for ell in args.levels:
        sym = modular_polynomial(ell)
        write_file(sym, ell, out / f"phi_{ell}.txt")


if __name__ == "__main__":
    main()
