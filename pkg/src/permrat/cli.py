"""Command-line interface.

Subcommands: gen (produce permutation rational functions), kernels (list
kernel polynomials of a fixed curve), verify (check a function), trapdoor
(keygen / eval / invert / selftest over Z/NZ), and bench (timing and
kernel-reducibility densities over a parameter grid, as CSV plus a rendered
figure).

Exit codes: 0 success, 1 usage error, 2 unsatisfiable parameters or
iteration cap, 3 nontrivial factor surfaced, 4 corrupt key.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .ec import Curve, curve_from_j, j_invariant
from .field import FieldContext, FieldError, is_probable_prime, make_rng
from .generator import (
    GenRequest,
    GenStats,
    ScaleExceeded,
    Unsatisfiable,
    generate,
    verify_exhaustive,
    verify_fast,
    _square_root_of_denominator,
)
from .kernelsearch import algorithm1
from .poly import PolyError, Polynomial, RationalMap
from .trapdoor import (
    FactorFound,
    MultipleRoots,
    NoRoot,
    TrapdoorError,
    TrapdoorPrivateKey,
    TrapdoorPublicKey,
    eval_public,
    invert,
    keygen,
    keygen_with_primes,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNSATISFIABLE = 2
EXIT_FACTOR_FOUND = 3
EXIT_CORRUPT_KEY = 4

SCHEMA_VERSION = 1

PRIME_ALIASES = {
    "m127": 2**127 - 1,
    "m255": 2**255 - 19,
    "m511": 2**511 - 187,
    "m1023": 2**1023 - 361,
}


class UsageError(Exception):
    pass


def _parse_prime(text: str, name: str) -> int:
    value = PRIME_ALIASES.get(text)
    if value is None:
        try:
            value = int(text)
        except ValueError:
            raise UsageError(f"{name} must be a decimal integer or one of "
                             f"{', '.join(sorted(PRIME_ALIASES))}") from None
    if not is_probable_prime(value):
        raise UsageError(f"{name}={text} is not prime")
    return value


def _check_params(p: int, ell: int) -> None:
    if p < 5:
        raise UsageError(f"p={p} must be a prime >= 5")
    if ell < 5:
        raise UsageError(
            f"ell={ell} rejected: the no-pole condition forces ell >= 5"
        )
    if p == ell:
        raise UsageError("ell must differ from p")


def _parse_curve(text: str, ctx: FieldContext) -> Curve:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("--curve expects 'a,b'")
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError:
        raise UsageError("--curve coefficients must be integers") from None
    try:
        return Curve(ctx.element(a), ctx.element(b))
    except Exception as exc:
        raise UsageError(f"bad curve: {exc}") from None


def _parse_coeffs(text: str, ctx: FieldContext, name: str) -> Polynomial:
    try:
        coeffs = [int(c) for c in text.split(",")]
    except ValueError:
        raise UsageError(f"{name} must be comma-separated integers") from None
    return Polynomial(ctx, coeffs)


def _record(pf, p: int, ell: int) -> dict:
    prov = pf.provenance
    return {
        "schema": SCHEMA_VERSION,
        "p": str(p),
        "ell": str(ell),
        "j": str(prov.j.value),
        "curve": {"a": str(prov.curve.a.value), "b": str(prov.curve.b.value)},
        "kernel": {
            "d": prov.kernel.factor_degree,
            "coeffs": [str(c) for c in prov.kernel.kernel_poly.coeffs],
        },
        "num": [str(c) for c in pf.u.num.coeffs],
        "den": [str(c) for c in pf.u.den.coeffs],
    }


def _print_record(rec: dict, fmt: str, u: RationalMap, out) -> None:
    if fmt == "json":
        print(json.dumps(rec, sort_keys=True, separators=(",", ":")), file=out)
        return
    k = _square_root_of_denominator(u.den)
    den_txt = f"({k})^2" if k is not None else f"({u.den})"
    print(
        f"p={rec['p']} ell={rec['ell']} j={rec['j']} "
        f"curve=({rec['curve']['a']},{rec['curve']['b']}) "
        f"kernel_d={rec['kernel']['d']}",
        file=out,
    )
    print(f"  ({u.num}) / {den_txt}", file=out)


def cmd_gen(args) -> int:
    p = _parse_prime(args.p, "--p")
    try:
        ell = int(args.ell)
    except ValueError:
        raise UsageError("--ell must be an integer") from None
    if not is_probable_prime(ell):
        raise UsageError(f"ell={args.ell} is not prime")
    _check_params(p, ell)
    ctx = FieldContext(p)
    curve_override = None
    j_override = args.j
    if args.curve is not None:
        E = _parse_curve(args.curve, ctx)
        curve_override = (E.a.value, E.b.value)
        jv = j_invariant(E).value
        if j_override is not None and jv != j_override % p:
            raise UsageError("--j does not match the j-invariant of --curve")
        j_override = jv
    req = GenRequest(
        p=p,
        ell=ell,
        count=args.count,
        seed=args.seed,
        use_modpoly=not args.no_modpoly,
    )
    funcs = generate(req, j_override=j_override, curve_override=curve_override)
    for pf in funcs:
        _print_record(_record(pf, p, ell), args.format, pf.u, sys.stdout)
    return EXIT_OK


def cmd_kernels(args) -> int:
    p = _parse_prime(args.p, "--p")
    ell = int(args.ell)
    if not is_probable_prime(ell):
        raise UsageError(f"ell={args.ell} is not prime")
    _check_params(p, ell)
    ctx = FieldContext(p)
    if args.curve is None:
        raise UsageError("kernels requires --curve a,b")
    E = _parse_curve(args.curve, ctx)
    records = algorithm1(E, ell, make_rng(args.seed))
    out = [
        {
            "schema": SCHEMA_VERSION,
            "p": str(p),
            "ell": str(ell),
            "curve": {"a": str(E.a.value), "b": str(E.b.value)},
            "d": rec.factor_degree,
            "coeffs": [str(c) for c in rec.kernel_poly.coeffs],
            "factors": [[str(c) for c in f.coeffs] for f in rec.factors],
        }
        for rec in records
    ]
    print(json.dumps(out, sort_keys=True, separators=(",", ":")))
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _parse_prime(args.p, "--p")
    ell = int(args.ell)
    # verification accepts arbitrary candidate degrees, unlike generation
    if p < 5:
        raise UsageError(f"p={p} must be a prime >= 5")
    if ell < 1:
        raise UsageError("--ell must be positive")
    ctx = FieldContext(p)
    num = _parse_coeffs(args.num, ctx, "--num")
    den = _parse_coeffs(args.den, ctx, "--den")
    if den.is_zero:
        raise UsageError("--den must be nonzero")
    u = RationalMap(num, den)
    res = verify_fast(u, p, ell, make_rng(args.seed))
    if not res:
        print(f"FAIL {res.reason}")
        return EXIT_UNSATISFIABLE
    if args.exhaustive or args.ext > 1:
        try:
            ok = verify_exhaustive(u, p, args.ext)
        except ScaleExceeded as exc:
            raise UsageError(str(exc)) from None
        if not ok:
            print(f"FAIL NotBijective ext={args.ext}")
            return EXIT_UNSATISFIABLE
    print("PASS")
    return EXIT_OK


def _trapdoor_selftest() -> int:
    """Tiny-key exhaustive permutation and roundtrip check."""
    pk, sk = keygen_with_primes(11, 19, 5, seed=0)
    n = pk.N
    seen = set()
    for x in range(n):
        y = eval_public(pk, x)
        if y in seen:
            print(f"FAIL duplicate image at x={x}")
            return EXIT_CORRUPT_KEY
        seen.add(y)
        if invert(sk, y) != x:
            print(f"FAIL roundtrip at x={x}")
            return EXIT_CORRUPT_KEY
    if len(seen) != n:
        print("FAIL not surjective")
        return EXIT_CORRUPT_KEY
    print(f"PASS exhaustive permutation of Z/{n}Z")
    return EXIT_OK


def cmd_trapdoor(args) -> int:
    if args.selftest:
        return _trapdoor_selftest()
    if args.action is None:
        raise UsageError("trapdoor requires an action (keygen/eval/invert) "
                         "or --selftest")
    if args.action == "keygen":
        if args.bits is None or args.ell is None or args.out is None:
            raise UsageError("keygen requires --bits, --ell and --out")
        if not is_probable_prime(args.ell) or args.ell < 5:
            raise UsageError(f"ell={args.ell} must be a prime >= 5")
        pk, sk = keygen(args.bits, args.ell, args.seed)
        with open(args.out + ".pub.json", "w") as fh:
            fh.write(pk.to_json() + "\n")
        with open(args.out + ".priv.json", "w") as fh:
            fh.write(sk.to_json() + "\n")
        print(f"wrote {args.out}.pub.json and {args.out}.priv.json "
              f"(N has {pk.N.bit_length()} bits)")
        return EXIT_OK
    if args.action == "eval":
        if args.pub is None or args.x is None:
            raise UsageError("eval requires --pub and --x")
        with open(args.pub) as fh:
            try:
                pk = TrapdoorPublicKey.from_json(fh.read())
            except (TrapdoorError, ValueError, KeyError) as exc:
                raise UsageError(f"bad public key file: {exc}") from None
        print(eval_public(pk, args.x % pk.N))
        return EXIT_OK
    if args.action == "invert":
        if args.priv is None or args.y is None:
            raise UsageError("invert requires --priv and --y")
        with open(args.priv) as fh:
            try:
                sk = TrapdoorPrivateKey.from_json(fh.read())
            except (TrapdoorError, ValueError, KeyError) as exc:
                raise UsageError(
                    f"bad private key file (missing trapdoor?): {exc}"
                ) from None
        print(invert(sk, args.y % sk.N))
        return EXIT_OK
    raise UsageError(f"unknown trapdoor action {args.action!r}")


def cmd_bench(args) -> int:
    try:
        ells = [int(x) for x in args.ell_list.split(",")]
    except ValueError:
        raise UsageError("--ell-list must be comma-separated integers") from None
    primes = [_parse_prime(x, "--p-list entry") for x in args.p_list.split(",")]
    for ell in ells:
        if not is_probable_prime(ell) or ell < 5:
            raise UsageError(f"ell={ell} must be a prime >= 5")
    if args.trials < 1:
        raise UsageError("--trials must be positive")

    rows = []
    for p in primes:
        for ell in ells:
            _check_params(p, ell)
            # wall time of generate() only; data files load outside the clock
            stats = GenStats()
            elapsed = 0.0
            for i in range(args.trials):
                t0 = time.perf_counter()
                generate(
                    GenRequest(p=p, ell=ell, count=1, seed=args.seed + i),
                    stats=stats,
                )
                elapsed += time.perf_counter() - t0
            density = (
                stats.reducible_kernels / stats.kernels_found
                if stats.kernels_found
                else 0.0
            )
            rows.append(
                (ell, p.bit_length(), elapsed / args.trials, density, args.trials)
            )

    lines = ["ell,p_bits,mean_seconds,reducible_density,trials"]
    for ell, bits, mean_s, density, trials in rows:
        lines.append(f"{ell},{bits},{mean_s:.6f},{density:.4f},{trials}")
    csv_text = "\n".join(lines) + "\n"
    sys.stdout.write(csv_text)
    with open(args.out + ".csv", "w") as fh:
        fh.write(csv_text)
    _bench_figure(rows, args.out + ".png")
    print(f"wrote {args.out}.csv and {args.out}.png", file=sys.stderr)
    return EXIT_OK


def _bench_figure(rows, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    by_bits: dict[int, list] = {}
    for ell, bits, mean_s, density, _ in rows:
        by_bits.setdefault(bits, []).append((ell, mean_s, density))
    for bits, pts in sorted(by_bits.items()):
        pts.sort()
        ax1.plot([e for e, _, _ in pts], [s for _, s, _ in pts],
                 marker="o", label=f"{bits}-bit p")
        ax2.plot([e for e, _, _ in pts], [d for _, _, d in pts],
                 marker="s", label=f"{bits}-bit p")
    ax1.set_xlabel("ell")
    ax1.set_ylabel("mean seconds per function")
    ax1.set_yscale("log")
    ax1.set_title("generation time")
    ax1.legend()
    ax2.set_xlabel("ell")
    ax2.set_ylabel("reducible kernel density")
    ax2.set_ylim(-0.05, 1.05)
    ax2.set_title("kernel reducibility")
    ax2.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="permrat",
        description="Permutation rational functions over F_p from "
                    "elliptic-curve isogenies.",
    )
    sub = ap.add_subparsers(dest="command")

    g = sub.add_parser("gen", help="generate permutation rational functions")
    g.add_argument("--p", required=True, help="prime modulus (decimal or alias)")
    g.add_argument("--ell", required=True, help="prime degree >= 5")
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--no-modpoly", action="store_true",
                   help="skip the modular-polynomial candidate filter")
    g.add_argument("--j", type=int, default=None, help="pin the j-invariant")
    g.add_argument("--curve", default=None, help="pin the curve as 'a,b'")
    g.add_argument("--format", choices=("json", "text"), default="json")

    k = sub.add_parser("kernels", help="list kernel polynomials of a curve")
    k.add_argument("--p", required=True)
    k.add_argument("--ell", required=True)
    k.add_argument("--curve", required=True, help="curve as 'a,b'")
    k.add_argument("--seed", type=int, default=0)

    v = sub.add_parser("verify", help="verify a rational function")
    v.add_argument("--p", required=True)
    v.add_argument("--ell", type=int, required=True)
    v.add_argument("--num", required=True, help="ascending coefficients c0,c1,...")
    v.add_argument("--den", required=True, help="ascending coefficients c0,c1,...")
    v.add_argument("--exhaustive", action="store_true")
    v.add_argument("--ext", type=int, default=1,
                   help="check over the degree-t extension field")
    v.add_argument("--seed", type=int, default=0)

    t = sub.add_parser("trapdoor", help="trapdoor permutation of Z/NZ")
    t.add_argument("action", nargs="?", choices=("keygen", "eval", "invert"))
    t.add_argument("--selftest", action="store_true",
                   help="tiny-key exhaustive permutation check")
    t.add_argument("--bits", type=int, default=None, help="prime size for keygen")
    t.add_argument("--ell", type=int, default=None)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--out", default=None, help="key file prefix for keygen")
    t.add_argument("--pub", default=None, help="public key file")
    t.add_argument("--priv", default=None, help="private key file")
    t.add_argument("--x", type=int, default=None)
    t.add_argument("--y", type=int, default=None)

    b = sub.add_parser(
        "bench",
        help="grid benchmark; times generate() only (file loading excluded) "
             "and reports kernel reducibility density",
    )
    b.add_argument("--ell-list", required=True, help="e.g. 13,23,37,59")
    b.add_argument("--p-list", required=True,
                   help="decimal primes or aliases m127,m255,m511,m1023")
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", default="bench",
                   help="output prefix for the CSV and figure files")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handlers = {
        "gen": cmd_gen,
        "kernels": cmd_kernels,
        "verify": cmd_verify,
        "trapdoor": cmd_trapdoor,
        "bench": cmd_bench,
    }
    if args.command is None:
        ap.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FieldError, PolyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FactorFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FACTOR_FOUND
    except (NoRoot, MultipleRoots) as exc:
        print(f"error: corrupt key: {exc}", file=sys.stderr)
        return EXIT_CORRUPT_KEY
    except TrapdoorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Unsatisfiable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSATISFIABLE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
