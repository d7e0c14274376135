"""Bundled classical modular polynomials and the root filter used to decide
whether a j-invariant admits a rational prime-degree isogeny.

Data files live under data/ (one per level, "phi_<ell>.txt"), overridable
with the PERMRAT_MODPOLY_DIR environment variable.  Format: '#' comment
lines, then one term per line as "i j c" with i >= j; the symmetric term is
implied.  Coefficients are exact integers and are only reduced mod p at
specialization time.
"""

from __future__ import annotations

import os
import random
from importlib import resources

from .field import FieldContext, FieldElement
from .poly import Polynomial, roots_in_field

ENV_DATA_DIR = "PERMRAT_MODPOLY_DIR"

BUNDLED_LEVELS = (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59)


class ModPolyError(Exception):
    pass


class MissingData(ModPolyError):
    """No data file for the requested level."""


class ParseError(ModPolyError):
    def __init__(self, path: str, line_no: int, msg: str):
        super().__init__(f"{path}:{line_no}: {msg}")
        self.line_no = line_no


class ModularPolynomial:
    """Symmetric bivariate polynomial of degree ell+1 in each variable,
    stored as {(i, j): c} with i >= j."""

    __slots__ = ("ell", "coeffs")

    def __init__(self, ell: int, coeffs: dict[tuple[int, int], int]):
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "coeffs", dict(coeffs))
        self._validate()

    def __setattr__(self, *_):
        raise AttributeError("ModularPolynomial is immutable")

    def _validate(self):
        d = self.ell + 1
        if self.coeffs.get((d, 0)) != 1:
            raise ModPolyError(f"leading coefficient X^{d} is not 1")
        for (i, j), c in self.coeffs.items():
            if not (d >= i >= j >= 0):
                raise ModPolyError(f"bad exponent pair ({i}, {j})")
        if max(i for i, _ in self.coeffs) != d:
            raise ModPolyError("degree mismatch")

    def coefficient(self, i: int, j: int) -> int:
        """Coefficient of X^i Y^j (symmetric lookup)."""
        if i < j:
            i, j = j, i
        return self.coeffs.get((i, j), 0)

    def specialize(self, j: FieldElement) -> Polynomial:
        """Phi_ell(X, j) over the field of j."""
        ctx = j.ctx
        p = ctx.p
        jv = j.value
        jpow = [1]
        for _ in range(self.ell + 1):
            jpow.append(jpow[-1] * jv % p)
        out = [0] * (self.ell + 2)
        for (i, k), c in self.coeffs.items():
            out[i] = (out[i] + c * jpow[k]) % p
            if i != k:
                out[k] = (out[k] + c * jpow[i]) % p
        return Polynomial(ctx, out)

    def evaluate(self, j1: FieldElement, j2: FieldElement) -> FieldElement:
        return self.specialize(j1)(j2)


def data_dir() -> str | None:
    return os.environ.get(ENV_DATA_DIR)


def load(ell: int) -> ModularPolynomial:
    """Load Phi_ell from the override directory or the bundled data."""
    name = f"phi_{ell}.txt"
    override = data_dir()
    if override is not None:
        path = os.path.join(override, name)
        if not os.path.exists(path):
            raise MissingData(f"no data for ell={ell} in {override}")
        with open(path) as fh:
            return _parse(fh.read(), path, ell)
    try:
        text = resources.files("permrat").joinpath("data").joinpath(name).read_text()
    except FileNotFoundError:
        raise MissingData(f"no bundled data for ell={ell}") from None
    return _parse(text, name, ell)


def _parse(text: str, path: str, ell: int) -> ModularPolynomial:
    coeffs: dict[tuple[int, int], int] = {}
    for line_no, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(path, line_no, f"expected 'i j c', got {line!r}")
        try:
            i, j, c = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(path, line_no, "non-integer field") from None
        if i < j:
            raise ParseError(path, line_no, f"exponents not ordered: {i} < {j}")
        if (i, j) in coeffs:
            raise ParseError(path, line_no, f"duplicate term ({i}, {j})")
        coeffs[(i, j)] = c
    try:
        return ModularPolynomial(ell, coeffs)
    except ModPolyError as exc:
        raise ParseError(path, 0, str(exc)) from None


def specialize_and_roots(
    phi: ModularPolynomial, j: FieldElement, rng: random.Random
) -> list[FieldElement]:
    """All roots of Phi_ell(X, j) in the base field, sorted."""
    return roots_in_field(phi.specialize(j), rng)
