"""Modular polynomial data files, parsing, and the j-invariant root filter."""

import os

import pytest

from permrat.field import FieldContext, make_rng
from permrat.modpoly import (
    BUNDLED_LEVELS,
    ENV_DATA_DIR,
    MissingData,
    ModPolyError,
    ModularPolynomial,
    ParseError,
    load,
    specialize_and_roots,
)

from conftest import CODOMAIN_JS, GOLDEN_ELL, GOLDEN_J


def test_all_bundled_levels_load():
    for ell in BUNDLED_LEVELS:
        phi = load(ell)
        assert phi.ell == ell
        assert phi.coefficient(ell + 1, 0) == 1


def test_missing_level():
    with pytest.raises(MissingData):
        load(101)


def test_known_phi5_coefficients():
    # classical values for Phi_5
    phi = load(5)
    assert phi.coefficient(6, 0) == 1
    assert phi.coefficient(5, 5) == -1
    assert phi.coefficient(0, 0) == 141359947154721358697753474691071362751004672000
    assert phi.coefficient(1, 0) == phi.coefficient(0, 1)  # symmetry


def test_phi_vanishes_on_isogenous_pair(golden_ctx):
    phi = load(GOLDEN_ELL)
    j1 = golden_ctx.element(GOLDEN_J)
    for j2 in CODOMAIN_JS:
        assert phi.evaluate(j1, golden_ctx.element(j2)).value == 0
        assert phi.evaluate(golden_ctx.element(j2), j1).value == 0  # symmetric


def test_specialize_and_roots_golden(golden_ctx):
    phi = load(GOLDEN_ELL)
    roots = specialize_and_roots(phi, golden_ctx.element(GOLDEN_J), make_rng(0))
    assert tuple(r.value for r in roots) == CODOMAIN_JS


def test_specialize_degree(golden_ctx):
    phi = load(7)
    f = phi.specialize(golden_ctx.element(3))
    assert f.degree == 8
    assert f.is_monic


def test_curves_related_by_phi_are_isogenous():
    # Phi_5(j(E), X) has a root iff E admits a rational 5-isogeny: check
    # consistency against the kernel search over a small field
    from permrat.ec import Curve, j_invariant
    from permrat.kernelsearch import algorithm1
    from permrat.isogeny import isogeny_from_kernel

    ctx = FieldContext(101)
    rng = make_rng(13)
    phi = load(5)
    hits = 0
    for _ in range(25):
        a, b = ctx.random_element(rng), ctx.random_element(rng)
        if (4 * a**3 + 27 * b**2).value == 0:
            continue
        E = Curve(a, b)
        roots = specialize_and_roots(phi, j_invariant(E), rng)
        for rec in algorithm1(E, 5, rng):
            iso = isogeny_from_kernel(E, rec)
            assert j_invariant(iso.codomain) in roots
            hits += 1
    assert hits > 0


def test_env_override(tmp_path, monkeypatch, golden_ctx):
    d = tmp_path / "mp"
    d.mkdir()
    # minimal fake Phi_5: X^6 + Y^6 - X^5 Y^5
    (d / "phi_5.txt").write_text("# fake\n6 0 1\n5 5 -1\n")
    monkeypatch.setenv(ENV_DATA_DIR, str(d))
    phi = load(5)
    assert phi.coefficient(0, 0) == 0
    with pytest.raises(MissingData):
        load(7)  # override dir is authoritative, no fallback to bundled


def test_parse_errors(tmp_path, monkeypatch):
    d = tmp_path / "mp"
    d.mkdir()
    monkeypatch.setenv(ENV_DATA_DIR, str(d))
    cases = [
        "6 0 1\n5 5\n",  # wrong arity
        "6 0 1\n1 2 3\n",  # unordered exponents
        "6 0 1\n6 0 2\n",  # duplicate
        "6 0 one\n",  # non-integer
        "5 5 -1\n",  # missing leading term
    ]
    for text in cases:
        (d / "phi_5.txt").write_text(text)
        with pytest.raises(ParseError):
            load(5)


def test_validation_rejects_bad_shapes():
    with pytest.raises(ModPolyError):
        ModularPolynomial(5, {(6, 0): 2})  # leading coeff not 1
    with pytest.raises(ModPolyError):
        ModularPolynomial(5, {(6, 0): 1, (7, 0): 3})  # exponent too big
