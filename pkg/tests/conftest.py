"""Shared fixtures: the fixed worked example over F_97 used as golden data.

The example: p = 97, ell = 13, j = 60, curve y^2 = x^3 + 25x + 58.  The
monic 13-division polynomial factors into two cubics f1, f2, one sextic f3,
and six irreducible degree-12 factors.  Exactly two kernel polynomials pass
the quadratic-extension condition: f3 itself and the product f1*f2.  The
resulting x-coordinate maps have the fixed degree-13 numerators below over
the squared kernel polynomials, and the two codomain j-invariants are 5 and
53, the roots of Phi_13(X, 60) over F_97.
"""

import pytest

from permrat.ec import Curve
from permrat.field import FieldContext

GOLDEN_P = 97
GOLDEN_ELL = 13
GOLDEN_J = 60
GOLDEN_A = 25
GOLDEN_B = 58

# ascending coefficients
F1 = (59, 60, 88, 1)
F2 = (57, 14, 91, 1)
F3 = (31, 11, 88, 73, 17, 36, 1)
F1F2 = (65, 75, 70, 18, 31, 82, 1)

# numerator over f3^2 (the d = 6 kernel)
NUM_F3 = (53, 48, 49, 17, 66, 4, 94, 91, 15, 2, 72, 84, 72, 1)
# numerator over (f1*f2)^2 (the d = 3 kernel)
NUM_F1F2 = (7, 38, 41, 7, 88, 75, 80, 49, 50, 83, 61, 13, 67, 1)

CODOMAIN_JS = (5, 53)
OMEGA = 2
TAU_D3 = 4
TAU_D6 = 2


@pytest.fixture(scope="session")
def golden_ctx():
    return FieldContext(GOLDEN_P)


@pytest.fixture(scope="session")
def golden_curve(golden_ctx):
    return Curve(golden_ctx.element(GOLDEN_A), golden_ctx.element(GOLDEN_B))
