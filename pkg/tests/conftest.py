import math
import sys

import numpy as np
import pytest

from jetad import Jet
from jetad.lift import ARCTAN, COS, EXP, LN, RECIP, SIN, pow_int, pow_real

# (expression, point); every point sits well inside the expression's domain
CORPUS = [
    ("ln(x)*cos(1/x^2)", 2.0),
    ("exp(x)", 0.5),
    ("sin(x)", 1.0),
    ("cos(x)", 0.3),
    ("ln(x)", 1.5),
    ("arctan(x)", 0.7),
    ("1/x", 1.2),
    ("x^2", 3.0),
    ("x^5 - 3*x^3 + x", -1.1),
    ("sqrt(x)", 2.0),
    ("x^2.5", 1.3),
    ("exp(sin(x))", 0.4),
    ("sin(x)*cos(x)", 0.8),
    ("ln(1 + x^2)", 0.6),
    ("arctan(x^2)", 0.9),
    ("exp(-x^2)", 0.5),
    ("x*exp(x)", -0.5),
    ("sin(x)/x", 1.7),
    ("cos(exp(x))", 0.2),
    ("ln(x)^3", 2.5),
    ("1/(1 + x^2)", -0.4),
    ("x^-2 + sqrt(x)", 1.1),
    ("arctan(ln(x))", 2.0),
    ("exp(x)*sin(2*x) - x^3/6", 0.9),
    ("(x - 1)^4 / (2 + cos(x))", 1.4),
]

ELEMENTARY = [EXP, SIN, COS, LN, ARCTAN, RECIP, pow_int(2), pow_int(3), pow_int(-2),
              pow_real(0.5), pow_real(1.5), pow_real(-0.7)]


def in_domain(f, x):
    if f.kind in ("ln", "powreal"):
        return x > 0.05
    if f.kind == "recip" or (f.kind == "powint" and f.exponent < 0):
        return abs(x) > 0.05
    return True


def worked_example_derivs(x):
    """f', f'', f''' of ln(x) cos(1/x^2), transcribed from the hand expansion."""
    L, c, s = math.log(x), math.cos(1 / x**2), math.sin(1 / x**2)
    d1 = 2 / x**3 * L * s + c / x
    d2 = -4 / x**6 * L * c - 6 / x**4 * L * s + 4 / x**4 * s - c / x**2
    d3 = (-8 / x**9 * L * s + 36 / x**7 * L * c + 24 / x**5 * L * s
          - 12 / x**7 * c - 24 / x**5 * s + 2 / x**3 * c)
    return d1, d2, d3


def worked_example_coeffs_unit(x):
    """Jet coefficients (f, y1, y2, y3) of ln(x) cos(1/x^2) at x + e."""
    L, c, s = math.log(x), math.cos(1 / x**2), math.sin(1 / x**2)
    y1 = L * 2 / x**3 * s + c / x
    y2 = -2 / x**6 * L * c - 3 / x**4 * L * s + 2 / x**4 * s - c / (2 * x**2)
    y3 = (-4 / (3 * x**9) * L * s + 6 / x**7 * L * c + 4 / x**5 * L * s
          - 2 / x**7 * c - 4 / x**5 * s + c / (3 * x**3))
    return L * c, y1, y2, y3


def worked_example_coeffs_ones(x):
    """Jet coefficients (f, y1, y2, y3) of ln(x) cos(1/x^2) at x + e + e^2 + e^3."""
    L, c, s = math.log(x), math.cos(1 / x**2), math.sin(1 / x**2)
    y1 = 2 / x**3 * L * s + c / x
    y2 = (-2 / x**6 * L * c + (2 / x**3 - 3 / x**4) * L * s + 2 / x**4 * s
          + (-1 / (2 * x**2) + 1 / x) * c)
    y3 = (-4 / (3 * x**9) * L * s + (6 / x**7 - 4 / x**6) * L * c
          + (4 / x**5 - 6 / x**4 + 2 / x**3) * L * s - 2 / x**7 * c
          + (2 / x**4 - 3 / x**5) * s + (-1 / x**5 + 2 / x**4) * s
          + (1 / (3 * x**3) - 1 / x**2 + 1 / x) * c)
    return L * c, y1, y2, y3


def rel_dev(a, b):
    return abs(a - b) / max(1.0, abs(a), abs(b))


def jet_dev(x, y):
    """Largest coefficient difference, relative to the largest coefficient (floor 1)."""
    xs, ys = list(x), list(y)
    assert len(xs) == len(ys)
    scale = max([1.0] + [abs(v) for v in xs + ys])
    return max(abs(a - b) for a, b in zip(xs, ys)) / scale


def random_jet(rng, order, lo=-10.0, hi=10.0):
    return Jet(tuple(rng.uniform(lo, hi, order + 1)))


def random_invertible(rng, order):
    """Jet with |a0| in [0.5, 10] and nilpotent part no larger than |a0|."""
    a0 = rng.choice((-1.0, 1.0)) * rng.uniform(0.5, 10.0)
    rest = rng.uniform(-abs(a0), abs(a0), order)
    return Jet((float(a0),) + tuple(rest))


def random_theta(rng, order):
    t1 = rng.choice((-1.0, 1.0)) * rng.uniform(0.5, 2.0)
    return (float(t1),) + tuple(float(t) for t in rng.uniform(-1.0, 1.0, order - 1))


@pytest.fixture
def rng():
    return np.random.default_rng(20200601)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
