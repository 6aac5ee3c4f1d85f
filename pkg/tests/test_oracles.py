import math

import pytest

from conftest import jet_dev, rel_dev
from jetad import AlgebraError, Jet, NotInvertibleError, differentiate, invert, parse
from jetad.lift import EXP, LN, SIN, taylor_coeffs
from jetad.oracles import (
    FDConfig,
    central_difference,
    faa_di_bruno_derivs,
    finite_difference,
    invert_cramer,
    leibniz_derivs,
    poly_mul_oracle,
    relative_deviation,
)


def test_invert_cramer_examples():
    assert invert_cramer(Jet.constant(1, 3)) == Jet.constant(1, 3)
    assert jet_dev(invert_cramer(Jet((1, 1, 0, 0))), Jet((1, -1, 1, -1))) < 1e-15
    assert invert_cramer(Jet((2, 0))) == Jet((0.5, 0))
    with pytest.raises(NotInvertibleError):
        invert_cramer(Jet((0, 1)))


def test_invert_cramer_agrees_with_forward_substitution(rng):
    for _ in range(500):
        n = int(rng.integers(1, 9))
        a0 = float(rng.choice((-1, 1)) * rng.uniform(0.5, 5))
        x = Jet((a0,) + tuple(rng.uniform(-abs(a0), abs(a0), n)))
        assert jet_dev(invert_cramer(x), invert(x)) < 1e-10


def test_poly_mul_oracle_examples():
    assert poly_mul_oracle(Jet((1, 1)), Jet((1, 1))) == Jet((1, 2))
    assert poly_mul_oracle(Jet((1, 1, 0)), Jet((1, 1, 0))) == Jet((1, 2, 1))
    assert poly_mul_oracle(Jet.eps_power(2, 3), Jet.eps_power(2, 3)) == Jet.constant(0, 3)
    with pytest.raises(AlgebraError):
        poly_mul_oracle(Jet((1, 1)), Jet((1, 1, 1)))


def test_finite_difference_examples():
    assert abs(finite_difference(math.exp, 0.0, 1) - 1.0) < 1e-8
    assert abs(finite_difference(parse("x^2"), 3.0, 2) - 2.0) < 1e-6
    e = parse("ln(x)*cos(1/x^2)")
    d3 = differentiate(e, 2.0, 3).derivs[2]
    assert rel_dev(finite_difference(e, 2.0, 3), d3) < 1e-4
    exact = taylor_coeffs(SIN, 0.7, 4).derivs
    for i, tol in ((1, 1e-10), (2, 1e-8), (3, 1e-6)):
        assert rel_dev(finite_difference(math.sin, 0.7, i), exact[i]) < tol
    # round-off grows like u / h^4, so the fourth derivative wants a coarser step
    assert rel_dev(finite_difference(math.sin, 0.7, 4, FDConfig(h=2e-2)), exact[4]) < 1e-7


def test_finite_difference_rejects_bad_input():
    with pytest.raises(ValueError):
        finite_difference(math.exp, 0.0, 5)
    with pytest.raises(ValueError):
        FDConfig(h=0.0)
    with pytest.raises(ValueError):
        FDConfig(levels=0)


@pytest.mark.parametrize("fn, x", [(math.exp, 0.3), (math.sin, 1.1)])
@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_stencils_are_second_order(fn, x, i):
    exact = (taylor_coeffs(EXP, x, 4) if fn is math.exp else taylor_coeffs(SIN, x, 4)).derivs[i]
    errs = [abs(central_difference(fn, x, i, h) - exact) for h in (0.08, 0.04, 0.02)]
    for coarse, fine in zip(errs, errs[1:]):
        assert 3.5 < coarse / fine < 4.5


@pytest.mark.parametrize("fn, x", [(math.exp, 0.3), (math.sin, 1.1)])
def test_richardson_improves_the_rate(fn, x):
    exact = 1.0 * (math.exp(x) if fn is math.exp else math.cos(x))
    cfg = lambda h: FDConfig(h=h, levels=2, relative=False)
    errs = [abs(finite_difference(fn, x, 1, cfg(h)) - exact) for h in (0.1, 0.05)]
    assert 12 < errs[0] / errs[1] < 20
    plain = abs(finite_difference(fn, x, 1, FDConfig(h=0.05, levels=1, relative=False)) - exact)
    assert errs[1] < plain / 100


def test_leibniz_and_faa_di_bruno():
    # (x e^x)'' = (x + 2) e^x; ln(exp(x)) = x
    x = 0.4
    xid = taylor_coeffs(EXP, x, 4)
    ident = type(xid)(x, (x, 1.0, 0.0, 0.0, 0.0))
    prod = leibniz_derivs(ident, xid).derivs
    assert rel_dev(prod[2], (x + 2) * math.exp(x)) < 1e-15
    comp = faa_di_bruno_derivs(taylor_coeffs(LN, math.exp(x), 4), xid).derivs
    assert comp == pytest.approx((x, 1.0, 0.0, 0.0, 0.0), abs=1e-14)
    with pytest.raises(AlgebraError):
        faa_di_bruno_derivs(taylor_coeffs(LN, 1.0, 4), xid)


def test_relative_deviation():
    assert relative_deviation(1e-20, 0.0) == 1e-20
    assert relative_deviation(1e6, 1e6 + 1) == pytest.approx(1e-6, rel=1e-9)
    assert relative_deviation(-3.0, -3.0) == 0.0
