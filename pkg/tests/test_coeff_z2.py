from hypothesis import given, strategies as st

from c2eff.coeff_f2 import NC, PC, F2Element
from c2eff.coeff_z2 import (
    BocksteinClass, NCEven, RhoTau, TauEven, ThetaOdd, Z2Element, bockstein_d1, bockstein_einf,
    reduce_generator, z2_closed_form, z2_generator_at, z2_integral_bockstein, z2_multiply,
    z2_reduce, z2_verify_closed_form,
)
from c2eff.grading import BiDegree, Window

gen = st.one_of(
    st.builds(TauEven, st.integers(0, 8)),
    st.builds(ThetaOdd, st.integers(1, 8)),
    st.builds(RhoTau, st.integers(1, 8), st.integers(0, 8)),
    st.builds(NCEven, st.integers(0, 8), st.integers(1, 8)),
)
el = Z2Element.of


def test_bockstein_d1_examples():
    assert bockstein_d1(BocksteinClass(PC(3, 0))) == BocksteinClass(PC(2, 1), 1)
    assert bockstein_d1(BocksteinClass(NC(1, 1))) == BocksteinClass(NC(0, 2), 1)
    assert bockstein_d1(BocksteinClass(PC(2, 0))) is None
    assert bockstein_d1(BocksteinClass(NC(0, 3))) is None


def test_einf_examples():
    einf = bockstein_einf(Window.square(6))
    g = einf[BiDegree(0, -2)]
    assert g.generator == TauEven(1) and g.order is None
    g = einf[BiDegree(-1, -1)]
    assert g.generator == RhoTau(1, 0) and g.order == 2
    assert BiDegree(0, 1) not in einf
    assert einf[BiDegree(2, 5)].generator == NCEven(2, 1)
    assert z2_generator_at(2, 5) == NCEven(2, 1)
    assert z2_closed_form(0, 1) is None


def test_closed_form():
    assert z2_verify_closed_form(Window.square(20)) == []
    assert z2_verify_closed_form(Window.empty()) == []


def test_corrupted_d1_is_caught():
    def broken(x):
        return None
    assert z2_verify_closed_form(Window.square(4), broken)


def test_multiply_examples():
    assert z2_multiply(el(TauEven(1)), el(ThetaOdd(1))) == el(TauEven(0), 2)
    assert z2_multiply(el(ThetaOdd(1)), el(ThetaOdd(1))) == el(ThetaOdd(2), 2)
    assert z2_multiply(el(RhoTau(1, 0)), el(ThetaOdd(1))).is_zero()
    assert z2_multiply(el(TauEven(2)), el(TauEven(3))) == el(TauEven(5))


def test_reduce_and_bockstein_examples():
    assert z2_reduce(el(TauEven(1))) == F2Element.of(PC(2, 0))
    assert z2_reduce(el(TauEven(1), 2)).is_zero()
    assert reduce_generator(ThetaOdd(2)) == NC(0, 3)
    assert z2_integral_bockstein(PC(1, 1)) == el(RhoTau(2, 0))
    assert z2_integral_bockstein(PC(0, 1)).is_zero()
    assert z2_integral_bockstein(NC(2, 3)) == el(NCEven(1, 2))


@given(gen, gen)
def test_commutative_and_graded(x, y):
    p = z2_multiply(el(x), el(y))
    assert p == z2_multiply(el(y), el(x))
    for g, _ in p.items():
        assert g.degree == x.degree + y.degree


@given(gen, gen, gen)
def test_associative(x, y, z):
    X, Y, Z = el(x), el(y), el(z)
    assert z2_multiply(z2_multiply(X, Y), Z) == z2_multiply(X, z2_multiply(Y, Z))


def test_theta_powers():
    # (g/t)^n = 2^(n-1) g/t^(2n-1)
    x = el(ThetaOdd(1))
    acc = x
    for n in range(2, 5):
        acc = z2_multiply(acc, x)
        assert acc == el(ThetaOdd(n), 2 ** (n - 1))
