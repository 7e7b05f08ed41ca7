from hypothesis import given, strategies as st

from c2eff.coeff_f2 import (
    NC, PC, F2Element, f2_enumerate, f2_group_at, f2_multiply, f2_sq1, f2_sq1_element, mono_mul,
)
from c2eff.grading import BiDegree, Window

pc = st.builds(PC, st.integers(0, 12), st.integers(0, 12))
nc = st.builds(NC, st.integers(0, 12), st.integers(1, 12))
mono = st.one_of(pc, nc)


def test_group_at_examples():
    assert f2_group_at(0, 0) == PC(0, 0)
    assert f2_group_at(0, -1) == PC(1, 0)
    assert f2_group_at(0, 1) is None
    assert f2_group_at(1, 4) == NC(1, 2)


def test_multiply_examples():
    assert mono_mul(NC(1, 2), PC(1, 1)) == NC(0, 1)
    assert mono_mul(NC(0, 2), PC(2, 0)) is None
    assert mono_mul(NC(0, 1), NC(0, 1)) is None
    assert mono_mul(PC(1, 0), PC(0, 1)) == PC(1, 1)


def test_sq1_examples():
    assert f2_sq1(PC(1, 0)) == F2Element.of(PC(0, 1))
    assert f2_sq1(PC(0, 1)).is_zero()
    assert f2_sq1(NC(2, 3)) == F2Element.of(NC(1, 4))
    assert f2_sq1(NC(0, 3)).is_zero()


def test_enumerate():
    got = f2_enumerate(Window(0, 0, -2, 2))
    assert [m for _, m in got] == [PC(2, 0), PC(1, 0), PC(0, 0), NC(0, 1)]
    assert f2_enumerate(Window.empty()) == []
    assert sorted((d.s, d.w) for d, _ in f2_enumerate(Window.square(1))) == [(-1, -1), (0, -1), (0, 0)]


@given(mono)
def test_group_at_inverts_degree(x):
    d = x.degree
    assert f2_group_at(d.s, d.w) == x


@given(mono, mono)
def test_product_degree_and_commutativity(x, y):
    p = mono_mul(x, y)
    assert p == mono_mul(y, x)
    if p is not None:
        assert p.degree == x.degree + y.degree


@given(mono, mono, mono)
def test_associative(x, y, z):
    xy = mono_mul(x, y)
    yz = mono_mul(y, z)
    assert (None if xy is None else mono_mul(xy, z)) == (None if yz is None else mono_mul(x, yz))


@given(mono, mono)
def test_sq1_derivation(x, y):
    lhs = f2_sq1_element(f2_multiply(x, y))
    rhs = f2_sq1(x) * F2Element.of(y) + F2Element.of(x) * f2_sq1(y)
    assert lhs == rhs


@given(mono)
def test_sq1_squares_to_zero_and_degree(x):
    s = f2_sq1(x)
    assert f2_sq1_element(s).is_zero()
    for m in s:
        assert m.degree == x.degree + BiDegree(-1, 0)
