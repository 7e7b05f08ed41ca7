from hypothesis import given, settings, strategies as st

from c2eff.coeff_f2 import NC, PC
from c2eff.coeff_z2 import NCEven, RhoTau, TauEven, ThetaOdd
from c2eff.e1 import (
    H1, RHO, TAU_H1, UNIT, V1_SQ, E1Element, HPart, ZPart, alternative_factorizations,
    atoms_product, e1_d1, e1_enumerate, e1_factorize, e1_multiply, leibniz_d1,
)
from c2eff.grading import TriDegree

E = E1Element.of

f2c = st.one_of(
    st.builds(PC, st.integers(0, 6), st.integers(0, 6)),
    st.builds(NC, st.integers(0, 6), st.integers(1, 6)),
)
z2g = st.one_of(
    st.builds(TauEven, st.integers(0, 4)),
    st.builds(ThetaOdd, st.integers(1, 4)),
    st.builds(RhoTau, st.integers(1, 5), st.integers(0, 4)),
    st.builds(NCEven, st.integers(0, 5), st.integers(1, 4)),
)
basis = st.one_of(
    st.builds(HPart, f2c, st.integers(1, 4), st.integers(0, 2)),
    st.builds(ZPart, z2g, st.integers(0, 2)),
)


def test_enumerate_examples():
    assert e1_enumerate(TriDegree(1, 1, 1)) == [HPart(PC(0, 0), 1, 0)]
    assert e1_enumerate(TriDegree(4, 2, 2)) == [ZPart(TauEven(0), 1)]
    assert e1_enumerate(TriDegree(0, 1, 0)) == [HPart(PC(0, 1), 1, 0)]


def test_multiply_examples():
    h1 = E(H1)
    assert E(TAU_H1) * E(TAU_H1) == E(HPart(PC(2, 0), 2, 0)) + E(ZPart(RhoTau(2, 0), 1))
    assert h1 * h1 == E(HPart(PC(0, 0), 2, 0))
    assert E(HPart(NC(4, 3), 1, 0)) * E(TAU_H1) == E(HPart(NC(4, 2), 2, 0)) + E(ZPart(NCEven(2, 2), 1))
    assert E(V1_SQ) * h1 == E(HPart(PC(0, 0), 1, 1))


def test_factorize_examples():
    assert [a.kind for a in e1_factorize(HPart(PC(3, 2), 2, 1))] == ["Rho", "Rho", "TauSq", "TauH1", "H1", "V1Sq"]
    f = e1_factorize(HPart(NC(2, 3), 1, 0))
    assert [a.kind for a in f] == ["Z", "TauH1"] and f[0].element == ZPart(NCEven(2, 2), 0)
    assert [a.kind for a in e1_factorize(ZPart(TauEven(2), 1))] == ["TauSq", "TauSq", "V1Sq"]


def test_d1_examples():
    assert e1_d1(ZPart(TauEven(1), 0)) == E(HPart(PC(1, 2), 1, 0))
    assert e1_d1(ZPart(TauEven(0), 1)) == E(HPart(PC(1, 0), 3, 0))
    assert e1_d1(ZPart(NCEven(2, 1), 0)) == E(HPart(NC(0, 3), 1, 0))
    assert e1_d1(HPart(NC(6, 1), 1, 0)) == E(HPart(NC(4, 2), 2, 0)) + E(ZPart(NCEven(2, 2), 1))
    assert e1_d1(HPart(PC(0, 1), 1, 0)).is_zero()


@given(basis)
def test_factorization_multiplies_back(b):
    assert atoms_product(tuple(e1_factorize(b))) == E(b)


@given(basis)
def test_d1_squares_to_zero(b):
    d = e1_d1(b)
    assert e1_d1(d).is_zero()
    for t in d.tridegrees():
        assert t == b.tridegree + TriDegree(-1, 1, 0)


@settings(max_examples=300)
@given(basis, basis)
def test_leibniz(x, y):
    lhs = e1_d1(E(x) * E(y))
    assert lhs == e1_d1(x) * E(y) + E(x) * e1_d1(y)


@settings(max_examples=300)
@given(basis, basis)
def test_commutative(x, y):
    assert E(x) * E(y) == E(y) * E(x)


@given(basis)
def test_unit(b):
    assert E(UNIT) * E(b) == E(b)


@given(basis)
def test_reduced_leibniz_matches_full_sum(b):
    # leibniz_d1 splits off even TauSq/V1Sq powers; the plain sum over all atoms agrees
    atoms = tuple(e1_factorize(b))
    full = E1Element()
    for n, a in enumerate(atoms):
        rest = atoms[:n] + atoms[n + 1:]
        full = full + e1_multiply(a.d1(), atoms_product(rest))
    assert leibniz_d1(atoms) == full


@given(st.builds(HPart, st.builds(NC, st.integers(0, 6), st.integers(1, 6)), st.integers(1, 4), st.integers(0, 2)))
def test_factorization_independence(b):
    for f in alternative_factorizations(b):
        assert atoms_product(tuple(f)) == E(b)
        assert leibniz_d1(f) == e1_d1(b)


def test_rho_and_h1_are_cycles():
    assert e1_d1(RHO).is_zero() and e1_d1(H1).is_zero()
