from hypothesis import given

from c2eff import checks, fastmul
from c2eff.e1 import E1Element
from test_e1 import basis


@given(basis)
def test_encode_round_trip(b):
    assert fastmul.decode(fastmul.encode(b)) == b


@given(basis, basis)
def test_matches_reference(x, y):
    assert E1Element(fastmul.product_terms(x, y)) == E1Element(dict(checks._raw_product(x, y)))


def test_small_box_agreement_and_associativity():
    assert checks.port_agreement_report(4, 6, samples=2000).ok
    rep = checks.e1_associativity_report(3, 6)
    assert rep.ok and rep.checked > 100_000
