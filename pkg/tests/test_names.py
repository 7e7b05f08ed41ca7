import pytest

from c2eff.coeff_f2 import NC
from c2eff.coeff_z2 import NCEven, TauEven, ThetaOdd
from c2eff.e1 import HPart, ZPart, e1_enumerate
from c2eff.grading import Window
from c2eff.names import ParseError, parse_element, parse_name, show_basis


def test_examples():
    assert parse_name("t^2", "z2") == TauEven(1)
    assert parse_name("g/(r^2 t^2)", "z2") == NCEven(2, 1)
    assert parse_name("g/(r^2 t^2)", "f2") == NC(2, 2)
    assert parse_name("g/t h1 v^2") == HPart(NC(0, 1), 1, 1)
    assert parse_name("g/t v^2") == ZPart(ThetaOdd(1), 1)


def test_round_trip_small_window():
    for t in Window.square(8, 10).tridegrees():
        for b in e1_enumerate(t):
            assert parse_name(show_basis(b)) == b


def test_errors_carry_position():
    with pytest.raises(ParseError) as e:
        parse_name("t^2 h1 v^3")
    assert e.value.pos is not None
    with pytest.raises(ParseError):
        parse_element("2*")
