from fractions import Fraction

import pytest

from tropfw.errors import ParseError
from tropfw.rationals import format_rational, parse_rational


def test_parse_forms():
    assert parse_rational(3) == 3
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7/2") == Fraction(-7, 2)
    assert parse_rational("0.25") == Fraction(1, 4)  # exact, not via float
    assert parse_rational(" 2 ") == 2
    assert parse_rational(Fraction(5, 6)) == Fraction(5, 6)


def test_parse_rejections():
    with pytest.raises(ParseError):
        parse_rational(0.25)
    with pytest.raises(ParseError):
        parse_rational("1.2.3")
    with pytest.raises(ParseError):
        parse_rational("1/0")
    with pytest.raises(ParseError):
        parse_rational(None)


def test_format():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 9)) == "-1/3"
