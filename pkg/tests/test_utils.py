from fractions import Fraction

import pytest

from realchip import errors
from realchip.utils import compositions, count_compositions, format_rational, lcm_of_denominators, parse_rational


def test_compositions():
    assert list(compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert list(compositions(0, 3)) == [(0, 0, 0)]
    assert list(compositions(3, 1)) == [(3,)]
    assert list(compositions(0, 0)) == [()]
    assert list(compositions(1, 0)) == []
    assert len(list(compositions(4, 3))) == count_compositions(4, 3) == 15
    assert list(compositions(-1, 2)) == []


def test_compositions_with_many_parts():
    spread = list(compositions(1, 2000))
    assert len(spread) == 2000
    assert spread[0] == (1,) + (0,) * 1999
    assert spread[-1] == (0,) * 1999 + (1,)
    assert list(compositions(2, 3)) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def test_count_compositions():
    assert count_compositions(-1, 3) == 0
    assert count_compositions(0, 0) == 1
    assert count_compositions(5, 0) == 0
    assert count_compositions(2, 7) == 28


def test_parse_rational():
    assert parse_rational(3) == 3
    assert parse_rational("1/3") == Fraction(1, 3)
    assert parse_rational(" 0.25 ") == Fraction(1, 4)
    assert parse_rational(Fraction(2, 6)) == Fraction(1, 3)
    for bad in (0.5, True, "x", "1/0", None):
        with pytest.raises(errors.IrrationalPointError):
            parse_rational(bad)


def test_format_rational():
    assert format_rational(Fraction(2, 4)) == "1/2"
    assert format_rational(Fraction(3)) == "3/1"


def test_lcm_of_denominators():
    assert lcm_of_denominators([]) == 1
    assert lcm_of_denominators([Fraction(1, 4), Fraction(5, 6), Fraction(2)]) == 12
