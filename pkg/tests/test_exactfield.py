from fractions import Fraction

import pytest

from tensorlie.errors import DivisionByZero, MixedFieldsError, ParseError
from tensorlie.exactfield import GF, QQ, Fp, char_guard, field_arith, parse_field


def test_prime_field_inverse():
    F = GF(7)
    assert F(1) / F(3) == F(5)
    assert (F(3) * F(5)).v == 1


def test_rational_canonical_form():
    assert QQ("2/4") == Fraction(1, 2)
    assert QQ.format(Fraction(6, 3)) == "2"
    assert QQ.format(Fraction(-1, 3)) == "-1/3"


def test_mixed_fields_rejected():
    with pytest.raises(MixedFieldsError):
        GF(5)(1) + GF(7)(1)
    with pytest.raises(MixedFieldsError):
        GF(5)(1) * Fraction(1, 2)
    with pytest.raises(MixedFieldsError):
        field_arith(GF(5)(1), Fraction(1), "add")


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        GF(11)(4) / GF(11)(0)
    with pytest.raises(DivisionByZero):
        field_arith(Fraction(1), Fraction(0), "div")


def test_field_instances_shared():
    assert GF(13) is GF(13)
    with pytest.raises(ValueError):
        GF(15)
    with pytest.raises(ValueError):
        GF(2**31 + 11)


def test_parse_field_forms():
    assert parse_field("Q") is QQ
    assert parse_field("Fp:101") is GF(101)
    assert parse_field("GF(7)") is GF(7)
    with pytest.raises(ParseError):
        parse_field("R")


def test_parse_and_format_fp():
    F = GF(7)
    assert F.parse("3/2") == F(5)
    assert F.format(F(-1)) == "6"
    with pytest.raises(ParseError):
        F.parse("1/0")


def test_char_guard():
    assert char_guard(QQ)
    assert char_guard(GF(5))
    assert not char_guard(GF(3))
    assert not char_guard(GF(2), (2,))


def test_fp_residue_range():
    x = GF(5)(-12)
    assert isinstance(x, Fp) and x.v == 3
    assert x ** -1 == GF(5)(2)


def test_fields_reject_floats():
    with pytest.raises(TypeError):
        QQ(0.5)
    with pytest.raises(TypeError):
        GF(5)(0.5)
