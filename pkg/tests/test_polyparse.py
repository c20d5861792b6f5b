from __future__ import annotations

import numpy as np
import pytest

from artloc.polyparse import (
    InfiniteDimensionError,
    PolyParseError,
    Polynomial,
    buchberger,
    normal_form,
    parse_polynomial,
    s_polynomial,
    standard_monomial_basis,
)

from oracles import quotient_dim

XY = ("x", "y")
XYZW = ("x", "y", "z", "w")


def test_parse_juxtaposition_products():
    f = parse_polynomial("xz-yw", XYZW, 2)
    assert dict(f.terms) == {(1, 0, 1, 0): 1, (0, 1, 0, 1): 1}


def test_parse_coefficients_and_powers():
    f = parse_polynomial("3x^2y + y^3", XY, 5)
    assert dict(f.terms) == {(2, 1): 3, (0, 3): 1}
    assert f.degree() == 3
    assert f.order() == 3


def test_parse_repeated_variable_multiplies():
    f = parse_polynomial("xx + y", XY, 2)
    assert dict(f.terms) == {(2, 0): 1, (0, 1): 1}


def test_parse_integer_reduces_mod_p():
    assert parse_polynomial("2", XY, 2).is_zero()
    assert dict(parse_polynomial("7", XY, 5).terms) == {(0, 0): 2}


def test_parse_minus_binds_per_term():
    f = parse_polynomial("x^3-y^2", ("x", "y", "z"), 3)
    assert dict(f.terms) == {(3, 0, 0): 1, (0, 2, 0): 2}


@pytest.mark.parametrize(
    "text,message,position",
    [
        ("x*2", "'*' is not part of the grammar; write products by juxtaposition", 1),
        ("x+", "expected a term", 2),
        ("(x+y)", "unknown symbol '('", 0),
        ("x^0 + q", "unknown symbol 'q'", 6),
        ("", "empty input", 0),
        ("x^^2", "expected an integer", 2),
    ],
)
def test_parse_errors_carry_position(text, message, position):
    with pytest.raises(PolyParseError) as err:
        parse_polynomial(text, XY, 2)
    assert message in str(err.value)
    assert f"(at position {position})" in str(err.value)
    assert err.value.position == position


def _gb(texts, variables, p):
    return buchberger([parse_polynomial(t, variables, p) for t in texts])


def test_normal_form_divides_out_lead_terms():
    gb = _gb(["x^2", "xy", "y^3"], XY, 2)
    nf = normal_form(parse_polynomial("x^2y + y^2 + xy", XY, 2), gb)
    assert dict(nf.terms) == {(0, 2): 1}


def test_normal_form_cancels_inside_a_term():
    # the divisor's lead must cancel against the term being processed even
    # when the reduction rewrites that same monomial
    gb = _gb(
        ["x^2", "xy", "xz-yw", "xw", "y^2", "yz", "z^2", "zw", "w^2"], XYZW, 2
    )
    nf = normal_form(parse_polynomial("xz", XYZW, 2), gb)
    assert dict(nf.terms) == {(0, 1, 0, 1): 1}
    assert normal_form(parse_polynomial("yw^2", XYZW, 2), gb).is_zero()


def test_buchberger_closes_under_s_polynomials():
    rng = np.random.default_rng(3)
    mons = ["x^2", "xy", "y^2", "x^3", "y^3", "x^2y", "xy^2"]
    for _ in range(25):
        p = int(rng.choice([2, 3, 5]))
        picks = rng.choice(len(mons), size=3, replace=False)
        texts = [mons[i] for i in picks]
        if rng.integers(2):
            texts[0] = texts[0] + "+" + mons[int(rng.integers(len(mons)))]
        gb = _gb(texts, XY, p)
        for i in range(len(gb)):
            for j in range(i + 1, len(gb)):
                assert normal_form(s_polynomial(gb[i], gb[j]), gb).is_zero()


def test_standard_monomials_of_stretched_ring():
    gb = _gb(["xy", "xz", "yz", "x^3-y^2", "x^3-z^2"], ("x", "y", "z"), 3)
    basis = standard_monomial_basis(gb, ("x", "y", "z"))
    assert set(basis) == {
        (0, 0, 0),
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (2, 0, 0),
        (0, 0, 2),
    }


def test_quotient_dim_matches_truncation_oracle():
    cases = [
        (["xy", "xz", "yz", "x^3-y^2", "x^3-z^2"],
         [{(1, 1, 0): 1}, {(1, 0, 1): 1}, {(0, 1, 1): 1},
          {(3, 0, 0): 1, (0, 2, 0): 2}, {(3, 0, 0): 1, (0, 0, 2): 2}],
         ("x", "y", "z"), 3),
        (["x^2", "xy", "y^3"],
         [{(2, 0): 1}, {(1, 1): 1}, {(0, 3): 1}],
         XY, 2),
    ]
    for texts, dicts, variables, p in cases:
        gb = _gb(texts, variables, p)
        assert len(standard_monomial_basis(gb, variables)) == quotient_dim(
            dicts, len(variables), p
        )


def test_standard_monomials_reject_infinite_quotients():
    gb = _gb(["x^2"], XY, 2)
    with pytest.raises(InfiniteDimensionError):
        standard_monomial_basis(gb, XY)


def test_polynomial_multiplication_reduces_coefficients():
    f = parse_polynomial("x + y", XY, 2)
    assert dict((f * f).terms) == {(2, 0): 1, (0, 2): 1}
