import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from leavitt.errors import CannotCertifyError, FieldMismatchError, ParseError
from leavitt.field import (
    Laurent,
    Poly,
    PrimeField,
    QuotientField,
    Rationals,
    Scalar,
    arith,
    enumerate_irreducibles,
    eval_at,
    is_irreducible,
    one,
    parse_field_spec,
    parse_poly,
    parse_scalar,
    poly_str,
    zero,
)

from conftest import rand_scalar, seeded

Q = Rationals()
F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
F4 = QuotientField(F2, Poly(F2, (1, 1, 1)))


def s(field, v):
    return Scalar.make(field, v)


def test_arith_examples():
    assert arith("inv", s(F5, 2)) == s(F5, 3)
    t = F4.tbar()
    assert arith("mul", t, t + one(F4)) == one(F4)  # t(t+1) = t^2+t = 1 mod t^2+t+1
    assert arith("add", s(Q, Fraction(2, 3)), s(Q, Fraction(1, 6))) == s(Q, Fraction(5, 6))
    assert arith("neg", s(F3, 1)) == s(F3, 2)
    with pytest.raises(ZeroDivisionError):
        arith("inv", zero(F5))
    with pytest.raises(FieldMismatchError):
        arith("add", s(F5, 1), s(F3, 1))


@pytest.mark.parametrize("field", [Q, F2, F5, F4, QuotientField(Q, parse_poly(Q, "t^2-2"))])
def test_field_axioms_on_random_triples(field):
    rng = seeded(f"axioms-{field}")
    for _ in range(500):
        a, b, c = (rand_scalar(field, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert a + zero(field) == a and a * one(field) == a
        assert a + (-a) == zero(field)
        if not a.is_zero():
            assert a * a.inv() == one(field)


def test_is_irreducible_examples():
    assert is_irreducible(parse_poly(F2, "t^2+t+1"))
    assert not is_irreducible(parse_poly(Q, "t^2-1"))
    assert not is_irreducible(parse_poly(F5, "t^2+1"))  # 2^2 = 4 = -1
    assert is_irreducible(parse_poly(Q, "t^2-2"))
    assert is_irreducible(parse_poly(Q, "t^3-2"))
    assert not is_irreducible(parse_poly(Q, "t^3-8"))
    with pytest.raises(CannotCertifyError):
        is_irreducible(parse_poly(Q, "t^4+1"))


def test_enumerate_irreducibles_small():
    assert [poly_str(f) for f in enumerate_irreducibles(2, 2)] == ["t", "t+1", "t^2+t+1"]
    assert [poly_str(f) for f in enumerate_irreducibles(2, 1)] == ["t", "t+1"]
    assert [poly_str(f) for f in enumerate_irreducibles(3, 1)] == ["t", "t+1", "t+2"]


@pytest.mark.parametrize("p,d", [(2, 4), (3, 3), (5, 2)])
def test_enumerate_irreducibles_brute_force(p, d):
    """Every monic poly of degree <= d is listed or factors into listed ones."""
    base = PrimeField(p)
    irr = enumerate_irreducibles(p, d)
    for deg in range(1, d + 1):
        for coeffs in itertools.product(range(p), repeat=deg):
            f = Poly(base, coeffs + (1,))
            if f in irr:
                continue
            assert any(
                (f % g).is_zero() for g in irr if 1 <= g.degree() < deg
            ), f"{poly_str(f)} neither listed nor divisible"


def test_quotient_field_has_p_to_deg_scalars():
    # exhaustive up to p^deg = 81
    for field in [
        F4,
        QuotientField(F3, parse_poly(F3, "t^2+1")),
        QuotientField(F2, parse_poly(F2, "t^3+t+1")),
        QuotientField(F3, parse_poly(F3, "t^4+t+2")),
    ]:
        p = field.base.p
        d = field.degree()
        elems = {
            Scalar.make(field, Poly(field.base, coeffs))
            for coeffs in itertools.product(range(p), repeat=d)
        }
        assert len(elems) == p ** d


def test_eval_and_laurent():
    a = s(Q, 2)
    assert eval_at(Laurent(parse_poly(Q, "1"), 3), a) == s(Q, 8)
    assert eval_at(Laurent(parse_poly(Q, "1"), -2), a) == s(Q, Fraction(1, 4))
    assert eval_at(parse_poly(Q, "1"), a) == one(Q)
    # g = t - a + b evaluates to b at a
    b = s(Q, 7)
    g = Poly(Q, (b - a, 1))
    assert eval_at(g, a) == b
    with pytest.raises(ZeroDivisionError):
        eval_at(Laurent(parse_poly(Q, "t"), -1), zero(Q))


def test_quotient_inverse_via_xgcd():
    K9 = QuotientField(F3, parse_poly(F3, "t^2+1"))
    rng = seeded("inv9")
    for _ in range(50):
        a = rand_scalar(K9, rng, nonzero=True)
        assert a * a.inv() == one(K9)


def test_field_spec_parsing_roundtrip():
    for text in ["Q", "F5", "F2[t]/(t^2+t+1)", "Q[t]/(t-2)"]:
        spec = parse_field_spec(text)
        assert parse_field_spec(str(spec)) == spec
    with pytest.raises(ParseError):
        parse_field_spec("F6")  # not prime
    with pytest.raises(ParseError):
        parse_field_spec("R")
    with pytest.raises(ParseError):
        parse_field_spec("F2[t]/(t)")  # t excluded
    with pytest.raises(ParseError):
        parse_field_spec("F2[t]/(t^2+1)")  # (t+1)^2 over F2


def test_scalar_parse_print_roundtrip():
    for field, texts in [
        (Q, ["0", "-2", "5/6", "7"]),
        (F5, ["0", "3"]),
        (F4, ["t", "t+1", "1", "0"]),
    ]:
        for t in texts:
            v = parse_scalar(field, t)
            assert parse_scalar(field, str(v)) == v


def test_poly_parse_print_roundtrip():
    for text in ["t^2+t+1", "2*t+3", "t-2", "1/2*t^2-3", "t^3-1/3*t"]:
        f = parse_poly(Q, text)
        assert parse_poly(Q, poly_str(f)) == f


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(1, 20))
def test_rationals_remain_exact(a, b, d):
    x = s(Q, Fraction(a, d))
    y = s(Q, Fraction(b, d))
    assert (x + y).value == Fraction(a + b, d)
    assert (x * y).value == Fraction(a * b, d * d)


@settings(max_examples=50)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=5),
       st.lists(st.integers(0, 4), min_size=1, max_size=4))
def test_poly_divmod_invariant(ac, bc):
    f = Poly(F5, tuple(ac))
    g = Poly(F5, tuple(bc))
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree() < g.degree()
