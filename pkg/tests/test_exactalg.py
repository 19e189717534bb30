from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prymcert.errors import (
    NonIntegerCoefficient,
    NotEven,
    Overscale,
    PolySyntaxError,
    ZeroPolynomial,
)
from prymcert.exactalg import (
    BaseField,
    IntPolynomial,
    discriminant,
    even_part,
    factor_integer,
    is_odd_poly,
    is_prime,
    is_square_in,
    is_squarefree,
    parse_poly,
    resultant,
    resultant_bareiss,
    resultant_prs,
    squarefree_part,
)

P = parse_poly

coeff_lists = st.lists(st.integers(-9, 9), min_size=1, max_size=7).filter(lambda c: c[-1] != 0)
polys = coeff_lists.map(lambda c: IntPolynomial(tuple(c)))


def test_parse_example_polynomial():
    assert P("x*(x^10 - x^2 - 1)").coeffs == (0, -1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1)


def test_parse_list_form():
    assert P("[0,0,1]") == IntPolynomial((0, 0, 1))


@pytest.mark.parametrize(
    "text", ["x^2 - - 1", "x^", "(x+1", "x**2", "2x", "y+1", "", "x^x", "x^-1", "x^99999", "1/0", "[1,,2]"]
)
def test_parse_rejects(text):
    with pytest.raises(PolySyntaxError):
        P(text)


def test_parse_syntax_error_has_position():
    with pytest.raises(PolySyntaxError) as info:
        P("x^2 - - 1")
    assert info.value.position == 6


@pytest.mark.parametrize("text", ["x/2", "0.5*x", "[1, 2.5]"])
def test_parse_rejects_fractions(text):
    with pytest.raises(NonIntegerCoefficient):
        P(text)


def test_parse_integral_division_is_fine():
    assert P("(2*x+4)/2") == P("x+2")


def test_parse_power_is_right_associative():
    assert P("x^2^2") == P("x^4")
    assert P("-x^2") == IntPolynomial((0, 0, -1))


def test_odd_polynomials():
    assert is_odd_poly(P("x^11 - x^3 - x"))
    assert not is_odd_poly(P("x^2 + 1"))
    assert is_odd_poly(IntPolynomial(()))


def test_squarefree_examples():
    assert is_squarefree(P("x^10 - x^2 - 1"))
    assert discriminant(P("x^10 - x^2 - 1")) != 0
    assert not is_squarefree(P("x^2"))
    assert not is_squarefree(P("(x-1)^2*(x+2)"))
    with pytest.raises(ZeroPolynomial):
        is_squarefree(IntPolynomial(()))


def test_even_part():
    assert even_part(P("x^10 - x^2 - 1")) == P("x^5 - x - 1")
    assert even_part(P("x^2 - 4")) == P("x - 4")
    with pytest.raises(NotEven):
        even_part(P("x^3"))


def test_resultant_examples():
    # Sylvester matrix with p-rows first: res(x - a, x - b) = a - b
    assert resultant(P("x - 3"), P("x - 7")) == -4
    assert resultant(P("x^2 - 1"), P("x - 2")) == 3
    assert resultant(P("x^5 - x - 1"), P("5*x^4 - 1")) == 2869


def test_discriminant_examples():
    assert discriminant(P("x^5 - x - 1")) == 2869
    assert discriminant(P("x^2 - 1")) == 4
    assert discriminant(P("x^2")) == 0


def test_factor_integer_examples():
    f = factor_integer(2869)
    assert (f.sign, f.factors) == (1, ((19, 1), (151, 1)))
    assert str(f) == "19 * 151"
    f = factor_integer(-12)
    assert (f.sign, f.factors) == (-1, ((2, 2), (3, 1)))
    f = factor_integer(1)
    assert (f.sign, f.factors) == (1, ())


def test_squarefree_part_examples():
    assert squarefree_part(2869) == 2869
    assert squarefree_part(12) == 3
    assert squarefree_part(-27) == -3


def test_square_in_examples():
    assert is_square_in(1, BaseField.Q)
    assert is_square_in(-3, BaseField.Q_SQRT_MINUS_3)
    assert not is_square_in(2, BaseField.Q)
    assert not is_square_in(-3, BaseField.Q)
    assert is_square_in(Fraction(-12, 49), BaseField.Q_SQRT_MINUS_3)
    assert is_square_in(Fraction(8, 18), BaseField.Q)


@settings(max_examples=1000)
@given(polys, polys)
def test_bareiss_matches_prs(p, q):
    assert resultant_bareiss(p, q) == resultant_prs(p, q)


@settings(max_examples=300)
@given(coeff_lists, st.integers(-5, 5))
def test_resultant_with_linear_is_evaluation(c, a):
    p = IntPolynomial(tuple(c[:-1]) + (1,))
    if p.degree < 1:
        return
    # res(p, x - a) = (-1)^deg p * p(a) with p-rows first
    assert resultant(p, P(f"x - ({a})")) == (-1) ** p.degree * p(a)


@settings(max_examples=1000)
@given(polys.filter(lambda p: p.degree >= 1))
def test_discriminant_zero_iff_not_squarefree(p):
    assert (discriminant(p) == 0) == (not is_squarefree(p))


@settings(max_examples=300)
@given(polys)
def test_discriminant_of_roots(p):
    roots = [c for c in p.coeffs][:4]
    if len(set(roots)) != len(roots):
        return
    f = IntPolynomial.from_roots(roots)
    expected = 1
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            expected *= (roots[i] - roots[j]) ** 2
    assert discriminant(f) == expected


@given(coeff_lists)
def test_even_part_reconstructs(c):
    g = IntPolynomial(tuple(c))
    h = g.compose_square()
    assert even_part(h) == g


@settings(max_examples=500)
@given(st.integers(-10**15, 10**15).filter(lambda n: n != 0))
def test_factor_reconstructs(n):
    f = factor_integer(n)
    assert f.value() == n
    assert all(is_prime(q) for q, _ in f.factors)
    assert [q for q, _ in f.factors] == sorted({q for q, _ in f.factors})


def test_is_prime_against_sieve():
    n = 5000
    sieve = [True] * n
    sieve[0] = sieve[1] = False
    for i in range(2, n):
        if sieve[i]:
            for j in range(i * i, n, i):
                sieve[j] = False
    assert [i for i in range(n) if is_prime(i)] == [i for i in range(n) if sieve[i]]
    assert is_prime(2**61 - 1) and not is_prime((2**31 - 1) * (2**19 - 1))
    with pytest.raises(Overscale):
        is_prime(2**89 - 1)
