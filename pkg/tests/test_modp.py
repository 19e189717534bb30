import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prymcert.errors import BudgetExhausted, NotPrime, Ramified
from prymcert.exactalg import even_part, parse_poly
from prymcert.modp import (
    CycleType,
    ddf_cycle_type,
    ddf_degrees,
    naive_factor_degrees,
    poly_mod_p,
    prime_stream,
    sample_frobenius,
)

P = parse_poly
H = P("x^10 - x^2 - 1")
G = P("x^5 - x - 1")
SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


def _naive_type(poly, q):
    return CycleType(tuple(naive_factor_degrees(poly_mod_p(poly, q), q)))


def test_poly_mod_p_examples():
    assert poly_mod_p(H, 5) == [4, 0, 4, 0, 0, 0, 0, 0, 0, 0, 1]
    assert poly_mod_p(P("3*x^2"), 3) == []
    with pytest.raises(NotPrime):
        poly_mod_p(P("x"), 4)


def test_ddf_examples():
    assert ddf_cycle_type(P("x^2 - 1"), 5) == CycleType((1, 1))
    assert ddf_cycle_type(P("x^2 + 1"), 3) == CycleType((2,))


def test_ddf_rejects_ramified():
    with pytest.raises(Ramified):
        ddf_cycle_type(G, 19)
    with pytest.raises(Ramified):
        ddf_cycle_type(P("3*x^2 + 1"), 3)


def test_smallest_prime_with_type_3_2_agrees_with_naive():
    found = None
    for q in prime_stream(cap=200):
        if 2869 % q == 0:
            continue
        if _naive_type(G, q) == CycleType((3, 2)):
            found = q
            break
    assert found == 2
    assert ddf_cycle_type(G, found) == CycleType((3, 2))


def test_cycle_type_rendering():
    assert str(CycleType((2, 3))) == "{3, 2}"
    assert CycleType((2, 3)).degree == 5
    assert CycleType((2, 1, 1, 1)).is_odd_signature()
    assert not CycleType((5,)).is_odd_signature()


def test_sample_three_primes():
    samples = sample_frobenius(H, G, budget=3)
    assert [s.prime for s in samples] == [3, 5, 7]
    assert samples.ramified == [2]
    for s in samples:
        assert s.type_h == _naive_type(H, s.prime)
        assert s.type_g == _naive_type(G, s.prime)


def test_sample_budget_zero():
    assert len(sample_frobenius(H, G, budget=0)) == 0


def test_sample_non_squarefree_exhausts():
    h = P("(x^2 - 2)^2")
    with pytest.raises(BudgetExhausted):
        sample_frobenius(h, even_part(h), primes=prime_stream(cap=500), budget=5)


def test_ddf_matches_naive_exhaustive_small():
    # every monic squarefree polynomial of degree <= 4 over F_2, F_3, F_5
    import itertools

    from prymcert.modp import is_squarefree_mod_p

    checked = 0
    for q in (2, 3, 5):
        for d in range(1, 5):
            for tail in itertools.product(range(q), repeat=d):
                f = list(tail) + [1]
                if not is_squarefree_mod_p(f, q):
                    continue
                assert sorted(ddf_degrees(f, q)) == sorted(naive_factor_degrees(f, q))
                checked += 1
    assert checked > 500


@settings(max_examples=1000)
@given(st.lists(st.integers(0, 12), min_size=1, max_size=6), st.sampled_from(SMALL_PRIMES))
def test_ddf_matches_naive(tail, q):
    from prymcert.modp import is_squarefree_mod_p

    f = [c % q for c in tail] + [1]
    if not is_squarefree_mod_p(f, q):
        return
    degs = ddf_degrees(f, q)
    assert sorted(degs) == sorted(naive_factor_degrees(f, q))
    assert sum(degs) == len(f) - 1


def test_random_ddf_mismatch_count_is_zero():
    rng = random.Random(20260101)
    from prymcert.modp import is_squarefree_mod_p

    mismatches = cases = 0
    while cases < 1000:
        q = rng.choice(SMALL_PRIMES)
        d = rng.randint(1, 6)
        f = [rng.randrange(q) for _ in range(d)] + [1]
        if not is_squarefree_mod_p(f, q):
            continue
        cases += 1
        mismatches += sorted(ddf_degrees(f, q)) != sorted(naive_factor_degrees(f, q))
    assert mismatches == 0
