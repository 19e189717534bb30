from dataclasses import replace
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prymcert.errors import BadCongruence, PreconditionViolated
from prymcert.exactalg import BaseField, parse_poly
from prymcert.galoiscert import Status
from prymcert.pryminv import (
    assemble_theorem_report,
    certify_centralizer,
    certify_group_hypotheses,
    curve_profile,
    nonjacobian_check,
    rank_consistency,
)

P = parse_poly


def test_profile_n11():
    p = curve_profile(11)
    assert (p.k, p.m, p.genus_C, p.genus_quotient, p.prym_dim) == (0, 5, 10, 5, 5)
    assert p.jac_mult == (3, 7)
    assert p.prym_mult == (1, 4)
    assert p.anti_invariant_basis == ((1,), (0, 2, 4, 6))
    assert (p.nonjacobian_lhs, p.nonjacobian_rhs) == (9, 7)


def test_profile_n23():
    p = curve_profile(23)
    assert (p.k, p.m, p.genus_C) == (1, 11, 22)
    assert p.prym_mult == (3, 8) and p.jac_mult == (7, 15)
    assert (p.nonjacobian_lhs, p.nonjacobian_rhs) == (15, 13)


@pytest.mark.parametrize("n", [13, 12, -1, 0, 23 + 6])
def test_profile_bad_congruence(n):
    with pytest.raises(BadCongruence):
        curve_profile(n)


def test_nonjacobian_examples():
    assert nonjacobian_check(curve_profile(11))
    assert nonjacobian_check(curve_profile(23))


def test_rank_consistency_examples():
    assert rank_consistency(curve_profile(11))
    assert rank_consistency(curve_profile(23), odd_dim=11)
    tampered = replace(curve_profile(11), prym_dim=6)
    assert not rank_consistency(tampered)
    assert not rank_consistency(curve_profile(11), odd_dim=4)


def test_profile_invariants_up_to_10000():
    for n in range(11, 10**4, 12):
        p = curve_profile(n)
        assert p.n == 12 * p.k + 11 == 2 * p.m + 1
        assert p.jac_mult == (n // 3, 2 * n // 3) == (4 * p.k + 3, 8 * p.k + 7)
        assert sum(p.jac_mult) == p.genus_C == n - 1
        assert p.genus_quotient == p.prym_dim == p.m
        # Hurwitz for the double cover branched at two points
        assert p.genus_C - 1 == 2 * (p.genus_quotient - 1) + 1
        assert p.nonjacobian_lhs - p.nonjacobian_rhs == 2


@given(st.integers(0, 1000))
def test_prym_multiplicities(k):
    p = curve_profile(12 * k + 11)
    a, b = p.prym_mult
    assert (a, b) == (2 * k + 1, 4 * k + 4)
    assert a + b == p.m
    assert gcd(a, b) == 1
    assert tuple(map(len, p.anti_invariant_basis)) == p.prym_mult
    assert p.anti_invariant_basis[0] == tuple(2 * i + 1 for i in range(2 * k + 1))
    assert p.anti_invariant_basis[1] == tuple(2 * j for j in range(4 * k + 4))
    assert nonjacobian_check(p)


def test_group_hypotheses():
    c = certify_group_hypotheses(5)
    assert c.status is Status.PROVEN
    assert c.data["normal_subgroup_orders"] == [1, 60, 120]
    assert c.data["no_proper_normal_of_odd_index"]
    c = certify_group_hypotheses(11)
    assert c.status is Status.HEURISTIC
    assert c.data["derived_index"] == 2 and c.data["derived_perfect"]


def test_centralizer():
    c, odd = certify_centralizer(5)
    assert c.status is Status.PROVEN and odd == 1
    assert c.data["commutant_full"] == c.data["stabilizer_orbits"] == 3


def test_example_report():
    r = assemble_theorem_report(P("x*(x^10 - x^2 - 1)"))
    status = {c.label: c.status for c in r.conclusions}
    assert status == {"A": Status.PROVEN, "B": Status.CITED, "C": Status.PROVEN, "eigen": Status.PROVEN,
                      "a": Status.CITED, "b1": Status.PROVEN, "b2": Status.PROVEN}
    assert r.commutant == 1


def test_negative_control_report():
    r = assemble_theorem_report(P("x*(x^10 - x^2 - 2)"))
    assert r.conclusion("C").status is Status.PROVEN
    assert r.conclusion("b1").status is Status.FAILED
    assert r.conclusion("b2").status is Status.FAILED
    assert r.profile.prym_dim == 5


def test_field_q_cannot_give_b1():
    r = assemble_theorem_report(P("x*(x^10 - x^2 - 1)"), field=BaseField.Q)
    assert r.galois.conclusion is Status.PROVEN
    assert r.conclusion("b1").status is Status.FAILED


def test_heuristic_report():
    r = assemble_theorem_report(P("x^11 + 3*x"))
    assert r.conclusion("b1").status is Status.HEURISTIC
    assert r.conclusion("b2").status is Status.HEURISTIC


@pytest.mark.parametrize("text", ["x^11", "x^13 - x", "x^2 + 1"])
def test_structural_errors(text):
    with pytest.raises((PreconditionViolated, BadCongruence)):
        assemble_theorem_report(P(text))


def test_degree_23_example():
    r = assemble_theorem_report(P("x*(x^22 - x^2 - 1)"))
    assert r.profile.m == 11
    assert r.galois.conclusion is Status.PROVEN
    assert r.conclusion("b1").status is Status.PROVEN
    assert r.galois.kernel.witnesses[0]["type_h"] == [14, 3, 3, 2]
