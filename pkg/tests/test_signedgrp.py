import random
from math import lcm

from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import kernel_trivial_subgroups

from prymcert.modp import CycleType
from prymcert.permgrp import (
    Permutation,
    cycle_type_of,
    cyclic_group,
    symmetric_group,
    trivial_group,
)
from prymcert.signedgrp import (
    Realization,
    SignedPerm,
    action_cycle_type,
    build_wreath,
    even_weight_dimension,
    hyperoctahedral_group,
    kappa,
    order_vs_projection,
    realizations_of,
    sign_module_submodules,
    weyl_group_D,
)


@st.composite
def signed_perms(draw, max_m=10):
    m = draw(st.integers(1, max_m))
    s = Permutation(tuple(draw(st.permutations(range(m)))))
    eps = tuple(draw(st.lists(st.sampled_from((1, -1)), min_size=m, max_size=m)))
    return SignedPerm(s, eps)


def random_signed(rng, m):
    img = list(range(m))
    rng.shuffle(img)
    return SignedPerm(Permutation(tuple(img)), tuple(rng.choice((1, -1)) for _ in range(m)))


def true_pieces(x: SignedPerm):
    pieces = []
    for cyc in x.s.cycles():
        sign = 1
        for i in cyc:
            sign *= x.eps[i]
        pieces.append((len(cyc), sign == -1))
    return tuple(sorted(pieces, key=lambda p: (-p[0], p[1])))


def test_wreath_orders():
    S5 = symmetric_group(5).generators
    assert build_wreath(S5, 5, even_only=True).order() == 1920
    assert build_wreath([], 5, even_only=False).order() == 32
    assert build_wreath([], 5, even_only=True).order() == 16
    assert hyperoctahedral_group(5).order() == 3840


def test_wreath_orders_general():
    for m, G in [(3, symmetric_group(3)), (4, cyclic_group(4)), (4, trivial_group(4)), (5, cyclic_group(5))]:
        n = G.order()
        full = build_wreath(G.generators, m, even_only=False)
        even = build_wreath(G.generators, m, even_only=True)
        assert full.order() == 2**m * n
        assert even.order() == 2 ** (m - 1) * n
        for W, kernel_order in ((full, 2**m), (even, 2 ** (m - 1))):
            images, kernel = set(), 0
            for e in W.iter_elements():
                x = SignedPerm.from_permutation(Permutation(e))
                images.add(x.s.images)
                kernel += x.s.is_identity()
            assert kernel == kernel_order
            assert len(images) == n


def test_kappa_examples():
    assert kappa(SignedPerm.identity(5)).is_identity()
    c = Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])
    assert kappa(SignedPerm(c, (-1,) * 5)) == c


@settings(max_examples=500)
@given(st.data())
def test_kappa_is_homomorphism(data):
    x = data.draw(signed_perms())
    m = x.m
    s = Permutation(tuple(data.draw(st.permutations(range(m)))))
    eps = tuple(data.draw(st.lists(st.sampled_from((1, -1)), min_size=m, max_size=m)))
    y = SignedPerm(s, eps)
    assert kappa(x * y) == kappa(x) * kappa(y)
    assert (x * y).as_permutation() == x.as_permutation() * y.as_permutation()
    assert (x * x.inverse()) == SignedPerm.identity(m)
    assert SignedPerm.from_permutation(x.as_permutation()) == x


def test_action_cycle_type_examples():
    assert action_cycle_type(SignedPerm.identity(5)) == CycleType((1,) * 10)
    c = Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])
    assert action_cycle_type(SignedPerm(c, (-1, 1, 1, 1, 1))) == CycleType((10,))
    four = Permutation.from_cycles(5, [(1, 2, 3, 4)])
    assert action_cycle_type(SignedPerm(four, (-1, 1, 1, 1, 1))) == CycleType((2, 4, 4))


def test_action_cycle_type_matches_direct_computation():
    rng = random.Random(11)
    mismatches = 0
    for _ in range(10**4):
        x = random_signed(rng, rng.randint(1, 12))
        mismatches += action_cycle_type(x) != cycle_type_of(x.as_permutation())
    assert mismatches == 0


def test_realization_examples():
    assert realizations_of(CycleType((10,)), 5, even_sign_only=True) == []
    (r,) = realizations_of(CycleType((2, 8)), 5, even_sign_only=True)
    assert r.pieces == ((4, True), (1, True))
    assert order_vs_projection(r) == (8, 4)
    (r,) = realizations_of(CycleType((1,) * 10), 5, even_sign_only=True)
    assert r.pieces == ((1, False),) * 5
    assert order_vs_projection(r) == (1, 1)
    assert order_vs_projection(Realization(((3, False), (2, False)))) == (6, 6)


def test_realizations_are_complete_on_weyl_group_d5():
    W = weyl_group_D(5)
    count = 0
    for e in W.iter_elements():
        x = SignedPerm.from_permutation(Permutation(e))
        rs = realizations_of(action_cycle_type(x), 5, even_sign_only=True)
        assert Realization(true_pieces(x)) in rs
        assert x.sign_product() == 1
        count += 1
    assert count == 1920


def test_every_realization_reproduces_its_type():
    for parts in [(2, 8), (4, 4, 1, 1), (2, 2, 2, 2, 1, 1), (6, 4), (3, 3, 2, 2)]:
        ct = CycleType(parts)
        for r in realizations_of(ct, 5, even_sign_only=False):
            assert r.action_type() == ct
            assert r.kappa_type().degree == 5


def test_complement_law_exhaustive():
    for m, expected_max in ((3, 6), (4, 24)):
        subgroups = kernel_trivial_subgroups(m)
        assert max(len(S) for S in subgroups) == expected_max
        for S in subgroups:
            for x in S:
                assert x.as_permutation().order() == x.s.order()


def test_kernel_witness_types_never_come_from_complement_elements():
    from prymcert.galoiscert import is_kernel_witness

    for m in (3, 5):
        W = weyl_group_D(m)
        for e in W.iter_elements():
            p = Permutation(e)
            x = SignedPerm.from_permutation(p)
            if p.order() == x.s.order():
                assert not is_kernel_witness(action_cycle_type(x), m)


def test_element_order_formula():
    rng = random.Random(3)
    for _ in range(2000):
        x = random_signed(rng, rng.randint(1, 9))
        elem, proj = order_vs_projection(Realization(true_pieces(x)))
        assert elem == x.as_permutation().order()
        assert proj == x.s.order()
        assert elem in (proj, 2 * proj)
        assert lcm(elem, proj) == elem


def test_sign_module_examples():
    assert sign_module_submodules(5, symmetric_group(5).generators) == [0, 4]
    assert sign_module_submodules(3, symmetric_group(3).generators) == [0, 2]
    assert sign_module_submodules(2, symmetric_group(2).generators) == [0, 1]


def test_sign_module_irreducible_in_scope():
    for m in (5, 11, 17):
        assert sign_module_submodules(m, symmetric_group(m).generators) == [0, even_weight_dimension(m)]


def test_sign_module_reducible_for_small_groups():
    # cyclic group: the all-ones vector spans an invariant line when m is even
    dims = sign_module_submodules(4, cyclic_group(4).generators)
    assert 1 in dims and dims != [0, 3]
    assert sign_module_submodules(4, symmetric_group(4).generators) == [0, 1, 3]
