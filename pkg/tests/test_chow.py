from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coxkit import fixtures
from coxkit.chow import ChowClass, build_chow, canonical_class, chern_character, multiplication_operator, multiply
from coxkit.errors import DimensionMismatch, NotDegreeOne
from coxkit.fan import betti, hirzebruch, projective_space
from coxkit.linalg import Matrix

RINGS = {name: build_chow(fixtures.load(name)) for name in fixtures.BUILDERS}


def test_p2_ring():
    r = RINGS["p2"]
    assert r.dims == [1, 1, 1]
    h = r.divisor(0)
    assert r.divisor(1) == h and r.divisor(2) == h
    assert r.degree(r.multiply(h, h)) == 1
    assert canonical_class(r) == h * -3
    # H . H^2 lands in degree 3 > 2 and vanishes
    assert multiply(r, h, r.multiply(h, h)).is_zero()


def test_hirzebruch_relations():
    for a in range(4):
        r = build_chow(hirzebruch(a))
        u1, u2, p, q = (r.divisor(i) for i in range(4))
        assert r.dims == [1, 2, 1]
        assert u1 == p
        assert u2 == q - p * a
        assert r.degree(r.multiply(p, p)) == 0
        assert r.degree(r.multiply(q, q)) == a
        assert r.degree(r.multiply(p, q)) == 1
        assert r.canonical_class() == p * (a - 2) - q * 2


def test_example_47_ring():
    r = RINGS["ex47"]
    assert r.dims == [1, 3, 3, 1]
    d3, d4, d5 = (r.divisor(i) for i in (3, 4, 5))
    assert r.labels[1] == ["D3", "D4", "D5"]
    assert r.multiply(d4, d5).is_zero()
    assert (r.multiply(d3, d4) + r.multiply(d4, d4)).is_zero()
    assert -r.canonical_class() == d3 * 4 + d4 * 2 + d5 * 2


def test_point_class_is_every_max_cone_product():
    for name, r in RINGS.items():
        for cone in r.fan.max_cones:
            prod = r.one()
            for rho in cone:
                prod = r.multiply(prod, r.divisor(rho))
            assert prod == r.point_class, name
            assert r.degree(prod) == 1


def test_graded_dimensions_match_betti():
    for name, r in RINGS.items():
        assert r.dims == betti(r.fan), name
        assert r.dims[-1] == 1


def test_multiplication_commutative_and_associative_on_basis():
    for name in ("ex47", "bl3p2", "p2xp1", "blline_p3"):
        r = RINGS[name]
        basis = [r.basis(d, i) for d, dim in enumerate(r.dims) for i in range(dim)]
        for a in basis:
            for b in basis:
                ab = r.multiply(a, b)
                assert ab == r.multiply(b, a)
                for c in basis[:6]:
                    assert r.multiply(ab, c) == r.multiply(a, r.multiply(b, c))


def test_chern_character_examples():
    r = RINGS["p2"]
    h = r.divisor(0)
    assert chern_character(r, r.zero()) == r.one()
    ch = chern_character(r, h * -3)
    assert ch == ChowClass(((1,), (-3,), (Fraction(9, 2),)))
    with pytest.raises(NotDegreeOne):
        r.chern_character(r.one())


def test_multiplication_operator_examples():
    r = RINGS["p2"]
    assert multiplication_operator(r, r.one()) == Matrix.identity(3)
    m = r.multiplication_operator(r.chern_character(r.canonical_class()))
    assert m == Matrix([[1, -3, Fraction(9, 2)], [0, 1, -3], [0, 0, 1]])


def test_multiplication_operator_structure():
    for name, r in RINGS.items():
        n = r.rank
        ch = r.multiplication_operator(r.chern_character(r.canonical_class()))
        assert all(ch[i, i] == 1 for i in range(n))
        assert all(ch[i, j] == 0 for i in range(n) for j in range(i))
        k = r.multiplication_operator(r.canonical_class())
        # no degree-0 part: strictly block upper triangular
        starts = [sum(r.dims[:d]) for d in range(len(r.dims) + 1)]
        for d in range(len(r.dims)):
            for i in range(starts[d], starts[d + 1]):
                assert all(k[i, j] == 0 for j in range(starts[d + 1])), name


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        RINGS["p2"].multiply(RINGS["p2"].one(), RINGS["p1xp1"].one())
    with pytest.raises(DimensionMismatch):
        RINGS["p2"].homogeneous(1, (1, 2))


def test_format_class():
    r = RINGS["ex47"]
    assert r.format_class(r.canonical_class()) == "-4*D3 - 2*D4 - 2*D5"
    assert r.format_class(r.zero()) == "0"


weights = st.lists(st.integers(-3, 3), min_size=6, max_size=6)


@given(weights, weights)
def test_chern_character_is_exponential(w1, w2):
    r = RINGS["ex47"]
    d1, d2 = r.divisor_combination(w1), r.divisor_combination(w2)
    assert r.chern_character(d1 + d2) == r.multiply(r.chern_character(d1), r.chern_character(d2))


@given(st.sampled_from(["bl2p2", "p2xp1", "blpt_p3", "bl1p2xp1"]), st.data())
def test_multiplication_operator_is_a_ring_map(name, data):
    r = RINGS[name]
    w = st.lists(st.integers(-2, 2), min_size=r.fan.num_rays, max_size=r.fan.num_rays)
    a = r.chern_character(r.divisor_combination(data.draw(w)))
    b = r.chern_character(r.divisor_combination(data.draw(w)))
    ma, mb = r.multiplication_operator(a), r.multiplication_operator(b)
    assert ma @ mb == r.multiplication_operator(r.multiply(a, b))
    assert ma @ mb == mb @ ma


def test_projective_space_powers():
    for n in (1, 2, 3):
        r = build_chow(projective_space(n))
        h = r.divisor(0)
        assert r.dims == [1] * (n + 1)
        assert r.degree(r.power(h, n)) == 1
        assert r.power(h, n + 1).is_zero()
