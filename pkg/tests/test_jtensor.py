from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coxkit.errors import DimensionCap, EigenvalueMismatch, InputError, ZeroEigenvalue
from coxkit.jtensor import (
    box,
    box_fold,
    box_many,
    box_pair,
    box_sums,
    brute_force_box,
    coefficients_of_product,
    dimension_cap,
    eigenvalue_patterns,
    factor_multisets,
    parse_blocks,
    product_coxeter,
)
from coxkit.linalg import JordanType


def J(*blocks):
    return JordanType(tuple(blocks))


def test_box_pair_examples():
    assert box_pair((1, 2), (1, 3)) == J((1, 4), (1, 2))
    assert box_pair((0, 2), (1, 3)) == J((0, 2), (0, 2), (0, 2))
    assert box_pair((1, 3), (0, 2)) == J((0, 2), (0, 2), (0, 2))
    assert box_pair((0, 2), (0, 3)) == J((0, 2), (0, 2), (0, 1), (0, 1))
    assert box_pair((2, 2), (3, 3)) == J((6, 4), (6, 2))


def test_floor_reading_breaks_dimension():
    assert box_pair((0, 2), (0, 3), bracket="floor").dimension == 7
    assert box_pair((0, 2), (0, 3)).dimension == 6


def test_box_many_examples():
    assert box_many([(1, 2), (1, 3)]) == J((1, 4), (1, 2))
    assert box_many([(5, 1)]) == J((5, 1))
    assert box_many([(1, 2)] * 3) == J((1, 4), (1, 2), (1, 2))
    assert coefficients_of_product([2, 3]) == [1, 2, 2, 1]
    with pytest.raises(ZeroEigenvalue):
        box_many([(0, 2), (1, 2)])


def test_box_sums_examples():
    assert box_sums(J((1, 3)), J((1, 1))) == J((1, 3))
    assert box_sums(J((1, 3)), J((1, 2))) == J((1, 4), (1, 2))
    assert box_sums(J((-1, 2)), J((-1, 2))) == J((1, 3), (1, 1))


def test_brute_force_examples():
    assert brute_force_box([(1, 2), (1, 3)]) == J((1, 4), (1, 2))
    assert brute_force_box([(0, 2), (0, 2)]) == J((0, 2), (0, 1), (0, 1))
    assert brute_force_box([(2, 2), (3, 2)]) == J((6, 3), (6, 1))
    with pytest.raises(DimensionCap):
        brute_force_box([(1, 10), (1, 10)], cap=50)


def test_dimension_cap_env(monkeypatch):
    monkeypatch.setenv("COXKIT_DIM_CAP", "8")
    assert dimension_cap() == 8
    with pytest.raises(DimensionCap):
        brute_force_box([(1, 3), (1, 3)])
    monkeypatch.setenv("COXKIT_DIM_CAP", "lots")
    with pytest.raises(InputError):
        dimension_cap()


def test_product_coxeter_examples():
    p2, p1 = J((-1, 3)), J((1, 2))
    assert product_coxeter(p2, 2, p1, 1) == J((1, 4), (1, 2))
    p1p1 = product_coxeter(p1, 1, p1, 1)
    assert p1p1 == J((-1, 3), (-1, 1))
    assert product_coxeter(p1p1, 2, p1, 1) == J((1, 4), (1, 2), (1, 2))
    # X x point: the point has eigenvalue (-1)^(0-1) = -1
    assert product_coxeter(p2, 2, J((-1, 1)), 0) == p2
    with pytest.raises(EigenvalueMismatch):
        product_coxeter(J((1, 3)), 2, p1, 1)


def test_lemma_sweep_against_oracle():
    for s in range(1, 6):
        for t in range(s, 6):
            for alpha in (0, 1, -1, 2):
                for beta in (0, 1, -1, 2):
                    assert box_pair((alpha, s), (beta, t)) == brute_force_box([(alpha, s), (beta, t)])


def test_rational_eigenvalues():
    half = Fraction(1, 2)
    assert box_many([(half, 2), (-3, 2)]) == brute_force_box([(half, 2), (-3, 2)])
    assert box_many([(half, 2), (-3, 2)]).eigenvalues == (Fraction(-3, 2),)


def test_factor_multisets_and_patterns():
    assert sorted(factor_multisets(3)) == [[1], [1, 1], [1, 1, 1], [2], [2, 1], [3]]
    assert len(factor_multisets(12)) == 271
    assert eigenvalue_patterns([2, 1], [1, -1], False) == [(1, 1), (-1, -1), (1, -1)]
    # two factors of size 2: unordered pairs from {1, -1}, times the size-1 factor
    assert len(eigenvalue_patterns([2, 2, 1], [1, -1], True)) == 3 * 2


def test_parse_blocks():
    assert parse_blocks("J(1,2) J(-1/2, 3)") == [(1, 2), (Fraction(-1, 2), 3)]
    for bad in ("", "J(1,0)", "J(1,2) x", "K(1,2)"):
        with pytest.raises(InputError):
            parse_blocks(bad)


nonzero = st.sampled_from([1, -1, 2, Fraction(1, 2), -3])
eigen = st.sampled_from([0, 1, -1, 2])
blocks_nonzero = st.lists(st.tuples(nonzero, st.integers(1, 3)), min_size=1, max_size=4)


@given(blocks_nonzero, st.randoms(use_true_random=False))
def test_box_many_permutation_invariant(blocks, rnd):
    shuffled = list(blocks)
    rnd.shuffle(shuffled)
    assert box_many(shuffled) == box_many(blocks)
    # the Kronecker product in the shuffled order is similar, not equal, to the original
    assert brute_force_box(shuffled) == box_many(blocks)


@given(blocks_nonzero)
def test_box_many_matches_fold(blocks):
    assert box_many(blocks) == box_fold(blocks)


@given(st.lists(st.tuples(eigen, st.integers(1, 4)), min_size=1, max_size=3))
def test_dimension_conservation(blocks):
    out = box(blocks)
    dim = 1
    for _, r in blocks:
        dim *= r
    assert out.dimension == dim


@given(st.lists(st.tuples(eigen, st.integers(1, 3)), min_size=2, max_size=3))
def test_fold_matches_oracle_with_zeros(blocks):
    assert box(blocks) == brute_force_box(blocks)


@given(st.tuples(eigen, st.integers(1, 5)), nonzero)
def test_unit_law(block, alpha):
    out = box_pair(block, (alpha, 1))
    assert out.sizes == (block[1],)
    assert out.eigenvalues == (block[0] * alpha,)
