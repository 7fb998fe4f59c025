from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coxkit.errors import IncompleteSpectrum, NotNilpotent, Singular
from coxkit.linalg import (
    JordanType,
    Matrix,
    block_diagonal,
    exp_nilpotent,
    format_rational,
    full_jordan_type,
    jordan_block,
    jordan_type_at,
    kron,
    kron_all,
    nilpotency_index,
    rank,
    rank_sequence,
    row_reduce,
    to_rational,
)

small = st.integers(min_value=-4, max_value=4)


def matrices(rows, cols=None, elements=small):
    cols = rows if cols is None else cols
    return st.lists(st.lists(elements, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(Matrix)


def fraction_rank(m: Matrix) -> int:
    # plain Gaussian elimination over Fraction, independent of the Bareiss path
    a = [[Fraction(x) for x in row] for row in m.tolist()]
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


# ---------------------------------------------------------------- rationals and matrices

def test_to_rational_normalizes():
    assert to_rational("6/4") == Fraction(3, 2)
    assert to_rational(Fraction(4, 2)) == 2 and type(to_rational(Fraction(4, 2))) is int
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    with pytest.raises(TypeError):
        to_rational(True)
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_matrix_arithmetic():
    a = Matrix([[1, 2], [3, 4]])
    assert a @ Matrix.identity(2) == a
    assert a.inverse() == Matrix([[-2, 1], [Fraction(3, 2), Fraction(-1, 2)]])
    assert a ** -1 @ a == Matrix.identity(2)
    assert (a - a).is_zero
    assert a.T == Matrix([[1, 3], [2, 4]])
    with pytest.raises(Singular):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_rank_examples():
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix.zeros(3)) == 0
    assert rank(kron(jordan_block(0, 2), jordan_block(0, 3))) == 2


def test_kron_examples():
    assert kron(Matrix.identity(2), Matrix.identity(3)) == Matrix.identity(6)
    assert kron(jordan_block(1, 2), jordan_block(1, 1)) == jordan_block(1, 2)
    m = kron(jordan_block(1, 2), jordan_block(1, 3))
    assert m.shape == (6, 6)
    assert full_jordan_type(m, [1]) == JordanType(((1, 4), (1, 2)))
    a = Matrix([[1, 2], [0, 3]])
    assert kron(a, Matrix.identity(2))[0, 2] == 2


def test_jordan_type_at_examples():
    assert jordan_type_at(jordan_block(1, 3), 1) == JordanType(((1, 3),))
    m = kron(jordan_block(0, 2), jordan_block(0, 3))
    assert rank_sequence(m, 0) == [6, 2, 0, 0]
    assert jordan_type_at(m, 0) == JordanType(((0, 2), (0, 2), (0, 1), (0, 1)))
    assert jordan_type_at(Matrix.identity(2), 5) == JordanType()


def test_full_jordan_type_examples():
    assert full_jordan_type(Matrix.identity(3), [1]) == JordanType(((1, 1),) * 3)
    m = kron(jordan_block(2, 2), jordan_block(3, 2))
    assert full_jordan_type(m, [6]) == JordanType(((6, 3), (6, 1)))
    with pytest.raises(IncompleteSpectrum):
        full_jordan_type(Matrix([[1, 0], [0, 2]]), [1])


def test_exp_nilpotent_examples():
    assert exp_nilpotent(Matrix.zeros(3)) == Matrix.identity(3)
    assert exp_nilpotent(jordan_block(0, 2)) == Matrix([[1, 1], [0, 1]])
    assert exp_nilpotent(jordan_block(0, 3)) == Matrix([[1, 1, Fraction(1, 2)], [0, 1, 1], [0, 0, 1]])
    with pytest.raises(NotNilpotent):
        exp_nilpotent(Matrix.identity(2))


def test_nilpotency_index_examples():
    assert nilpotency_index(jordan_block(0, 4)) == 4
    assert nilpotency_index(Matrix.zeros(3)) == 1
    assert nilpotency_index(Matrix.identity(2)) is None


def test_jordan_type_canonical_order_and_json():
    jt = JordanType(((1, 2), (-1, 1), (1, 4), (1, 2)))
    assert jt.blocks == ((-1, 1), (1, 4), (1, 2), (1, 2))
    assert str(jt) == "J(-1,1) ⊕ J(1,4) ⊕ J(1,2)^2"
    assert JordanType.from_json(jt.to_json()) == jt
    assert jt.to_json()[1] == {"eigenvalue": "1", "size": 4, "multiplicity": 1}


def test_row_reduce_pivots():
    rows, pivots = row_reduce([[1, 2, 3], [2, 4, 6], [0, 1, 1]], 3)
    assert pivots == [0, 1]
    assert rows == [[1, 0, 1], [0, 1, 1]]


# ---------------------------------------------------------------- properties

@given(matrices(4, 5))
def test_bareiss_rank_matches_fraction_elimination(m):
    assert rank(m) == fraction_rank(m)


@given(matrices(3, 4, st.fractions(min_value=-3, max_value=3, max_denominator=4)))
def test_rank_with_fraction_entries(m):
    assert rank(m) == fraction_rank(m)


@given(matrices(2, 3), matrices(3, 2))
def test_rank_of_kron_is_product(a, b):
    assert rank(kron(a, b)) == rank(a) * rank(b)


unimodular = st.lists(small, min_size=6, max_size=6).map(
    # upper times lower unitriangular: always invertible over Z
    lambda v: Matrix([[1, v[0], v[1]], [0, 1, v[2]], [0, 0, 1]]) @ Matrix([[1, 0, 0], [v[3], 1, 0], [v[4], v[5], 1]])
)
jordan_sizes = st.lists(st.integers(1, 3), min_size=1, max_size=3).filter(lambda s: sum(s) == 3)


@given(unimodular, st.lists(st.sampled_from([1, -1, 2]), min_size=3, max_size=3), jordan_sizes)
def test_similarity_invariance(p, eigenvalues, sizes):
    blocks = [jordan_block(ev, s) for ev, s in zip(eigenvalues, sizes)]
    m = block_diagonal(blocks)
    conj = p @ m @ p.inverse()
    for mu in set(eigenvalues):
        assert jordan_type_at(conj, mu) == jordan_type_at(m, mu)
    assert full_jordan_type(conj, eigenvalues) == JordanType(tuple(zip(eigenvalues, sizes)))


@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), unimodular)
def test_exp_preserves_nilpotent_jordan_sizes(sizes, p):
    n = block_diagonal([jordan_block(0, s) for s in sizes])
    if n.rows == 3:
        n = p @ n @ p.inverse()
    assert full_jordan_type(exp_nilpotent(n), [1]).sizes == jordan_type_at(n, 0).sizes


@given(matrices(4))
def test_generalized_eigenspace_dimension(m):
    for mu in (0, 1, -1):
        jt = jordan_type_at(m, mu)
        assert jt.dimension == m.rows - rank((m - Matrix.scalar(m.rows, mu)) ** m.rows)


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_exact_addition(a, b):
    assert (to_rational(a) + to_rational(b)) - to_rational(b) == to_rational(a)


def test_kron_all_associates():
    a, b, c = jordan_block(1, 2), jordan_block(2, 2), jordan_block(-1, 1)
    assert kron_all([a, b, c]) == kron(kron(a, b), c) == kron(a, kron(b, c))
