from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from framed_moduli.errors import FieldMismatchError, ShapeMismatch, SingularMatrixError, SubsetSizeMismatch
from framed_moduli.kernel import GF, QQ, Field, Matrix, RowSpace, invert, kernel_basis, minor_det, rref_rank, vecmat


def mat(rows, field=QQ):
    return Matrix(field, rows)


@st.composite
def rational_matrices(draw, max_dim=4, square=False):
    r = draw(st.integers(1, max_dim))
    c = r if square else draw(st.integers(1, max_dim))
    entries = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=r * c, max_size=r * c))
    return Matrix(QQ, [entries[i * c:(i + 1) * c] for i in range(r)], c)


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix(m.nrows, m.ncols, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))


def test_rref_identity():
    red, rank, piv = rref_rank(Matrix.identity(2))
    assert rank == 2 and piv == (0, 1) and red == Matrix.identity(2)


def test_rank_proportional_rows_rational_and_mod3():
    assert rref_rank(mat([[1, 2], [2, 4]]))[1] == 1
    assert rref_rank(mat([[1, 2], [2, 4]], GF(3)))[1] == 1


def test_invert_examples():
    assert invert(mat([[1, 0], [1, 2]])) == mat([[1, 0], [Fraction(-1, 2), Fraction(1, 2)]])
    assert invert(Matrix.identity(3)) == Matrix.identity(3)
    with pytest.raises(SingularMatrixError):
        invert(mat([[1, 2], [2, 4]]))


def test_minor_det_examples():
    m = mat([[1, 0], [0, 1], [5, 7]])
    assert minor_det(m, [0, 1]) == 1
    assert minor_det(m, [0, 2]) == 7
    assert minor_det(m, [1, 2]) == -5
    with pytest.raises(SubsetSizeMismatch):
        minor_det(m, [0])


def test_kernel_basis_examples():
    assert kernel_basis(Matrix.identity(2)) == []
    assert len(kernel_basis(Matrix.zeros(2, 2))) == 2
    (v,) = kernel_basis(mat([[1, 0], [0, 0]]))
    assert v.column(0) == (0, 1)


def test_scalars_are_canonical():
    f = GF(7)
    assert f.coerce(-1) == 6
    assert f.coerce(Fraction(1, 2)) == 4
    assert QQ.parse("-6/14") == Fraction(-3, 7)
    with pytest.raises(ValueError):
        QQ.parse("0.5")
    with pytest.raises(ValueError):
        Field(4)


def test_field_mixing_is_an_error():
    with pytest.raises(FieldMismatchError):
        mat([[1]]) @ mat([[1]], GF(5))
    with pytest.raises(FieldMismatchError):
        mat([[1]]) + mat([[1]], GF(5))


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        mat([[1, 2]]) @ mat([[1, 2]])
    with pytest.raises(ShapeMismatch):
        Matrix(QQ, [[1, 2], [3]])


def test_field_descriptors_round_trip():
    for f in (QQ, GF(2), GF(101)):
        assert Field.from_descriptor(f.descriptor()) == f
    assert Field.from_spec("prime:5") == GF(5)
    assert Field.from_spec("rational") == QQ


@given(rational_matrices(square=True))
def test_inverse_times_matrix_is_identity(m):
    if m.rank < m.nrows:
        with pytest.raises(SingularMatrixError):
            m.inverse()
    else:
        assert m.inverse() @ m == Matrix.identity(m.nrows)
        assert m @ m.inverse() == Matrix.identity(m.nrows)


@given(rational_matrices())
def test_rank_nullity(m):
    assert m.rank + len(m.kernel_basis()) == m.ncols
    for v in m.kernel_basis():
        assert (m @ v).is_zero()


@given(rational_matrices())
def test_rank_matches_sympy(m):
    assert m.rank == to_sympy(m).rank()


@given(rational_matrices(square=True))
def test_det_matches_sympy(m):
    d = to_sympy(m).det()
    assert m.det() == Fraction(int(d.p), int(d.q))


def test_minor_det_agrees_with_rref_pivot_product():
    rng = random.Random(4)
    for _ in range(100):
        m = Matrix(QQ, [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4)] for _ in range(4)])
        assert minor_det(m, [0, 1, 2, 3]) == m.det_by_rref()


def _rank_mod_p_by_minors(entries, r, c, p):
    """Largest k with a k x k minor that is nonzero mod p, via sympy integer determinants."""
    full = sympy.Matrix(r, c, entries)
    for k in range(min(r, c), 0, -1):
        for rows in itertools.combinations(range(r), k):
            for cols in itertools.combinations(range(c), k):
                if full.extract(list(rows), list(cols)).det() % p:
                    return k
    return 0


@given(st.integers(1, 4), st.integers(1, 4), st.sampled_from([2, 3, 5]), st.data())
def test_prime_field_rank_matches_minor_oracle(r, c, p, data):
    entries = data.draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    m = Matrix(GF(p), [entries[i * c:(i + 1) * c] for i in range(r)], c)
    assert m.rank == _rank_mod_p_by_minors(entries, r, c, p)
    assert m.rank + len(m.kernel_basis()) == c
    for v in m.kernel_basis():
        assert (m @ v).is_zero()


def test_vecmat_matches_matrix_product():
    m = mat([[0, 1], [2, 3]])
    assert vecmat((1, 0), m) == (0, 1)
    assert vecmat((0, 1), m @ m) == (6, 11)


def test_rowspace_tracks_rank():
    rs = RowSpace(QQ, 3)
    assert rs.add((1, 2, 3))
    assert not rs.add((2, 4, 6))
    assert rs.add((0, 0, 1))
    assert (1, 2, 0) in rs
    assert rs.rank == 2
    assert rs.matrix().rank == 2
