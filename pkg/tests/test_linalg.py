from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import invertible_matrices, matrices, square_matrices
from qaffine.linalg import (
    DimensionError,
    Matrix,
    QParam,
    SingularMatrixError,
    Subspace,
    eigenspace,
    format_scalar,
    is_direct_sum,
    kernel,
    matrix_with_eigenspaces,
    parse_scalar,
    q_exponent,
    q_int,
    q_power_eigenspaces,
    q_serre_residual,
    restrict_power_bijection,
    restricted_action,
    rref,
    subspace_intersect,
    subspace_sum,
)


def to_sympy(M):
    return sympy.Matrix(M.rows, M.cols, [sympy.Rational(x.numerator, x.denominator)
                                          for row in M.entries for x in row])


# scalars and q

@pytest.mark.parametrize("text,value", [("0", F(0)), ("-7", F(-7)), ("3/4", F(3, 4)),
                                        ("-10/6", F(-5, 3)), (" 2 ", F(2))])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["1/0", "1.5", "", "a", "1/-2", "--1", "1e3"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


@given(st.fractions(max_denominator=1000))
def test_scalar_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@pytest.mark.parametrize("bad", [0, 1, -1])
def test_qparam_rejects_degenerate(bad):
    with pytest.raises(ValueError):
        QParam(F(bad))


def test_q_integers_at_two():
    assert [q_int(n, 2) for n in range(4)] == [0, 1, F(5, 2), F(21, 4)]


@given(st.sampled_from([F(2), F(3, 2), F(5), F(-2), F(1, 3)]), st.integers(1, 12))
def test_q_int_nonzero_and_symmetric_in_q(q, n):
    assert q_int(n, q) != 0
    assert q_int(n, q) == q_int(n, 1 / q)


def test_q_int_rejects_negative():
    with pytest.raises(ValueError):
        q_int(-1, 2)


@given(st.sampled_from([F(2), F(3, 2), F(7, 3)]), st.integers(-6, 6), st.sampled_from([1, -1]))
def test_q_exponent_inverts_powers(q, j, sign):
    assert q_exponent(sign * QParam(q).pow(j), q) == (sign, j)


def test_q_exponent_rejects_non_powers():
    assert q_exponent(F(3), 2) is None
    assert q_exponent(F(0), 2) is None


# matrices

def test_matrix_basics():
    M = Matrix([[1, 2], [3, 4]])
    assert M.shape == (2, 2)
    assert M @ Matrix.identity(2) == M
    assert M.T == Matrix([[1, 3], [2, 4]])
    assert M.inverse() == Matrix([[-2, 1], [F(3, 2), F(-1, 2)]])
    assert M ** -1 @ M == Matrix.identity(2)
    assert M ** 0 == Matrix.identity(2)
    with pytest.raises(DimensionError):
        M @ Matrix.zeros(3)


def test_singular_inverse_raises():
    with pytest.raises(SingularMatrixError):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_matrix_is_hashable_and_immutable():
    M = Matrix([[1, F(1, 2)]])
    assert hash(M) == hash(Matrix([[1, F(1, 2)]]))
    assert {M: 1}[Matrix([[1, F(2, 4)]])] == 1


@given(matrices())
def test_rank_matches_sympy(M):
    assert M.rank() == to_sympy(M).rank()


@given(matrices())
def test_rref_matches_sympy(M):
    R, pivots = rref(M)
    S, spivots = to_sympy(M).rref()
    assert pivots == tuple(spivots)
    assert to_sympy(R) == S


@given(matrices())
def test_rank_nullity(M):
    K = kernel(M)
    assert K.dim + M.rank() == M.cols
    for v in K.vectors():
        assert all(x == 0 for x in M.apply(v))


@given(matrices())
def test_kernel_matches_sympy(M):
    theirs = to_sympy(M).nullspace()
    assert kernel(M) == Subspace.span([[F(int(x.p), int(x.q)) for x in v] for v in theirs],
                                      ambient=M.cols)


@given(st.integers(1, 4).flatmap(lambda n: invertible_matrices(n)))
def test_inverse_is_two_sided(P):
    n = P.rows
    assert P @ P.inverse() == Matrix.identity(n) == P.inverse() @ P


# subspaces

def test_canonical_form_has_identity_pivot_block():
    S = Subspace.span([(2, 4, 6), (1, 0, 1)])
    B = S.basis
    for j, r in enumerate(S.pivot_rows):
        assert [B[r, c] for c in range(B.cols)] == [int(c == j) for c in range(B.cols)]


@given(matrices(rows=4), st.integers(1, 4).flatmap(lambda n: invertible_matrices(n)))
def test_canonical_form_ignores_choice_of_basis(M, P):
    # column operations by an invertible P do not change the span
    if P.rows != M.cols:
        return
    assert Subspace.from_matrix(M) == Subspace.from_matrix(M @ P)


@given(matrices(rows=5, max_cols=4), matrices(rows=5, max_cols=4), matrices(rows=5, max_cols=4))
def test_modular_law(a, b, c):
    A, B, C = (Subspace.from_matrix(x) for x in (a, b, c))
    # A <= C  =>  A + (B n C) = (A + B) n C ; force A <= C by replacing C with A + C
    C = subspace_sum([A, C])
    assert subspace_sum([A, subspace_intersect(B, C)]) == subspace_intersect(subspace_sum([A, B]), C)


@given(matrices(rows=5, max_cols=4), matrices(rows=5, max_cols=4))
def test_dimension_formula(a, b):
    A, B = Subspace.from_matrix(a), Subspace.from_matrix(b)
    assert (subspace_sum([A, B]).dim + subspace_intersect(A, B).dim) == A.dim + B.dim


def test_direct_sum():
    e = [Subspace.coordinate(3, [i]) for i in range(3)]
    assert is_direct_sum(e)
    assert not is_direct_sum(e + [Subspace.span([(1, 1, 0)])])


@given(square_matrices(max_n=4), st.integers(-2, 2))
def test_eigenspace_is_kernel_of_shift(M, lam):
    E = eigenspace(M, lam)
    assert E == kernel(M.shifted(lam))


def test_matrix_with_eigenspaces():
    spaces = [Subspace.span([(1, 1)]), Subspace.span([(0, 1)])]
    M = matrix_with_eigenspaces(spaces, [F(1, 2), 2])
    assert eigenspace(M, F(1, 2)) == spaces[0]
    assert eigenspace(M, 2) == spaces[1]


def test_restricted_action_and_coordinates():
    M = Matrix([[2, 0, 0], [0, 3, 0], [1, 0, 5]])
    S = Subspace.span([(0, 1, 0)])
    assert restricted_action(M, S) == Matrix([[3]])
    with pytest.raises(ValueError):
        restricted_action(M, Subspace.span([(1, 0, 0)]))


def test_restrict_power_bijection():
    R = Matrix([[0, 0], [1, 0]])
    e0, e1 = Subspace.coordinate(2, [0]), Subspace.coordinate(2, [1])
    assert restrict_power_bijection(R, 1, e0, e1)
    assert not restrict_power_bijection(R, 1, e1, e0)


def test_q_power_eigenspaces_flags():
    q = QParam(F(2))
    spaces, complete, diag = q_power_eigenspaces(Matrix.diag([2, F(1, 2), -4]), q)
    assert complete and diag and set(spaces) == {(1, 1), (1, -1), (-1, 2)}
    _, complete, diag = q_power_eigenspaces(Matrix([[2, 1], [0, 2]]), q)
    assert complete and not diag
    _, complete, _ = q_power_eigenspaces(Matrix.diag([3]), q)
    assert not complete


def test_q_serre_residual_vanishes_on_commuting_pair():
    x = Matrix.diag([1, 2])
    assert q_serre_residual(x, Matrix.diag([3, 5]), 2).is_zero()
