from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from qaffine.construction import construct_module
from qaffine.linalg import Matrix
from qaffine.sl2 import (
    DecompositionFailure,
    Sl2Module,
    block_sum,
    chain_subspace,
    decompose_irreducibles,
    ef_kernel_check,
    irreducible_module,
    raising_freedom,
    render_tags,
    restrict_to_sl2,
    tag_summary,
    weight_spaces,
)
from qaffine.system import gen_evaluation

irreducibles = st.tuples(st.sampled_from([1, -1]), st.integers(0, 4))


def test_irreducible_d2():
    m = irreducible_module(1, 2, 2)
    assert m.k == Matrix.diag([4, 1, F(1, 4)])
    assert m.f == Matrix([[0, 0, 0], [1, 0, 0], [0, F(5, 2), 0]])
    assert m.e == Matrix([[0, F(5, 2), 0], [0, 0, 1], [0, 0, 0]])


def test_worked_decomposition():
    q = 2
    m = block_sum(irreducible_module(1, 2, q), irreducible_module(1, 4, q), irreducible_module(-1, 2, q))
    tags = decompose_irreducibles(m)
    assert tag_summary(tags) == [(1, 4, 1), (1, 2, 1), (-1, 2, 1)]
    assert render_tags(tags) == "(1, 4, 1)\n(1, 2, 1)\n(-1, 2, 1)"
    assert chain_subspace(tags, m.dim).dim == m.dim


@settings(max_examples=25)
@given(st.lists(irreducibles, min_size=1, max_size=4))
def test_decomposition_recovers_summands(parts):
    m = block_sum(*(irreducible_module(e, d, F(3, 2)) for e, d in parts))
    got = sorted(t.key for t in decompose_irreducibles(m))
    assert got == sorted(parts)


@settings(max_examples=25)
@given(st.lists(irreducibles, min_size=1, max_size=3))
def test_raising_map_is_determined(parts):
    m = block_sum(*(irreducible_module(e, d, 2) for e, d in parts))
    assert raising_freedom(m) == 0


def test_restriction_of_evaluation_module():
    m, _ = construct_module(gen_evaluation(3, 1, 2))
    for i in (0, 1):
        assert tag_summary(decompose_irreducibles(restrict_to_sl2(m, i))) == [(1, 3, 1)]


def test_ef_kernel_lemma_on_irreducible():
    m = irreducible_module(-1, 3, 2)
    top = (1, 0, 0, 0)
    assert ef_kernel_check(m, top, -1, 3)
    with pytest.raises(ValueError):
        ef_kernel_check(m, (0, 1, 0, 0), -1, 3)  # weight -q, not -q^3


def test_nondiagonalizable_k_is_reported():
    k = Matrix([[2, 1], [0, 2]])
    m = Sl2Module(2, k, Matrix.zeros(2), Matrix.zeros(2))
    with pytest.raises(DecompositionFailure):
        weight_spaces(m)


def test_non_completely_reducible_is_reported():
    # k = diag(q^-1, q) with e = f = 0: the weight q^-1 vector is a highest weight of negative degree
    m = Sl2Module(2, Matrix.diag([F(1, 2), 2]), Matrix.zeros(2), Matrix.zeros(2))
    with pytest.raises(DecompositionFailure):
        decompose_irreducibles(m)
