from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import invertible_matrices
from qaffine.construction import (
    GENERATORS,
    ConstructionError,
    HatModule,
    build_A,
    construct_module,
    direct_sum,
    rl_scale,
)
from qaffine.linalg import Matrix, Subspace, eigenspace
from qaffine.relations import check_hat_relations
from qaffine.system import RLSystem, gen_conjugate, gen_direct_sum, gen_evaluation

M = Matrix


def test_d1_oracle():
    m, t = construct_module(gen_evaluation(1, 1, 2))
    assert t.K == M.diag([F(1, 2), 2])
    assert t.A == M([[F(1, 2), 0], [1, 2]])
    assert t.V == (Subspace.span([(3, -2)]), Subspace.span([(0, 1)]))
    assert t.W == (Subspace.span([(1, 0)]), Subspace.span([(3, -2)]))
    assert t.Wstar == (Subspace.span([(2, -3)]), Subspace.span([(0, 1)]))
    assert t.B == M([[F(1, 2), F(-9, 4)], [0, 2]])
    assert t.Bstar == M([[2, 0], [F(-9, 4), F(1, 2)]])
    assert rl_scale(2) == F(9, 2)
    assert (m.e0m, m.e1m) == (M([[0, 1], [0, 0]]), M([[0, 0], [1, 0]]))
    assert (m.e0p, m.e1p) == (M([[0, 0], [1, 0]]), M([[0, 1], [0, 0]]))
    assert (m.K0, m.K1) == (M.diag([F(1, 2), 2]), M.diag([2, F(1, 2)]))


def test_d0_is_trivial_module():
    m, t = construct_module(gen_evaluation(0, 4, 3))
    assert m.dim == 1 and m.K0 == M.identity(1)
    assert all(getattr(m, g).is_zero() for g in ("e0p", "e0m", "e1p", "e1m"))


@pytest.mark.parametrize("d", range(5))
@pytest.mark.parametrize("q", [F(2), F(-2), F(3, 2), F(1, 3)])
def test_relations_hold(d, q):
    m, t = construct_module(gen_evaluation(d, F(2, 7), q), check=False)
    assert check_hat_relations(m).passed
    assert t.rho == tuple(1 for _ in range(d + 1))


def test_rho_of_direct_sum():
    s = gen_direct_sum(gen_evaluation(2, 1, 2), gen_evaluation(2, 3, 2))
    _, t = construct_module(s)
    assert t.rho == (2, 2, 2)


@pytest.mark.parametrize("d", range(5))
def test_K_R_commutation(d):
    s = gen_evaluation(d, 1, 2)
    assert s.K @ s.R == s.q.pow(2) * (s.R @ s.K)
    assert s.K @ s.L == s.q.pow(-2) * (s.L @ s.K)


def test_A_eigenvalues():
    s = gen_evaluation(3, 1, F(3, 2))
    A = build_A(s)
    for i in range(4):
        assert eigenspace(A, s.q.pow(2 * i - 3)).dim == 1


@settings(max_examples=15)
@given(st.integers(0, 2), st.integers(1, 3).flatmap(lambda n: invertible_matrices(n)))
def test_construction_is_equivariant(d, P):
    s = gen_evaluation(d, 3, 2)
    if P.rows != s.dim:
        P = Matrix.identity(s.dim)
    m, _ = construct_module(s)
    assert construct_module(gen_conjugate(s, P))[0] == m.conjugate(P)


@given(st.integers(1, 3).flatmap(lambda n: invertible_matrices(n)))
def test_conjugate_then_inverse_is_identity(P):
    m, _ = construct_module(gen_evaluation(P.rows - 1, 2, 3))
    assert m.conjugate(P).conjugate(P.inverse()) == m


def test_direct_sum_of_modules_matches_sum_of_systems():
    s1, s2 = gen_evaluation(2, 1, 2), gen_evaluation(2, 5, 2)
    a = construct_module(gen_direct_sum(s1, s2))[0]
    b = direct_sum(construct_module(s1)[0], construct_module(s2)[0])
    assert a == b


def test_unadmissible_system_breaks_a_named_fact():
    s = gen_evaluation(3, 1, 2)
    L = [list(r) for r in s.L.entries]
    L[0][1] *= 2
    bad = RLSystem.unchecked(s.q, s.U, s.R, M(L))
    with pytest.raises(ConstructionError) as info:
        construct_module(bad)
    assert info.value.fact


def test_hat_module_shape_validation():
    I = M.identity(2)
    gens = {g: I for g in GENERATORS}
    gens["e0p"] = M.identity(3)
    with pytest.raises(ValueError):
        HatModule(2, **gens)
