from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from qaffine.construction import GENERATORS, construct_module
from qaffine.linalg import Matrix
from qaffine.relations import (
    check_hat_relations,
    check_intermediate,
    check_sl2_relations,
    check_structure_lemmas,
)
from qaffine.sl2 import irreducible_module
from qaffine.system import gen_direct_sum, gen_evaluation


def sym(M):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in M.entries])


@pytest.fixture(scope="module")
def d2():
    s = gen_direct_sum(gen_evaluation(2, 1, 2), gen_evaluation(2, F(-3, 2), 2))
    m, t = construct_module(s)
    return s, m, t


def test_report_sizes(d2):
    s, m, t = d2
    assert len(check_hat_relations(m)) == 19
    assert len(check_intermediate(t, s)) == 17
    assert check_intermediate(t, s).passed
    assert check_structure_lemmas(t, s).passed


def test_rendered_report_ends_with_overall(d2):
    _, m, _ = d2
    text = check_hat_relations(m).render()
    assert text.splitlines()[-1].split() == ["overall", "PASS"]


@pytest.mark.parametrize("gen", GENERATORS)
def test_tampering_any_generator_is_detected(d2, gen):
    _, m, _ = d2
    X = [list(r) for r in getattr(m, gen).entries]
    X[0][0] += 1
    rep = check_hat_relations(m.replace(**{gen: Matrix(X)}))
    assert not rep.passed
    assert rep.first_failure().name


def test_singular_K_skips_dependent_checks(d2):
    _, m, _ = d2
    rep = check_hat_relations(m.replace(K0=Matrix.zeros(m.dim)))
    assert not rep["K0 invertible"].residual_is_zero
    assert "skipped" in rep["K0 e0+ K0^-1 = q^2 e0+"].detail


@pytest.mark.parametrize("q", [F(2), F(3, 2)])
def test_relations_independently_in_sympy(q):
    # same relations, re-evaluated with sympy's own arithmetic and inverse
    m, _ = construct_module(gen_evaluation(3, F(5, 3), q))
    Q = sympy.Rational(q.numerator, q.denominator)
    K = {0: sym(m.K0), 1: sym(m.K1)}
    ep = {0: sym(m.e0p), 1: sym(m.e1p)}
    em = {0: sym(m.e0m), 1: sym(m.e1m)}
    Z = sympy.zeros(4, 4)
    qi3 = (Q**3 - Q**-3) / (Q - 1 / Q)
    for i in (0, 1):
        j = 1 - i
        assert K[i] * ep[i] * K[i].inv() - Q**2 * ep[i] == Z
        assert K[i] * ep[j] * K[i].inv() - Q**-2 * ep[j] == Z
        assert K[i] * em[i] * K[i].inv() - Q**-2 * em[i] == Z
        assert ep[i] * em[i] - em[i] * ep[i] - (K[i] - K[i].inv()) / (Q - 1 / Q) == Z
        assert ep[i] * em[j] - em[j] * ep[i] == Z
        for x, y in ((ep[i], ep[j]), (em[i], em[j])):
            assert x**3 * y - qi3 * x**2 * y * x + qi3 * x * y * x**2 - y * x**3 == Z


@given(st.sampled_from([1, -1]), st.integers(0, 5), st.sampled_from([F(2), F(-3), F(2, 5)]))
def test_irreducibles_satisfy_sl2_relations(eps, d, q):
    assert check_sl2_relations(irreducible_module(eps, d, q)).passed


def test_corrupted_trace_fails_intermediate(d2):
    s, _, t = d2
    import dataclasses
    bad = dataclasses.replace(t, B=t.B + Matrix.identity(s.dim))
    rep = check_intermediate(bad, s)
    assert not rep.passed
    assert any("B" in c.name for c in rep.failures)
