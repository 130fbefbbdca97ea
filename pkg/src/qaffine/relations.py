"""Exact verifiers for the defining relations and the construction's identities.

Every check computes a residual matrix and tests it for exact zero; there
is no tolerance anywhere.
"""

from __future__ import annotations

from .construction import ConstructionTrace, HatModule
from .linalg import (
    Matrix,
    QParam,
    SingularMatrixError,
    Subspace,
    eigenspace,
    is_direct_sum,
    q_serre_residual,
    subspace_intersect,
    subspace_sum,
)
from .report import Check, VerificationReport
from .system import RLSystem


def _inverse_or_none(M: Matrix) -> Matrix | None:
    try:
        return M.inverse()
    except (SingularMatrixError, ValueError):
        return None


def _bracket_rhs(K: Matrix, K_inv: Matrix, q) -> Matrix:
    """``(K - K^-1) / (q - q^-1)``."""
    qv = QParam.of(q).value
    return (K - K_inv) / (qv - 1 / qv)


def check_hat_relations(m: HatModule) -> VerificationReport:
    """All defining relations, one named check per index and sign choice."""
    q = m.q
    q2 = q.pow(2)
    K = {0: m.K0, 1: m.K1}
    Kinv = {i: _inverse_or_none(K[i]) for i in (0, 1)}
    e = {(0, "+"): m.e0p, (0, "-"): m.e0m, (1, "+"): m.e1p, (1, "-"): m.e1m}
    checks = [Check.condition(f"K{i} invertible", Kinv[i] is not None, f"K{i} is singular")
              for i in (0, 1)]
    checks.append(Check.residual("K0 K1 = K1 K0", m.K0 @ m.K1 - m.K1 @ m.K0))

    singular = Kinv[0] is None or Kinv[1] is None

    def skip(name):
        return Check.condition(name, False, "skipped: singular K")

    for i in (0, 1):
        for s, power in (("+", q2), ("-", 1 / q2)):
            name = f"K{i} e{i}{s} K{i}^-1 = q^{'2' if s == '+' else '-2'} e{i}{s}"
            checks.append(skip(name) if singular else
                          Check.residual(name, K[i] @ e[i, s] @ Kinv[i] - power * e[i, s]))
    for i in (0, 1):
        j = 1 - i
        for s, power in (("+", 1 / q2), ("-", q2)):
            name = f"K{i} e{j}{s} K{i}^-1 = q^{'-2' if s == '+' else '2'} e{j}{s}"
            checks.append(skip(name) if singular else
                          Check.residual(name, K[i] @ e[j, s] @ Kinv[i] - power * e[j, s]))
    for i in (0, 1):
        name = f"e{i}+ e{i}- - e{i}- e{i}+ = (K{i} - K{i}^-1)/(q - q^-1)"
        if singular:
            checks.append(skip(name))
            continue
        lhs = e[i, "+"] @ e[i, "-"] - e[i, "-"] @ e[i, "+"]
        checks.append(Check.residual(name, lhs - _bracket_rhs(K[i], Kinv[i], q)))
    checks.append(Check.residual("e0+ e1- = e1- e0+", m.e0p @ m.e1m - m.e1m @ m.e0p))
    checks.append(Check.residual("e0- e1+ = e1+ e0-", m.e0m @ m.e1p - m.e1p @ m.e0m))
    for s in ("+", "-"):
        for i in (0, 1):
            j = 1 - i
            checks.append(Check.residual(f"q-Serre e{i}{s} on e{j}{s}",
                                         q_serre_residual(e[i, s], e[j, s], q)))
    return VerificationReport(tuple(checks))


def check_sl2_relations(m) -> VerificationReport:
    """The four relations ``k k^-1 = 1``, ``ke = q^2 ek``, ``kf = q^-2 fk``,
    ``ef - fe = (k - k^-1)/(q - q^-1)`` on an object with ``q, k, e, f``."""
    q = QParam.of(m.q)
    k_inv = _inverse_or_none(m.k)
    checks = [Check.condition("k invertible", k_inv is not None, "k is singular"),
              Check.residual("ke = q^2 ek", m.k @ m.e - q.pow(2) * (m.e @ m.k)),
              Check.residual("kf = q^-2 fk", m.k @ m.f - q.pow(-2) * (m.f @ m.k))]
    name = "ef - fe = (k - k^-1)/(q - q^-1)"
    if k_inv is None:
        checks.append(Check.condition(name, False, "skipped: singular k"))
    else:
        checks.append(Check.residual(name, m.e @ m.f - m.f @ m.e - _bracket_rhs(m.k, k_inv, q)))
    return VerificationReport(tuple(checks))


def check_intermediate(trace: ConstructionTrace, sys: RLSystem) -> VerificationReport:
    """The 17 operator identities among A, A*, B, B*, K, R, L, r, l."""
    q = sys.q
    qv = q.value
    A, As, B, Bs, K = trace.A, trace.Astar, trace.B, trace.Bstar, trace.K
    R, L, r, l = sys.R, sys.L, trace.r, trace.l
    K_inv = K.inverse()
    n = K.rows
    I = Matrix.identity(n)
    q2 = q.pow(2)

    def qc(X, Y):
        return (qv * (X @ Y) - (Y @ X) / qv) / (qv - 1 / qv) - I

    checks = [
        Check.residual("(qAB - q^-1 BA)/(q - q^-1) = I", qc(A, B)),
        Check.residual("(qA*B* - q^-1 B*A*)/(q - q^-1) = I", qc(As, Bs)),
        Check.residual("(qBA* - q^-1 A*B)/(q - q^-1) = I", qc(B, As)),
        Check.residual("(qB*A - q^-1 AB*)/(q - q^-1) = I", qc(Bs, A)),
        Check.residual("(qBK^-1 - q^-1 K^-1 B)/(q - q^-1) = I", qc(B, K_inv)),
        Check.residual("(qB*K - q^-1 KB*)/(q - q^-1) = I", qc(Bs, K)),
        Check.residual("q-Serre B on B*", q_serre_residual(B, Bs, q)),
        Check.residual("q-Serre B* on B", q_serre_residual(Bs, B, q)),
        Check.residual("K K^-1 = K^-1 K = I", K @ K_inv - I, K_inv @ K - I),
        Check.residual("KR = q^2 RK, KL = q^-2 LK",
                       K @ R - q2 * (R @ K), K @ L - (L @ K) / q2),
        Check.residual("Kr = q^2 rK, Kl = q^-2 lK",
                       K @ r - q2 * (r @ K), K @ l - (l @ K) / q2),
        Check.residual("rR = Rr, lL = Ll", r @ R - R @ r, l @ L - L @ l),
        Check.residual("lR - Rl = (K^-1 - K)/(q - q^-1), rL - Lr = (K - K^-1)/(q - q^-1)",
                       l @ R - R @ l - _bracket_rhs(K_inv, K, q),
                       r @ L - L @ r - _bracket_rhs(K, K_inv, q)),
        Check.residual("q-Serre R on L", q_serre_residual(R, L, q)),
        Check.residual("q-Serre L on R", q_serre_residual(L, R, q)),
        Check.residual("q-Serre r on l", q_serre_residual(r, l, q)),
        Check.residual("q-Serre l on r", q_serre_residual(l, r, q)),
    ]
    return VerificationReport(tuple(checks))


def _span(spaces, lo, hi, n) -> Subspace:
    chunk = [spaces[h] for h in range(max(lo, 0), min(hi, len(spaces) - 1) + 1)]
    return subspace_sum(chunk) if chunk else Subspace.zero(n)


def check_structure_lemmas(trace: ConstructionTrace, sys: RLSystem) -> VerificationReport:
    """Per-index checks of the subspace facts the construction relies on."""
    d, n, q = sys.d, sys.dim, sys.q
    U = sys.U.spaces
    V, Vs, W, Ws, H = trace.V, trace.Vstar, trace.W, trace.Wstar, trace.H
    rho = sys.U.dims
    K_inv = trace.K.inverse()
    checks: list[Check] = []

    for label, M, sign, spaces in (("A", trace.A, 1, V), ("A*", trace.Astar, -1, Vs)):
        probed = [eigenspace(M, q.pow(sign * (2 * i - d))) for i in range(d + 1)]
        dims = tuple(s.dim for s in probed)
        ok = sum(dims) == n and dims == rho and tuple(probed) == tuple(spaces)
        checks.append(Check.condition(
            f"spectrum of {label} is q^(2i-d) with multiplicity rho_i", ok,
            f"eigenspace dimensions {list(dims)}, rho {list(rho)}"))

    for i in range(d + 1):
        checks.append(Check.condition(
            f"U_i+...+U_d = V_i+...+V_d [i={i}]", _span(U, i, d, n) == _span(V, i, d, n)))
    for i in range(d + 1):
        img = V[i].image(K_inv.shifted(q.pow(d - 2 * i)))
        target = V[i + 1] if i < d else Subspace.zero(n)
        checks.append(Check.condition(
            f"(K^-1 - q^(d-2i)) V_i in V_(i+1) [i={i}]", target.contains(img)))
    for i in range(d):
        w = subspace_intersect(_span(U, 0, i, n), _span(V, 0, d - 1 - i, n))
        checks.append(Check.condition(f"W(i,d-1-i) = 0 [i={i}]", w.dim == 0, f"dimension {w.dim}"))
    for i in range(d // 2 + 1):
        rhs = subspace_intersect(_span(V, i, d - i, n), U[i])
        checks.append(Check.condition(f"H_i = (V_i+...+V_(d-i)) cap U_i [i={i}]", H[i] == rhs))
    for i in range(d + 1):
        parts = [H[j].image(sys.R ** (i - j)) for j in range(min(i, d - i) + 1)]
        ok = is_direct_sum(parts) and subspace_sum(parts) == U[i]
        checks.append(Check.condition(f"U_i = sum of R^(i-j) H_j, direct [i={i}]", ok))
    parts = [H[i].image(sys.R ** j) for i in range(d // 2 + 1) for j in range(d - 2 * i + 1)]
    ok = is_direct_sum(parts) and subspace_sum(parts).dim == n
    checks.append(Check.condition("V = sum of R^j H_i, direct", ok))

    checks.append(Check.condition(
        "W_0..W_d is a decomposition",
        is_direct_sum(W) and sum(w.dim for w in W) == n and all(w.dim for w in W)))
    checks.append(Check.condition(
        "W*_0..W*_d is a decomposition",
        is_direct_sum(Ws) and sum(w.dim for w in Ws) == n and all(w.dim for w in Ws)))
    for i in range(d + 1):
        checks.append(Check.condition(
            f"W_0+...+W_i = U_0+...+U_i [i={i}]", _span(W, 0, i, n) == _span(U, 0, i, n)))
    for i in range(d + 1):
        checks.append(Check.condition(
            f"W_i+...+W_d = V_0+...+V_(d-i) [i={i}]", _span(W, i, d, n) == _span(V, 0, d - i, n)))
    for i in range(d + 1):
        ok = W[i].dim == rho[i] == rho[d - i] == trace.rho[i]
        checks.append(Check.condition(
            f"dim W_i = rho_i = rho_(d-i) [i={i}]", ok, f"dim W_i = {W[i].dim}, rho = {list(rho)}"))
    for i in range(d + 1):
        checks.append(Check.condition(f"dim W*_i = rho_i [i={i}]", Ws[i].dim == rho[i]))
    return VerificationReport(tuple(checks))
