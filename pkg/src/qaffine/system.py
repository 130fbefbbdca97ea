"""Graded decompositions with raising and lowering maps.

An :class:`RLSystem` is the input of the construction: a decomposition
``U_0, ..., U_d`` of Q^n together with maps R (raising the grade by one) and
L (lowering it by one) subject to six admission clauses:

(i)   R U_i ⊆ U_{i+1}, R U_d = 0
(ii)  L U_i ⊆ U_{i-1}, L U_0 = 0
(iii) R^(d-2i) maps U_i bijectively onto U_{d-i}  (0 <= i <= d/2)
(iv)  L^(d-2i) maps U_{d-i} bijectively onto U_i  (0 <= i <= d/2)
(v)   R^3 L - [3] R^2 L R + [3] R L R^2 - L R^3 = 0
(vi)  L^3 R - [3] L^2 R L + [3] L R L^2 - R L^3 = 0
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import Sequence

from .linalg import (
    DimensionError,
    Matrix,
    QParam,
    Subspace,
    _coerce,
    is_direct_sum,
    matrix_with_eigenspaces,
    q_int,
    q_serre_residual,
    restrict_power_bijection,
)
from .report import Check, VerificationReport

CLAUSES = ("(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)")


class DecompositionError(ValueError):
    """The subspaces do not form a decomposition (structural failure)."""


class AssumptionError(ValueError):
    """A system failed admission; ``report`` names the failed clauses."""

    def __init__(self, report: VerificationReport):
        self.report = report
        failed = ", ".join(c.name for c in report.failures)
        super().__init__(f"system fails clause(s): {failed}")


@dataclass(frozen=True)
class Decomposition:
    ambient: int
    spaces: tuple[Subspace, ...]

    def __post_init__(self):
        spaces = tuple(self.spaces)
        object.__setattr__(self, "spaces", spaces)
        if not spaces:
            raise DecompositionError("a decomposition needs at least one subspace")
        if any(s.ambient != self.ambient for s in spaces):
            raise DecompositionError("subspaces live in different ambient spaces")
        for i, s in enumerate(spaces):
            if s.dim == 0:
                raise DecompositionError(f"U_{i} is the zero subspace")
        if not is_direct_sum(spaces):
            raise DecompositionError("the sum of the subspaces is not direct")
        if sum(s.dim for s in spaces) != self.ambient:
            raise DecompositionError("the subspaces do not span the ambient space")

    @classmethod
    def of(cls, spaces: Sequence[Subspace]) -> "Decomposition":
        spaces = tuple(spaces)
        if not spaces:
            raise DecompositionError("a decomposition needs at least one subspace")
        return cls(spaces[0].ambient, spaces)

    @property
    def d(self) -> int:
        return len(self.spaces) - 1

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.spaces)

    def __getitem__(self, i: int) -> Subspace:
        """``U_i``, with ``U_{-1} = U_{d+1} = 0``."""
        if i < 0 or i > self.d:
            return Subspace.zero(self.ambient)
        return self.spaces[i]

    def __iter__(self):
        return iter(self.spaces)

    def __len__(self):
        return len(self.spaces)

    def reversed(self) -> "Decomposition":
        return Decomposition(self.ambient, self.spaces[::-1])


def corresponding_k(U: Decomposition, q) -> Matrix:
    """The operator acting as ``q^(2i-d)`` on ``U_i``."""
    q = QParam.of(q)
    K = matrix_with_eigenspaces(U.spaces, [q.pow(2 * i - U.d) for i in range(U.d + 1)])
    if not K.is_invertible():
        raise ArithmeticError("corresponding K is singular")  # unreachable for q != 0
    return K


@dataclass(frozen=True)
class RLSystem:
    """Decomposition plus raising/lowering maps.

    Construction validates all six clauses and raises :class:`AssumptionError`
    on failure; pass ``check=False`` (or use :meth:`unchecked`) to build a
    system only for feeding it to :func:`validate_assumptions`.
    """

    q: QParam
    U: Decomposition
    R: Matrix
    L: Matrix
    check: InitVar[bool] = True

    def __post_init__(self, check):
        object.__setattr__(self, "q", QParam.of(self.q))
        if check:
            report = validate_assumptions(self)
            if not report.passed:
                raise AssumptionError(report)

    @classmethod
    def unchecked(cls, q, U: Decomposition, R: Matrix, L: Matrix) -> "RLSystem":
        return cls(q, U, R, L, check=False)

    @property
    def d(self) -> int:
        return self.U.d

    @property
    def dim(self) -> int:
        return self.U.ambient

    @property
    def K(self) -> Matrix:
        return corresponding_k(self.U, self.q)

    def swapped(self) -> "RLSystem":
        """The system with the grading reversed and the roles of R, L exchanged."""
        return RLSystem(self.q, self.U.reversed(), self.L, self.R, check=False)


def _maps_into(M: Matrix, source: Subspace, target: Subspace) -> bool:
    return target.contains(source.image(M))


def validate_assumptions(sys: RLSystem) -> VerificationReport:
    """One check for the structure and one per admission clause.

    Every clause is evaluated even when an earlier one fails; only a
    structural failure (mismatched shapes) prevents the algebraic checks.
    """
    n = sys.U.ambient
    d = sys.U.d
    shape_ok = sys.R.shape == (n, n) and sys.L.shape == (n, n)
    checks = [Check.condition(
        "structure", shape_ok,
        f"R is {sys.R.rows}x{sys.R.cols}, L is {sys.L.rows}x{sys.L.cols}, U lives in dimension {n}")]
    if not shape_ok:
        checks += [Check.condition(c, False, "skipped: structural failure") for c in CLAUSES]
        return VerificationReport(tuple(checks))

    U, R, L = sys.U, sys.R, sys.L

    bad = [i for i in range(d + 1) if not _maps_into(R, U[i], U[i + 1])]
    checks.append(Check.condition("(i)", not bad, f"R U_i not inside U_(i+1) for i in {bad}"))

    bad = [i for i in range(d + 1) if not _maps_into(L, U[i], U[i - 1])]
    checks.append(Check.condition("(ii)", not bad, f"L U_i not inside U_(i-1) for i in {bad}"))

    bad = [i for i in range(d // 2 + 1)
           if not restrict_power_bijection(R, d - 2 * i, U[i], U[d - i])]
    checks.append(Check.condition("(iii)", not bad, f"R^(d-2i): U_i -> U_(d-i) not bijective for i in {bad}"))

    bad = [i for i in range(d // 2 + 1)
           if not restrict_power_bijection(L, d - 2 * i, U[d - i], U[i])]
    checks.append(Check.condition("(iv)", not bad, f"L^(d-2i): U_(d-i) -> U_i not bijective for i in {bad}"))

    checks.append(Check.residual("(v)", q_serre_residual(R, L, sys.q)))
    checks.append(Check.residual("(vi)", q_serre_residual(L, R, sys.q)))
    return VerificationReport(tuple(checks))


# ---------------------------------------------------------------------------
# generators

def _standard_lines(n: int) -> Decomposition:
    return Decomposition(n, tuple(Subspace.coordinate(n, [i]) for i in range(n)))


def gen_evaluation(d: int, a, q) -> RLSystem:
    """Lines ``U_i = span{u_i}`` with ``R u_i = [i+1] u_{i+1}``, ``L u_i = a [d-i+1] u_{i-1}``."""
    if d < 0:
        raise ValueError("diameter must be nonnegative")
    q = QParam.of(q)
    a = _coerce(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    n = d + 1
    R = [[0] * n for _ in range(n)]
    L = [[0] * n for _ in range(n)]
    for i in range(d):
        R[i + 1][i] = q_int(i + 1, q)
    for i in range(1, d + 1):
        L[i - 1][i] = a * q_int(d - i + 1, q)
    return RLSystem(q, _standard_lines(n), Matrix(R), Matrix(L))


def gen_direct_sum(s1: RLSystem, s2: RLSystem) -> RLSystem:
    if s1.q != s2.q:
        raise ValueError("direct sum needs equal q")
    if s1.d != s2.d:
        raise ValueError("direct sum needs equal diameters")
    n1, n2 = s1.dim, s2.dim
    spaces = []
    for A, B in zip(s1.U, s2.U):
        vecs = [v + (0,) * n2 for v in A.vectors()] + [(0,) * n1 + v for v in B.vectors()]
        spaces.append(Subspace.span(vecs, ambient=n1 + n2))
    return RLSystem(s1.q, Decomposition(n1 + n2, tuple(spaces)),
                    Matrix.block_diag(s1.R, s2.R), Matrix.block_diag(s1.L, s2.L))


def gen_conjugate(sys: RLSystem, P: Matrix) -> RLSystem:
    """Change of basis by invertible P: ``R -> P R P^-1``, ``U_i -> P U_i``."""
    if P.shape != (sys.dim, sys.dim):
        raise DimensionError("P must be square of the system's dimension")
    P_inv = P.inverse()  # raises SingularMatrixError
    U = Decomposition(sys.dim, tuple(s.image(P) for s in sys.U))
    return RLSystem(sys.q, U, P @ sys.R @ P_inv, P @ sys.L @ P_inv)
