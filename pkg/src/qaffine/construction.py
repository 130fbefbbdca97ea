"""From an admissible RL-system to a module over the quantum affine algebra.

The pipeline, in order:

1. ``A = K + R`` is diagonalizable with eigenvalues ``q^(2i-d)``; its
   eigenspaces are ``V_0, ..., V_d`` with ``dim V_i = dim U_i``.
2. ``W_i = (U_0 + ... + U_i) ∩ (V_0 + ... + V_{d-i})`` is again a
   decomposition, with ``dim W_i = dim U_i``.
3. The same with R and L exchanged: ``A* = K^-1 + L``, eigenspaces ``V*_i``
   for ``q^(d-2i)``, and ``W*_i = (U_i + ... + U_d) ∩ (V*_{d-i} + ... + V*_d)``.
4. ``B`` acts as ``q^(2i-d)`` on ``W_i`` and ``B*`` as ``q^(d-2i)`` on ``W*_i``.
5. ``r = (I - K B*) / (q (q - q^-1)^2)`` and ``l = (I - K^-1 B) / (q (q - q^-1)^2)``.

The module is ``e0- = L, e1- = R, e0+ = r, e1+ = l, K0 = K, K1 = K^-1``.
With ``check=True`` every stage asserts the structural fact that licenses
the next one and raises :class:`ConstructionError` naming it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    Matrix,
    QParam,
    Subspace,
    eigenspace,
    is_direct_sum,
    kernel,
    matrix_with_eigenspaces,
    subspace_intersect,
    subspace_sum,
)
from .system import RLSystem, corresponding_k


class ConstructionError(AssertionError):
    """A structural fact of the construction failed to hold."""

    def __init__(self, fact: str, detail: str = ""):
        self.fact = fact
        super().__init__(f"{fact}: {detail}" if detail else fact)


GENERATORS = ("e0p", "e0m", "e1p", "e1m", "K0", "K1")


@dataclass(frozen=True)
class HatModule:
    """Action matrices of the Chevalley generators ``e_i^±, K_i`` (i = 0, 1).

    Inverses of ``K0`` and ``K1`` are computed on demand, never stored.
    """

    q: QParam
    e0p: Matrix
    e0m: Matrix
    e1p: Matrix
    e1m: Matrix
    K0: Matrix
    K1: Matrix

    def __post_init__(self):
        object.__setattr__(self, "q", QParam.of(self.q))
        n = self.K0.rows
        for name in GENERATORS:
            if getattr(self, name).shape != (n, n):
                raise ValueError(f"{name} is not {n}x{n}")

    @property
    def dim(self) -> int:
        return self.K0.rows

    def generators(self) -> dict[str, Matrix]:
        return {name: getattr(self, name) for name in GENERATORS}

    def map(self, fn) -> "HatModule":
        return HatModule(self.q, **{k: fn(v) for k, v in self.generators().items()})

    def conjugate(self, P: Matrix) -> "HatModule":
        """The same module written in the basis given by the columns of P^-1."""
        P_inv = P.inverse()
        return self.map(lambda X: P @ X @ P_inv)

    def replace(self, **changes) -> "HatModule":
        gens = self.generators()
        gens.update(changes)
        return HatModule(self.q, **gens)


@dataclass(frozen=True)
class ConstructionTrace:
    K: Matrix
    A: Matrix
    Astar: Matrix
    V: tuple[Subspace, ...]
    Vstar: tuple[Subspace, ...]
    W: tuple[Subspace, ...]
    Wstar: tuple[Subspace, ...]
    H: tuple[Subspace, ...]
    B: Matrix
    Bstar: Matrix
    r: Matrix
    l: Matrix
    rho: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.V) - 1


def _exponents(d: int, sign: int = 1) -> list[int]:
    return [sign * (2 * i - d) for i in range(d + 1)]


def build_A(sys: RLSystem) -> Matrix:
    return corresponding_k(sys.U, sys.q) + sys.R


def _eigen_decomposition(M: Matrix, q: QParam, exps: list[int], dims, label: str,
                         check: bool) -> tuple[Subspace, ...]:
    spaces = tuple(eigenspace(M, q.pow(e)) for e in exps)
    if check:
        n = M.rows
        got = [s.dim for s in spaces]
        if sum(got) != n:
            raise ConstructionError(
                f"{label} diagonalizable with spectrum q^(2i-d)",
                f"eigenspace dimensions {got} do not sum to {n}")
        if tuple(got) != tuple(dims):
            raise ConstructionError(
                f"{label} eigenspace dimensions match the grading",
                f"got {got}, expected {list(dims)}")
    return spaces


def compute_V(sys: RLSystem, A: Matrix, check: bool = True) -> tuple[Subspace, ...]:
    """``V_i``: eigenspace of A for ``q^(2i-d)``."""
    return _eigen_decomposition(A, sys.q, _exponents(sys.d), sys.U.dims, "A", check)


def compute_Astar_Vstar(sys: RLSystem, check: bool = True) -> tuple[Matrix, tuple[Subspace, ...]]:
    """``A* = K^-1 + L`` and its eigenspaces ``V*_i`` for ``q^(d-2i)``."""
    K_inv = corresponding_k(sys.U, sys.q).inverse()
    Astar = K_inv + sys.L
    Vstar = _eigen_decomposition(Astar, sys.q, _exponents(sys.d, -1), sys.U.dims, "A*", check)
    return Astar, Vstar


def _partial_sum(spaces, lo: int, hi: int, n: int) -> Subspace:
    chunk = [spaces[h] for h in range(max(lo, 0), min(hi, len(spaces) - 1) + 1)]
    return subspace_sum(chunk) if chunk else Subspace.zero(n)


def _check_decomposition(spaces, dims, label: str):
    got = tuple(s.dim for s in spaces)
    if not is_direct_sum(spaces) or sum(got) != spaces[0].ambient:
        raise ConstructionError(f"{label} is a decomposition", f"dimensions {list(got)}")
    if got != tuple(dims):
        raise ConstructionError(f"dim {label}_i = rho_i", f"got {list(got)}, expected {list(dims)}")


def compute_W(sys: RLSystem, V, check: bool = True) -> tuple[Subspace, ...]:
    """``W_i = (U_0 + ... + U_i) ∩ (V_0 + ... + V_{d-i})``."""
    d, n = sys.d, sys.dim
    W = tuple(
        subspace_intersect(_partial_sum(sys.U.spaces, 0, i, n), _partial_sum(V, 0, d - i, n))
        for i in range(d + 1))
    if check:
        _check_decomposition(W, sys.U.dims, "W")
        for i in range(d + 1):
            if _partial_sum(W, 0, i, n) != _partial_sum(sys.U.spaces, 0, i, n):
                raise ConstructionError("W_0 + ... + W_i = U_0 + ... + U_i", f"fails at i={i}")
    return W


def compute_Wstar(sys: RLSystem, Vstar, check: bool = True) -> tuple[Subspace, ...]:
    """``W*_i = (U_i + ... + U_d) ∩ (V*_{d-i} + ... + V*_d)``."""
    d, n = sys.d, sys.dim
    Wstar = tuple(
        subspace_intersect(_partial_sum(sys.U.spaces, i, d, n), _partial_sum(Vstar, d - i, d, n))
        for i in range(d + 1))
    if check:
        _check_decomposition(Wstar, sys.U.dims, "W*")
    return Wstar


def compute_H(sys: RLSystem) -> tuple[Subspace, ...]:
    """``H_i = {v in U_i : R^(d-2i+1) v = 0}`` for ``0 <= i <= d/2``."""
    d = sys.d
    return tuple(
        subspace_intersect(kernel(sys.R ** (d - 2 * i + 1)), sys.U[i])
        for i in range(d // 2 + 1))


def build_B(W, q) -> Matrix:
    q = QParam.of(q)
    d = len(W) - 1
    return matrix_with_eigenspaces(W, [q.pow(e) for e in _exponents(d)])


def build_Bstar(Wstar, q) -> Matrix:
    q = QParam.of(q)
    d = len(Wstar) - 1
    return matrix_with_eigenspaces(Wstar, [q.pow(e) for e in _exponents(d, -1)])


def rl_scale(q) -> Fraction:
    """``q (q - q^-1)^2``, the common denominator of r and l."""
    qv = QParam.of(q).value
    return qv * (qv - 1 / qv) ** 2


def build_r_l(K: Matrix, B: Matrix, Bstar: Matrix, q) -> tuple[Matrix, Matrix]:
    n = K.rows
    I = Matrix.identity(n)
    s = rl_scale(q)
    r = (I - K @ Bstar) / s
    l = (I - K.inverse() @ B) / s
    return r, l


def construct_module(sys: RLSystem, check: bool = True) -> tuple[HatModule, ConstructionTrace]:
    """Run the full pipeline; returns the module and every intermediate."""
    q = sys.q
    K = corresponding_k(sys.U, q)
    A = K + sys.R
    V = compute_V(sys, A, check)
    W = compute_W(sys, V, check)
    Astar, Vstar = compute_Astar_Vstar(sys, check)
    Wstar = compute_Wstar(sys, Vstar, check)
    H = compute_H(sys)
    B = build_B(W, q)
    Bstar = build_Bstar(Wstar, q)
    r, l = build_r_l(K, B, Bstar, q)
    trace = ConstructionTrace(
        K=K, A=A, Astar=Astar, V=V, Vstar=Vstar, W=W, Wstar=Wstar, H=H,
        B=B, Bstar=Bstar, r=r, l=l, rho=sys.U.dims)
    module = HatModule(q, e0p=r, e0m=sys.L, e1p=l, e1m=sys.R, K0=K, K1=K.inverse())
    if check:
        from .relations import check_hat_relations
        report = check_hat_relations(module)
        if not report.passed:
            raise ConstructionError("module relations hold", report.first_failure().name)
    return module, trace


def direct_sum(*modules: HatModule) -> HatModule:
    """Block-diagonal sum of modules over the same q."""
    q = modules[0].q
    if any(m.q != q for m in modules):
        raise ValueError("modules have different q")
    return HatModule(q, **{name: Matrix.block_diag(*(getattr(m, name) for m in modules))
                           for name in GENERATORS})
