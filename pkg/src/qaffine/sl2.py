"""Finite-dimensional modules for U_q(sl2): irreducibles, restriction, splitting."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .construction import HatModule
from .linalg import (
    Matrix,
    QParam,
    Subspace,
    kernel,
    q_int,
    q_power_eigenspaces,
    subdiagonal,
    subspace_intersect,
    subspace_sum,
    superdiagonal,
)


class DecompositionFailure(ValueError):
    pass


@dataclass(frozen=True)
class Sl2Module:
    q: QParam
    k: Matrix
    e: Matrix
    f: Matrix

    def __post_init__(self):
        object.__setattr__(self, "q", QParam.of(self.q))
        n = self.k.rows
        for name in ("k", "e", "f"):
            if getattr(self, name).shape != (n, n):
                raise ValueError(f"{name} is not {n}x{n}")

    @property
    def dim(self) -> int:
        return self.k.rows


@dataclass(frozen=True)
class IrreducibleTag:
    """One irreducible summand: columns of ``basis`` are ``v, fv, ..., f^d v``."""

    epsilon: int
    d: int
    basis: Matrix

    @property
    def key(self) -> tuple[int, int]:
        return self.epsilon, self.d


def irreducible_module(epsilon: int, d: int, q) -> Sl2Module:
    """The module V_(epsilon,d) on the basis u_0..u_d.

    ``k u_i = eps q^(d-2i) u_i``, ``f u_i = [i+1] u_(i+1)``,
    ``e u_i = eps [d-i+1] u_(i-1)``.
    """
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if d < 0:
        raise ValueError("d must be nonnegative")
    q = QParam.of(q)
    k = Matrix.diag([epsilon * q.pow(d - 2 * i) for i in range(d + 1)])
    if d == 0:
        return Sl2Module(q, k, Matrix.zeros(1), Matrix.zeros(1))
    f = subdiagonal([q_int(i + 1, q) for i in range(d)])
    e = superdiagonal([epsilon * q_int(d - i + 1, q) for i in range(1, d + 1)])
    return Sl2Module(q, k, e, f)


def block_sum(*modules: Sl2Module) -> Sl2Module:
    q = modules[0].q
    if any(m.q != q for m in modules):
        raise ValueError("modules have different q")
    return Sl2Module(q, Matrix.block_diag(*(m.k for m in modules)),
                     Matrix.block_diag(*(m.e for m in modules)),
                     Matrix.block_diag(*(m.f for m in modules)))


def restrict_to_sl2(m: HatModule, i: int) -> Sl2Module:
    """View a hat-module as a U_q(sl2)-module via ``k = K_i, e = e_i^+, f = e_i^-``."""
    if i == 0:
        return Sl2Module(m.q, m.K0, m.e0p, m.e0m)
    if i == 1:
        return Sl2Module(m.q, m.K1, m.e1p, m.e1m)
    raise ValueError("i must be 0 or 1")


def weight_spaces(m: Sl2Module) -> dict[tuple[int, int], Subspace]:
    """Eigenspaces of k keyed by ``(epsilon, j)`` for eigenvalue ``epsilon q^j``."""
    spaces, complete, diagonalizable = q_power_eigenspaces(m.k, m.q)
    if not complete:
        raise DecompositionFailure("k has an eigenvalue not of the form ±q^j")
    if not diagonalizable:
        raise DecompositionFailure("k is not diagonalizable")
    return spaces


def decompose_irreducibles(m: Sl2Module) -> list[IrreducibleTag]:
    """Split into irreducible summands along highest-weight chains.

    For each weight space of k, the vectors killed by e seed chains
    ``v, fv, ..., f^d v`` where ``eps q^d`` is the weight of v.
    """
    if not m.q.is_positive:
        raise ValueError("decomposition needs q > 0")
    n = m.dim
    ker_e = kernel(m.e)
    tags: list[IrreducibleTag] = []
    for (eps, j), space in sorted(weight_spaces(m).items(), key=lambda kv: (-kv[0][1], -kv[0][0])):
        top = subspace_intersect(space, ker_e)
        if top.dim == 0:
            continue
        if j < 0:
            raise DecompositionFailure(
                f"e-kernel vector of weight {eps}*q^{j}: module is not completely reducible")
        for v in top.vectors():
            chain = [v]
            for _ in range(j):
                chain.append(m.f.apply(chain[-1]))
            if any(x != 0 for x in m.f.apply(chain[-1])):
                raise DecompositionFailure(f"chain from weight {eps}*q^{j} does not terminate")
            tags.append(IrreducibleTag(eps, j, Matrix.from_columns(chain, rows=n)))
    all_cols = Matrix.hstack(*(t.basis for t in tags)) if tags else Matrix.zeros(n, 0)
    if all_cols.cols != n or all_cols.rank() != n:
        raise DecompositionFailure("highest-weight chains do not span the module")
    for t in tags:
        span = Subspace.from_matrix(t.basis)
        for name in ("k", "e", "f"):
            if not span.contains(span.image(getattr(m, name))):
                raise DecompositionFailure(f"chain span is not {name}-invariant")
    return tags


def tag_summary(tags: Sequence[IrreducibleTag]) -> list[tuple[int, int, int]]:
    """``(epsilon, d, multiplicity)`` triples, highest d first."""
    counts = Counter(t.key for t in tags)
    return sorted(((e, d, c) for (e, d), c in counts.items()), key=lambda x: (-x[1], -x[0]))


def render_tags(tags: Sequence[IrreducibleTag]) -> str:
    return "\n".join(f"({e}, {d}, {c})" for e, d, c in tag_summary(tags))


def ef_kernel_check(m: Sl2Module, v: Sequence, epsilon: int, d: int) -> bool:
    """For a k-eigenvector v of weight ``epsilon q^d``: ``ev = 0`` iff ``f^(d+1) v = 0``."""
    v = tuple(Fraction(x) for x in v)
    if d < 0 or epsilon not in (1, -1):
        raise ValueError("need epsilon in {1,-1} and d >= 0")
    if all(x == 0 for x in v):
        raise ValueError("the zero vector is not an eigenvector")
    lam = epsilon * m.q.pow(d)
    if m.k.apply(v) != tuple(lam * x for x in v):
        raise ValueError(f"v is not a k-eigenvector with eigenvalue {lam}")
    ev_zero = all(x == 0 for x in m.e.apply(v))
    w = v
    for _ in range(d + 1):
        w = m.f.apply(w)
    return ev_zero == all(x == 0 for x in w)


def raising_freedom(m: Sl2Module) -> int:
    """Dimension of the space of D with ``k D = q^2 D k`` and ``D f = f D``.

    Any second action e' making (k, e', f) a module differs from e by such a
    D, so 0 means e is determined by k and f.
    """
    n = m.dim
    q2 = m.q.pow(2)
    # unknown D is flattened row-major: D[a][b] -> a*n + b
    rows = []
    k, f = m.k.entries, m.f.entries
    for a in range(n):
        for b in range(n):
            # (k D - q^2 D k)[a][b]
            row = [Fraction(0)] * (n * n)
            for c in range(n):
                row[c * n + b] += k[a][c]
                row[a * n + c] -= q2 * k[c][b]
            rows.append(row)
            # (D f - f D)[a][b]
            row = [Fraction(0)] * (n * n)
            for c in range(n):
                row[a * n + c] += f[c][b]
                row[c * n + b] -= f[a][c]
            rows.append(row)
    if n == 0:
        return 0
    return kernel(Matrix(rows)).dim


def chain_subspace(tags: Sequence[IrreducibleTag], n: int) -> Subspace:
    return subspace_sum([Subspace.from_matrix(t.basis) for t in tags]) if tags else Subspace.zero(n)
