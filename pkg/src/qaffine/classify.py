"""Which modules come from an RL-system, and how any module splits into such."""

from __future__ import annotations

from dataclasses import dataclass

from .construction import HatModule
from .linalg import (
    Matrix,
    Subspace,
    eigenspace,
    is_direct_sum,
    q_power_eigenspaces,
    restricted_action,
    subspace_intersect,
    subspace_sum,
)
from .system import Decomposition, RLSystem


class ClassificationError(ValueError):
    pass


def _require_positive_q(m: HatModule):
    if not m.q.is_positive:
        raise ValueError("classification needs q > 0 (and q != 1)")


def diagnose_basic(m: HatModule) -> tuple[int | None, str]:
    """``(d, "")`` when m is basic of diameter d, else ``(None, failed_clause)``."""
    _require_positive_q(m)
    n = m.dim
    if not (m.K0 @ m.K1 - Matrix.identity(n)).is_zero():
        return None, "K0 K1 = I"
    spaces, complete, diagonalizable = q_power_eigenspaces(m.K0, m.q)
    if complete and not diagonalizable:
        return None, "K0 diagonalizable"
    if not complete:
        return None, "K0 spectrum {q^(2i-d)}"
    if any(sign < 0 for sign, _ in spaces):
        return None, "K0 spectrum {q^(2i-d)}"
    exps = {j for _, j in spaces}
    d = max(exps)
    if exps != set(range(-d, d + 1, 2)):
        return None, "K0 spectrum {q^(2i-d)}"
    return d, ""


def is_basic(m: HatModule) -> int | None:
    """The diameter d if m arises from the construction, else None."""
    return diagnose_basic(m)[0]


def extract_system(m: HatModule) -> RLSystem:
    """Recover ``(U_i, R, L)``: eigenspaces of K0, ``R = e1-``, ``L = e0-``."""
    d, reason = diagnose_basic(m)
    if d is None:
        raise ClassificationError(f"module is not basic: {reason}")
    spaces = tuple(eigenspace(m.K0, m.q.pow(2 * i - d)) for i in range(d + 1))
    return RLSystem(m.q, Decomposition(m.dim, spaces), m.e1m, m.e0m)


def twist(m: HatModule, epsilon0: int, epsilon1: int) -> HatModule:
    """Compose with the sign automorphism ``K_i -> eps_i K_i, e_i^+ -> eps_i e_i^+``."""
    if epsilon0 not in (1, -1) or epsilon1 not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    return HatModule(m.q, e0p=epsilon0 * m.e0p, e0m=m.e0m, e1p=epsilon1 * m.e1p, e1m=m.e1m,
                     K0=epsilon0 * m.K0, K1=epsilon1 * m.K1)


@dataclass(frozen=True, order=True)
class PieceKey:
    epsilon0: int
    epsilon1: int
    parity: str  # "even" | "odd"

    @property
    def label(self) -> str:
        def s(e):
            return "p1" if e > 0 else "m1"
        return f"piece_{s(self.epsilon0)}_{s(self.epsilon1)}_{self.parity}"

    @classmethod
    def from_label(cls, label: str) -> "PieceKey":
        _, a, b, parity = label.split("_")
        return cls(1 if a == "p1" else -1, 1 if b == "p1" else -1, parity)


ALL_KEYS = tuple(PieceKey(e0, e1, p) for e0 in (1, -1) for e1 in (1, -1) for p in ("even", "odd"))


@dataclass(frozen=True)
class PieceDecomposition:
    module: HatModule
    pieces: dict

    def __getitem__(self, key: PieceKey) -> Subspace:
        return self.pieces[key]

    def dims(self) -> dict[PieceKey, int]:
        return {k: s.dim for k, s in self.pieces.items()}

    def nonzero(self) -> list[PieceKey]:
        return [k for k in ALL_KEYS if self.pieces[k].dim]

    def piece_module(self, key: PieceKey) -> HatModule:
        """The generators restricted to one piece, in its canonical basis."""
        space = self.pieces[key]
        return self.module.map(lambda X: restricted_action(X, space))


def eight_pieces(m: HatModule) -> PieceDecomposition:
    """Split by the signs of the K0, K1 eigenvalues and the parity of the exponent.

    Every joint eigenvalue must read ``(eps0 q^i, eps1 q^-i)``; anything else
    is rejected rather than guessed at.
    """
    _require_positive_q(m)
    n = m.dim
    if not (m.K0 @ m.K1 - m.K1 @ m.K0).is_zero():
        raise ClassificationError("K0 and K1 do not commute")
    spaces0, complete, diagonalizable = q_power_eigenspaces(m.K0, m.q)
    if not complete:
        raise ClassificationError("K0 has an eigenvalue not of the form ±q^i")
    if not diagonalizable:
        raise ClassificationError("K0 is not diagonalizable")
    buckets: dict[PieceKey, list[Subspace]] = {k: [] for k in ALL_KEYS}
    for (eps0, i), sp0 in spaces0.items():
        parts = []
        for eps1 in (1, -1):
            joint = subspace_intersect(sp0, eigenspace(m.K1, eps1 * m.q.pow(-i)))
            if joint.dim:
                parity = "even" if i % 2 == 0 else "odd"
                buckets[PieceKey(eps0, eps1, parity)].append(joint)
                parts.append(joint)
        if sum(p.dim for p in parts) != sp0.dim:
            raise ClassificationError(
                f"on the K0-eigenspace for {eps0}*q^{i}, K1 does not act as ±q^{-i}")
    pieces = {k: subspace_sum(v) if v else Subspace.zero(n) for k, v in buckets.items()}
    if not is_direct_sum(list(pieces.values())) or sum(p.dim for p in pieces.values()) != n:
        raise ClassificationError("pieces do not decompose the module")
    for key, space in pieces.items():
        for name, X in m.generators().items():
            if not space.contains(space.image(X)):
                raise ClassificationError(f"{key.label} is not invariant under {name}")
    return PieceDecomposition(m, pieces)
