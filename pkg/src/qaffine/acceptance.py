"""The acceptance criteria, runnable from the CLI (``selfcheck``) and pytest.

Each criterion returns a :class:`CriterionResult`; every comparison is exact.
"""

from __future__ import annotations

import contextlib
import io
import json
import random
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .classify import eight_pieces, extract_system, is_basic, twist
from .construction import construct_module, direct_sum
from .linalg import Matrix, Subspace, q_int, q_power_eigenspaces
from .relations import check_hat_relations, check_intermediate, check_structure_lemmas
from .sl2 import (
    block_sum,
    decompose_irreducibles,
    ef_kernel_check,
    irreducible_module,
    restrict_to_sl2,
    tag_summary,
)
from .system import gen_conjugate, gen_direct_sum, gen_evaluation, validate_assumptions

F = Fraction
SEED = 20240611
CORPUS_DS = range(7)
CORPUS_QS = (F(2), F(3, 2))
CORPUS_AS = (F(1), F(5))


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"[{status}] criterion {self.number}: {self.title} [{self.seconds:.2f}s]{extra}"


def corpus():
    """Evaluation systems and pairwise direct sums at equal d and q."""
    out = []
    for d in CORPUS_DS:
        for q in CORPUS_QS:
            singles = [gen_evaluation(d, a, q) for a in CORPUS_AS]
            out.extend(singles)
            for i in range(len(singles)):
                for j in range(i, len(singles)):
                    out.append(gen_direct_sum(singles[i], singles[j]))
    return out


def random_invertible(n: int, rng: random.Random, lo: int = -2, hi: int = 2) -> Matrix:
    while True:
        P = Matrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        if P.is_invertible():
            return P


def _timed(number, title, fn, limit=None) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, reported with its cause
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        ok = False
        detail = (detail + "; " if detail else "") + f"runtime {dt:.2f}s exceeds {limit}s"
    return CriterionResult(number, title, ok, detail, dt)


def criterion_1():
    sys_ = gen_evaluation(1, 1, 2)
    m, t = construct_module(sys_)
    M = Matrix
    expected = {
        "e0m": M([[0, 1], [0, 0]]), "e1m": M([[0, 0], [1, 0]]),
        "e0p": M([[0, 0], [1, 0]]), "e1p": M([[0, 1], [0, 0]]),
        "K0": M.diag([F(1, 2), 2]), "K1": M.diag([2, F(1, 2)]),
    }
    bad = [k for k, v in expected.items() if getattr(m, k) != v]
    if t.A != M([[F(1, 2), 0], [1, 2]]):
        bad.append("A")
    if t.V[0] != Subspace.span([(3, -2)]):
        bad.append("V_0")
    if t.W[1] != Subspace.span([(3, -2)]):
        bad.append("W_1")
    if t.B != M([[F(1, 2), F(-9, 4)], [0, 2]]):
        bad.append("B")
    if t.Bstar != M([[2, 0], [F(-9, 4), F(1, 2)]]):
        bad.append("B*")
    return not bad, f"mismatch in {bad}" if bad else ""


def criterion_2():
    systems = corpus()
    for s in systems:
        if not validate_assumptions(s).passed:
            return False, f"validation failed for d={s.d}, q={s.q}"
        m, _ = construct_module(s)
        rep = check_hat_relations(m)
        if not rep.passed:
            return False, f"{rep.first_failure().name} fails for d={s.d}, q={s.q}"
    return True, f"{len(systems)} systems"


def criterion_3():
    systems = corpus()
    count = 0
    for s in systems:
        _, t = construct_module(s)
        for rep in (check_structure_lemmas(t, s), check_intermediate(t, s)):
            count += len(rep)
            if not rep.passed:
                return False, f"{rep.first_failure().name} fails for d={s.d}, q={s.q}, dim={s.dim}"
    return True, f"{count} named checks"


def criterion_4():
    rng = random.Random(SEED)
    checked = 0
    for s in corpus():
        if s.d > 4:
            continue
        m, _ = construct_module(s)
        for _ in range(5):
            P = random_invertible(s.dim, rng)
            mc, _ = construct_module(gen_conjugate(s, P))
            if mc != m.conjugate(P):
                return False, f"equivariance fails for d={s.d}, q={s.q}, P={P}"
            checked += 1
    return True, f"{checked} conjugations"


def criterion_5():
    n = 0
    for s in corpus():
        m, _ = construct_module(s)
        back = extract_system(m)
        if back != s:
            return False, f"extract(construct(sys)) != sys for d={s.d}, q={s.q}"
        if is_basic(m) != s.d:
            return False, f"is_basic returned {is_basic(m)} for d={s.d}"
        if construct_module(back)[0] != m:
            return False, f"construct(extract(m)) != m for d={s.d}, q={s.q}"
        n += 1
    return True, f"{n} round trips"


def criterion_6():
    def basic(d, a):
        return construct_module(gen_evaluation(d, a, 2))[0]

    B1, B2, B3 = basic(2, 1), basic(2, 5), basic(3, 1)
    M = direct_sum(B1, twist(B2, -1, 1), twist(B3, 1, -1))
    pd = eight_pieces(M)
    dims = {(k.epsilon0, k.epsilon1, k.parity): v for k, v in pd.dims().items()}
    want = {key: 0 for key in dims}
    want.update({(1, 1, "even"): 3, (-1, 1, "even"): 3, (1, -1, "odd"): 4})
    if dims != want:
        return False, f"piece dims {dims}"
    expected_d = {(1, 1, "even"): 2, (-1, 1, "even"): 2, (1, -1, "odd"): 3}
    for key in pd.nonzero():
        piece = pd.piece_module(key)
        if not check_hat_relations(piece).passed:
            return False, f"{key.label} fails the relations"
        d = is_basic(twist(piece, key.epsilon0, key.epsilon1))
        if d != expected_d[(key.epsilon0, key.epsilon1, key.parity)]:
            return False, f"{key.label} twisted has diameter {d}"
    return True, ""


def criterion_7():
    q = 2
    m = block_sum(irreducible_module(1, 2, q), irreducible_module(1, 4, q), irreducible_module(-1, 2, q))
    got = sorted(t.key for t in decompose_irreducibles(m))
    if got != sorted([(1, 2), (1, 4), (-1, 2)]):
        return False, f"tags {got}"
    m3, _ = construct_module(gen_evaluation(3, 1, 2))
    summary = tag_summary(decompose_irreducibles(restrict_to_sl2(m3, 1)))
    if summary != [(1, 3, 1)]:
        return False, f"d=3 restriction decomposes as {summary}"
    checked = 0
    for s in corpus():
        hm, _ = construct_module(s)
        for i in (0, 1):
            sl = restrict_to_sl2(hm, i)
            spaces, _, _ = q_power_eigenspaces(sl.k, sl.q)
            for (eps, j), sp in spaces.items():
                if j < 0:
                    continue
                for v in sp.vectors():
                    if not ef_kernel_check(sl, v, eps, j):
                        return False, f"ef kernel lemma fails at weight {eps}q^{j}"
                    checked += 1
    return True, f"{checked} eigenvectors"


def criterion_8():
    exact = {0: F(0), 1: F(1), 2: F(5, 2), 3: F(21, 4)}
    for n, v in exact.items():
        if q_int(n, 2) != v:
            return False, f"[{n}] at q=2 is {q_int(n, 2)}"
    for q in (F(2), F(3, 2), F(5)):
        for n in range(1, 11):
            if q_int(n, q) == 0:
                return False, f"[{n}] = 0 at q={q}"
    return True, ""


def _run(argv):
    from .cli import run_cli
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = run_cli(argv)
    return code, buf.getvalue()


def criterion_9():
    outputs = []
    for _ in range(2):
        with tempfile.TemporaryDirectory() as tmp:
            s, m = str(Path(tmp) / "s.json"), str(Path(tmp) / "m.json")
            steps = [["generate", "eval", "--d", "1", "--a", "1", "--q", "2", "-o", s],
                     ["construct", s, "-o", m],
                     ["verify", m]]
            for argv in steps:
                code, _ = _run(argv)
                if code != 0:
                    return False, f"`{' '.join(argv[:2])}` exited {code}"
            code, text = _run(["classify", m])
            if code != 0 or text.strip() != "basic d=1":
                return False, f"classify printed {text.strip()!r} (exit {code})"
            outputs.append((Path(s).read_bytes(), Path(m).read_bytes()))
            data = json.loads(Path(m).read_text())
            data["K0"]["entries"][0][0] = "1/3"
            Path(m).write_text(json.dumps(data))
            code, text = _run(["verify", m])
            if code != 1 or "FAIL: " not in text:
                return False, f"tampered verify exited {code}"
    if outputs[0] != outputs[1]:
        return False, "outputs differ between runs"
    return True, ""


CRITERIA = [
    (1, "hand-derived d=1 oracle", criterion_1, 1.0),
    (2, "existence sweep: relations hold exactly", criterion_2, 10.0),
    (3, "structure lemmas and 17 operator identities", criterion_3, None),
    (4, "uniqueness / conjugation equivariance", criterion_4, None),
    (5, "extract/construct round trips", criterion_5, None),
    (6, "eight-piece decomposition and twisting", criterion_6, None),
    (7, "sl2 layer", criterion_7, 5.0),
    (8, "q-integer spot checks", criterion_8, None),
    (9, "CLI golden path", criterion_9, None),
]


def run_criterion(number: int) -> CriterionResult:
    for num, title, fn, limit in CRITERIA:
        if num == number:
            return _timed(num, title, fn, limit)
    raise KeyError(number)


def run_all() -> list[CriterionResult]:
    return [_timed(num, title, fn, limit) for num, title, fn, limit in CRITERIA]
