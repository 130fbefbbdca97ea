"""JSON interchange for matrices, systems, modules, traces and reports.

Every scalar is a string ``-?[0-9]+(/[1-9][0-9]*)?``; no floats appear. A
matrix is ``{"rows", "cols", "entries"}`` with row-major string entries.
Output is deterministic: same object, same bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

from .construction import GENERATORS, ConstructionTrace, HatModule
from .linalg import Matrix, QParam, Subspace, format_scalar, parse_scalar
from .report import VerificationReport
from .system import Decomposition, DecompositionError, RLSystem


class FormatError(ValueError):
    """Malformed interchange data; the message names the offending location."""


def matrix_to_json(M: Matrix) -> dict:
    return {"rows": M.rows, "cols": M.cols,
            "entries": [[format_scalar(x) for x in row] for row in M.entries]}


def matrix_from_json(obj, where: str) -> Matrix:
    if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= obj.keys():
        raise FormatError(f"{where}: expected an object with rows, cols, entries")
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 0 or cols < 0:
        raise FormatError(f"{where}: rows and cols must be nonnegative integers")
    if not isinstance(entries, list) or len(entries) != rows:
        raise FormatError(f"{where}.entries: expected {rows} rows")
    grid = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise FormatError(f"{where}.entries[{i}]: expected {cols} entries")
        out = []
        for j, x in enumerate(row):
            if not isinstance(x, str):
                raise FormatError(f"{where}.entries[{i}][{j}]: entries must be strings, got {x!r}")
            try:
                out.append(parse_scalar(x))
            except ValueError:
                raise FormatError(f"{where}.entries[{i}][{j}]: invalid rational {x!r}") from None
        grid.append(out)
    return Matrix(grid, rows, cols)


def _q_from_json(obj, where="q") -> QParam:
    if not isinstance(obj, str):
        raise FormatError(f"{where}: expected a rational string")
    try:
        return QParam(parse_scalar(obj))
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from None


def _require(obj: dict, keys, kind: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{kind}: expected a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"{kind}: missing field(s) {', '.join(missing)}")


# systems

def system_to_json(sys: RLSystem) -> dict:
    return {
        "q": format_scalar(sys.q.value),
        "d": sys.d,
        "dim": sys.dim,
        "U": [matrix_to_json(s.basis) for s in sys.U],
        "R": matrix_to_json(sys.R),
        "L": matrix_to_json(sys.L),
    }


def system_from_json(obj, check: bool = True) -> RLSystem:
    """Decode a system.

    Structural problems raise :class:`FormatError` before any clause is
    looked at. With ``check=True`` a clause failure raises
    :class:`~qaffine.system.AssumptionError`.
    """
    _require(obj, ("q", "d", "dim", "U", "R", "L"), "system")
    q = _q_from_json(obj["q"])
    d, n = obj["d"], obj["dim"]
    if not isinstance(d, int) or d < 0 or not isinstance(n, int) or n <= 0:
        raise FormatError("system: d must be >= 0 and dim > 0")
    if not isinstance(obj["U"], list) or len(obj["U"]) != d + 1:
        raise FormatError(f"system.U: expected {d + 1} basis matrices")
    spaces = []
    for i, u in enumerate(obj["U"]):
        B = matrix_from_json(u, f"U[{i}]")
        if B.rows != n:
            raise FormatError(f"U[{i}]: basis vectors must have length {n}")
        if B.rank() != B.cols:
            raise FormatError(f"U[{i}]: basis columns are dependent")
        spaces.append(Subspace.from_matrix(B))
    try:
        U = Decomposition(n, tuple(spaces))
    except DecompositionError as exc:
        raise FormatError(f"system.U: {exc}") from None
    R = matrix_from_json(obj["R"], "R")
    L = matrix_from_json(obj["L"], "L")
    for name, M in (("R", R), ("L", L)):
        if M.shape != (n, n):
            raise FormatError(f"{name}: expected {n}x{n}, got {M.rows}x{M.cols}")
    return RLSystem(q, U, R, L, check=check)


# modules

def module_to_json(m: HatModule) -> dict:
    out = {"q": format_scalar(m.q.value), "dim": m.dim}
    for name in GENERATORS:
        out[name] = matrix_to_json(getattr(m, name))
    return out


def module_from_json(obj) -> HatModule:
    _require(obj, ("q", "dim") + GENERATORS, "module")
    q = _q_from_json(obj["q"])
    n = obj["dim"]
    if not isinstance(n, int) or n < 0:
        raise FormatError("module: dim must be a nonnegative integer")
    gens = {}
    for name in GENERATORS:
        M = matrix_from_json(obj[name], name)
        if M.shape != (n, n):
            raise FormatError(f"{name}: expected {n}x{n}, got {M.rows}x{M.cols}")
        gens[name] = M
    return HatModule(q, **gens)


# traces and reports

def _spaces_to_json(spaces) -> list:
    return [matrix_to_json(s.basis) for s in spaces]


def trace_to_json(trace: ConstructionTrace, q: QParam) -> dict:
    return {
        "q": format_scalar(q.value),
        "d": trace.d,
        "rho": list(trace.rho),
        "K": matrix_to_json(trace.K),
        "A": matrix_to_json(trace.A),
        "Astar": matrix_to_json(trace.Astar),
        "V": _spaces_to_json(trace.V),
        "Vstar": _spaces_to_json(trace.Vstar),
        "W": _spaces_to_json(trace.W),
        "Wstar": _spaces_to_json(trace.Wstar),
        "H": _spaces_to_json(trace.H),
        "B": matrix_to_json(trace.B),
        "Bstar": matrix_to_json(trace.Bstar),
        "r": matrix_to_json(trace.r),
        "l": matrix_to_json(trace.l),
    }


def trace_from_json(obj) -> ConstructionTrace:
    _require(obj, ("rho", "K", "A", "Astar", "V", "Vstar", "W", "Wstar", "H",
                   "B", "Bstar", "r", "l"), "trace")

    def spaces(key):
        return tuple(Subspace.from_matrix(matrix_from_json(b, f"{key}[{i}]"))
                     for i, b in enumerate(obj[key]))

    return ConstructionTrace(
        K=matrix_from_json(obj["K"], "K"), A=matrix_from_json(obj["A"], "A"),
        Astar=matrix_from_json(obj["Astar"], "Astar"),
        V=spaces("V"), Vstar=spaces("Vstar"), W=spaces("W"), Wstar=spaces("Wstar"),
        H=spaces("H"), B=matrix_from_json(obj["B"], "B"),
        Bstar=matrix_from_json(obj["Bstar"], "Bstar"),
        r=matrix_from_json(obj["r"], "r"), l=matrix_from_json(obj["l"], "l"),
        rho=tuple(obj["rho"]))


def report_to_json(report: VerificationReport) -> dict:
    return report.to_dict()


# files

def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_json(obj: dict, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def read_json(path):
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None


def serialize_system(sys: RLSystem, path) -> None:
    write_json(system_to_json(sys), path)


def parse_system(path, check: bool = True) -> RLSystem:
    return system_from_json(read_json(path), check=check)


def serialize_module(m: HatModule, path) -> None:
    write_json(module_to_json(m), path)


def parse_module(path) -> HatModule:
    return module_from_json(read_json(path))
