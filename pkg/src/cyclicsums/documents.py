"""JSON input documents and deterministic reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .checks import IdentityCheck
from .linalg_core import InputError, ToleranceProfile


class DocumentError(InputError):
    """Unreadable or malformed input document."""


@dataclass(frozen=True, eq=False)
class InputDocument:
    n: int
    frames: tuple = ()
    system: tuple = ()
    labels: dict = field(default_factory=dict)


def _matrix(raw, rows: int, cols: int, what: str) -> np.ndarray:
    try:
        A = np.array(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"{what}: not a numeric array ({exc})") from None
    if A.shape != (rows, cols):
        raise DocumentError(f"{what}: expected shape {rows}x{cols}, got {'x'.join(map(str, A.shape))}")
    if not np.all(np.isfinite(A)):
        raise DocumentError(f"{what}: non-finite entries")
    return A


def parse_document(data: Any) -> InputDocument:
    if not isinstance(data, dict):
        raise DocumentError("top level must be an object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError(f"'n' must be a positive integer, got {n!r}")
    frames_raw = data.get("frames") or []
    system_raw = data.get("system") or []
    if not isinstance(frames_raw, list) or not isinstance(system_raw, list):
        raise DocumentError("'frames' and 'system' must be arrays")
    frames = tuple(_matrix(f, 2 * n, n, f"frames[{k}]") for k, f in enumerate(frames_raw))
    system = tuple(_matrix(s, 2 * n, 2 * n, f"system[{k}]") for k, s in enumerate(system_raw))
    labels = data.get("labels") or {}
    if not isinstance(labels, (dict, list)):
        raise DocumentError("'labels' must be an object or array")
    if isinstance(labels, list):
        labels = {str(k): v for k, v in enumerate(labels)}
    return InputDocument(n, frames, system, dict(labels))


def load_document(path) -> InputDocument:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse_document(data)


def matrix_to_list(A) -> list:
    return np.asarray(A, float).tolist()


def dump_document(doc: InputDocument) -> str:
    out: dict = {"n": doc.n}
    if doc.frames:
        out["frames"] = [matrix_to_list(Y) for Y in doc.frames]
    if doc.system:
        out["system"] = [matrix_to_list(S) for S in doc.system]
    if doc.labels:
        out["labels"] = doc.labels
    return json.dumps(out, indent=2)


@dataclass
class ReportDocument:
    command: str
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    tolerance: ToleranceProfile | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, checks) -> None:
        self.checks.extend(checks)

    def as_dict(self) -> dict:
        tol = self.tolerance
        return {
            "command": self.command,
            "results": self.results,
            "identities": [c.as_dict() if isinstance(c, IdentityCheck) else c for c in self.checks],
            "passed": sum(c.ok for c in self.checks),
            "failed": sum(not c.ok for c in self.checks),
            "tolerance": None
            if tol is None
            else {
                "rank_rel_tol": tol.rank_rel_tol,
                "eig_zero_factor": tol.eig_zero_factor,
                "structure_tol": tol.structure_tol,
            },
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"== {self.command} =="]
        for key, value in self.results.items():
            lines.append(f"{key}: {_short(value)}")
        if self.checks:
            lines.append(f"-- identities ({sum(c.ok for c in self.checks)}/{len(self.checks)} pass)")
            for c in self.checks:
                verdict = "PASS" if c.ok else "FAIL"
                lines.append(f"{verdict}  {c.name}  [{_short(c.lhs)} | {_short(c.rhs)}]")
        for key, value in self.diagnostics.items():
            lines.append(f"# {key}: {_short(value)}")
        if self.tolerance is not None:
            t = self.tolerance
            lines.append(
                f"# tolerance: rank_rel_tol={t.rank_rel_tol:g} eig_zero_factor={t.eig_zero_factor:g}"
                f" structure_tol={t.structure_tol:g}"
            )
        return "\n".join(lines)


def _short(v) -> str:
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_short(x) for x in v) + ")"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)
