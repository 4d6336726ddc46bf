"""Reading and writing systems and resolution graphs.

JSON system format::

    {"labels": ["a", "b"], "gram": [[-2, 1], [1, "-3/2"]]}

Entries are integers, "p/q" strings, or radical term lists
``[{"coeff": "p/q", "radicand": k}, ...]``. ``labels`` is optional.

Text format: the first line is n, then the lower triangle row by row
(row i holds i+1 entries). Tokens are rationals ``p/q`` or radical
terms ``q*sqrt(k)`` / ``sqrt(k)`` joined by ``+`` without spaces.
Lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import StructuralError
from .exact import ExactScalar, from_json, to_json
from .systems import VectorSystem

_TERM = re.compile(r"^([+-]?)(?:(\d+(?:/\d+)?)\*?)?(?:sqrt\((\d+)\))?$")


def system_from_obj(obj: Any) -> VectorSystem:
    if isinstance(obj, list):
        obj = {"gram": obj}
    if not isinstance(obj, dict) or "gram" not in obj:
        raise StructuralError('system JSON must be an object with a "gram" key')
    gram = obj["gram"]
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise StructuralError('"gram" must be a list of rows')
    rows = [[from_json(x) for x in row] for row in gram]
    labels = obj.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise StructuralError('"labels" must be a list')
    return VectorSystem.from_matrix(rows, labels)


def system_to_obj(system: VectorSystem) -> dict:
    return {
        "labels": list(system.labels),
        "gram": [[to_json(x) for x in row] for row in system.gram],
    }


def parse_scalar_token(tok: str) -> ExactScalar:
    out = ExactScalar(0)
    for piece in re.split(r"(?<=.)(?=[+-])", tok.strip()):
        m = _TERM.match(piece)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise StructuralError(f"bad scalar token {tok!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        term = ExactScalar(sign * coeff)
        if m.group(3):
            term = term * ExactScalar.sqrt(int(m.group(3)))
        out = out + term
    return out


def system_from_text(text: str) -> VectorSystem:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise StructuralError("empty input")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise StructuralError(f"first line must be the size, got {lines[0]!r}") from exc
    if n < 0 or len(lines) != n + 1:
        raise StructuralError(f"expected {n} triangle rows, got {len(lines) - 1}")
    rows = [[ExactScalar(0)] * n for _ in range(n)]
    for i in range(n):
        toks = lines[i + 1].split()
        if len(toks) != i + 1:
            raise StructuralError(f"row {i} needs {i + 1} entries, got {len(toks)}")
        for j, tok in enumerate(toks):
            rows[i][j] = rows[j][i] = parse_scalar_token(tok)
    return VectorSystem.from_matrix(rows)


def _token(x: ExactScalar) -> str:
    q = x.rational_value()
    if q is not None:
        return str(q)
    return "+".join(
        (f"{c}*sqrt({k})" if k > 1 else str(c)) for k, c in sorted(x.terms.items())
    ).replace("+-", "-")


def system_to_text(system: VectorSystem) -> str:
    lines = [str(system.n)]
    for i in range(system.n):
        lines.append(" ".join(_token(system.gram[i][j]) for j in range(i + 1)))
    return "\n".join(lines) + "\n"


def parse_system(text: str) -> VectorSystem:
    """Auto-detect JSON versus the text triangle format."""
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StructuralError(f"invalid JSON: {exc}") from exc
        return system_from_obj(obj)
    return system_from_text(text)


def read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise StructuralError(f"cannot read {path}: {exc}") from exc


def read_json(path: str | None) -> Any:
    text = read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"invalid JSON in {path or 'stdin'}: {exc}") from exc


def read_system(path: str | None) -> VectorSystem:
    return parse_system(read_text(path))
