"""A small, safe arithmetic/predicate language for catalog data.

Grammar (a subset of Python expressions, parsed with ``ast``):

* integer literals, parameter names, ``m[i][j]`` / ``w[k]`` subscripts
* ``+ - * /`` and unary minus, evaluated exactly (``Fraction``)
* comparisons ``< <= > >= == !=`` (chainable) and ``in`` / ``not in``
  against a literal list of numbers or tuples
* ``and``, ``or``, ``not``, parentheses
* functions ``min``, ``max``, ``len``, ``abs`` and ``sqrt`` (exact, may
  leave the rationals)

Anything else is rejected at parse time.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache
from typing import Any, Mapping

from ..errors import StructuralError
from ..exact import ExactScalar

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}
_CMPOPS = {
    ast.Lt: lambda a, b: a < b,
    ast.LtE: lambda a, b: a <= b,
    ast.Gt: lambda a, b: a > b,
    ast.GtE: lambda a, b: a >= b,
    ast.Eq: lambda a, b: a == b,
    ast.NotEq: lambda a, b: a != b,
    ast.In: lambda a, b: a in b,
    ast.NotIn: lambda a, b: a not in b,
}


def _sqrt(x):
    r = ExactScalar.sqrt(x)
    q = r.rational_value()
    return q if q is not None else r


_FUNCS = {"min": min, "max": max, "len": len, "abs": abs, "sqrt": _sqrt}

_ALLOWED = (
    ast.Expression, ast.BoolOp, ast.And, ast.Or, ast.UnaryOp, ast.USub, ast.UAdd, ast.Not,
    ast.BinOp, ast.Compare, ast.Name, ast.Load, ast.Constant, ast.Tuple, ast.List,
    ast.Call, ast.Subscript, ast.Index if hasattr(ast, "Index") else ast.Constant,
    *_BINOPS, *_CMPOPS,
)


@lru_cache(maxsize=None)
def parse(src: str) -> ast.Expression:
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise StructuralError(f"bad expression {src!r}: {exc.msg}") from exc
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise StructuralError(f"unsupported syntax {type(node).__name__} in {src!r}")
        if isinstance(node, ast.Constant) and (isinstance(node.value, bool) or not isinstance(node.value, int)):
            raise StructuralError(f"only integer literals are allowed in {src!r}")
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCS or node.keywords:
                raise StructuralError(f"unsupported call in {src!r}")
    return tree


def names(src: str) -> set[str]:
    tree = parse(src)
    called = {n.func.id for n in ast.walk(tree) if isinstance(n, ast.Call)}
    return {n.id for n in ast.walk(tree) if isinstance(n, ast.Name)} - called


def _num(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, (list, tuple)):
        return type(v)(_num(x) for x in v)
    return v


def evaluate(src: str, env: Mapping[str, Any]) -> Any:
    return _eval(parse(src).body, {k: _num(v) for k, v in env.items()})


def _eval(node, env):
    if isinstance(node, ast.Constant):
        return Fraction(node.value)
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise KeyError(node.id)
        return env[node.id]
    if isinstance(node, ast.Tuple):
        return tuple(_eval(e, env) for e in node.elts)
    if isinstance(node, ast.List):
        return [_eval(e, env) for e in node.elts]
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, env)
        if isinstance(node.op, ast.Not):
            return not v
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        return _BINOPS[type(node.op)](_eval(node.left, env), _eval(node.right, env))
    if isinstance(node, ast.BoolOp):
        if isinstance(node.op, ast.And):
            return all(_eval(v, env) for v in node.values)
        return any(_eval(v, env) for v in node.values)
    if isinstance(node, ast.Compare):
        left = _eval(node.left, env)
        for op, comp in zip(node.ops, node.comparators):
            right = _eval(comp, env)
            if not _CMPOPS[type(op)](left, right):
                return False
            left = right
        return True
    if isinstance(node, ast.Call):
        args = [_eval(a, env) for a in node.args]
        return _FUNCS[node.func.id](*args)
    if isinstance(node, ast.Subscript):
        base = _eval(node.value, env)
        sl = node.slice
        if hasattr(ast, "Index") and isinstance(sl, ast.Index):  # pragma: no cover (py<3.9)
            sl = sl.value
        idx = _eval(sl, env)
        if not isinstance(idx, Fraction) or idx.denominator != 1:
            raise StructuralError("subscripts must be integers")
        return base[int(idx)]
    raise StructuralError(f"unsupported node {type(node).__name__}")


def literal_tuples(src: str) -> list[dict[str, int]]:
    """Assignments listed verbatim in top-level ``(x, y) in [...]`` clauses."""
    out = []
    for node in ast.walk(parse(src)):
        if not isinstance(node, ast.Compare) or len(node.ops) != 1 or not isinstance(node.ops[0], ast.In):
            continue
        lhs, rhs = node.left, node.comparators[0]
        if not isinstance(rhs, ast.List):
            continue
        keys = [lhs] if isinstance(lhs, ast.Name) else list(getattr(lhs, "elts", []))
        if not keys or not all(isinstance(k, ast.Name) for k in keys):
            continue
        for item in rhs.elts:
            vals = [item] if len(keys) == 1 else list(getattr(item, "elts", []))
            if len(vals) == len(keys) and all(isinstance(v, ast.Constant) for v in vals):
                out.append({k.id: v.value for k, v in zip(keys, vals)})
    return out
