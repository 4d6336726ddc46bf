"""Resolution graphs of surface singularities and the lengths l(X).

A :class:`ResolutionGraph` records the exceptional curves F_1..F_r of a
minimal resolution f: Y -> X by their self-intersections and pairwise
intersection numbers. Every component is taken to be a smooth rational
curve, so K_Y.F_j = -F_j^2 - 2 by adjunction.

The codiscrepancy coefficients alpha_i are defined by
f^*K_X = K_Y + sum alpha_i F_i, i.e. they solve

    sum_i alpha_i (F_i.F_j) = -K_Y.F_j      for every j.

They are the negatives of the canonical-element coefficients of the
associated vector system.

Graph JSON::

    {"self_intersections": [-2, -3], "meets": [[0, 1, 1]]}
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import linalg
from .errors import DegenerateConfigurationError, DomainError, NotASingularityError, StructuralError
from .exact import ExactScalar, as_exact, sign_of
from .systems import VectorSystem

Number = int | Fraction | ExactScalar

# Intersection data of a ruling L on a ruled surface: K_Y.L = -2 (adjunction
# for a smooth rational fibre with L^2 = 0), and a section B meets L once.
_KY_DOT_FIBRE = -2
_SECTION_DOT_FIBRE = 1
_L_UPPER = 4


# -- resolution graphs -------------------------------------------------------

@dataclass(frozen=True)
class ResolutionGraph:
    self_intersections: tuple[int, ...]
    meets: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        si = tuple(self.self_intersections)
        for x in si:
            if isinstance(x, bool) or not isinstance(x, int):
                raise StructuralError(f"self-intersections must be integers, got {x!r}")
            if x > -1:
                raise StructuralError(f"exceptional curves have F^2 <= -1, got {x}")
        seen = set()
        meets = []
        for m in self.meets:
            if len(m) != 3 or not all(isinstance(v, int) and not isinstance(v, bool) for v in m):
                raise StructuralError(f"meets entries are [i, j, multiplicity], got {m!r}")
            i, j, k = m
            if not (0 <= i < len(si) and 0 <= j < len(si)) or i == j:
                raise StructuralError(f"bad curve indices in {m!r}")
            if k < 0:
                raise StructuralError(f"intersection numbers must be >= 0, got {m!r}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise StructuralError(f"curves {key} listed twice")
            seen.add(key)
            meets.append((key[0], key[1], k))
        object.__setattr__(self, "self_intersections", si)
        object.__setattr__(self, "meets", tuple(sorted(meets)))

    @property
    def r(self) -> int:
        return len(self.self_intersections)

    def intersection_matrix(self) -> list[list[int]]:
        n = self.r
        mat = [[0] * n for _ in range(n)]
        for i, x in enumerate(self.self_intersections):
            mat[i][i] = x
        for i, j, k in self.meets:
            mat[i][j] = mat[j][i] = k
        return mat

    def ky_dot(self) -> tuple[int, ...]:
        """K_Y.F_j = -F_j^2 - 2 for smooth rational components."""
        return tuple(-x - 2 for x in self.self_intersections)

    def to_system(self) -> VectorSystem:
        return VectorSystem.from_matrix(self.intersection_matrix(), [f"F{i}" for i in range(self.r)])

    @classmethod
    def from_system(cls, system: VectorSystem) -> "ResolutionGraph":
        if not system.is_integer:
            raise DomainError("a resolution graph needs integer intersection numbers")
        mat = system.int_matrix
        meets = [(i, j, mat[i][j]) for i in range(system.n) for j in range(i + 1, system.n) if mat[i][j]]
        return cls(tuple(mat[i][i] for i in range(system.n)), tuple(meets))

    @classmethod
    def from_json(cls, obj: Any) -> "ResolutionGraph":
        if not isinstance(obj, dict) or "self_intersections" not in obj:
            raise StructuralError('graph JSON needs a "self_intersections" list')
        si = obj["self_intersections"]
        meets = obj.get("meets", [])
        if not isinstance(si, list) or not isinstance(meets, list):
            raise StructuralError('"self_intersections" and "meets" must be lists')
        return cls(tuple(si), tuple(tuple(m) if isinstance(m, list) else m for m in meets))

    def to_json(self) -> dict:
        return {"self_intersections": list(self.self_intersections), "meets": [list(m) for m in self.meets]}


# -- codiscrepancy -------------------------------------------------------------

class SingularityClass(str, enum.Enum):
    LOG_TERMINAL = "log terminal"
    STRICTLY_LOG_CANONICAL = "strictly log canonical"
    NOT_LOG_CANONICAL = "not log canonical"


@dataclass(frozen=True)
class Codiscrepancy:
    coefficients: tuple[Fraction, ...]
    singularity: SingularityClass

    @property
    def log_canonical(self) -> bool:
        return self.singularity is not SingularityClass.NOT_LOG_CANONICAL

    @property
    def log_terminal(self) -> bool:
        return self.singularity is SingularityClass.LOG_TERMINAL

    def residual(self, graph: ResolutionGraph) -> list[Fraction]:
        """sum_i alpha_i F_i.F_j + K_Y.F_j; identically zero."""
        mat = graph.intersection_matrix()
        ky = graph.ky_dot()
        return [sum((self.coefficients[i] * mat[i][j] for i in range(graph.r)), Fraction(0)) + ky[j]
                for j in range(graph.r)]


def singularity_class(coefficients: Iterable[Fraction]) -> SingularityClass:
    coeffs = list(coefficients)
    if any(a > 1 for a in coeffs):
        return SingularityClass.NOT_LOG_CANONICAL
    if any(a == 1 for a in coeffs):
        return SingularityClass.STRICTLY_LOG_CANONICAL
    return SingularityClass.LOG_TERMINAL


def codiscrepancy(graph: ResolutionGraph) -> Codiscrepancy:
    if graph.r == 0:
        return Codiscrepancy((), SingularityClass.LOG_TERMINAL)
    mat = graph.intersection_matrix()
    if not linalg.is_negative_definite(mat):
        raise NotASingularityError("intersection matrix is not negative definite")
    rhs = [Fraction(-k) for k in graph.ky_dot()]
    alpha = tuple(linalg.solve([[Fraction(x) for x in row] for row in mat], rhs))
    return Codiscrepancy(alpha, singularity_class(alpha))


def kx_squared(graph: ResolutionGraph, ky_squared: Number) -> Number:
    """K_X^2 = K_Y^2 + sum alpha_i (K_Y.F_i)."""
    if graph.r == 0:
        return _simplify(as_exact(ky_squared))
    alpha = codiscrepancy(graph).coefficients
    total = as_exact(ky_squared)
    for a, k in zip(alpha, graph.ky_dot()):
        total = total + a * k
    return _simplify(total)


def noether_picard(ky_squared: Number) -> Number:
    """rho(Y) = 10 - K_Y^2 on a smooth rational surface."""
    return _simplify(10 - as_exact(ky_squared))


# -- the fibred configuration --------------------------------------------------

def _simplify(x: ExactScalar) -> Number:
    q = x.rational_value() if isinstance(x, ExactScalar) else x
    return q if q is not None else x


def _check_lists(a: Sequence, b: Sequence) -> tuple[list[ExactScalar], list[ExactScalar]]:
    if len(a) != len(b):
        raise DomainError(f"a and b must have equal length ({len(a)} != {len(b)})")
    return [as_exact(x) for x in a], [as_exact(x) for x in b]


def lemma3_alpha0(m: int, a: Sequence[Number], b: Sequence[Number]) -> Number:
    """Closed form alpha_0 = (m - 2 - sum a_i b_i) / (m - sum a_i^2).

    ``m = -F_0^2``; after diagonalising the remaining components, ``a_i``
    are the entries bordering the (m) corner and ``b_i`` the right-hand
    sides. Rational inputs give a ``Fraction``.
    """
    if all(isinstance(x, (int, Fraction)) for x in (*a, *b)):
        if len(a) != len(b):
            raise DomainError(f"a and b must have equal length ({len(a)} != {len(b)})")
        den = m - sum(x * x for x in a)
        if den == 0:
            raise DegenerateConfigurationError("m - sum a_i^2 = 0")
        return Fraction(m - 2 - sum(x * y for x, y in zip(a, b))) / den
    ea, eb = _check_lists(a, b)
    den = as_exact(m)
    num = as_exact(m - 2)
    for x, y in zip(ea, eb):
        den = den - x * x
        num = num - x * y
    if den.is_zero():
        raise DegenerateConfigurationError("m - sum a_i^2 = 0")
    return _simplify(num * den.inverse())


def bordered_matrix(m: int, a: Sequence[Number]) -> list[list]:
    """[[m, a_1..a_p], [a_i, identity]] -- the diagonalised form of -(F_i.F_j)."""
    p = len(a)
    rows = [[m, *a]]
    for i in range(p):
        rows.append([a[i]] + [1 if j == i else 0 for j in range(p)])
    return rows


def bordered_alpha0(m: int, a: Sequence[Number], b: Sequence[Number]) -> Number:
    """alpha_0 by solving the bordered system directly (independent of the closed form)."""
    if len(a) != len(b):
        raise DomainError(f"a and b must have equal length ({len(a)} != {len(b)})")
    mat = bordered_matrix(m, a)
    rhs = [m - 2, *b]
    if all(isinstance(x, int) for x in (*a, *b)):
        d, nums = linalg.int_cramer(mat, rhs)
        if d == 0:
            raise DegenerateConfigurationError("bordered matrix is singular")
        return Fraction(nums[0], d)
    rational = all(isinstance(x, (int, Fraction)) for x in (*a, *b))
    conv = Fraction if rational else as_exact
    fm = [[conv(x) for x in row] for row in mat]
    if linalg.det(fm) == 0:
        raise DegenerateConfigurationError("bordered matrix is singular")
    sol = linalg.solve(fm, [conv(x) for x in rhs])
    return sol[0] if rational else _simplify(sol[0])


# -- lengths l(X) ----------------------------------------------------------------

@dataclass(frozen=True)
class LengthValue:
    value: Number
    family: str
    parameter: Any

    def __post_init__(self):
        v = as_exact(self.value)
        if sign_of(v) <= 0 or sign_of(v - _L_UPPER) > 0:
            raise DomainError(f"length {self.value} outside (0, {_L_UPPER}]")


def hirzebruch_length(n: int) -> LengthValue:
    """l(X_n) for the cone over a rational normal curve: contract the
    (-n)-section B of the Hirzebruch surface F_n; a fibre L meets B once,
    so l = -(K_Y + alpha B).L = 2 - alpha."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    (alpha,) = codiscrepancy(ResolutionGraph((-n,))).coefficients
    value = -_KY_DOT_FIBRE - alpha * _SECTION_DOT_FIBRE
    return LengthValue(value, "hirzebruch", n)


def elliptic_ruled_length(e: int) -> LengthValue:
    """l(X_e) for the ruled surface over an elliptic curve with a section
    B of self-intersection -e: f^*K_X = K_Y + B, so l = (-K_Y - B).L."""
    if isinstance(e, bool) or not isinstance(e, int) or e < 2:
        raise DomainError(f"e must be an integer >= 2, got {e!r}")
    value = Fraction(-_KY_DOT_FIBRE - _SECTION_DOT_FIBRE)
    return LengthValue(value, "elliptic-ruled", e)


def fibered_length_general(m: int, a: Sequence[Number], b: Sequence[Number], lam: Number) -> LengthValue:
    """lambda * (2 - alpha_0). The admissible range of lambda is not known
    explicitly; it is taken as given."""
    lam_e = as_exact(lam)
    if sign_of(lam_e) <= 0:
        raise DomainError("lambda must be positive")
    alpha0 = as_exact(lemma3_alpha0(m, a, b))
    value = _simplify(lam_e * (2 - alpha0))
    return LengthValue(value, "fibered", {"m": m, "a": list(a), "b": list(b), "lambda": lam})


# -- finite sequence reports -----------------------------------------------------

@dataclass(frozen=True)
class SequenceReport:
    length: int
    strictly_decreasing: bool
    strictly_increasing: bool
    constant: bool
    strictly_increasing_run_max: int
    strictly_decreasing_run_max: int
    limit_candidate: Number
    note: str = "finite evidence only; says nothing about infinite sequences"


def _runs(values: Sequence, better) -> int:
    best = cur = 1
    for x, y in zip(values, values[1:]):
        cur = cur + 1 if better(x, y) else 1
        best = max(best, cur)
    return best


def sequence_report(values: Sequence[Number]) -> SequenceReport:
    if not values:
        raise DomainError("sequence_report needs a nonempty list")
    vals = [as_exact(v) for v in values]
    lt = lambda x, y: sign_of(y - x) > 0  # noqa: E731
    gt = lambda x, y: sign_of(x - y) > 0  # noqa: E731
    inc = _runs(vals, lt)
    dec = _runs(vals, gt)
    low = vals[0]
    for v in vals[1:]:
        if sign_of(v - low) < 0:
            low = v
    return SequenceReport(
        length=len(vals),
        strictly_decreasing=dec == len(vals),
        strictly_increasing=inc == len(vals),
        constant=all(v == vals[0] for v in vals),
        strictly_increasing_run_max=inc,
        strictly_decreasing_run_max=dec,
        limit_candidate=_simplify(low),
    )
