"""Canonical elements, log canonicity, contractibility and minimal systems.

The canonical element of an elliptic system is K = sum alpha_i v_i with
K . v_i = b_i - 2. A system is log canonical when every elliptic
subsystem has alpha_i >= -1, strictly so on components that contain a
(-1)-vector. Because alpha of a disconnected elliptic system is the
concatenation of the alphas of its components, it is enough to look at
connected elliptic subsystems.
"""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import linalg
from .errors import DomainError, ResourceError
from .exact import ExactScalar, sign_of
from .isomorphism import canonical_order
from .systems import (
    ClassKind,
    SystemClass,
    VectorSystem,
    canonical_form,
    classify,
    is_connected,
    is_elliptic,
    signature,
    subsystem,
)


class KindTag(str, enum.Enum):
    FIRST = "first"
    SECOND = "second"


def kind_tags(system: VectorSystem) -> list[KindTag]:
    return [KindTag.FIRST if system.gram[i][i] == -1 else KindTag.SECOND for i in range(system.n)]


@dataclass(frozen=True)
class CanonicalElement:
    labels: tuple[str, ...]
    coefficients: tuple  # Fraction, or ExactScalar for radical systems

    def residual(self, system: VectorSystem) -> list:
        """K . v_i - (b_i - 2); identically zero for a correct element."""
        out = []
        for i in range(system.n):
            s = sum((self.coefficients[j] * system.gram[j][i] for j in range(system.n)), ExactScalar(0))
            out.append(s - (system.weights[i] - 2))
        return out


def _alpha(system: VectorSystem) -> list:
    rhs = [w - 2 for w in system.weights]
    if system.is_rational:
        return linalg.solve(system.field_matrix(), [r.rational_value() for r in rhs])
    sol = linalg.solve(system.field_matrix(), rhs)
    return [x.rational_value() if isinstance(x, ExactScalar) and x.rational_value() is not None else x
            for x in sol]


def canonical_element(system: VectorSystem) -> CanonicalElement:
    if system.n == 0:
        return CanonicalElement((), ())
    if not is_elliptic(system):
        raise DomainError("canonical element needs an elliptic system")
    return CanonicalElement(system.labels, tuple(_alpha(system)))


# -- log canonicity ------------------------------------------------------------

@dataclass(frozen=True)
class LCWitness:
    """An elliptic connected subsystem whose canonical element breaks the bound."""

    subset: tuple[int, ...]
    index: int
    coefficient: object
    strict: bool  # True when the failure is alpha == -1 next to a (-1)-vector


@dataclass(frozen=True)
class LCResult:
    ok: bool
    witness: LCWitness | None = None

    def __bool__(self):
        return self.ok


def connected_subsets(
    n: int,
    nbrs: Sequence[Sequence[int]],
    keep,
    root: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Connected vertex sets, each once, pruned by a hereditary predicate.

    ``keep(subset)`` must be closed under taking connected subsets; a set
    failing it is neither yielded nor extended. With ``root`` only sets
    containing that vertex are produced.
    """
    def extend(sub: list[int], ext: list[int], start: int):
        yield tuple(sorted(sub))
        ext = list(ext)
        while ext:
            w = ext.pop()
            new_sub = sub + [w]
            if not keep(tuple(sorted(new_sub))):
                continue
            closed = set(sub)
            for u in sub:
                closed.update(nbrs[u])
            new_ext = ext + [
                u for u in nbrs[w]
                if u not in closed and u not in ext and (root is not None or u > start)
            ]
            yield from extend(new_sub, new_ext, start)

    starts = [root] if root is not None else range(n)
    for v in starts:
        if not keep((v,)):
            continue
        ext = [u for u in nbrs[v] if root is not None or u > v]
        yield from extend([v], ext, v)


def is_log_canonical(system: VectorSystem, containing: int | None = None) -> LCResult:
    """Check every connected elliptic subsystem (optionally only those containing one index)."""
    n = system.n
    if n == 0:
        return LCResult(True)
    if system.is_integer:
        return _lc_integer(system.int_matrix, containing)
    nbrs = [system.neighbours(i) for i in range(n)]
    mat = system.field_matrix()
    cache: dict[tuple[int, ...], bool] = {}

    def elliptic(sub):
        r = cache.get(sub)
        if r is None:
            r = linalg.is_negative_definite([[mat[i][j] for j in sub] for i in sub])
            cache[sub] = r
        return r

    for sub in connected_subsets(n, nbrs, elliptic, root=containing):
        alpha = _alpha(subsystem(system, sub))
        has_first = any(system.gram[i][i] == -1 for i in sub)
        for k, a in enumerate(alpha):
            s = sign_of(a + 1)
            if s < 0 or (s == 0 and has_first):
                return LCResult(False, LCWitness(sub, sub[k], a, s == 0))
    return LCResult(True)


def _lc_integer(mat: list[list[int]], containing: int | None) -> LCResult:
    # With beta = alpha + 1 the defining equations become (-A) beta = -r,
    # r_i = sum_{j != i} a_ij - 2, and det(-A) > 0 on elliptic sets, so the
    # sign of beta_i is the sign of its Cramer numerator: all integers.
    n = len(mat)
    nbrs = [[j for j in range(n) if j != i and mat[i][j] != 0] for i in range(n)]

    def elliptic(sub):
        return linalg.is_negative_definite([[mat[i][j] for j in sub] for i in sub])

    for sub in connected_subsets(n, nbrs, elliptic, root=containing):
        neg = [[-mat[i][j] for j in sub] for i in sub]
        rhs = [2 - sum(mat[i][j] for j in sub if j != i) for i in sub]
        d, nums = linalg.int_cramer(neg, rhs)
        has_first = any(mat[i][i] == -1 for i in sub)
        for k, num in enumerate(nums):
            if num < 0 or (num == 0 and has_first):
                a = Fraction(num, d) - 1
                return LCResult(False, LCWitness(sub, sub[k], a, num == 0))
    return LCResult(True)


def contractible_elements(system: VectorSystem) -> list[int]:
    """First-kind e such that every pair {v, e} is elliptic, i.e. (v.e)^2 < b_v."""
    out = []
    for e in system.first_kind():
        if all(
            sign_of(system.gram[v][e] * system.gram[v][e] - system.weights[v]) < 0
            for v in range(system.n)
            if v != e
        ):
            out.append(e)
    return out


def is_minimal(system: VectorSystem, singleton_first_kind_minimal: bool = False) -> bool:
    """No contractible first-kind element.

    A lone (-1)-vector passes the pair test vacuously and so counts as
    contractible, i.e. not minimal; ``singleton_first_kind_minimal``
    selects the other reading.
    """
    if singleton_first_kind_minimal and system.n == 1:
        return True
    return not contractible_elements(system)


# -- enumeration -------------------------------------------------------------

class Target(str, enum.Enum):
    ELLIPTIC = "elliptic"
    CONNECTED_PARABOLIC = "connected-parabolic"
    HYPERBOLIC = "hyperbolic"
    LANNER = "lanner"


def parse_target(value) -> Target:
    if isinstance(value, Target):
        return value
    if isinstance(value, SystemClass):
        if value.kind is ClassKind.HYPERBOLIC:
            return Target.LANNER if value.lanner else Target.HYPERBOLIC
        value = value.kind
    if isinstance(value, ClassKind):
        value = value.value
    norm = str(value).strip().lower().replace("_", "-")
    aliases = {"parabolic": "connected-parabolic", "hyperbolic-lanner": "lanner"}
    norm = aliases.get(norm, norm)
    try:
        return Target(norm)
    except ValueError:
        raise DomainError(f"unknown class filter {value!r}") from None


def matches_target(system: VectorSystem, target: Target) -> bool:
    cls = classify(system)
    if target is Target.ELLIPTIC:
        return cls.kind is ClassKind.ELLIPTIC and is_connected(system)
    if target is Target.CONNECTED_PARABOLIC:
        return cls.kind is ClassKind.CONNECTED_PARABOLIC
    if target is Target.LANNER:
        return cls.kind is ClassKind.HYPERBOLIC and cls.lanner
    return cls.kind is ClassKind.HYPERBOLIC and is_connected(system)


@dataclass(frozen=True)
class EnumerationLimits:
    max_size: int = 8
    max_weight: int = 12


def _canon(rows: list[list[int]]) -> tuple[tuple, list[list[int]]]:
    key, order = canonical_order(rows, lambda x: x)
    return key, [[rows[a][b] for b in order] for a in order]


def _scaled_neg_inverse(rows: list[list[int]]) -> tuple[int, list[list[int]]] | None:
    """(D, adj(-A)) with D = det(-A) > 0 for negative definite A, else None.

    adj(-A) = D * (-A)^{-1} is entrywise >= 0 because (-A)^{-1} is.
    """
    if not linalg.is_negative_definite(rows):
        return None
    neg = [[Fraction(-x) for x in r] for r in rows]
    d = linalg.int_det([[-x for x in r] for r in rows])
    inv = linalg.inverse(neg)
    return d, [[int(x * d) for x in r] for r in inv]


def _columns(k: int, w: int, q: tuple[int, list[list[int]]] | None, bound: int | None,
             strict: bool, pair_caps: list[int] | None) -> Iterator[tuple[int, ...]]:
    """Nonzero columns c in [0, w]^k.

    With ``q = (D, D * (-A)^{-1})`` the form c^T (-A)^{-1} c is monotone in
    every coordinate (all entries >= 0), so once a prefix reaches ``bound``
    the remaining values of that coordinate can be skipped.
    """
    c = [0] * k
    d, m = q if q is not None else (1, None)
    limit = bound * d if bound is not None else None

    def rec(i: int, acc: int):
        if i == k:
            if any(c):
                yield tuple(c)
            return
        cross = 0
        if m is not None:
            cross = 2 * sum(c[j] * m[i][j] for j in range(i) if c[j])
        for v in range(0, w + 1):
            if pair_caps is not None and v > pair_caps[i]:
                break
            f = acc
            if m is not None and limit is not None:
                f = acc + v * cross + v * v * m[i][i]
                if f > limit or (strict and f == limit):
                    break
            c[i] = v
            yield from rec(i + 1, f)
        c[i] = 0

    yield from rec(0, 0)


def _children(args) -> list[tuple[tuple, list[list[int]]]]:
    """All one-vertex extensions of a parent that survive the level's tests.

    Modes: "elliptic" keeps elliptic children; "parabolic" keeps elliptic
    children below the last level and singular ones at it; "lanner" keeps
    negative semidefinite children below the last level and anything with
    semidefinite pairs at it (the caller re-classifies).
    """
    rows, w, min_b, mode, final = args
    k = len(rows)
    q = _scaled_neg_inverse(rows)
    out = []
    for b in range(min_b, w + 1):
        if mode == "elliptic" or (mode == "parabolic" and not final):
            cols = _columns(k, w, q, b, True, None)
        elif mode == "parabolic":
            cols = (c for c in _columns(k, w, q, b, False, None) if _form(q, c) == b * q[0])
        elif not final:
            # a connected parabolic system has no semidefinite connected extension
            cols = _columns(k, w, q, b, False, None) if q is not None else iter(())
        else:
            caps = [math.isqrt(b * -rows[i][i]) for i in range(k)] if k >= 2 else None
            cols = _columns(k, w, None, None, False, caps)
        for c in cols:
            new = [list(r) + [c[i]] for i, r in enumerate(rows)]
            new.append(list(c) + [-b])
            if not _lc_integer(new, k):
                continue
            out.append(_canon(new))
    return out


def _form(q, c) -> int:
    m = q[1]
    return sum(c[i] * c[j] * m[i][j] for i in range(len(c)) for j in range(len(c)))


def enumerate_minimal(
    class_filter,
    max_size: int,
    max_weight: int,
    singleton_first_kind_minimal: bool = False,
    jobs: int = 1,
    limits: EnumerationLimits = EnumerationLimits(),
) -> list[VectorSystem]:
    """Connected minimal log canonical integer systems of one class, up to equivalence.

    Systems are grown one vertex at a time (every connected graph has a
    vertex whose removal keeps it connected). Intermediate levels hold
    only systems every connected subsystem of a target must satisfy, so
    pruning by them is exact. Results are re-checked with the plain
    classifier and returned in canonical order.
    """
    target = parse_target(class_filter)
    if max_size < 1 or max_weight < 1:
        raise DomainError("max_size and max_weight must be positive")
    if max_size > limits.max_size or max_weight > limits.max_weight:
        raise ResourceError(
            f"enumeration limits exceeded: size {max_size} > {limits.max_size} "
            f"or weight {max_weight} > {limits.max_weight}"
        )
    results: dict[tuple, VectorSystem] = {}

    def consider(rows):
        s = VectorSystem.from_matrix(rows)
        if not matches_target(s, target):
            return
        if not is_log_canonical(s):
            return
        if not is_minimal(s, singleton_first_kind_minimal):
            return
        results[canonical_form(s)] = s

    for size in range(1, max_size + 1):
        for rows in _level_targets(target, size, max_weight, jobs):
            consider(rows)
    return [results[k] for k in sorted(results)]


def _first_kind_free(target: Target, size: int) -> bool:
    # In these classes every pair is elliptic, so any (-1)-vector is contractible.
    if target is Target.ELLIPTIC:
        return size >= 2
    if target is Target.CONNECTED_PARABOLIC:
        return size >= 3
    if target is Target.LANNER:
        return size >= 4
    return False


def _level_targets(target: Target, size: int, w: int, jobs: int) -> list[list[list[int]]]:
    min_b = 2 if _first_kind_free(target, size) else 1
    if size == 1:
        return [[[-b]] for b in range(min_b, w + 1)]
    mode = {
        Target.ELLIPTIC: "elliptic",
        Target.CONNECTED_PARABOLIC: "parabolic",
        Target.LANNER: "lanner",
        Target.HYPERBOLIC: "hyperbolic",
    }[target]
    if mode == "hyperbolic":
        return _hyperbolic_level(size, w, min_b, jobs)
    # intermediate pool: elliptic (or, for Lanner, negative semidefinite) connected lc
    pool: dict[tuple, list[list[int]]] = {}
    for b in range(min_b, w + 1):
        pool[((1, ((-b,),)))] = [[-b]]
    for level in range(2, size + 1):
        final = level == size
        parents = [pool[k] for k in sorted(pool)]
        tasks = [(p, w, min_b, mode, final) for p in parents]
        merged: dict[tuple, list[list[int]]] = {}
        for batch in _map(tasks, jobs):
            for key, rows in batch:
                merged.setdefault(key, rows)
        pool = merged
    return [pool[k] for k in sorted(pool)]


def _hyperbolic_level(size: int, w: int, min_b: int, jobs: int):
    # at most hyperbolic lc connected systems: both properties are hereditary
    pool = {((1, ((-b,),))): [[-b]] for b in range(min_b, w + 1)}
    for _ in range(2, size + 1):
        merged: dict[tuple, list[list[int]]] = {}
        for rows in (pool[k] for k in sorted(pool)):
            k = len(rows)
            for b in range(min_b, w + 1):
                for c in _columns(k, w, None, None, False, None):
                    new = [list(r) + [c[i]] for i, r in enumerate(rows)]
                    new.append(list(c) + [-b])
                    s = VectorSystem.from_matrix(new)
                    if signature(s).positive > 1:
                        continue
                    if not is_log_canonical(s, containing=k):
                        continue
                    key, canon = _canon(new)
                    merged.setdefault(key, canon)
        pool = merged
    return [pool[k] for k in sorted(pool)]


def _map(tasks, jobs: int):
    if jobs <= 1 or len(tasks) < 2:
        return [_children(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_children, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
