"""At most hyperbolic systems of vectors, carried as labelled Gram matrices.

Indices are 0-based everywhere. A system never stores the vectors
themselves, only the pairwise products ``gram[i][j] = v_i . v_j``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    DomainError,
    NotBlowableError,
    NotContractibleError,
    StructuralError,
    UnsupportedEntryError,
)
from .exact import ExactScalar, as_exact, sign_of
from .isomorphism import canonical_order


def _entry_key(x: ExactScalar):
    return x.key()


@dataclass(frozen=True, eq=False)
class VectorSystem:
    labels: tuple[str, ...]
    gram: tuple[tuple[ExactScalar, ...], ...]

    def __post_init__(self):
        gram = tuple(tuple(as_exact(x) for x in row) for row in self.gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise StructuralError("Gram matrix is not square")
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise StructuralError(f"Gram matrix not symmetric at ({i}, {j})")
        labels = tuple(str(x) for x in self.labels)
        if len(labels) != n:
            raise StructuralError(f"{len(labels)} labels for {n} vectors")
        if len(set(labels)) != n:
            raise StructuralError("labels must be distinct")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_matrix(cls, gram: Sequence[Sequence], labels: Iterable[str] | None = None) -> "VectorSystem":
        rows = tuple(tuple(as_exact(x) for x in row) for row in gram)
        if labels is None:
            labels = [f"v{i + 1}" for i in range(len(rows))]
        return cls(tuple(labels), rows)

    @classmethod
    def empty(cls) -> "VectorSystem":
        return cls((), ())

    # -- basic views -----------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.gram)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, VectorSystem):
            return NotImplemented
        return self.labels == other.labels and self.gram == other.gram

    def __hash__(self):
        return hash((self.labels, self.gram))

    def __repr__(self):
        rows = [[str(x) for x in row] for row in self.gram]
        return f"VectorSystem(labels={list(self.labels)}, gram={rows})"

    def entry(self, i: int, j: int) -> ExactScalar:
        return self.gram[i][j]

    @cached_property
    def weights(self) -> tuple[ExactScalar, ...]:
        """b_i = -v_i^2."""
        return tuple(-self.gram[i][i] for i in range(self.n))

    @cached_property
    def is_rational(self) -> bool:
        return all(x.rational_value() is not None for row in self.gram for x in row)

    @cached_property
    def is_integer(self) -> bool:
        if not self.is_rational:
            return False
        return all(x.rational_value().denominator == 1 for row in self.gram for x in row)

    @cached_property
    def int_matrix(self) -> list[list[int]]:
        if not self.is_integer:
            raise UnsupportedEntryError("system has non-integer entries")
        return [[int(x.rational_value()) for x in row] for row in self.gram]

    def field_matrix(self) -> list[list]:
        """Entries as Fraction when rational (fast path), else ExactScalar."""
        if self.is_rational:
            return [[x.rational_value() for x in row] for row in self.gram]
        return [list(row) for row in self.gram]

    def first_kind(self) -> list[int]:
        return [i for i in range(self.n) if self.gram[i][i] == -1]

    def neighbours(self, i: int) -> list[int]:
        return [j for j in range(self.n) if j != i and self.gram[i][j] != 0]

    def relabel(self, labels: Sequence[str]) -> "VectorSystem":
        return VectorSystem(tuple(labels), self.gram)

    def permuted(self, order: Sequence[int]) -> "VectorSystem":
        """New system whose i-th vector is the order[i]-th vector of self."""
        return VectorSystem(
            tuple(self.labels[k] for k in order),
            tuple(tuple(self.gram[a][b] for b in order) for a in order),
        )


def direct_sum(a: VectorSystem, b: VectorSystem) -> VectorSystem:
    n, m = a.n, b.n
    zero = ExactScalar(0)
    rows = [list(r) + [zero] * m for r in a.gram] + [[zero] * n + list(r) for r in b.gram]
    labels = list(a.labels) + [lb if lb not in a.labels else f"{lb}'" for lb in b.labels]
    return VectorSystem.from_matrix(rows, labels)


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    zero: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.zero)


class ClassKind(str, enum.Enum):
    ELLIPTIC = "elliptic"
    CONNECTED_PARABOLIC = "connected-parabolic"
    HYPERBOLIC = "hyperbolic"
    OTHER_NEG_SEMIDEFINITE = "other-neg-semidefinite"


@dataclass(frozen=True)
class SystemClass:
    kind: ClassKind
    lanner: bool = False

    def label(self) -> str:
        if self.kind is ClassKind.HYPERBOLIC and self.lanner:
            return "lanner"
        return self.kind.value


@dataclass
class ValidationReport:
    integer: bool
    diagonal_ok: bool
    off_diagonal_ok: bool
    signature: Signature | None
    at_most_hyperbolic: bool
    problems: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.diagonal_ok and self.off_diagonal_ok and self.at_most_hyperbolic and not self.problems


def _require_nonempty(system: VectorSystem):
    if system.n == 0:
        raise DomainError("empty system")


def signature(system: VectorSystem) -> Signature:
    """Exact inertia from the characteristic polynomial and Descartes' rule."""
    _require_nonempty(system)
    coeffs = linalg.charpoly(system.field_matrix())
    p, q, z = linalg.inertia_from_charpoly(coeffs)
    if p + q + z != system.n:
        raise AssertionError(f"root count mismatch for {system!r}")
    return Signature(p, q, z)


def is_elliptic(system: VectorSystem) -> bool:
    if system.n == 0:
        return True
    if system.is_integer:
        return linalg.is_negative_definite(system.int_matrix)
    return linalg.is_negative_definite(system.field_matrix())


def validate(system: VectorSystem, allow_radical: bool = False) -> ValidationReport:
    _require_nonempty(system)
    problems = []
    n = system.n
    integer = system.is_integer
    if not integer and not allow_radical:
        problems.append("entries are not all integers")
    diag_ok = True
    for i in range(n):
        if sign_of(system.gram[i][i] + 1) > 0:
            diag_ok = False
            problems.append(f"diagonal entry {i} is {system.gram[i][i]}, must be <= -1")
    off_ok = True
    for i in range(n):
        for j in range(i + 1, n):
            if sign_of(system.gram[i][j]) < 0:
                off_ok = False
                problems.append(f"entry ({i}, {j}) is negative")
    sig = signature(system)
    amh = sig.positive <= 1
    if not amh:
        problems.append(f"signature has {sig.positive} positive directions")
    return ValidationReport(integer, diag_ok, off_ok, sig, amh, problems)


def connected_components(system: VectorSystem) -> list[list[int]]:
    n = system.n
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in system.neighbours(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(system: VectorSystem) -> bool:
    return system.n > 0 and len(connected_components(system)) == 1


def subsystem(system: VectorSystem, indices: Iterable[int]) -> VectorSystem:
    idx = list(indices)
    if not idx:
        raise DomainError("subsystem needs at least one index")
    if len(set(idx)) != len(idx):
        raise DomainError(f"repeated index in {idx}")
    for i in idx:
        if not 0 <= i < system.n:
            raise DomainError(f"index {i} out of range for a system of size {system.n}")
    return system.permuted(idx)


def is_hyperbolic(system: VectorSystem) -> bool:
    return signature(system).positive >= 1


def is_lanner(system: VectorSystem) -> bool:
    """Hyperbolic with every proper subsystem non-hyperbolic.

    Deleting single vertices suffices: a subsystem of a non-hyperbolic
    system is non-hyperbolic, so every proper subsystem sits inside some
    one-vertex deletion.
    """
    if system.n == 0 or not is_hyperbolic(system):
        return False
    return all(
        not is_hyperbolic(subsystem(system, [j for j in range(system.n) if j != i]))
        for i in range(system.n)
    ) if system.n > 1 else True


def classify(system: VectorSystem) -> SystemClass:
    sig = signature(system)
    if sig.positive >= 2:
        raise DomainError(f"not at most hyperbolic: signature {sig.as_tuple()}")
    if sig.positive == 1:
        return SystemClass(ClassKind.HYPERBOLIC, is_lanner(system))
    if sig.zero == 0:
        return SystemClass(ClassKind.ELLIPTIC)
    if is_connected(system):
        return SystemClass(ClassKind.CONNECTED_PARABOLIC)
    return SystemClass(ClassKind.OTHER_NEG_SEMIDEFINITE)


# -- contraction and blow-up ----------------------------------------------

def contraction_violation(system: VectorSystem, e: int) -> str | None:
    if not 0 <= e < system.n:
        return f"index {e} out of range"
    if system.gram[e][e] != -1:
        return f"{system.labels[e]}^2 = {system.gram[e][e]}, not -1"
    for i in range(system.n):
        if i == e:
            continue
        c = system.gram[i][e]
        if c == 0:
            continue
        if c != 1:
            return f"({system.labels[i]}, {system.labels[e]}): product {c} is neither 0 nor 1"
        if sign_of(system.gram[i][i] + 2) > 0:
            return f"({system.labels[i]}, {system.labels[e]}): product 1 but {system.labels[i]}^2 = {system.gram[i][i]} > -2"
    return None


def contract(system: VectorSystem, e: int) -> VectorSystem:
    """Contract the first-kind element e: new products a_ij + c_i c_j, c_i = v_i . e."""
    bad = contraction_violation(system, e)
    if bad is not None:
        raise NotContractibleError(f"cannot contract {e}: {bad}")
    keep = [i for i in range(system.n) if i != e]
    c = [system.gram[i][e] for i in keep]
    rows = [[system.gram[a][b] + c[x] * c[y] for y, b in enumerate(keep)] for x, a in enumerate(keep)]
    return VectorSystem.from_matrix(rows, [system.labels[i] for i in keep])


def blowup_subset(system: VectorSystem, e: int) -> list[int]:
    """Indices (in the contracted system) of the vectors meeting e."""
    keep = [i for i in range(system.n) if i != e]
    return [x for x, i in enumerate(keep) if system.gram[i][e] == 1]


def blow_up(
    system: VectorSystem,
    subset: Iterable[int],
    label: str | None = None,
    position: int | None = None,
) -> VectorSystem:
    """Inverse of ``contract``: add e with e^2 = -1 meeting exactly ``subset``."""
    s = sorted(set(subset))
    n = system.n
    for i in s:
        if not 0 <= i < n:
            raise NotBlowableError(f"index {i} out of range")
        if sign_of(system.gram[i][i] + 1) > 0:
            raise NotBlowableError(f"{system.labels[i]}^2 = {system.gram[i][i]} > -1")
    for a in s:
        for b in s:
            if a < b and sign_of(system.gram[a][b] - 1) < 0:
                raise NotBlowableError(
                    f"({system.labels[a]}, {system.labels[b]}): product {system.gram[a][b]} < 1"
                )
    inside = set(s)
    rows = [
        [system.gram[i][j] - (1 if (i in inside and j in inside) else 0) for j in range(n)]
        for i in range(n)
    ]
    for i in range(n):
        rows[i].append(ExactScalar(1 if i in inside else 0))
    rows.append([ExactScalar(1 if i in inside else 0) for i in range(n)] + [ExactScalar(-1)])
    if label is None:
        k = n + 1
        while f"e{k}" in system.labels:
            k += 1
        label = f"e{k}"
    out = VectorSystem.from_matrix(rows, list(system.labels) + [label])
    if position is not None:
        if not 0 <= position <= n:
            raise NotBlowableError(f"position {position} out of range")
        order = list(range(n))
        order.insert(position, n)
        out = out.permuted(order)
    return out


# -- equivalence -------------------------------------------------------------

def canonical_form(system: VectorSystem) -> tuple:
    key, _ = canonical_order(system.gram, _entry_key)
    return key


def canonical_system(system: VectorSystem) -> VectorSystem:
    _, order = canonical_order(system.gram, _entry_key)
    return system.permuted(order)


def equivalence_witness(a: VectorSystem, b: VectorSystem) -> list[int] | None:
    """A permutation p with a.permuted(p).gram == b.gram, or None."""
    if a.n != b.n:
        return None
    ka, oa = canonical_order(a.gram, _entry_key)
    kb, ob = canonical_order(b.gram, _entry_key)
    if ka != kb:
        return None
    # a[oa[i]] ~ b[ob[i]]
    perm = [0] * a.n
    for i in range(a.n):
        perm[ob[i]] = oa[i]
    return perm


def is_equivalent(a: VectorSystem, b: VectorSystem) -> bool:
    return equivalence_witness(a, b) is not None


# -- weighted graph view ---------------------------------------------------

@dataclass(frozen=True)
class WeightedGraph:
    labels: tuple[str, ...]
    weights: tuple[ExactScalar, ...]
    edges: tuple[tuple[int, int, ExactScalar], ...]

    @classmethod
    def of(cls, system: VectorSystem) -> "WeightedGraph":
        edges = tuple(
            (i, j, system.gram[i][j])
            for i in range(system.n)
            for j in range(i + 1, system.n)
            if system.gram[i][j] != 0
        )
        return cls(system.labels, system.weights, edges)

    def to_system(self) -> VectorSystem:
        n = len(self.weights)
        rows = [[ExactScalar(0)] * n for _ in range(n)]
        for i, b in enumerate(self.weights):
            rows[i][i] = -b
        for i, j, w in self.edges:
            rows[i][j] = rows[j][i] = w
        return VectorSystem.from_matrix(rows, self.labels)

    def is_tree_or_forest(self) -> bool:
        return _cycle_rank(len(self.weights), self.edges) == 0

    def has_multiple_edges(self) -> bool:
        return any(w != 1 for _, _, w in self.edges)

    def valency(self, i: int) -> int:
        return sum(1 for a, b, _ in self.edges if i in (a, b))


def _cycle_rank(n: int, edges) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for a, b, _ in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return len(edges) - n + comps


def from_integer_rows(rows: Sequence[Sequence[int | Fraction]], labels=None) -> VectorSystem:
    return VectorSystem.from_matrix(rows, labels)
