"""Catalog families: loading, instantiation and identification.

A family is a parameterised weighted graph or Gram matrix together
with the classification it is claimed to have. Graph templates are
assembled by a builder (see ``_skeleton``) from *size* parameters and
then weighted vertex by vertex; matrix templates list their entries as
expressions directly.

Vertex orders produced by the builders:

* ``chain``  -- 0..L-1 along the path
* ``cycle``  -- 0..L-1 around the cycle
* ``star``   -- centre 0, then each arm from the centre outwards
* ``double_fork`` -- branch X = 0 with leaves 1, 2; middle vertices
  3..n+2; branch Y = n+3 with leaves n+4, n+5
* ``graph``  -- 0..n-1 with explicit edges

``extras`` vertices are appended afterwards in the listed order.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Iterable, Iterator, Mapping, Sequence

from ..errors import ParameterError, StructuralError
from ..exact import ExactScalar
from ..isomorphism import find_embeddings
from ..logcanonical import Target
from ..systems import VectorSystem, is_elliptic
from . import expr


@dataclass(frozen=True)
class ParamSpec:
    name: str
    domain: str = "int"  # "int" or "weights" (a list of integer weights)
    min: int = 1
    max: int | None = None
    length: str | None = None  # expression for the list length (weights only)
    size: bool = False  # changes the number of vertices

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "domain": self.domain, "min": self.min}
        if self.max is not None:
            out["max"] = self.max
        if self.length is not None:
            out["length"] = self.length
        if self.size:
            out["size"] = True
        return out


@dataclass(frozen=True)
class Claim:
    kind: Target | None
    log_canonical: bool | None
    minimal: bool | None


@dataclass(frozen=True, eq=False)
class CatalogFamily:
    id: str
    anchor: str
    kind: str  # "graph" | "matrix"
    params: tuple[ParamSpec, ...]
    constraints: tuple[str, ...]
    template: Mapping[str, Any]
    claimed: Claim
    side_conditions: tuple[str, ...] = ()
    ambiguous: bool = False
    note: str = ""

    def param(self, name: str) -> ParamSpec:
        for p in self.params:
            if p.name == name:
                return p
        raise KeyError(name)

    @property
    def size_params(self) -> tuple[ParamSpec, ...]:
        return tuple(p for p in self.params if p.size)


@dataclass(frozen=True)
class CatalogMatch:
    family: str
    params: dict
    witness: tuple[int, ...]  # target vertex i is vertex witness[i] of the instance


# -- loading ---------------------------------------------------------------

def _family_from_record(rec: Mapping[str, Any]) -> CatalogFamily:
    try:
        params = tuple(
            ParamSpec(
                name=p["name"],
                domain=p.get("domain", "int"),
                min=int(p.get("min", 1)),
                max=p.get("max"),
                length=p.get("length"),
                size=bool(p.get("size", False)),
            )
            for p in rec.get("params", [])
        )
        claimed = rec["claimed"]
        kind = claimed.get("class")
        fam = CatalogFamily(
            id=rec["id"],
            anchor=rec.get("anchor", ""),
            kind=rec["kind"],
            params=params,
            constraints=tuple(rec.get("constraints", [])),
            template=rec["template"],
            claimed=Claim(
                Target(kind) if kind is not None else None,
                claimed.get("log_canonical"),
                claimed.get("minimal"),
            ),
            side_conditions=tuple(rec.get("side_conditions", [])),
            ambiguous=bool(rec.get("ambiguous", False)),
            note=rec.get("note", ""),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise StructuralError(f"bad catalog record {rec.get('id', '?')}: {exc}") from exc
    if fam.kind not in ("graph", "matrix"):
        raise StructuralError(f"{fam.id}: unknown kind {fam.kind!r}")
    for c in fam.constraints:
        expr.parse(c)
    for p in fam.params:
        if p.length is not None:
            expr.parse(str(p.length))
    for src in _template_expressions(fam.template):
        expr.parse(src)
    return fam


def _template_expressions(node, key=None) -> Iterator[str]:
    """Every expression string in a template (builder names excluded)."""
    if isinstance(node, str):
        if key != "builder":
            yield node
    elif isinstance(node, Mapping):
        for k, v in node.items():
            yield from _template_expressions(v, k)
    elif isinstance(node, (list, tuple)):
        for v in node:
            yield from _template_expressions(v, key)


def load_catalog(path: str | None = None) -> list[CatalogFamily]:
    if path is None:
        text = resources.files("lcsystems.catalog").joinpath("data/catalog.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    records = json.loads(text)
    fams = [_family_from_record(r) for r in records]
    ids = [f.id for f in fams]
    if len(set(ids)) != len(ids):
        raise StructuralError("duplicate family ids in catalog")
    return fams


_DEFAULT: list[CatalogFamily] | None = None


def default_catalog() -> list[CatalogFamily]:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_catalog()
    return _DEFAULT


def get_family(family_id: str, catalog: Sequence[CatalogFamily] | None = None) -> CatalogFamily:
    for f in catalog if catalog is not None else default_catalog():
        if f.id == family_id:
            return f
    raise ParameterError(f"unknown family {family_id!r}")


# -- templates -------------------------------------------------------------

def _int(src, env) -> int:
    v = expr.evaluate(str(src), env)
    if not isinstance(v, Fraction) or v.denominator != 1:
        raise ParameterError(f"expression {src!r} is not an integer")
    return int(v)


def _skeleton(tpl: Mapping[str, Any], env: Mapping[str, Any]) -> tuple[int, dict[tuple[int, int], Fraction]]:
    """Vertex count and edge multiplicities of a graph template."""
    b = tpl["builder"]
    edges: dict[tuple[int, int], Fraction] = {}

    def add(i, j, m=1):
        key = (min(i, j), max(i, j))
        if i == j or key in edges:
            raise StructuralError(f"template produces a loop or repeated edge {key}")
        edges[key] = Fraction(m)

    if b == "chain":
        n = _int(tpl["length"], env)
        for i in range(n - 1):
            add(i, i + 1)
    elif b == "cycle":
        n = _int(tpl["length"], env)
        if n < 3:
            raise ParameterError("a cycle needs at least 3 vertices")
        for i in range(n):
            add(i, (i + 1) % n)
    elif b == "star":
        arms = [_int(a, env) for a in tpl["arms"]]
        n = 1
        for length in arms:
            prev = 0
            for _ in range(length):
                add(prev, n)
                prev = n
                n += 1
    elif b == "double_fork":
        mid = _int(tpl["middle"], env)
        n = mid + 6
        add(0, 1)
        add(0, 2)
        chain = [0] + list(range(3, 3 + mid)) + [mid + 3]
        for a, c in zip(chain, chain[1:]):
            add(a, c)
        add(mid + 3, mid + 4)
        add(mid + 3, mid + 5)
    elif b == "graph":
        n = _int(tpl["n"], env)
    else:
        raise StructuralError(f"unknown builder {b!r}")
    for i, j, m in tpl.get("edges", []):
        add(_int(i, env), _int(j, env), _int(m, env))
    for extra in tpl.get("extras", []):
        for i, m in extra["attach"]:
            add(_int(i, env), n, _int(m, env))
        n += 1
    for (i, j), m in list(edges.items()):
        if not (0 <= i < n and 0 <= j < n):
            raise StructuralError(f"edge {(i, j)} out of range")
        if m == 0:
            del edges[(i, j)]
    return n, edges


# weight of one vertex: ("expr", source) or ("slot", list name, position)
WeightSpec = tuple


def _weight_specs(tpl: Mapping[str, Any], n: int, env: Mapping[str, Any]) -> list[WeightSpec]:
    w = tpl.get("weights", {})
    specs: list[WeightSpec] = [("expr", str(w.get("default", "2")))] * n
    for rule in w.get("rules", []):
        if "at" in rule:
            idx = [_int(rule["at"], env)]
        else:
            idx = list(range(_int(rule["from"], env), _int(rule["to"], env)))
        for k, i in enumerate(idx):
            if not 0 <= i < n:
                raise StructuralError(f"weight rule index {i} out of range")
            if "slot" in rule:
                name, off = rule["slot"]
                specs[i] = ("slot", name, _int(off, env) + k)
            else:
                specs[i] = ("expr", str(rule["value"]))
    return specs


def _check_params(fam: CatalogFamily, params: Mapping[str, Any]) -> dict[str, Any]:
    clean: dict[str, Any] = {}
    for p in fam.params:
        if p.name not in params:
            raise ParameterError(f"{fam.id}: missing parameter {p.name!r}")
        v = params[p.name]
        if p.domain == "weights":
            if not isinstance(v, (list, tuple)) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
                raise ParameterError(f"{fam.id}: {p.name} must be a list of integers")
            bad = [x for x in v if x < p.min or (p.max is not None and x > p.max)]
            if bad:
                raise ParameterError(f"{fam.id}: {p.name} entries must lie in [{p.min}, {p.max or 'inf'}]")
            clean[p.name] = list(v)
        else:
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParameterError(f"{fam.id}: {p.name} must be an integer")
            if v < p.min:
                raise ParameterError(f"{fam.id}: violates {p.name} >= {p.min}")
            if p.max is not None and v > p.max:
                raise ParameterError(f"{fam.id}: violates {p.name} <= {p.max}")
            clean[p.name] = v
    extra = set(params) - {p.name for p in fam.params}
    if extra:
        raise ParameterError(f"{fam.id}: unknown parameters {sorted(extra)}")
    for p in fam.params:
        if p.domain == "weights" and p.length is not None:
            want = _int(p.length, clean)
            if len(clean[p.name]) != want:
                raise ParameterError(f"{fam.id}: {p.name} needs length {p.length} = {want}")
    for c in fam.constraints:
        if not expr.evaluate(c, clean):
            raise ParameterError(f"{fam.id}: violates constraint {c}")
    return clean


def _matrix_instance(fam: CatalogFamily, env: Mapping[str, Any]) -> list[list[ExactScalar]]:
    rows = []
    for row in fam.template["matrix"]:
        out = []
        for src in row:
            v = expr.evaluate(str(src), env)
            out.append(v if isinstance(v, ExactScalar) else ExactScalar(v))
        rows.append(out)
    return rows


def instantiate(fam: CatalogFamily, params: Mapping[str, Any]) -> VectorSystem:
    """Build the family member; raises ParameterError on any violated predicate."""
    env = _check_params(fam, params)
    if fam.kind == "matrix":
        rows = _matrix_instance(fam, env)
    else:
        n, edges = _skeleton(fam.template, env)
        specs = _weight_specs(fam.template, n, env)
        rows = [[ExactScalar(0)] * n for _ in range(n)]
        for i, spec in enumerate(specs):
            if spec[0] == "slot":
                lst = env[spec[1]]
                if not 0 <= spec[2] < len(lst):
                    raise ParameterError(f"{fam.id}: weight slot {spec[1]}[{spec[2]}] missing")
                b = Fraction(lst[spec[2]])
            else:
                b = expr.evaluate(spec[1], env)
            rows[i][i] = ExactScalar(-b)
        for (i, j), m in edges.items():
            rows[i][j] = rows[j][i] = ExactScalar(m)
    system = VectorSystem.from_matrix(rows)
    for cond in fam.side_conditions:
        if cond == "negative_definite":
            if not is_elliptic(system):
                raise ParameterError(f"{fam.id}: side condition violated (Gram matrix not negative definite)")
        else:
            raise StructuralError(f"{fam.id}: unknown side condition {cond!r}")
    return system


# -- identification --------------------------------------------------------

def _target_int_weight(system: VectorSystem, t: int) -> int | None:
    q = system.gram[t][t].rational_value()
    if q is None or q.denominator != 1:
        return None
    return int(-q)


def _size_assignments(fam: CatalogFamily, bound: int) -> Iterator[dict[str, int]]:
    specs = fam.size_params
    ranges = [range(p.min, min(p.max if p.max is not None else bound, bound) + 1) for p in specs]
    for combo in itertools.product(*ranges):
        yield {p.name: v for p, v in zip(specs, combo)}


def _finish(fam: CatalogFamily, assignment: dict, target: VectorSystem, perm: list[int],
            free: list[ParamSpec], bound: int) -> Iterator[dict]:
    ranges = [range(p.min, min(p.max if p.max is not None else bound, bound) + 1) for p in free]
    for combo in itertools.product(*ranges):
        params = dict(assignment)
        params.update({p.name: v for p, v in zip(free, combo)})
        try:
            inst = instantiate(fam, params)
        except ParameterError:
            continue
        if inst.permuted(perm).gram == target.gram:
            yield params


def _identify_graph(fam: CatalogFamily, target: VectorSystem) -> Iterator[CatalogMatch]:
    n = target.n
    weights = [_target_int_weight(target, t) for t in range(n)]
    if any(w is None for w in weights):
        return
    bound = max([n] + [abs(w) for w in weights] + [
        abs(int(x.rational_value())) for row in target.gram for x in row if x.rational_value() is not None
    ])
    by_name = {p.name: p for p in fam.params}
    seen: set[str] = set()
    for sizes in _size_assignments(fam, n):
        try:
            pn, edges = _skeleton(fam.template, sizes)
        except (ParameterError, KeyError):
            continue
        if pn != n:
            continue
        try:
            specs = _weight_specs(fam.template, pn, sizes)
        except (ParameterError, KeyError):
            continue
        mult = {}
        for (i, j), m in edges.items():
            mult[(i, j)] = mult[(j, i)] = m

        def entry(i, j):
            return mult.get((i, j), 0)

        def vertex_ok(p, t, bind):
            spec = specs[p]
            w = weights[t]
            if spec[0] == "slot":
                key = (spec[1], spec[2])
                ps = by_name[spec[1]]
                if w < ps.min or (ps.max is not None and w > ps.max):
                    return None
            else:
                src = spec[1]
                if src in by_name and not by_name[src].size:
                    key = src
                    ps = by_name[src]
                    if w < ps.min or (ps.max is not None and w > ps.max):
                        return None
                else:
                    try:
                        v = expr.evaluate(src, sizes)
                    except KeyError:
                        return bind  # depends on a parameter bound elsewhere
                    return bind if v == w else None
            if key in bind:
                return bind if bind[key] == w else None
            nb = dict(bind)
            nb[key] = w
            return nb

        for mapping, bind in find_embeddings(n, entry, vertex_ok, target.gram):
            assignment: dict[str, Any] = dict(sizes)
            lists: dict[str, dict[int, int]] = {}
            for key, w in bind.items():
                if isinstance(key, tuple):
                    lists.setdefault(key[0], {})[key[1]] = w
                else:
                    assignment[key] = w
            for name, slots in lists.items():
                assignment[name] = [slots[k] for k in sorted(slots)]
            free = [p for p in fam.params if p.name not in assignment]
            if any(p.domain == "weights" for p in free):
                continue
            perm = [0] * n
            for p, t in mapping.items():
                perm[t] = p
            for params in _finish(fam, assignment, target, perm, free, bound):
                key = json.dumps(params, sort_keys=True)
                if key not in seen:
                    seen.add(key)
                    yield CatalogMatch(fam.id, params, tuple(perm))


def _identify_matrix(fam: CatalogFamily, target: VectorSystem) -> Iterator[CatalogMatch]:
    size = len(fam.template["matrix"])
    if size != target.n:
        return
    seen: set[str] = set()
    for perm in itertools.permutations(range(size)):
        m = target.permuted(perm).gram
        params: dict[str, int] = {}
        ok = True
        for name, src in fam.template["bind"].items():
            v = expr.evaluate(src, {"m": m})
            q = v.rational_value() if isinstance(v, ExactScalar) else v
            if q is None or q.denominator != 1:
                ok = False
                break
            params[name] = int(q)
        if not ok:
            continue
        try:
            inst = instantiate(fam, params)
        except ParameterError:
            continue
        if inst.gram == m:
            key = json.dumps(params, sort_keys=True)
            if key not in seen:
                seen.add(key)
                inv = [0] * size
                for i, t in enumerate(perm):
                    inv[t] = i
                yield CatalogMatch(fam.id, params, tuple(inv))


def identify(
    system: VectorSystem,
    families: Iterable[CatalogFamily] | None = None,
) -> list[CatalogMatch]:
    """Every (family, parameters) whose instance is a relabelling of ``system``."""
    if system.n == 0 or system.n > 16:
        return []
    out: list[CatalogMatch] = []
    for fam in families if families is not None else default_catalog():
        gen = _identify_matrix if fam.kind == "matrix" else _identify_graph
        out.extend(gen(fam, system))
    return out


def verify_match(match: CatalogMatch, system: VectorSystem,
                 catalog: Sequence[CatalogFamily] | None = None) -> bool:
    fam = get_family(match.family, catalog)
    return instantiate(fam, match.params).permuted(list(match.witness)).gram == system.gram
