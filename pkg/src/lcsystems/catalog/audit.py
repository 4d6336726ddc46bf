"""Audit catalog claims against the classifier.

Finite parameter ranges are enumerated completely. Unbounded integer
parameters get their boundary values plus a seeded random interior no
larger than ``cap``; free weight lists get all-minimum, all-minimum+1
and random entries up to ``cap``. Assignments failing a constraint or a
side condition are counted as rejected, never as disagreements.
"""
from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

from ..errors import ParameterError
from ..logcanonical import Target, is_log_canonical, is_minimal, matches_target
from ..systems import ClassKind, classify
from . import expr
from .families import CatalogFamily, default_catalog, get_family, instantiate


@dataclass(frozen=True)
class AuditConfig:
    sample_budget: int = 200
    cap: int = 12
    seed: int = 0
    random_interior: int = 3
    weight_samples: int = 4


@dataclass
class Discrepancy:
    family: str
    params: dict
    field: str
    expected: Any
    got: Any


@dataclass
class FamilyAudit:
    family: str
    checked: int = 0
    rejected: int = 0
    ambiguous: bool = False
    discrepancies: list[Discrepancy] = field(default_factory=list)


@dataclass
class AuditReport:
    families: list[FamilyAudit]

    @property
    def discrepancies(self) -> list[Discrepancy]:
        """Disagreements on unflagged families (transcription-error candidates)."""
        return [d for f in self.families if not f.ambiguous for d in f.discrepancies]

    @property
    def questions(self) -> list[Discrepancy]:
        """Disagreements on families whose drawing is flagged as ambiguous."""
        return [d for f in self.families if f.ambiguous for d in f.discrepancies]

    @property
    def checked(self) -> int:
        return sum(f.checked for f in self.families)

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def _int_values(fam: CatalogFamily, name: str, cfg: AuditConfig, rng: random.Random) -> list[int]:
    p = fam.param(name)
    listed = set()
    for c in fam.constraints:
        for row in expr.literal_tuples(c):
            if name in row:
                listed.add(row[name])
    if p.max is not None:
        vals = set(range(p.min, p.max + 1))
    else:
        vals = {p.min, p.min + 1}
        interior = list(range(p.min + 2, max(p.min + 2, cfg.cap) + 1))
        vals.update(rng.sample(interior, min(cfg.random_interior, len(interior))))
    return sorted(vals | listed)


def _weight_lists(length: int, lo: int, hi: int | None, cfg: AuditConfig, rng: random.Random) -> list[list[int]]:
    top = min(hi, cfg.cap) if hi is not None else cfg.cap
    out = [[lo] * length, [min(lo + 1, top)] * length]
    for _ in range(cfg.weight_samples):
        out.append([rng.randint(lo, top) for _ in range(length)])
    uniq = []
    for w in out:
        if w not in uniq:
            uniq.append(w)
    return uniq


def sample_assignments(fam: CatalogFamily, cfg: AuditConfig = AuditConfig()) -> list[dict]:
    """Deterministic parameter sample for one family (constraints unchecked)."""
    rng = random.Random(f"{cfg.seed}:{fam.id}")
    ints = [p for p in fam.params if p.domain == "int"]
    lists = [p for p in fam.params if p.domain == "weights"]
    grids = [_int_values(fam, p.name, cfg, rng) for p in ints]
    out = []
    for combo in itertools.product(*grids):
        base = {p.name: v for p, v in zip(ints, combo)}
        if lists:
            choices = []
            for p in lists:
                length = int(expr.evaluate(p.length, base)) if p.length else 1
                if length < 0:
                    choices = None
                    break
                choices.append(_weight_lists(length, p.min, p.max, cfg, rng))
            if choices is None:
                continue
            for wl in itertools.product(*choices):
                a = dict(base)
                a.update({p.name: w for p, w in zip(lists, wl)})
                out.append(a)
        else:
            out.append(base)
    # every tuple spelled out in a constraint is checked, whatever the budget
    listed = []
    for c in fam.constraints:
        for row in expr.literal_tuples(c):
            for a in out:
                if all(a.get(k) == v for k, v in row.items()) and a not in listed:
                    listed.append(a)
    rest = [a for a in out if a not in listed]
    room = max(0, cfg.sample_budget - len(listed))
    if len(rest) > room:
        keep = sorted(rng.sample(range(len(rest)), room))
        rest = [rest[i] for i in keep]
    return listed + rest


def _class_label(system) -> str:
    cls = classify(system)
    if cls.kind is ClassKind.HYPERBOLIC and cls.lanner:
        return Target.LANNER.value
    return cls.kind.value


def audit_family(fam: CatalogFamily, cfg: AuditConfig = AuditConfig()) -> FamilyAudit:
    res = FamilyAudit(fam.id, ambiguous=fam.ambiguous)
    for params in sample_assignments(fam, cfg):
        try:
            system = instantiate(fam, params)
        except ParameterError:
            res.rejected += 1
            continue
        res.checked += 1
        claim = fam.claimed
        if claim.kind is not None and not matches_target(system, claim.kind):
            res.discrepancies.append(Discrepancy(fam.id, params, "class", claim.kind.value, _class_label(system)))
            continue
        lc = bool(is_log_canonical(system))
        if claim.log_canonical is not None and lc != claim.log_canonical:
            res.discrepancies.append(Discrepancy(fam.id, params, "log_canonical", claim.log_canonical, lc))
        if claim.minimal is not None:
            got = is_minimal(system)
            if got != claim.minimal:
                res.discrepancies.append(Discrepancy(fam.id, params, "minimal", claim.minimal, got))
    return res


def _audit_by_id(args) -> FamilyAudit:
    fam_id, cfg = args
    return audit_family(get_family(fam_id), cfg)


def validate_catalog(
    sample_budget: int = 200,
    seed: int = 0,
    jobs: int = 1,
    families: Sequence[CatalogFamily] | None = None,
    cap: int = 12,
) -> AuditReport:
    cfg = AuditConfig(sample_budget=sample_budget, seed=seed, cap=cap)
    fams = list(families) if families is not None else default_catalog()
    if jobs > 1 and families is None:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            audits = list(ex.map(_audit_by_id, [(f.id, cfg) for f in fams]))
    else:
        audits = [audit_family(f, cfg) for f in fams]
    return AuditReport(audits)
