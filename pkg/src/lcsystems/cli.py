"""Command-line front end.

Every command prints one envelope::

    {"status": "ok" | "error", "payload": {...}, "diagnostics": [...]}

Mathematical values are exact strings ("p/q", or radical term lists);
indices and counts stay JSON integers. Exit codes: 0 ok, 1 domain
error, 2 malformed input, 3 resource cap.
"""
from __future__ import annotations

import json
import sys
import time
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Sequence

import click

from . import bound as bound_mod
from . import surface as surface_mod
from .catalog import default_catalog, get_family, identify, instantiate, validate_catalog
from .errors import LCSystemsError, StructuralError
from .exact import ExactScalar, from_json, to_json
from .io import parse_scalar_token, read_json, read_system, system_to_obj
from .logcanonical import (
    canonical_element,
    contractible_elements,
    enumerate_minimal,
    is_log_canonical,
    is_minimal,
    parse_target,
)
from .systems import blow_up, classify, contract, signature

FORMATS = ("json", "table")


@dataclass
class CommandResult:
    status: str
    payload: Any
    diagnostics: list[dict] = field(default_factory=list)
    exit_code: int = 0

    def envelope(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


@dataclass
class _State:
    fmt: str = "json"
    approx: bool = False
    verbose: bool = False
    diagnostics: list[dict] = field(default_factory=list)

    def warn(self, kind: str, message: str, **extra):
        self.diagnostics.append({"kind": kind, "message": message, **extra})


# -- rendering -----------------------------------------------------------------

def _decimal(x) -> str:
    with localcontext() as ctx:
        ctx.prec = 30
        if isinstance(x, Fraction):
            d = Decimal(x.numerator) / Decimal(x.denominator)
        else:
            d = sum((Decimal(c.numerator) / Decimal(c.denominator) * Decimal(k).sqrt()
                     for k, c in x.terms.items()), Decimal(0))
        return format(d.quantize(Decimal("1e-12")).normalize(), "f")


def _is_value(x) -> bool:
    return isinstance(x, (Fraction, ExactScalar))


def _exact(obj, approx: bool):
    """Turn Fractions/ExactScalars into exact strings, recursively."""
    if _is_value(obj):
        return to_json(obj)
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            out[k] = _exact(v, approx)
            if approx and (_is_value(v) or (isinstance(v, list) and v and all(_is_value(x) for x in v))):
                out[f"{k}_approx"] = _decimal(v) if _is_value(v) else [_decimal(x) for x in v]
        return out
    if isinstance(obj, (list, tuple)):
        return [_exact(v, approx) for v in obj]
    return obj


def _cell(v) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, separators=(",", ":"))


def _table(payload) -> str:
    if isinstance(payload, dict):
        rows = []
        nested = []
        for k, v in payload.items():
            if isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
                nested.append((k, v))
            else:
                rows.append((k, _cell(v)))
        width = max((len(k) for k, _ in rows), default=0)
        lines = [f"{k.ljust(width)}  {v}" for k, v in rows]
        for k, v in nested:
            lines.append("")
            lines.append(f"[{k}]")
            lines.append(_table(v))
        return "\n".join(lines)
    if isinstance(payload, list) and payload and all(isinstance(x, dict) for x in payload):
        cols = list(dict.fromkeys(k for row in payload for k in row))
        cells = [[_cell(row.get(c, "")) for c in cols] for row in payload]
        widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
        head = "  ".join(c.ljust(w) for c, w in zip(cols, widths))
        rule = "  ".join("-" * w for w in widths)
        body = ["  ".join(x.ljust(w) for x, w in zip(r, widths)) for r in cells]
        return "\n".join([head, rule, *body])
    return _cell(payload)


def render(result: CommandResult, fmt: str = "json") -> str:
    if fmt == "table":
        lines = [f"status  {result.status}", _table(result.payload)]
        for d in result.diagnostics:
            lines.append(f"note    {d.get('kind')}: {d.get('message')}")
        return "\n".join(lines)
    return json.dumps(result.envelope(), indent=2)


# -- argument helpers --------------------------------------------------------------

def _state() -> _State:
    return click.get_current_context().find_root().obj


def _scalar(text: str):
    v = parse_scalar_token(text)
    q = v.rational_value()
    return q if q is not None else v


def _scalar_list(text: str | None) -> list:
    if text is None or not text.strip():
        return []
    return [_scalar(t) for t in text.replace(" ", "").split(",") if t]


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise StructuralError(f"expected comma-separated integers, got {text!r}") from exc


def _param_value(text: str):
    if "," in text or text.startswith("["):
        return _int_list(text.strip("[]"))
    try:
        return int(text)
    except ValueError as exc:
        raise StructuralError(f"parameter values are integers or integer lists, got {text!r}") from exc


def _parse_params(items: Sequence[str]) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise StructuralError(f"parameters look like name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = _param_value(v.strip())
    return out


# -- root ----------------------------------------------------------------------------

@click.group()
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json", show_default=True,
              help="Output layout.")
@click.option("--approx", is_flag=True, help="Add decimal renderings next to exact values.")
@click.option("--verbose", is_flag=True, help="Add timing diagnostics.")
@click.pass_context
def cli(ctx, fmt, approx, verbose):
    """Exact computations with log canonical systems of vectors."""
    state = ctx.obj if isinstance(ctx.obj, _State) else _State()
    state.fmt, state.approx, state.verbose = fmt, approx, verbose
    ctx.obj = state


# -- vector systems ------------------------------------------------------------------

@cli.command("classify")
@click.argument("system", default="-")
def classify_cmd(system):
    """Signature class of a system (elliptic, connected-parabolic, hyperbolic, lanner, ...)."""
    s = read_system(system)
    cls = classify(s)
    sig = signature(s)
    return {"class": cls.label(), "kind": cls.kind.value, "lanner": cls.lanner, "n": s.n,
            "signature": {"positive": sig.positive, "negative": sig.negative, "zero": sig.zero}}


@cli.command("canonical")
@click.argument("system", default="-")
def canonical_cmd(system):
    """Canonical element of an elliptic system."""
    s = read_system(system)
    k = canonical_element(s)
    return {"labels": list(k.labels), "coefficients": list(k.coefficients)}


@cli.command("check-lc")
@click.argument("system", default="-")
@click.option("--containing", type=int, default=None, help="Only examine subsystems containing this index.")
def check_lc_cmd(system, containing):
    """Log canonical test, with a violating subsystem when it fails."""
    s = read_system(system)
    r = is_log_canonical(s, containing)
    out: dict[str, Any] = {"log_canonical": r.ok}
    if r.witness is not None:
        w = r.witness
        out["witness"] = {"subset": list(w.subset), "index": w.index, "coefficient": w.coefficient,
                          "strict": w.strict}
    return out


@cli.command("minimal")
@click.argument("system", default="-")
@click.option("--singleton-first-kind-minimal", is_flag=True,
              help="Count a lone (-1)-vector as minimal.")
def minimal_cmd(system, singleton_first_kind_minimal):
    """Whether the system has no contractible (-1)-vector."""
    s = read_system(system)
    return {"minimal": is_minimal(s, singleton_first_kind_minimal),
            "contractible": contractible_elements(s)}


@cli.command("contract")
@click.argument("system", default="-")
@click.option("--index", "-e", type=int, required=True, help="Index of the (-1)-vector to contract.")
def contract_cmd(system, index):
    """Contract a first-kind vector."""
    return {"system": system_to_obj(contract(read_system(system), index))}


@cli.command("blowup")
@click.argument("system", default="-")
@click.option("--subset", default="", help="Comma-separated indices the new (-1)-vector meets.")
@click.option("--label", default=None)
def blowup_cmd(system, subset, label):
    """Add a (-1)-vector meeting the given vectors once."""
    return {"system": system_to_obj(blow_up(read_system(system), _int_list(subset), label=label))}


@cli.command("enumerate")
@click.option("--class", "class_filter", required=True,
              help="elliptic | connected-parabolic (parabolic) | hyperbolic | lanner")
@click.option("--max-size", type=int, required=True)
@click.option("--max-weight", type=int, required=True)
@click.option("--singleton-first-kind-minimal", is_flag=True)
@click.option("--jobs", type=int, default=1, show_default=True)
def enumerate_cmd(class_filter, max_size, max_weight, singleton_first_kind_minimal, jobs):
    """Minimal log canonical integer systems of one class, up to relabelling."""
    target = parse_target(class_filter)
    found = enumerate_minimal(target, max_size, max_weight, singleton_first_kind_minimal, jobs=jobs)
    by_size: dict[int, int] = {}
    for s in found:
        by_size[s.n] = by_size.get(s.n, 0) + 1
    state = _state()
    payload: dict[str, Any] = {
        "class": target.value,
        "count": len(found),
        "summary": [{"size": k, "count": v} for k, v in sorted(by_size.items())],
    }
    if state.fmt == "json":
        payload["systems"] = [system_to_obj(s) for s in found]
    return payload


# -- catalog ---------------------------------------------------------------------------

@cli.group("catalog")
def catalog_grp():
    """Catalog of families of minimal systems."""


@catalog_grp.command("instantiate")
@click.argument("family")
@click.option("--param", "-p", "params", multiple=True, help="name=value, or name=2,3,4 for weight lists.")
def catalog_instantiate(family, params):
    fam = get_family(family)
    values = _parse_params(params)
    s = instantiate(fam, values)
    return {"family": fam.id, "params": values, "system": system_to_obj(s),
            "claimed": {"class": fam.claimed.kind.value if fam.claimed.kind else None,
                        "log_canonical": fam.claimed.log_canonical,
                        "minimal": fam.claimed.minimal}}


@catalog_grp.command("identify")
@click.argument("system", default="-")
@click.option("--family", "families", multiple=True, help="Restrict to these family ids.")
def catalog_identify(system, families):
    s = read_system(system)
    fams = [get_family(f) for f in families] if families else None
    matches = identify(s, fams)
    return {"matches": [{"family": m.family, "params": m.params, "witness": list(m.witness)} for m in matches]}


@catalog_grp.command("validate")
@click.option("--budget", type=int, default=200, show_default=True, help="Samples per family.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--cap", type=int, default=12, show_default=True, help="Largest sampled unbounded value.")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--family", "families", multiple=True, help="Restrict to these family ids.")
def catalog_validate(budget, seed, cap, jobs, families):
    fams = [get_family(f) for f in families] if families else None
    report = validate_catalog(sample_budget=budget, seed=seed, jobs=jobs, families=fams, cap=cap)

    def disc(d):
        return {"family": d.family, "params": d.params, "field": d.field, "expected": d.expected, "got": d.got}

    state = _state()
    if report.discrepancies:
        state.warn("audit", f"{len(report.discrepancies)} disagreement(s) on unflagged families")
    return {
        "ok": report.ok,
        "families": len(report.families),
        "checked": report.checked,
        "discrepancies": [disc(d) for d in report.discrepancies],
        "questions": [disc(d) for d in report.questions],
        "per_family": [{"family": f.family, "checked": f.checked, "rejected": f.rejected,
                        "ambiguous": f.ambiguous, "disagreements": len(f.discrepancies)}
                       for f in report.families],
    }


@catalog_grp.command("list")
def catalog_list():
    return {"families": [{"id": f.id, "kind": f.kind, "class": f.claimed.kind.value if f.claimed.kind else None,
                          "params": [p.name for p in f.params], "ambiguous": f.ambiguous, "anchor": f.anchor}
                         for f in default_catalog()]}


# -- surfaces ---------------------------------------------------------------------------

def _graph(path: str) -> surface_mod.ResolutionGraph:
    return surface_mod.ResolutionGraph.from_json(read_json(path))


def _report_obj(r: surface_mod.SequenceReport) -> dict:
    return {"length": r.length, "strictly_decreasing": r.strictly_decreasing,
            "strictly_increasing": r.strictly_increasing, "constant": r.constant,
            "strictly_increasing_run_max": r.strictly_increasing_run_max,
            "strictly_decreasing_run_max": r.strictly_decreasing_run_max,
            "limit_candidate": r.limit_candidate, "note": r.note}


@cli.group("surface")
def surface_grp():
    """Resolution graphs, codiscrepancies and the lengths l(X)."""


@surface_grp.command("codisc")
@click.argument("graph", default="-")
def surface_codisc(graph):
    g = _graph(graph)
    c = surface_mod.codiscrepancy(g)
    return {"coefficients": list(c.coefficients), "class": c.singularity.value,
            "log_canonical": c.log_canonical, "log_terminal": c.log_terminal}


@surface_grp.command("kx2")
@click.argument("graph", default="-")
@click.option("--ky2", required=True, help="K_Y^2 as p/q.")
def surface_kx2(graph, ky2):
    g = _graph(graph)
    ky = _scalar(ky2)
    return {"kx2": surface_mod.kx_squared(g, ky), "ky2": ky, "rho_y": surface_mod.noether_picard(ky)}


def _lengths(values: list[surface_mod.LengthValue], key: str) -> dict:
    vals = [v.value for v in values]
    return {key: [v.parameter for v in values], "values": vals,
            "report": _report_obj(surface_mod.sequence_report(vals))}


@surface_grp.command("l-hirzebruch")
@click.option("--n-from", type=int, default=2, show_default=True)
@click.option("--n-to", type=int, required=True)
def surface_l_hirzebruch(n_from, n_to):
    return _lengths([surface_mod.hirzebruch_length(n) for n in range(n_from, n_to + 1)], "n")


@surface_grp.command("l-elliptic")
@click.option("--e-from", type=int, default=2, show_default=True)
@click.option("--e-to", type=int, required=True)
def surface_l_elliptic(e_from, e_to):
    return _lengths([surface_mod.elliptic_ruled_length(e) for e in range(e_from, e_to + 1)], "e")


@surface_grp.command("alpha0")
@click.option("--m", "m", type=int, required=True, help="m = -F_0^2.")
@click.option("--a", "a", default="", help="Comma-separated a_i (p/q or q*sqrt(k)).")
@click.option("--b", "b", default="", help="Comma-separated b_i.")
@click.option("--lambda", "lam", default=None, help="Also report lambda * (2 - alpha_0).")
def surface_alpha0(m, a, b, lam):
    av, bv = _scalar_list(a), _scalar_list(b)
    closed = surface_mod.lemma3_alpha0(m, av, bv)
    direct = surface_mod.bordered_alpha0(m, av, bv)
    out = {"alpha0": closed, "bordered_solve": direct, "agree": closed == direct}
    if lam is not None:
        out["length"] = surface_mod.fibered_length_general(m, av, bv, _scalar(lam)).value
    return out


@surface_grp.command("report")
@click.argument("values", default="-")
def surface_report(values):
    data = read_json(values)
    if isinstance(data, dict):
        data = data.get("values")
    if not isinstance(data, list):
        raise StructuralError("expected a JSON list of values (or {\"values\": [...]})")
    vals = [_scalar(str(v)) if not isinstance(v, list) else from_json(v) for v in data]
    return _report_obj(surface_mod.sequence_report(vals))


# -- bound ---------------------------------------------------------------------------------

@cli.group("bound")
def bound_grp():
    """Graph-side conditions and the dimension bound."""


@bound_grp.command("eval")
@click.option("--c1", required=True)
@click.option("--c2", required=True)
def bound_eval(c1, c2):
    return {"bound": bound_mod.dimension_bound(_scalar(c1), _scalar(c2))}


@bound_grp.command("analyze")
@click.argument("system", default="-")
@click.option("--l", "l", type=int, required=True, help="Lanner size parameter l >= 2.")
@click.option("--cap", type=int, default=bound_mod.DEFAULT_CAP, show_default=True)
def bound_analyze(system, l, cap):
    s = read_system(system)
    lanner = bound_mod.max_lanner_size(s, cap)
    pairs = bound_mod.elliptic_pair_counts(s, l, cap)
    state = _state()
    if lanner.cap_reached:
        state.warn("cap", "cap bound reached in Lanner search; size is a lower bound", cap=cap)
    if pairs.cap_reached:
        state.warn("cap", "cap bound reached in elliptic subgraph search; constants are lower bounds", cap=cap)
    if lanner.size > l:
        state.warn("condition", f"a Lanner subsystem has {lanner.size} > l = {l} vertices")
    return {
        "lanner": {"size": lanner.size, "witness": list(lanner.witness), "cap_reached": lanner.cap_reached},
        "pairs": {"l": l, "c1": pairs.c1, "c1_witness": list(pairs.c1_witness),
                  "c2": pairs.c2, "c2_witness": list(pairs.c2_witness),
                  "subgraphs": pairs.subgraphs, "cap_reached": pairs.cap_reached},
        "bound": bound_mod.dimension_bound(pairs.c1, pairs.c2),
    }


# -- entry points ---------------------------------------------------------------------------

def run(argv: Sequence[str]) -> CommandResult:
    """Run one command and return its result instead of exiting."""
    state = _State()
    start = time.perf_counter()
    try:
        payload = cli.main(args=list(argv), prog_name="lcsystems", standalone_mode=False, obj=state)
    except LCSystemsError as exc:
        return CommandResult("error", {"error": type(exc).__name__, "message": str(exc)},
                             state.diagnostics, exc.exit_code)
    except click.exceptions.Exit as exc:
        return CommandResult("ok", None, state.diagnostics, exc.exit_code)
    except click.ClickException as exc:
        return CommandResult("error", {"error": "UsageError", "message": exc.format_message()},
                             state.diagnostics, 2)
    except click.exceptions.Abort:
        return CommandResult("error", {"error": "Aborted", "message": "aborted"}, state.diagnostics, 1)
    if isinstance(payload, int) and not isinstance(payload, bool):
        # --help and similar informational exits
        return CommandResult("ok", None, state.diagnostics, payload)
    if state.verbose:
        state.diagnostics.append({"kind": "timing", "message": "wall time",
                                  "seconds": f"{time.perf_counter() - start:.3f}"})
    return CommandResult("ok", _exact(payload, state.approx), state.diagnostics, 0)


def main(argv: Sequence[str] | None = None) -> None:
    args = list(sys.argv[1:] if argv is None else argv)
    result = run(args)
    if result.payload is not None or result.status == "error":
        fmt = "table" if _wants_table(args) else "json"
        click.echo(render(result, fmt), err=False)
    sys.exit(result.exit_code)


def _wants_table(args: Sequence[str]) -> bool:
    for i, a in enumerate(args):
        if a == "--format=table" or (a == "--format" and i + 1 < len(args) and args[i + 1] == "table"):
            return True
    return False


if __name__ == "__main__":  # pragma: no cover
    main()
