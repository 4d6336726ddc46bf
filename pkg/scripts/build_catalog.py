"""Regenerate src/lcsystems/catalog/data/catalog.json from readable Python.

The JSON file is the shipped artifact; this script only keeps the
transcription easy to review. Run it from anywhere.
"""
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "lcsystems" / "catalog" / "data" / "catalog.json"

fams = []

def P(name, mn=1, mx=None, size=False, domain="int", length=None):
    d = {"name": name, "domain": domain, "min": mn}
    if mx is not None: d["max"] = mx
    if size: d["size"] = True
    if length is not None: d["length"] = length
    return d

def W(*rules, default="2"):
    return {"default": default, "rules": list(rules)}

def at(i, v):
    return {"at": str(i), "value": str(v)}

def slot(i, lst, k):
    return {"at": str(i), "slot": [lst, str(k)]}

def span(a, b, lst, off):
    return {"from": str(a), "to": str(b), "slot": [lst, str(off)]}

def fam(id, anchor, kind, params, template, cls, lc=True, minimal=True, constraints=(), side=(), ambiguous=False, note=""):
    rec = {"id": id, "anchor": anchor, "kind": kind, "params": params,
           "constraints": list(constraints), "template": template,
           "claimed": {"class": cls, "log_canonical": lc, "minimal": minimal}}
    if side: rec["side_conditions"] = list(side)
    if ambiguous: rec["ambiguous"] = True
    if note: rec["note"] = note
    fams.append(rec)

def graph(n, weights, edges, extras=()):
    t = {"builder": "graph", "n": str(n), "weights": weights,
         "edges": [[str(i), str(j), str(m)] for i, j, m in edges]}
    if extras: t["extras"] = [{"attach": [[str(i), str(m)] for i, m in e]} for e in extras]
    return t

def listed(names, tuples):
    if len(names) == 1:
        return f"{names[0]} in [" + ", ".join(str(t[0]) for t in tuples) + "]"
    lhs = "(" + ", ".join(names) + ("," if len(names) == 1 else "") + ")"
    return f"{lhs} in [" + ", ".join("(" + ", ".join(map(str, t)) + ")" for t in tuples) + "]"

ND = ["negative_definite"]
ELL, PAR, LAN = "elliptic", "connected-parabolic", "lanner"

# ---------------- minimal elliptic graphs ----------------
fam("Gamma1", "minimal elliptic graphs: chain", "graph",
    [P("n", 1, size=True), P("w", 2, domain="weights", length="n")],
    {"builder": "chain", "length": "n", "weights": W(span(0, "n", "w", 0))}, ELL, side=ND)
fam("Gamma2", "minimal elliptic graphs: star with three arms", "graph",
    [P("p", 1, size=True), P("q", 1, size=True), P("r", 1, size=True),
     P("w", 2, domain="weights", length="1+p+q+r")],
    {"builder": "star", "arms": ["p", "q", "r"], "weights": W(span(0, "1+p+q+r", "w", 0))},
    ELL, lc=None, constraints=["1/(p+1) + 1/(q+1) + 1/(r+1) >= 1"], side=ND,
    note="log canonicity depends on the weights and is not claimed")
fam("Gamma3", "minimal elliptic graphs: double fork with (-2)-leaves", "graph",
    [P("n", 0, size=True), P("w", 2, domain="weights", length="n+2")],
    {"builder": "double_fork", "middle": "n",
     "weights": W(slot(0, "w", 0), span(3, "n+3", "w", 1), slot("n+3", "w", "n+1"))}, ELL, side=ND)
fam("Gamma4", "minimal elliptic graphs: centre with four (-2)-leaves", "graph",
    [P("c", 2)],
    {"builder": "star", "arms": ["1", "1", "1", "1"], "weights": W(at(0, "c"))}, ELL, side=ND)
fam("Gamma5", "minimal elliptic graphs: cycle", "graph",
    [P("n", 3, size=True), P("w", 2, domain="weights", length="n")],
    {"builder": "cycle", "length": "n", "weights": W(span(0, "n", "w", 0))}, ELL, side=ND)
fam("Gamma6", "minimal elliptic graphs: two vertices, double edge", "graph",
    [P("b1", 2), P("b2", 2)],
    graph(2, W(at(0, "b1"), at(1, "b2")), [(0, 1, 2)]), ELL,
    constraints=["b1 + b2 > 4"], side=ND)

# ---------------- parabolic: two-element and contracted forms ----------------
def two(id, b1, b2, m, minimal=True):
    fam(id, f"connected parabolic graphs: {id}", "graph", [],
        graph(2, W(at(0, b1), at(1, b2)), [(0, 1, m)]), PAR, minimal=minimal)
two("P1", 1, 1, 1); two("P2", 1, 4, 2); two("P3", 2, 2, 2); two("P7", 3, 3, 3); two("P8", 1, 9, 3)
for id, leaves in [("P4", (3, 6, 2)), ("P5", (4, 4, 2)), ("P6", (3, 3, 3))]:
    fam(id, f"connected parabolic graphs: {id}", "graph", [],
        {"builder": "star", "arms": ["1", "1", "1"],
         "weights": W(at(0, 1), at(1, leaves[0]), at(2, leaves[1]), at(3, leaves[2]))},
        PAR, minimal=False)
fam("Par2", "two-element parabolic Gram matrices", "matrix", [P("b1", 1), P("b2", 1)],
    {"matrix": [["-b1", "sqrt(b1*b2)"], ["sqrt(b1*b2)", "-b2"]],
     "bind": {"b1": "-m[0][0]", "b2": "-m[1][1]"}}, PAR)

# ---------------- parabolic graphs Q ----------------
def star(id, arms, cls, rules=(), params=(), constraints=(), anchor=None, **kw):
    fam(id, anchor or f"star with arms {arms}", "graph", list(params),
        {"builder": "star", "arms": [str(a) for a in arms], "weights": W(*rules)}, cls,
        constraints=constraints, **kw)

star("Q1", [1, 1, 1, 1], PAR)
fam("Q2", "connected parabolic graphs: double fork", "graph", [P("n", 0, size=True)],
    {"builder": "double_fork", "middle": "n", "weights": W()}, PAR)
star("Q3", [1, 3, 3], PAR)
star("Q4", [2, 2, 2], PAR)
star("Q5", [1, 2, 5], PAR)
fam("Q6", "connected parabolic graphs: cycle of (-2)-vertices", "graph", [P("n", 3, size=True)],
    {"builder": "cycle", "length": "n", "weights": W()}, PAR)
fam("Q7a", "connected parabolic graphs: 6-cycle with pendant", "graph", [],
    {"builder": "cycle", "length": "6", "weights": W(at(3, 4)), "extras": [{"attach": [["0", "1"]]}]}, PAR)
fam("Q7b", "connected parabolic graphs: 4-cycle with pendant", "graph", [],
    {"builder": "cycle", "length": "4", "weights": W(at(2, 3)), "extras": [{"attach": [["0", "1"]]}]}, PAR)
fam("Q8", "connected parabolic graphs: triangle 3-2-3", "graph", [],
    graph(3, W(at(0, 3), at(2, 3)), [(0, 1, 1), (1, 2, 1), (0, 2, 2)]), PAR)
fam("Q9", "connected parabolic graphs: triangle, two double edges", "graph",
    [P("a", 1), P("b", 1), P("c", 1)],
    graph(3, W(at(0, "a"), at(1, "b"), at(2, "c")), [(0, 1, 2), (0, 2, 2), (1, 2, 1)]), PAR,
    constraints=[listed("abc", [(2, 5, 5), (2, 3, 11), (4, 3, 3), (4, 2, 5), (8, 2, 2)])])
fam("Q10", "connected parabolic graphs: triangle, all edges double", "graph",
    [P("a", 1), P("b", 1), P("c", 1)],
    graph(3, W(at(0, "a"), at(1, "b"), at(2, "c")), [(0, 1, 2), (0, 2, 2), (1, 2, 2)]), PAR,
    constraints=[listed("abc", [(2, 3, 18), (2, 4, 10), (2, 6, 6), (3, 3, 8), (4, 4, 4)])])
fam("Q11", "connected parabolic graphs: chain with double edges", "graph",
    [P("a", 1), P("b", 1), P("c", 1)],
    graph(3, W(at(0, "a"), at(1, "b"), at(2, "c")), [(0, 1, 2), (1, 2, 2)]), PAR,
    constraints=[listed("abc", [(2, 3, 4), (2, 4, 2), (4, 2, 4), (3, 2, 6)])])
fam("Q12", "connected parabolic graphs: complete bipartite K(2,3)", "graph",
    [P("b1", 1), P("b2", 1), P("a1", 1), P("a2", 1), P("a3", 1)],
    graph(5, W(at(0, "b1"), at(1, "b2"), at(2, "a1"), at(3, "a2"), at(4, "a3")),
          [(i, j, 1) for i in (0, 1) for j in (2, 3, 4)]), PAR,
    constraints=[listed(["b1", "b2", "a1", "a2", "a3"],
                        [(2, 2, 2, 3, 6), (2, 2, 2, 4, 4), (2, 2, 3, 3, 3), (2, 3, 2, 2, 5),
                         (2, 4, 2, 2, 3), (2, 6, 2, 2, 2), (3, 3, 2, 2, 2)])])
fam("Q13", "connected parabolic graphs: complete graph K4", "graph",
    [P("a1", 1), P("a2", 1), P("a3", 1), P("a4", 1)],
    graph(4, W(*[at(i, f"a{i+1}") for i in range(4)]),
          [(i, j, 1) for i in range(4) for j in range(i + 1, 4)]), PAR,
    constraints=[listed(["a1", "a2", "a3", "a4"], [(2, 2, 5, 5), (2, 2, 3, 11), (2, 3, 3, 5), (3, 3, 3, 3)])])
fam("Q14", "connected parabolic graphs: K4 minus an edge", "graph",
    [P("a1", 1), P("a2", 1), P("b1", 1), P("b2", 1)],
    graph(4, W(at(0, "a1"), at(1, "a2"), at(2, "b1"), at(3, "b2")),
          [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1)]), PAR,
    constraints=[listed(["a1", "a2", "b1", "b2"], [(2, 2, 4, 4), (2, 2, 3, 6), (2, 5, 2, 2), (3, 3, 2, 2)])])

# ---------------- Lanner graphs H ----------------
def H(id, n, weights, edges, params=(), constraints=(), extras=(), **kw):
    fam(id, f"minimal Lanner graphs: {id}", "graph", list(params),
        graph(n, weights, edges, extras), LAN, constraints=constraints, **kw)

# A=0, B=1, C=2, D=3
H("H8_1", 4, W(at(0, 3), at(2, 3), at(3, "b")), [(0, 1, 1), (1, 2, 1), (0, 2, 2), (1, 3, 1)],
  params=[P("b", 2)])
H("H8_2", 4, W(at(0, 3), at(2, 3)), [(0, 2, 2), (0, 1, 1), (0, 3, 1), (2, 1, 1), (2, 3, 1)])
H("H8_3", 4, W(at(0, 3), at(3, 3)), [(0, 3, 2), (0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)])
H("H9_1", 4, W(at(0, 4), at(2, 5)), [(0, 1, 2), (0, 2, 2), (0, 3, 2), (2, 1, 1), (2, 3, 1)])
H("H9_2", 4, W(at(0, "a"), at(1, "b"), at(2, "b"), at(3, "b")),
  [(0, 1, 2), (0, 2, 2), (0, 3, 2), (1, 2, 1), (1, 3, 1), (2, 3, 1)],
  params=[P("a", 1), P("b", 1)], constraints=[listed("ab", [(2, 5), (4, 3), (8, 2)])])
H("H10_1", 4, W(at(0, 6), at(2, 3), at(3, 6)), [(0, 1, 2), (1, 2, 2), (3, 1, 2), (0, 3, 2)])
H("H10_2", 4, W(default="4"), [(i, j, 2) for i in range(4) for j in range(i + 1, 4)])
H("H11_1a", 4, W(at(1, 4), at(3, 4)), [(0, 1, 2), (1, 2, 2), (2, 3, 2)])
H("H11_1b", 4, W(at(0, 4), at(1, 3), at(3, 6)), [(0, 1, 2), (1, 2, 2), (2, 3, 2)])
H("H11_2", 4, W(at(0, "6-a"), at(1, "a"), at(2, "a"), at(3, "a")), [(0, 1, 2), (0, 2, 2), (0, 3, 2)],
  params=[P("a", 1)], constraints=[listed("a", [(2,), (4,)])])
H("H11_3", 4, W(at(0, 4), at(2, 4)), [(0, 1, 2), (1, 2, 2), (2, 3, 2), (3, 0, 2)])
# L=0, M=1, R=2, Bt=3
H("H11_4", 4, W(at(1, 4), at(3, 5)), [(0, 1, 2), (1, 2, 2), (1, 3, 2), (0, 3, 1), (2, 3, 1)])
H("H11_5", 4, W(at(0, 4), at(2, 4), at(3, 5)), [(0, 1, 2), (1, 2, 2), (1, 3, 1), (0, 3, 2), (2, 3, 2)],
  ambiguous=True, note="as drawn, the chain 4=5=4 through the bottom vertex has a coefficient -4/3, so the reading is not log canonical")
H("H11_6", 4, W(at(0, "a"), at(1, "6-a"), at(2, "a"), at(3, 10)),
  [(0, 1, 2), (1, 2, 2), (1, 3, 2), (0, 3, 2), (2, 3, 2)],
  params=[P("a", 1)], constraints=[listed("a", [(2,), (4,)])], ambiguous=True,
  note="as drawn, the chain a=10=a through the bottom vertex is elliptic with a coefficient below -1, so the reading is not log canonical")
fam("H0_7_1", "minimal Lanner graphs: H0_7_1", "graph", [],
    {"builder": "cycle", "length": "6", "weights": W(at(3, 4)),
     "extras": [{"attach": [["0", "1"]]}, {"attach": [["6", "1"]]}]}, LAN, ambiguous=True,
    note="as drawn, deleting a neighbour of the attachment vertex leaves an E7-shaped tree with end weight 4 (coefficient -3/2), so the reading is not log canonical")
fam("H0_7_2", "minimal Lanner graphs: H0_7_2", "graph", [],
    {"builder": "cycle", "length": "4", "weights": W(at(2, 3)),
     "extras": [{"attach": [["0", "1"]]}, {"attach": [["0", "1"]]}]}, LAN)
H("H0_12_1", 6, W(at(0, 3), at(1, 3), at(2, 3)), [(i, j, 1) for i in range(3) for j in range(3, 6)],
  ambiguous=True, note="which side carries weight 3 is hard to read")
H("H0_12_2", 6, W(at(0, 3), at(1, 3)), [(i, j, 1) for i in range(2) for j in range(2, 6)])
H("H0_13_1", 5, W(default="3"), [(i, j, 1) for i in range(5) for j in range(i + 1, 5)],
  ambiguous=True, note="weights of the complete graph are hard to read")
H("H0_14_1", 5, W(at(0, "a"), at(1, "b")), [(0, 1, 1)] + [(i, j, 1) for i in (0, 1) for j in (2, 3, 4)],
  params=[P("a", 1), P("b", 1)], constraints=[listed("ab", [(2, 5), (3, 3)])])
# top=0, bottom=1, left=2, right=3, centre=4
H("H0_1", 5, W(at(0, "a"), at(2, "b1"), at(4, "b2")), [(i, j, 1) for i in (0, 1) for j in (2, 3, 4)],
  params=[P("a", 2), P("b1", 2), P("b2", 2)],
  constraints=["(a == 2 and b1 == 2) or " + listed(["a", "b1", "b2"],
               [(2, 3, 3), (2, 3, 4), (2, 3, 5), (3, 2, 2), (3, 2, 3), (3, 2, 4), (4, 2, 2), (5, 2, 2)])])
H("H0_2", 4, W(at(0, "a"), at(2, "b"), at(3, "c")), [(i, j, 1) for i in range(4) for j in range(i + 1, 4)],
  params=[P("a", 2), P("b", 2), P("c", 2)],
  constraints=["(a == 2 and b == 2) or (a == 2 and b == 3 and 3 <= c and c <= 10) or "
               + listed("abc", [(2, 4, 4), (2, 4, 5), (2, 4, 6), (3, 3, 3), (3, 3, 4)])])
H("H0_3", 4, W(at(0, "a"), at(2, "b"), at(3, "c")), [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1)],
  params=[P("a", 2), P("b", 2), P("c", 2)],
  constraints=["(a == 2 and b == 2) or (a == 2 and b == 3 and 3 <= c and c <= 5) or "
               + listed("abc", [(3, 2, 2), (3, 2, 3), (3, 2, 4), (4, 2, 2)])])
fam("H0_4", "minimal Lanner graphs: H0_4 (wheel)", "graph", [],
    {"builder": "cycle", "length": "4", "weights": W(at(4, 5)),
     "extras": [{"attach": [["0", "1"], ["1", "1"], ["2", "1"], ["3", "1"]]}]}, LAN)

def cyc_pendant(id, n, rules=(), params=(), constraints=(), nmax=None):
    ps = list(params)
    fam(id, f"minimal Lanner graphs: {id}", "graph", ps,
        {"builder": "cycle", "length": str(n), "weights": W(*rules),
         "extras": [{"attach": [["0", "1"]]}]}, LAN, constraints=constraints)

cyc_pendant("H0a", "n", params=[P("n", 3, 8, size=True)])
cyc_pendant("H0b", 5, rules=[at(5, "b")], params=[P("b", 3, 6)])
cyc_pendant("H0c", 4, rules=[at(4, "b")], params=[P("b", 3)])
cyc_pendant("H0d", 3, rules=[at(3, "b")], params=[P("b", 3)])
cyc_pendant("H1", 5, rules=[at(2, 3)])
cyc_pendant("H2", 6, rules=[at(2, 3)])
cyc_pendant("H3", 6, rules=[at(3, 3)])
cyc_pendant("H4", 6, rules=[at(6, 3)])
star("H5", [1, 1, 1, 1, 1], LAN, anchor="minimal Lanner graphs: H5")
star("H6", [1, 1, 1, 2], LAN, rules=[at(5, "b")], params=[P("b", 2)], anchor="minimal Lanner graphs: H6")
fam("H7", "minimal Lanner graphs: H7", "graph", [P("n", 0, 3, size=True)],
    {"builder": "double_fork", "middle": "n", "weights": W(),
     "extras": [{"attach": [["1", "1"]]}]}, LAN)
# X=0, Y=1, X-leaf 2, X-arm 3 (near), 4 (far, weight 3), Y-leaves 5, 6
H("H8", 7, W(at(4, 3)), [(0, 1, 1), (0, 2, 1), (0, 3, 1), (3, 4, 1), (1, 5, 1), (1, 6, 1)])
star("H9", [2, 2, 3], LAN, anchor="minimal Lanner graphs: H9")
star("H10", [1, 3, 4], LAN, anchor="minimal Lanner graphs: H10")
star("H11", [1, 2, 6], LAN, rules=[at(9, "b")], params=[P("b", 2)], anchor="minimal Lanner graphs: H11")

# ---------------- Lanner Gram matrices with at most three elements ----------------
def G(id, mat, params, constraints=(), minimal=True, cls=LAN, lc=True, anchor=None):
    bind = {p["name"]: f"-m[{i}][{i}]" for i, p in enumerate(params) if p["name"].startswith("b")}
    if any(p["name"] == "r" for p in params):
        bind["r"] = "m[0][1]"
    fam(id, anchor or f"minimal Lanner Gram matrices: {id}", "matrix", params,
        {"matrix": mat, "bind": bind}, cls, lc=lc, minimal=minimal, constraints=constraints)

s12, s23, s13 = "sqrt(b1*b2)", "sqrt(b2*b3)", "sqrt(b1*b3)"
B3 = [P("b1", 1), P("b2", 1), P("b3", 1)]
G("G1", [["-b1", "r"], ["r", "-b2"]], [P("b1", 1), P("b2", 1), P("r", 0)],
  constraints=["r*r > b1*b2"])
G("G2", [["-b1", s12, "0"], [s12, "-b2", "1"], ["0", "1", "-b3"]], B3, ["b3 >= 2"])
G("G3", [["-b1", s12, "1"], [s12, "-b2", "1"], ["1", "1", "-b3"]], B3, ["b3 >= 2"])
G("G4", [["-b1", s12, "0"], [s12, "-b2", s23], ["0", s23, "-b3"]], B3)
G("G5", [["-b1", s12, "1"], [s12, "-b2", s23], ["1", s23, "-b3"]], B3, ["b1 + b3 >= 3"])
G("G6", [["-b1", s12, s13], [s12, "-b2", s23], [s13, s23, "-b3"]], B3)
G("G7", [["-b1", s12, "0"], [s12, "-b2", "2"], ["0", "2", "-b3"]], B3,
  ["b2 >= 2 and b3 >= 2", "b2 + b3 >= 5"])
G("G8", [["-b1", s12, "1"], [s12, "-b2", "2"], ["1", "2", "-b3"]], B3,
  ["b2 >= 2 and b3 >= 2", "b2 + b3 >= 5"])
G("G9", [["-b1", s12, "2"], [s12, "-b2", "2"], ["2", "2", "-b3"]], B3,
  ["b1 >= 2 and b2 >= 2 and b3 >= 2", "b1 + b3 >= 5 and b2 + b3 >= 5"])
G("G10", [["-b1", s12, "2"], [s12, "-b2", s23], ["2", s23, "-b3"]], B3,
  ["b1 >= 2 and b3 >= 2", "b1 + b3 >= 5"])
G("G11", [["-b1", "2", "0"], ["2", "-b2", "2"], ["0", "2", "-b3"]], B3,
  [listed(["b1", "b2", "b3"], [(2, 3, 2), (2, 3, 3), (3, 2, 3), (3, 2, 4), (3, 2, 5)])])
G("G12", [["-b1", "1", "1"], ["1", "-b2", "2"], ["1", "2", "-b3"]], B3,
  [listed(["b1", "b2", "b3"], [(2, 2, 3), (2, 2, 4), (3, 2, 3), (4, 2, 3)])])
G("G13", [["-b1", "2", "2"], ["2", "-b2", "1"], ["2", "1", "-b3"]],
  [P("b1", 2, 3), P("b2", 2, 4), P("b3", 2, 10)],
  ["(b1, b2, b3) in [(3, 3, 3), (3, 4, 3)] or (b1 == 3 and b2 == 2 and b3 <= 9)"
   " or (b1 == 2 and b2 == 3 and 3 <= b3 and b3 <= 10) or (b1 == 2 and b2 == 4 and 4 <= b3 and b3 <= 6)"])
G("G14", [["-b1", "2", "2"], ["2", "-b2", "2"], ["2", "2", "-b3"]],
  [P("b1", 2, 3), P("b2", 3, 5), P("b3", 3, 17)],
  ["(b1 == 2 and b2 == 3 and 3 <= b3 and b3 <= 17) or (b1 == 2 and b2 == 4 and 4 <= b3 and b3 <= 9)"
   " or (b1 == 2 and b2 == 5 and 5 <= b3 and b3 <= 7) or (b1 == 3 and b2 == 3 and 3 <= b3 and b3 <= 7)"
   " or (b1 == 3 and b2 == 4 and 4 <= b3 and b3 <= 5)"])

# three-element shapes excluded from minimality: a contractible (-1)-vector
G("X1", [["-1", "1", "0"], ["1", "-b1", "r"], ["0", "r", "-b2"]],
  [P("b1", 2), P("b2", 1), P("r", 1)], cls=None, lc=None, minimal=False,
  anchor="three-element Lanner shapes that are not minimal: path through the (-1)-vector")
fams[-1]["template"]["bind"] = {"b1": "-m[1][1]", "b2": "-m[2][2]", "r": "m[1][2]"}
G("X2", [["-1", "1", "1"], ["1", "-b1", "r"], ["1", "r", "-b2"]],
  [P("b1", 2), P("b2", 2), P("r", 1)], cls=None, lc=None, minimal=False,
  anchor="three-element Lanner shapes that are not minimal: triangle through the (-1)-vector")
fams[-1]["template"]["bind"] = {"b1": "-m[1][1]", "b2": "-m[2][2]", "r": "m[1][2]"}

with open(OUT, "w") as fh:
    json.dump(fams, fh, indent=1)
    fh.write("\n")
print(len(fams), "families")
