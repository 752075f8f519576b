"""Built-in examples."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError
from .lattice import SolvmanifoldSpec, assemble_algebra
from .lie import LieAlgebra
from .scalar import S


@dataclass
class CorpusEntry:
    name: str
    algebra: LieAlgebra
    description: str
    spec: SolvmanifoldSpec | None = None
    omega: str | None = None
    derived: dict = field(default_factory=dict)  # parameter -> expression in the free ones
    default_bindings: dict = field(default_factory=dict)
    unimodular: bool = True
    semisimple_split: bool = False  # R^n acting semisimply on abelian R^m


def _diag(vals):
    n = len(vals)
    return [[vals[i] if i == j else 0 for j in range(n)] for i in range(n)]


def _spec_entry(name, description, n, m, ders, lattice, params=(), **kw) -> CorpusEntry:
    spec = SolvmanifoldSpec(n, m, [[[S(x) for x in r] for r in d] for d in ders],
                            None if lattice is None else [[S(x) for x in v] for v in lattice],
                            list(params))
    return CorpusEntry(name, assemble_algebra(spec), description, spec, **kw)


def heisenberg3() -> CorpusEntry:
    return _spec_entry(
        "heisenberg3", "3-dim Heisenberg algebra [t1, x1] = x2 with the integer lattice",
        1, 2, [[[0, 0], [1, 0]]], [[1]],
    )


def torus(n: int) -> CorpusEntry:
    return _spec_entry(f"torus{n}", f"abelian R^{n} with lattice Z^{n}", n, 0,
                       [[] for _ in range(n)], [[1 if i == j else 0 for j in range(n)] for i in range(n)],
                       semisimple_split=True)


def aff_line() -> CorpusEntry:
    g = LieAlgebra(["T", "X"], {(0, 1): {1: 1}})
    return CorpusEntry("aff_line", g, "affine line algebra [T, X] = X (not unimodular)",
                       unimodular=False, semisimple_split=True)


def sol3() -> CorpusEntry:
    return _spec_entry("sol3", "R acting on R^2 by diag(1, -1); lattice generator t0",
                       1, 2, [_diag([1, -1])], [["t0"]], [("t0", "real")], semisimple_split=True)


def e2_rotation() -> CorpusEntry:
    return _spec_entry("e2_rotation", "R acting on R^2 by rotations at speed pi; lattice Z",
                       1, 2, [[[0, "-pi"], ["pi", 0]]], [[1]], semisimple_split=True)


SAWAI_NAMES = ["alpha", "beta", "zeta1", "zeta2", "zeta3", "eta1", "eta2", "eta3"]


def sawai8() -> CorpusEntry:
    """d zeta_i = a_i alpha^zeta_i, d eta_i = -a_i alpha^eta_i - zeta_j^zeta_k, a1+a2+a3 = 0."""
    a = {"1": "a1", "2": "a2", "3": "(-a1 - a2)"}
    cyc = {"1": ("2", "3"), "2": ("3", "1"), "3": ("1", "2")}
    d = {}
    for i in "123":
        j, k = cyc[i]
        d["zeta" + i] = [(a[i], "alpha", "zeta" + i)]
        d["eta" + i] = [(f"-{a[i]}", "alpha", "eta" + i), (-1, "zeta" + j, "zeta" + k)]
    g = LieAlgebra.from_differentials(SAWAI_NAMES, d, [("a1", "real"), ("a2", "real")])
    omega = "alpha^beta + p*(zeta1^eta1 - zeta2^eta2) + q*(-zeta2^eta2 + zeta3^eta3)"
    return CorpusEntry(
        "sawai8", g, "8-dim algebra with a1+a2+a3 = 0 (a3 eliminated), symplectic form with p, q",
        omega=omega, derived={"a3": "-a1 - a2"},
        default_bindings={"a1": "1", "a2": "2", "p": "1", "q": "2"},
    )


NAKAMURA_NAMES = ["u", "v", "p1", "q1", "p2", "q2"]


def nakamura() -> CorpusEntry:
    """C acting on C^2 by diag(e^z, e^-z), written over R with z = u + i v."""
    du = _diag([1, 1, -1, -1])
    dv = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    g = _spec_entry("nakamura", "", 2, 4, [du, dv], None).algebra
    renamed = LieAlgebra(NAKAMURA_NAMES, {(i, j): {k: v for k, v in enumerate(g.c[i][j]) if v}
                                          for i, j in g.nonzero_brackets()})
    return CorpusEntry("nakamura", renamed, "complex 3-dim C x C^2 with diag(e^z, e^-z), as a 6-dim real algebra",
                       omega="u^v + p1^p2 - q1^q2", semisimple_split=True)


def ot(s: int) -> CorpusEntry:
    """R^s acting on R^s x C: e^{t_i} on x_i and e^{-1/2 sum t} rotation by pi c.t on z."""
    m = s + 2
    ders = []
    for i in range(s):
        d = [[0] * m for _ in range(m)]
        d[i][i] = 1
        c = f"c{i + 1}*pi"
        d[s][s], d[s][s + 1] = "-1/2", f"-{c}"
        d[s + 1][s], d[s + 1][s + 1] = c, "-1/2"
        ders.append(d)
    lattice = [[1 if i == j else 0 for j in range(s)] for i in range(s)]
    params = [(f"c{i + 1}", "real") for i in range(s)]
    return _spec_entry(f"ot{s}", f"Oeljeklaus-Toma type R^{s} x (R^{s} x C) with free c_i", s, m,
                       ders, lattice, params, semisimple_split=True)


_FIXED = {
    "heisenberg3": heisenberg3,
    "aff_line": aff_line,
    "sol3": sol3,
    "e2_rotation": e2_rotation,
    "sawai8": sawai8,
    "nakamura": nakamura,
}
_ALIASES = {"sawai": "sawai8", "heisenberg": "heisenberg3", "rotation": "e2_rotation"}


def names() -> list:
    return sorted(list(_FIXED) + ["torus{n}", "ot{s}"])


def default_corpus() -> list:
    """The entries exercised by the test-suite sweeps."""
    out = [heisenberg3(), torus(2), torus(3), torus(4), aff_line(), sol3(), e2_rotation(),
           sawai8(), nakamura(), ot(2)]
    return out


def get(name: str, s: int | None = None) -> CorpusEntry:
    name = _ALIASES.get(name, name)
    if name in _FIXED:
        return _FIXED[name]()
    m = re.fullmatch(r"(torus|ot)(\d*)", name)
    if m:
        k = int(m.group(2)) if m.group(2) else s
        if k is None:
            k = 2
        if k < 1:
            raise ParseError(f"{m.group(1)} needs a positive size")
        return torus(k) if m.group(1) == "torus" else ot(k)
    raise ParseError(f"unknown example {name!r}; known: {', '.join(names())}")
