"""Solvable Lie algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from .errors import (
    FieldTooSmall,
    JacobiFails,
    MathError,
    NotSolvable,
    ParseError,
    RegularElementNotFound,
)
from .linalg import Assumptions, Span
from .scalar import ONE, ZERO, ScalarValue, S

Vector = list


def unit(n: int, i: int) -> Vector:
    return [ONE if k == i else ZERO for k in range(n)]


def vadd(a: Vector, b: Vector) -> Vector:
    return [x + y for x, y in zip(a, b)]


def vscale(c, v: Vector) -> Vector:
    c = S(c)
    return [c * x if x else ZERO for x in v]


def lincomb(coeffs: Sequence, vectors: Sequence[Vector], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for t in range(n):
                if v[t]:
                    out[t] = out[t] + c * v[t]
    return out


class LieAlgebra:
    """Structure constants c[i][j][k] = coefficient of e_k in [e_i, e_j]."""

    def __init__(
        self,
        names: Sequence[str],
        brackets: Mapping[tuple, Mapping[int, object]],
        parameters: Sequence[tuple] = (),
    ):
        self.names = list(names)
        self.dim = n = len(self.names)
        if len(set(self.names)) != n:
            raise ParseError("basis names must be distinct")
        self.parameters = [(p, k) for p, k in parameters]
        c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (i, j), coeffs in brackets.items():
            if i == j:
                if any(S(v) for v in coeffs.values()):
                    raise ParseError(f"bracket of {self.names[i]} with itself must vanish")
                continue
            for k, v in coeffs.items():
                v = S(v)
                if v:
                    c[i][j][k] = c[i][j][k] + v
                    c[j][i][k] = c[j][i][k] - v
        self.c = c
        self._ad: dict = {}

    # -- basic operations
    def bracket_basis(self, i: int, j: int) -> Vector:
        return list(self.c[i][j])

    def bracket(self, x: Vector, y: Vector) -> Vector:
        n = self.dim
        out = [ZERO] * n
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j] or i == j:
                    continue
                f = x[i] * y[j]
                cij = self.c[i][j]
                for k in range(n):
                    if cij[k]:
                        out[k] = out[k] + f * cij[k]
        return out

    def ad_basis(self, i: int) -> la.Matrix:
        if i not in self._ad:
            n = self.dim
            self._ad[i] = [[self.c[i][j][k] for j in range(n)] for k in range(n)]
        return self._ad[i]

    def ad(self, x: Vector) -> la.Matrix:
        n = self.dim
        out = la.zeros(n, n)
        for i in range(n):
            if x[i]:
                a = self.ad_basis(i)
                for r in range(n):
                    for s in range(n):
                        if a[r][s]:
                            out[r][s] = out[r][s] + x[i] * a[r][s]
        return out

    def is_abelian(self) -> bool:
        return all(not v for row in self.c for col in row for v in col)

    def nonzero_brackets(self):
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if any(self.c[i][j]):
                    yield i, j

    def variables(self) -> frozenset:
        out: frozenset = frozenset()
        for row in self.c:
            for col in row:
                for v in col:
                    if v:
                        out |= v.variables()
        return out

    def substitute(self, bindings: Mapping[str, object]) -> "LieAlgebra":
        br = {}
        for i, j in self.nonzero_brackets():
            br[(i, j)] = {k: v.substitute(bindings) for k, v in enumerate(self.c[i][j]) if v}
        params = [(p, k) for p, k in self.parameters if p not in bindings]
        return LieAlgebra(self.names, br, params)

    def change_basis(self, vectors: Sequence[Vector], names: Sequence[str]) -> "LieAlgebra":
        """Same algebra written in a new basis (given by coordinate vectors)."""
        n = self.dim
        span = Span(n)
        for v in vectors:
            if not span.add(v):
                raise MathError("change_basis: vectors are dependent")
        br = {}
        for i in range(n):
            for j in range(i + 1, n):
                b = self.bracket(vectors[i], vectors[j])
                if any(b):
                    coords = span.coordinates(b)
                    br[(i, j)] = {k: x for k, x in enumerate(coords) if x}
        return LieAlgebra(names, br, self.parameters)

    def kinds(self) -> dict:
        return dict(self.parameters)

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.names == other.names
            and self.c == other.c
        )

    # -- serialization
    def to_json(self) -> dict:
        used = sorted(self.variables())
        kinds = self.kinds()
        params = [{"name": p, "kind": kinds.get(p, "real")} for p, _ in self.parameters]
        known = {p for p, _ in self.parameters}
        params += [{"name": p, "kind": "real"} for p in used if p not in known]
        brackets = []
        for i, j in self.nonzero_brackets():
            brackets.append(
                {
                    "i": i,
                    "j": j,
                    "coeffs": {self.names[k]: str(v) for k, v in enumerate(self.c[i][j]) if v},
                }
            )
        return {"dim": self.dim, "basis": list(self.names), "parameters": params, "brackets": brackets}

    @classmethod
    def from_json(cls, data: Mapping) -> "LieAlgebra":
        try:
            names = [str(x) for x in data["basis"]]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"Lie algebra JSON needs a 'basis' list: {exc}") from None
        if "dim" in data and int(data["dim"]) != len(names):
            raise ParseError(f"dim {data['dim']} does not match {len(names)} basis names")
        index = {nm: k for k, nm in enumerate(names)}

        def idx(x):
            if isinstance(x, int) and not isinstance(x, bool):
                if 0 <= x < len(names):
                    return x
            elif isinstance(x, str):
                if x in index:
                    return index[x]
                if x.isdigit() and int(x) < len(names):
                    return int(x)
            raise ParseError(f"unknown basis element {x!r}")

        params = []
        for p in data.get("parameters", []):
            if isinstance(p, str):
                params.append((p, "real"))
            else:
                kind = p.get("kind", "real")
                if kind not in ("real", "complex"):
                    raise ParseError(f"parameter kind must be real or complex, got {kind!r}")
                params.append((str(p["name"]), kind))
        br: dict = {}
        for b in data.get("brackets", []):
            try:
                i, j = idx(b["i"]), idx(b["j"])
                coeffs = {idx(k): S(v) for k, v in b["coeffs"].items()}
            except (KeyError, TypeError, AttributeError) as exc:
                raise ParseError(f"malformed bracket entry {b!r}: {exc}") from None
            if i > j:
                i, j = j, i
                coeffs = {k: -v for k, v in coeffs.items()}
            tgt = br.setdefault((i, j), {})
            for k, v in coeffs.items():
                tgt[k] = tgt.get(k, ZERO) + v
        return cls(names, br, params)

    @classmethod
    def from_differentials(cls, names: Sequence[str], d: Mapping[str, Iterable], parameters=()) -> "LieAlgebra":
        """Build from dx_k = sum coeff * x_i ^ x_j, using dx_k = -sum_{i<j} c^k_ij x_i ^ x_j."""
        index = {nm: k for k, nm in enumerate(names)}
        br: dict = {}
        for target, terms in d.items():
            k = index[target]
            for coeff, a, b in terms:
                i, j = index[a], index[b]
                v = -S(coeff)
                if i > j:
                    i, j, v = j, i, -v
                tgt = br.setdefault((i, j), {})
                tgt[k] = tgt.get(k, ZERO) + v
        return cls(names, br, parameters)


# -- subspaces -------------------------------------------------------------------


def span_basis(vectors: Iterable[Vector], n: int, assumptions: Assumptions | None = None) -> list:
    """Canonical (reduced echelon) basis of the span."""
    vs = [list(v) for v in vectors if any(v)]
    if not vs:
        return []
    red, piv = la.rref(vs, assumptions)
    return [red[r] for r in range(len(piv))]


def bracket_span(g: LieAlgebra, a: Sequence[Vector], b: Sequence[Vector], assumptions=None) -> list:
    return span_basis((g.bracket(x, y) for x in a for y in b), g.dim, assumptions)


def intersect(a: Sequence[Vector], b: Sequence[Vector], n: int, assumptions=None) -> list:
    if not a or not b:
        return []
    # solve sum x_i a_i = sum y_j b_j
    m = [[v[t] for v in a] + [-w[t] for w in b] for t in range(n)]
    ker = la.nullspace(m, assumptions)
    return span_basis((lincomb(k[: len(a)], a, n) for k in ker), n, assumptions)


def contains_all(big: Sequence[Vector], small: Iterable[Vector], n: int) -> bool:
    sp = Span(n)
    for v in big:
        sp.add(v)
    return all(sp.contains(v) for v in small)


def derived_series(g: LieAlgebra, assumptions=None) -> list:
    cur = [unit(g.dim, i) for i in range(g.dim)]
    out = [cur]
    while cur:
        nxt = bracket_span(g, cur, cur, assumptions)
        if len(nxt) == len(cur):
            break
        out.append(nxt)
        cur = nxt
    return out


def lower_central_series(g: LieAlgebra, assumptions=None) -> list:
    full = [unit(g.dim, i) for i in range(g.dim)]
    return _lower_central(g, full, assumptions)


def _lower_central(g: LieAlgebra, sub: Sequence[Vector], assumptions=None) -> list:
    cur = list(sub)
    out = [cur]
    while cur:
        nxt = bracket_span(g, sub, cur, assumptions)
        if len(nxt) == len(cur):
            break
        out.append(nxt)
        cur = nxt
    return out


def is_nilpotent_subalgebra(g: LieAlgebra, sub: Sequence[Vector], assumptions=None) -> bool:
    return not _lower_central(g, sub, assumptions)[-1]


def check_jacobi(g: LieAlgebra) -> None:
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                ei, ej, ek = unit(n, i), unit(n, j), unit(n, k)
                s = vadd(
                    vadd(g.bracket(g.bracket(ei, ej), ek), g.bracket(g.bracket(ej, ek), ei)),
                    g.bracket(g.bracket(ek, ei), ej),
                )
                if any(s):
                    raise JacobiFails(i, j, k, g.names)


@dataclass
class ValidationReport:
    jacobi: bool
    solvable: bool
    nilpotent: bool
    derived_dims: list
    lower_central_dims: list

    def to_json(self) -> dict:
        return {
            "jacobi": self.jacobi,
            "solvable": self.solvable,
            "nilpotent": self.nilpotent,
            "derived_series_dims": self.derived_dims,
            "lower_central_series_dims": self.lower_central_dims,
        }


def validate(g: LieAlgebra, require_solvable: bool = True) -> ValidationReport:
    check_jacobi(g)
    ds = derived_series(g)
    lc = lower_central_series(g)
    solvable = not ds[-1]
    rep = ValidationReport(True, solvable, not lc[-1], [len(s) for s in ds], [len(s) for s in lc])
    if require_solvable and not solvable:
        raise NotSolvable(f"derived series stabilizes at dimension {len(ds[-1])}")
    return rep


# -- Cartan subalgebra, nilradical --------------------------------------------------


def fitting_null(g: LieAlgebra, x: Vector, assumptions=None) -> list:
    # ker a^k grows strictly until it reaches the generalized kernel
    a = g.ad(x)
    p = a
    ker = la.nullspace(p, assumptions, ncols=g.dim)
    for _ in range(g.dim - 1):
        p = la.matmul(p, a)
        nxt = la.nullspace(p, assumptions, ncols=g.dim)
        if len(nxt) == len(ker):
            break
        ker = nxt
    return span_basis(ker, g.dim, assumptions)


def _candidates(n: int, bound: int):
    for i in range(n):
        yield unit(n, i)
    for k in range(1, bound + 1):
        yield [S(k**e) for e in range(n)]


def cartan_subalgebra(g: LieAlgebra, bound: int = 12, assumptions=None) -> list:
    """Fitting-null component of a regular element found by deterministic search."""
    n = g.dim
    if g.is_abelian():
        return [unit(n, i) for i in range(n)]
    best = None
    first_pass = n + 3
    # rank candidates at a numeric specialization, then redo the winner symbolically
    point = {v: S(11 + 7 * k) for k, v in enumerate(sorted(g.variables() | {"pi"}))}
    numeric = g.substitute(point) if g.variables() else g
    pool = list(_candidates(n, bound))
    order = sorted(range(min(first_pass, len(pool))),
                   key=lambda t: (len(fitting_null(numeric, pool[t])), t))
    for t in order + list(range(first_pass, len(pool))):
        # conditions from the search element are not needed once h is verified
        h = fitting_null(g, pool[t], Assumptions())
        if assumptions is not None:
            for v in h:
                for x in v:
                    if x:
                        assumptions.add(x)
        if is_nilpotent_subalgebra(g, h, assumptions):
            best = h
            break
    if best is None:
        raise RegularElementNotFound(f"no regular element among candidates up to bound {bound}")
    # self-normalizing: {y : [y, h] in h} = h
    sp = Span(n)
    for v in best:
        sp.add(v)
    rows = []
    for hv in best:
        m = g.ad(hv)
        # [hv, y] projected off h must vanish
        rows.extend(_mod_rows(m, best, n))
    if rows:
        norm = la.nullspace(rows, assumptions, ncols=n)
        if len(norm) != len(best):
            raise RegularElementNotFound("Fitting-null component is not self-normalizing")
    return best


def _mod_rows(m: la.Matrix, sub: Sequence[Vector], n: int) -> list:
    """Rows of a linear map y -> (m y mod sub) in quotient coordinates."""
    red = span_basis(sub, n)
    pivots = [next(t for t, x in enumerate(v) if x) for v in red]
    # reduce each column of m against sub and keep non-pivot coordinates
    cols = []
    for j in range(n):
        col = [m[r][j] for r in range(n)]
        for p, v in zip(pivots, red):
            f = col[p]
            if f:
                col = [a - f * b for a, b in zip(col, v)]
        cols.append(col)
    keep = [t for t in range(n) if t not in pivots]
    return [[cols[j][t] for j in range(n)] for t in keep]


@dataclass
class Nilradical:
    cartan: list
    basis: list
    roots: list  # (values on cartan basis, root-space basis)


def nilradical(g: LieAlgebra, assumptions=None, cartan: list | None = None) -> Nilradical:
    n = g.dim
    full = [unit(n, i) for i in range(n)]
    h = cartan if cartan is not None else cartan_subalgebra(g, assumptions=assumptions)
    if not lower_central_series(g, assumptions)[-1]:
        return Nilradical(h, full, [])
    semis = [la.jordan_chevalley(g.ad(x), assumptions).semisimple for x in h]
    pieces = la.simultaneous_weights(semis, assumptions, semisimple_known=True)
    nonzero = [(vals, b) for vals, b in pieces if any(vals)]
    vecs = []
    if nonzero:
        kill = la.nullspace([list(vals) for vals, _ in nonzero], assumptions, ncols=len(h))
        vecs.extend(lincomb(k, h, n) for k in kill)
    else:
        vecs.extend(h)
    for _, b in nonzero:
        vecs.extend(b)
    basis = span_basis(vecs, n, assumptions)
    # ideal, nilpotent, contains [g,g]
    if not contains_all(basis, bracket_span(g, full, basis), n):
        raise MathError("computed nilradical is not an ideal")
    if not is_nilpotent_subalgebra(g, basis, assumptions):
        raise MathError("computed nilradical is not nilpotent")
    if not contains_all(basis, bracket_span(g, full, full), n):
        raise MathError("computed nilradical does not contain [g,g]")
    return Nilradical(h, basis, pieces)


# -- weights and ad_s --------------------------------------------------------------


class WeightVector:
    """Linear functional on V, stored by its values on the V-basis."""

    __slots__ = ("values", "_hash")

    def __init__(self, values: Sequence):
        self.values = tuple(S(v) for v in values)
        self._hash = None

    @staticmethod
    def zero(k: int) -> "WeightVector":
        return WeightVector([ZERO] * k)

    def __add__(self, o: "WeightVector") -> "WeightVector":
        return WeightVector([a + b for a, b in zip(self.values, o.values)])

    def __neg__(self):
        return WeightVector([-a for a in self.values])

    def __sub__(self, o):
        return self + (-o)

    def is_zero(self) -> bool:
        return not any(self.values)

    def __eq__(self, o):
        return isinstance(o, WeightVector) and self.values == o.values

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.values)
        return self._hash

    def __call__(self, v_coords: Sequence) -> ScalarValue:
        acc = ZERO
        for a, b in zip(self.values, v_coords):
            if a and b:
                acc = acc + a * b
        return acc

    def substitute(self, bindings) -> "WeightVector":
        return WeightVector([v.substitute(bindings) for v in self.values])

    def sort_key(self) -> tuple:
        return tuple(str(v) for v in self.values)

    def __repr__(self):
        return f"WeightVector({[str(v) for v in self.values]})"

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass
class AdSData:
    g: LieAlgebra
    cartan: list
    nilradical: list
    V: list  # basis vectors of the complement
    semisimple: list  # ad_s(A_j) for A_j in V, matrices on g
    projection: la.Matrix  # rows: V-coordinates of each basis vector e_i (along n)
    diagonal_basis: list
    diagonal_names: list
    weights: list  # WeightVector for each diagonal vector
    assumptions: Assumptions = field(default_factory=Assumptions)

    @property
    def dimV(self) -> int:
        return len(self.V)

    def v_coords(self, x: Vector) -> list:
        k = len(self.V)
        out = [ZERO] * k
        for i, xi in enumerate(x):
            if xi:
                for j in range(k):
                    p = self.projection[i][j]
                    if p:
                        out[j] = out[j] + xi * p
        return out

    def ads(self, x: Vector) -> la.Matrix:
        n = self.g.dim
        out = la.zeros(n, n)
        for c, m in zip(self.v_coords(x), self.semisimple):
            if c:
                out = la.matadd(out, la.matscale(c, m))
        return out

    def ads_basis(self, i: int) -> la.Matrix:
        return self.ads(unit(self.g.dim, i))

    def a_matrix(self) -> list:
        """a[i][k] = lambda_k(X_i) in the diagonal basis."""
        coords = [self.v_coords(x) for x in self.diagonal_basis]
        return [[w(c) for w in self.weights] for c in coords]

    def diagonal_algebra(self) -> LieAlgebra:
        return self.g.change_basis(self.diagonal_basis, self.diagonal_names)

    def is_trivial(self) -> bool:
        return all(w.is_zero() for w in self.weights)

    def to_json(self) -> dict:
        return {
            "V": [[str(x) for x in v] for v in self.V],
            "nilradical": [[str(x) for x in v] for v in self.nilradical],
            "cartan": [[str(x) for x in v] for v in self.cartan],
            "diagonal_basis": {
                nm: [str(x) for x in v] for nm, v in zip(self.diagonal_names, self.diagonal_basis)
            },
            "weights": {nm: [str(x) for x in w.values] for nm, w in zip(self.diagonal_names, self.weights)},
        }


def _name_diagonal(g: LieAlgebra, vectors: list) -> list:
    names, used = [], set(g.names)
    k = 1
    for v in vectors:
        nz = [t for t, x in enumerate(v) if x]
        if len(nz) == 1 and v[nz[0]].is_one():
            names.append(g.names[nz[0]])
            continue
        while f"X{k}" in used:
            k += 1
        names.append(f"X{k}")
        used.add(f"X{k}")
        k += 1
    return names


def construct_ads(g: LieAlgebra, assumptions: Assumptions | None = None, check: bool = True) -> AdSData:
    assumptions = assumptions if assumptions is not None else Assumptions()
    n = g.dim
    full = [unit(n, i) for i in range(n)]
    if g.is_abelian():
        V = full
        proj = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        zero = la.zeros(n, n)
        return AdSData(
            g, full, full, V, [zero] * n, proj, full, list(g.names),
            [WeightVector.zero(n) for _ in range(n)], assumptions,
        )
    h = cartan_subalgebra(g, assumptions=assumptions)
    nil = nilradical(g, assumptions, cartan=h)
    nbasis = nil.basis
    hn = intersect(h, nbasis, n, assumptions)
    sp = Span(n)
    for v in hn:
        sp.add(v)
    V = []
    for v in span_basis(h, n):
        if sp.add(v):
            V.append(v)
    semis = [la.jordan_chevalley(g.ad(a), assumptions).semisimple for a in V]
    # projection onto V along n: solve e_i = sum c_j A_j + (n part)
    basis_all = V + nbasis
    if len(basis_all) != n:
        raise MathError("V + n does not span g")
    big = Span(n)
    for v in basis_all:
        big.add(v)
    proj = []
    for i in range(n):
        c = big.coordinates(unit(n, i))
        proj.append(c[: len(V)])
    if check:
        for s in semis:
            for a in V:
                if any(la.matvec(s, a)):
                    raise MathError("(ad_A)_s does not vanish on V")
        for i in range(len(semis)):
            for j in range(i + 1, len(semis)):
                if not la.is_zero_matrix(la.commutator(semis[i], semis[j])):
                    raise MathError("semisimple parts do not commute")
    if V:
        pieces = la.simultaneous_weights(semis, assumptions, check=check, semisimple_known=True)
    else:
        pieces = [([], full)]
    diag, weights = [], []
    for vals, b in pieces:
        for v in span_basis(b, n):
            diag.append(v)
            weights.append(WeightVector(vals))
    order = sorted(range(n), key=lambda k: next(t for t, x in enumerate(diag[k]) if x))
    diag = [diag[k] for k in order]
    weights = [weights[k] for k in order]
    names = _name_diagonal(g, diag)
    return AdSData(g, h, nbasis, V, semis, proj, diag, names, weights, assumptions)


def substitute_ads(ads: AdSData, bindings) -> AdSData:
    """Specialize every piece of ad_s data at parameter values.

    The diagonal basis stays a basis as long as no denominator vanishes;
    weights may coincide afterwards, which is harmless.
    """

    def vec(v):
        return [x.substitute(bindings) for x in v]

    g = ads.g.substitute(bindings)
    return AdSData(
        g,
        [vec(v) for v in ads.cartan],
        [vec(v) for v in ads.nilradical],
        [vec(v) for v in ads.V],
        [la.substitute_matrix(m, bindings) for m in ads.semisimple],
        [vec(r) for r in ads.projection],
        [vec(v) for v in ads.diagonal_basis],
        list(ads.diagonal_names),
        [w.substitute(bindings) for w in ads.weights],
        Assumptions(),
    )
