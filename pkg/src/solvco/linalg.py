"""Dense exact linear algebra over :class:`ScalarValue`.

Matrices are plain lists of rows. Constant matrices are eliminated over
Q or Q(i) directly; parametric ones go through fraction-free elimination
on polynomial numerators, and every non-constant pivot is recorded in an
:class:`Assumptions` collector when one is supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DenominatorVanishes, DivisionByZero, FieldTooSmall, NonSquare, NotCommuting, NotSemisimple
from .scalar import ONE, ZERO, GaussRational, Poly, ScalarValue, S, parse_scalar, poly_gcd

Matrix = list  # list[list[ScalarValue]]
Vector = list  # list[ScalarValue]


class Assumptions:
    """Polynomials assumed nonzero by generic-rank computations."""

    def __init__(self):
        self._polys: dict = {}

    def add(self, p) -> None:
        if isinstance(p, ScalarValue):
            for q in (p.num, p.den):
                self.add(q)
            return
        # nonzero polynomials in pi alone never vanish
        if p.is_constant() or p.variables() == {"pi"}:
            return
        p = p.monic()
        self._polys.setdefault(p, str(p))

    def merge(self, other: "Assumptions") -> None:
        for p in other._polys:
            self.add(p)

    def factors(self) -> list:
        out: dict = {}
        small = [p for p in self._polys if _factorable(p)]
        for p in small:
            for f in _irreducible_factors(p):
                out.setdefault(f.monic(), None)
        for p in self._polys:
            if _factorable(p):
                continue
            # strip known factors, keep the large cofactor as is
            for f in list(out):
                while True:
                    q = p.exact_div(f)
                    if q is None:
                        break
                    p = q
            if not p.is_constant():
                out.setdefault(p.monic(), None)
        return sorted(out, key=lambda f: (f.total_degree(), len(f.terms), str(f)))

    def as_strings(self) -> list[str]:
        return [str(f) for f in self.factors()]

    def __len__(self):
        return len(self._polys)

    def __bool__(self):
        return bool(self._polys)


def _factorable(p: Poly) -> bool:
    return len(p.terms) <= 12 and p.total_degree() <= 4


_FACTOR_CACHE: dict = {}


def _irreducible_factors(p: Poly) -> list:
    if p.total_degree() <= 1:
        return [p]
    if p not in _FACTOR_CACHE:
        _FACTOR_CACHE[p] = _sympy_factors(p)
    return _FACTOR_CACHE[p]


def _sympy_factors(p: Poly) -> list:
    import sympy

    names = sorted(p.variables())
    syms = {n: sympy.Symbol(n) for n in names}
    syms["i"] = sympy.I
    expr = sympy.sympify(str(p).replace("^", "**"), locals=syms)
    _, facs = sympy.factor_list(expr, *[syms[n] for n in names], gaussian=True)
    out = []
    for f, _ in facs:
        q = _from_sympy(f).num
        if not q.is_constant():
            out.append(q)
    return out or [p]


# -- construction and arithmetic ----------------------------------------------


def matrix(rows) -> Matrix:
    return [[S(x) for x in row] for row in rows]


def zeros(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out_row = []
        for col in bt:
            acc = ZERO
            for k, x in nz:
                y = col[k]
                if y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(a: Matrix, v: Vector) -> Vector:
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def matsub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def matscale(c, a: Matrix) -> Matrix:
    c = S(c)
    return [[c * x for x in r] for r in a]


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return matsub(matmul(a, b), matmul(b, a))


def is_zero_matrix(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


def substitute_matrix(m: Matrix, bindings) -> Matrix:
    return [[x.substitute(bindings) for x in row] for row in m]


def _require_square(m: Matrix) -> int:
    r, c = shape(m)
    if r != c:
        raise NonSquare(f"matrix is {r}x{c}, expected square")
    return r


# -- elimination ----------------------------------------------------------------


def _all_constant(m: Matrix) -> bool:
    return all(x.is_constant() for row in m for x in row)


def _field_rref(rows: list) -> tuple[list, list]:
    """Gauss-Jordan over a field whose elements support + - * / and bool."""
    rows = [list(r) for r in rows]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = [x * inv if x else x for x in rows[r]]
        prow = rows[r]
        nzc = [j for j in range(c, nc) if prow[j]]
        for i in range(nr):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in nzc:
                        ri[j] = ri[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def _to_field(m: Matrix):
    vals = [[x.constant() for x in row] for row in m]
    if all(not v.im for row in vals for v in row):
        return [[v.re for v in row] for row in vals], True
    return vals, False


def _from_field(rows, real: bool) -> Matrix:
    if real:
        return [[ScalarValue(x) for x in row] for row in rows]
    return [[ScalarValue(x) for x in row] for row in rows]


def _poly_rows(m: Matrix) -> list:
    """Clear denominators row by row."""
    out = []
    for row in m:
        den = Poly.const(1)
        for x in row:
            if not x.den.is_one():
                g = poly_gcd(den, x.den)
                den = den * x.den.exact_div(g)
        out.append([(x.num * den.exact_div(x.den)) if x else Poly() for x in row])
    return out


def _poly_size(p: Poly) -> tuple:
    return (p.total_degree(), len(p.terms))


def _bareiss(rows: list, assumptions: Assumptions | None) -> tuple[list, list]:
    """Fraction-free row echelon form; pivot = least-degree candidate."""
    a = [list(r) for r in rows]
    nr = len(a)
    nc = len(a[0]) if a else 0
    prev = Poly.const(1)
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        cands = [i for i in range(r, nr) if a[i][c].terms]
        if not cands:
            continue
        p = min(cands, key=lambda i: (_poly_size(a[i][c]), i))
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if assumptions is not None:
            assumptions.add(piv)
        for i in range(r + 1, nr):
            f = a[i][c]
            ai = a[i]
            for j in range(c + 1, nc):
                v = piv * ai[j]
                if f.terms and a[r][j].terms:
                    v = v - f * a[r][j]
                if v.terms and not prev.is_one():
                    v = v.exact_div(prev)
                ai[j] = v
            ai[c] = Poly()
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots


def _echelon_to_rref(rows: list, pivots: list) -> Matrix:
    m = [[ScalarValue._make(x, Poly.const(1)) if x.terms else ZERO for x in row] for row in rows]
    nc = len(m[0]) if m else 0
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv if x else ZERO for x in m[r]]
        nzc = [j for j in range(c, nc) if m[r][j]]
        for i in range(r):
            f = m[i][c]
            if f:
                for j in nzc:
                    m[i][j] = m[i][j] - f * m[r][j]
    return m


def rref(m: Matrix, assumptions: Assumptions | None = None) -> tuple[Matrix, list]:
    """Reduced row echelon form and pivot columns (generic over parameters)."""
    if not m or not m[0]:
        return [list(r) for r in m], []
    if _all_constant(m):
        vals, real = _to_field(m)
        rows, piv = _field_rref(vals)
        return _from_field(rows, real), piv
    echelon, piv = _bareiss(_poly_rows(m), assumptions)
    return _echelon_to_rref(echelon, piv), piv


def rank(m: Matrix, assumptions: Assumptions | None = None) -> int:
    if not m or not m[0]:
        return 0
    if _all_constant(m):
        vals, _ = _to_field(m)
        return len(_field_rref(vals)[1])
    return len(_bareiss(_poly_rows(m), assumptions)[1])


def nullspace(m: Matrix, assumptions: Assumptions | None = None, ncols: int | None = None) -> list:
    """Basis of the kernel; one vector per free column."""
    if not m:
        n = ncols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    nc = len(m[0])
    red, piv = rref(m, assumptions)
    pivset = set(piv)
    basis = []
    for f in range(nc):
        if f in pivset:
            continue
        v = [ZERO] * nc
        v[f] = ONE
        for r, c in enumerate(piv):
            x = red[r][f]
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def solve(m: Matrix, b: Vector, assumptions: Assumptions | None = None) -> Vector | None:
    """One solution of m x = b, or None if inconsistent."""
    nc = len(m[0]) if m else 0
    aug = [list(row) + [S(bi)] for row, bi in zip(m, b)]
    red, piv = rref(aug, assumptions)
    if nc in piv:
        return None
    x = [ZERO] * nc
    for r, c in enumerate(piv):
        x[c] = red[r][nc]
    return x


def inverse(m: Matrix, assumptions: Assumptions | None = None) -> Matrix:
    n = _require_square(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(aug, assumptions)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise DivisionByZero("matrix is singular")
    return [row[n:] for row in red[:n]]


class Span:
    """Incrementally built subspace with membership and coordinates.

    Coordinates are relative to the vectors passed to :meth:`add`, in order.
    """

    def __init__(self, dim: int, assumptions: Assumptions | None = None):
        self.dim = dim
        self.rows: list = []  # (pivot, vector with 1 at pivot, combo over inserted vectors)
        self.count = 0
        self.assumptions = assumptions

    def __len__(self):
        return self.count

    def _reduce(self, v: Vector) -> tuple[Vector, dict]:
        v = list(v)
        combo: dict = {}
        for piv, row, rc in self.rows:
            f = v[piv]
            if f:
                for j, x in enumerate(row):
                    if x:
                        v[j] = v[j] - f * x
                for k, c in rc.items():
                    combo[k] = combo.get(k, ZERO) + f * c
        return v, combo

    def add(self, v: Vector) -> bool:
        """Insert v; return True if it was independent."""
        red, combo = self._reduce(v)
        cand = [j for j, x in enumerate(red) if x]
        if not cand:
            return False
        piv = min(cand, key=lambda j: (red[j].complexity(), j))
        p = red[piv]
        if self.assumptions is not None and not p.is_constant():
            self.assumptions.add(p)
        inv = p.inverse()
        row = [x * inv if x else ZERO for x in red]
        rc = {k: -c * inv for k, c in combo.items() if c}
        rc[self.count] = inv
        # keep rows fully reduced against the new pivot
        new_rows = []
        for q, r2, c2 in self.rows:
            f = r2[piv]
            if f:
                r2 = [a - f * b if b else a for a, b in zip(r2, row)]
                c2 = dict(c2)
                for k, c in rc.items():
                    c2[k] = c2.get(k, ZERO) - f * c
            new_rows.append((q, r2, c2))
        new_rows.append((piv, row, rc))
        self.rows = new_rows
        self.count += 1
        return True

    def contains(self, v: Vector) -> bool:
        red, _ = self._reduce(v)
        return not any(red)

    def coordinates(self, v: Vector) -> Vector | None:
        """Coefficients expressing v in the inserted vectors (only independent ones are kept)."""
        red, combo = self._reduce(v)
        if any(red):
            return None
        return [combo.get(k, ZERO) for k in range(self.count)]

    def residual(self, v: Vector) -> Vector:
        return self._reduce(v)[0]


# -- univariate polynomials -----------------------------------------------------


class UniPoly:
    """Polynomial in T over ScalarValue, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        c = [S(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = c

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> ScalarValue:
        return self.coeffs[-1]

    def monic(self) -> "UniPoly":
        if not self.coeffs or self.lc().is_one():
            return self
        inv = self.lc().inverse()
        return UniPoly([x * inv for x in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __add__(self, o: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + [ZERO] * (n - len(self.coeffs))
        b = o.coeffs + [ZERO] * (n - len(o.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return UniPoly([-x for x in self.coeffs])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o: "UniPoly") -> "UniPoly":
        if not self.coeffs or not o.coeffs:
            return UniPoly([])
        out = [ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return UniPoly(out)

    def divmod(self, o: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if not o.coeffs:
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        q = [ZERO] * max(0, len(r) - len(o.coeffs) + 1)
        inv = o.lc().inverse()
        while len(r) >= len(o.coeffs) and r:
            f = r[-1] * inv
            shift = len(r) - len(o.coeffs)
            q[shift] = f
            for j, y in enumerate(o.coeffs):
                r[shift + j] = r[shift + j] - f * y
            r.pop()
            while r and not r[-1]:
                r.pop()
        return UniPoly(q), UniPoly(r)

    def derivative(self) -> "UniPoly":
        return UniPoly([x * k for k, x in enumerate(self.coeffs)][1:])

    def gcd(self, o: "UniPoly") -> "UniPoly":
        if self.coeffs and o.coeffs and _image_coprime(self, o):
            return UniPoly([ONE])
        a, b = self, o
        while b.coeffs:
            a, b = b, a.divmod(b)[1].monic()
        return a.monic()

    def squarefree_part(self) -> "UniPoly":
        g = self.gcd(self.derivative())
        return self.divmod(g)[0].monic()

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m: Matrix) -> Matrix:
        n = len(m)
        acc = zeros(n, n)
        for c in reversed(self.coeffs):
            acc = matmul(acc, m)
            if c:
                for i in range(n):
                    acc[i][i] = acc[i][i] + c
        return acc

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            t = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
            cs = str(c)
            if not t:
                parts.append(cs if c.num.is_constant() and c.den.is_one() else f"({cs})")
            elif c.is_one():
                parts.append(t)
            else:
                parts.append(f"({cs})*{t}")
        return " + ".join(parts)


def _image_coprime(a: UniPoly, b: UniPoly) -> bool:
    """Coprimality certificate: a common factor would survive a specialization
    that keeps both leading coefficients nonzero."""
    names = set()
    for c in a.coeffs + b.coeffs:
        names |= c.variables()
    if not names:
        return False
    point = {v: S(13 + 7 * k) for k, v in enumerate(sorted(names))}
    try:
        ia = UniPoly([c.substitute(point) for c in a.coeffs])
        ib = UniPoly([c.substitute(point) for c in b.coeffs])
    except DenominatorVanishes:
        return False
    if ia.degree != a.degree or ib.degree != b.degree:
        return False
    return ia.gcd(ib).degree == 0


def charpoly(m: Matrix) -> UniPoly:
    """Berkowitz algorithm: division-free, monic."""
    n = _require_square(m)
    if n == 0:
        return UniPoly([ONE])
    # vectors are highest-degree first during the computation
    vect = [ONE, -m[0][0]]
    for r in range(1, n):
        R = [m[r][j] for j in range(r)]  # row segment
        C = [m[i][r] for i in range(r)]  # column segment
        A = [row[:r] for row in m[:r]]
        a = m[r][r]
        toeplitz_col = [ONE, -a]
        kv = C
        for _ in range(r):
            toeplitz_col.append(-sum((x * y for x, y in zip(R, kv) if x and y), ZERO))
            kv = matvec(A, kv)
        new = []
        for i in range(r + 2):
            acc = ZERO
            for j in range(min(i, r) + 1):
                t = toeplitz_col[i - j] if i - j < len(toeplitz_col) else ZERO
                if t and vect[j]:
                    acc = acc + t * vect[j]
            new.append(acc)
        vect = new
    return UniPoly(list(reversed(vect)))


def minimal_polynomial(m: Matrix, assumptions: Assumptions | None = None) -> UniPoly:
    """Krylov on matrix powers: first linear dependency among I, A, A^2, ..."""
    n = _require_square(m)
    span = Span(n * n, assumptions)
    power = identity(n)
    for k in range(n + 1):
        flat = [x for row in power for x in row]
        coords = span.coordinates(flat)
        if coords is not None:
            return UniPoly([-c for c in coords] + [ONE])
        span.add(flat)
        power = matmul(power, m)
    raise AssertionError("Cayley-Hamilton violated")


def is_semisimple(m: Matrix, assumptions: Assumptions | None = None) -> bool:
    mp = minimal_polynomial(m, assumptions)
    return mp.gcd(mp.derivative()).degree == 0


@dataclass
class JCDecomposition:
    semisimple: Matrix
    nilpotent: Matrix


def jordan_chevalley(m: Matrix, assumptions: Assumptions | None = None) -> JCDecomposition:
    """Additive Jordan-Chevalley decomposition by Newton iteration."""
    n = _require_square(m)
    g = charpoly(m).squarefree_part()
    dg = g.derivative()
    s = [list(r) for r in m]
    for _ in range(64):
        gs = g.eval_matrix(s)
        if is_zero_matrix(gs):
            break
        s = matsub(s, matmul(gs, inverse(dg.eval_matrix(s), assumptions)))
    else:  # pragma: no cover
        raise AssertionError("Newton iteration for the semisimple part did not converge")
    return JCDecomposition(s, matsub(m, s))


# -- eigenvalues ----------------------------------------------------------------


def _scc_blocks(m: Matrix) -> list:
    """Strongly connected components of the nonzero pattern."""
    n = len(m)
    adj = [[j for j in range(n) if j != i and m[i][j]] for i in range(n)]
    index = [None] * n
    low = [0] * n
    on = [False] * n
    stack, out = [], []
    counter = [0]

    def visit(v):
        work = [(v, 0)]
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on[v] = True
        while work:
            u, k = work[-1]
            if k < len(adj[u]):
                work[-1] = (u, k + 1)
                w = adj[u][k]
                if index[w] is None:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on[w] = True
                    work.append((w, 0))
                elif on[w]:
                    low[u] = min(low[u], index[w])
            else:
                work.pop()
                if work:
                    p = work[-1][0]
                    low[p] = min(low[p], low[u])
                if low[u] == index[u]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on[w] = False
                        comp.append(w)
                        if w == u:
                            break
                    out.append(sorted(comp))

    for v in range(n):
        if index[v] is None:
            visit(v)
    return out


def _quadratic_roots(f: UniPoly) -> list:
    c0, c1, c2 = f.coeffs
    disc = c1 * c1 - 4 * c0 * c2
    r = disc.sqrt()
    if r is None:
        raise FieldTooSmall(f"quadratic factor {f} has no roots in the coefficient field", factor=str(f))
    den = 2 * c2
    if not r:
        return [(-c1) / den, (-c1) / den]
    return [(-c1 + r) / den, (-c1 - r) / den]


def _sympy_linear_factors(f: UniPoly) -> list:
    import sympy

    T = sympy.Symbol("T")
    names = sorted({v for c in f.coeffs for v in c.variables()})
    syms = {n: sympy.Symbol(n) for n in names}
    syms["i"] = sympy.I
    syms["T"] = T
    expr = sympy.sympify(str(f).replace("^", "**"), locals=syms)
    _, factors = sympy.factor_list(sympy.expand(expr), T, gaussian=True)
    roots = []
    for fac, mult in factors:
        p = sympy.Poly(fac, T)
        d = p.degree()
        if d == 0:
            continue
        cs = [_from_sympy(c) for c in reversed(p.all_coeffs())]
        u = UniPoly(cs)
        if d == 1:
            rts = [-(cs[0] / cs[1])]
        elif d == 2:
            rts = _quadratic_roots(u)
        else:
            raise FieldTooSmall(f"irreducible factor {u} of degree {d}", factor=str(u))
        roots.extend(rts * mult)
    return roots


def _from_sympy(expr) -> ScalarValue:
    import sympy

    text = sympy.sstr(expr).replace("**", "^")
    text = text.replace("I", "i")
    return parse_scalar(text)


def poly_roots(f: UniPoly) -> list:
    """All roots with multiplicity, inside the coefficient field."""
    f = f.monic()
    if f.degree <= 0:
        return []
    if f.degree == 1:
        return [-f.coeffs[0]]
    if f.degree == 2:
        return _quadratic_roots(f)
    # peel off zero roots
    k = next(i for i, c in enumerate(f.coeffs) if c)
    if k:
        return [ZERO] * k + poly_roots(UniPoly(f.coeffs[k:]))
    return _sympy_linear_factors(f)


def eigenvalues(m: Matrix) -> list:
    """Eigenvalues with algebraic multiplicity, via block-triangular structure."""
    _require_square(m)
    out = []
    for block in _scc_blocks(m):
        if len(block) == 1:
            out.append(m[block[0]][block[0]])
            continue
        sub = [[m[i][j] for j in block] for i in block]
        out.extend(poly_roots(charpoly(sub)))
    return out


def _distinct(vals: list) -> list:
    seen, out = set(), []
    for v in vals:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _restricted(op: Matrix, basis: list, assumptions) -> Matrix:
    """Matrix of op on the invariant span of basis (columns = images)."""
    sp = Span(len(op), assumptions)
    for b in basis:
        sp.add(b)
    cols = []
    for b in basis:
        c = sp.coordinates(matvec(op, b))
        if c is None:
            raise NotCommuting("operator does not preserve a joint eigenspace")
        cols.append(c)
    return transpose(cols)


def simultaneous_weights(
    ops: list, assumptions: Assumptions | None = None, check: bool = True, semisimple_known: bool = False
) -> list:
    """Joint eigenspace decomposition of commuting semisimple operators.

    Returns a list of (values, basis) with values[k] the eigenvalue of ops[k].
    """
    if not ops:
        return []
    n = len(ops[0])
    if check:
        # semisimple parts from jordan_chevalley skip this; the fill test below still applies
        for k, a in enumerate(ops):
            if not semisimple_known and not is_semisimple(a, assumptions):
                raise NotSemisimple(f"operator #{k} is not semisimple")
        for i in range(len(ops)):
            for j in range(i + 1, len(ops)):
                if not is_zero_matrix(commutator(ops[i], ops[j])):
                    raise NotCommuting(f"operators #{i} and #{j} do not commute")
    pieces = [((), [[ONE if i == j else ZERO for i in range(n)] for j in range(n)])]
    for op in ops:
        new = []
        for vals, basis in pieces:
            r = _restricted(op, basis, assumptions)
            filled = 0
            lams = _distinct(eigenvalues(r))
            if assumptions is not None:
                for x in range(len(lams)):
                    for y in range(x + 1, len(lams)):
                        assumptions.add(lams[x] - lams[y])
            for lam in lams:
                shifted = [[x - lam if i == j else x for j, x in enumerate(row)] for i, row in enumerate(r)]
                ker = nullspace(shifted, assumptions)
                vecs = [
                    [sum((c * b[t] for c, b in zip(kv, basis) if c and b[t]), ZERO) for t in range(n)]
                    for kv in ker
                ]
                if vecs:
                    new.append((vals + (lam,), vecs))
                    filled += len(vecs)
            if filled < len(basis):
                raise NotSemisimple("eigenspaces do not fill the space")
        pieces = new
    return [(list(v), b) for v, b in pieces]
