"""Exterior algebra on bitset monomials and weighted cochain complexes."""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from . import linalg as la
from .errors import MathError, ParseError, WeightNotClosed
from .linalg import Assumptions, Span
from .scalar import I, ONE, ZERO, Poly, ScalarValue, S

Form = dict  # mask -> ScalarValue


def bits(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def degree(mask: int) -> int:
    return mask.bit_count()


def wedge_sign(a: int, b: int) -> int:
    """Sign of x_a ^ x_b relative to the sorted monomial a|b; 0 if they overlap."""
    if a & b:
        return 0
    s = 0
    bb = b
    while bb:
        low = bb & -bb
        s += (a >> low.bit_length()).bit_count()
        bb ^= low
    return -1 if s & 1 else 1


def mono_name(mask: int, names: Sequence[str]) -> str:
    if not mask:
        return "1"
    return "^".join(names[i] for i in bits(mask))


def form_add(a: Form, b: Form, scale=ONE) -> Form:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, ZERO) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def form_scale(c, a: Form) -> Form:
    c = S(c)
    if not c:
        return {}
    return {m: c * v for m, v in a.items()}


def wedge(a: Form, b: Form) -> Form:
    out: Form = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            s = wedge_sign(ma, mb)
            if s:
                v = ca * cb
                if s < 0:
                    v = -v
                m = ma | mb
                r = out.get(m, ZERO) + v
                if r:
                    out[m] = r
                else:
                    out.pop(m, None)
    return out


def form_degree(a: Form) -> int | None:
    ds = {degree(m) for m in a}
    if len(ds) > 1:
        raise MathError("form is not homogeneous")
    return ds.pop() if ds else None


def form_substitute(a: Form, bindings) -> Form:
    out = {}
    for m, c in a.items():
        v = c.substitute(bindings)
        if v:
            out[m] = v
    return out


def form_to_json(a: Form, names: Sequence[str]) -> list:
    items = sorted(a.items(), key=lambda mc: (degree(mc[0]), bits(mc[0])))
    return [[mono_name(m, names), str(c)] for m, c in items]


def form_to_str(a: Form, names: Sequence[str]) -> str:
    if not a:
        return "0"
    parts = []
    for mono, c in form_to_json(a, names):
        if c == "1":
            parts.append(mono)
        elif c == "-1":
            parts.append("-" + mono)
        else:
            parts.append(f"({c})*{mono}")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def change_dual_basis(a: Form, transform: Sequence[Form]) -> Form:
    """Apply the algebra map sending generator i to the 1-form transform[i]."""
    out: Form = {}
    for m, c in a.items():
        acc: Form = {0: c}
        for i in bits(m):
            acc = wedge(acc, transform[i])
        out = form_add(out, acc)
    return out


def ce_generators(structure: Sequence, n: int) -> list:
    """dx_k = -sum_{i<j} c^k_ij x_i ^ x_j for structure constants c[i][j][k]."""
    dx = []
    for k in range(n):
        terms = {}
        for i in range(n):
            for j in range(i + 1, n):
                v = structure[i][j][k]
                if v:
                    terms[(1 << i) | (1 << j)] = -v
        dx.append(terms)
    return dx


class CochainComplex:
    """(wedge g*, d + twist^) split into connected components of the d-graph.

    ``dx[k]`` is the differential of generator k, ``twist[i]`` the coefficient
    of x_i in the closed 1-form being wedged on. ``allowed`` restricts the
    complex to a set of monomials (which must then be closed under d).
    """

    def __init__(
        self,
        n: int,
        dx: Sequence[Form],
        twist: Sequence | None = None,
        allowed: Iterable[int] | None = None,
        assumptions: Assumptions | None = None,
        check: bool = True,
        label=None,
    ):
        self.n = n
        self.dx = [dict(f) for f in dx]
        self.twist = [S(t) for t in twist] if twist is not None else [ZERO] * n
        self.flat: Form = {1 << i: t for i, t in enumerate(self.twist) if t}
        self.assumptions = assumptions
        self.label = label
        self._d: dict = {}
        if self.flat:
            dflat = self.apply(self.flat, raw=True)
            if dflat:
                raise WeightNotClosed("twisting 1-form is not closed")
        masks = range(1 << n) if allowed is None else sorted(set(allowed))
        self.masks = list(masks)
        self._build_components()
        if check:
            self.check_square_zero()

    # -- differential
    def d_mono(self, mask: int) -> Form:
        if mask in self._d:
            return self._d[mask]
        out: Form = {}
        for r, i in enumerate(bits(mask)):
            rest = mask ^ (1 << i)
            sign = -ONE if r & 1 else ONE
            for m2, c in self.dx[i].items():
                s = wedge_sign(m2, rest)
                if s:
                    v = c * sign if s > 0 else -(c * sign)
                    key = m2 | rest
                    t = out.get(key, ZERO) + v
                    if t:
                        out[key] = t
                    else:
                        out.pop(key, None)
        for m1, c in self.flat.items():
            s = wedge_sign(m1, mask)
            if s:
                key = m1 | mask
                t = out.get(key, ZERO) + (c if s > 0 else -c)
                if t:
                    out[key] = t
                else:
                    out.pop(key, None)
        self._d[mask] = out
        return out

    def apply(self, form: Form, raw: bool = False) -> Form:
        out: Form = {}
        for m, c in form.items():
            if raw:
                # untwisted differential only
                part = {}
                for r, i in enumerate(bits(m)):
                    rest = m ^ (1 << i)
                    for m2, c2 in self.dx[i].items():
                        s = wedge_sign(m2, rest)
                        if s:
                            v = c2 if (s > 0) == (r % 2 == 0) else -c2
                            part = form_add(part, {m2 | rest: v})
            else:
                part = self.d_mono(m)
            out = form_add(out, part, c)
        return out

    __call__ = apply

    def _build_components(self) -> None:
        allowed = set(self.masks)
        parent = {m: m for m in self.masks}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for m in self.masks:
            for t in self.d_mono(m):
                if t not in allowed:
                    raise MathError("restricted monomial set is not closed under d")
                ra, rb = find(m), find(t)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups: dict = {}
        for m in self.masks:
            groups.setdefault(find(m), []).append(m)
        comps = []
        for root in sorted(groups):
            by_deg: dict = {}
            for m in sorted(groups[root]):
                by_deg.setdefault(degree(m), []).append(m)
            comps.append(by_deg)
        self.components = comps
        self.component_of = {}
        for ci, comp in enumerate(comps):
            for ms in comp.values():
                for m in ms:
                    self.component_of[m] = ci

    def matrix(self, comp: dict, p: int) -> la.Matrix:
        src = comp.get(p, [])
        tgt = comp.get(p + 1, [])
        idx = {m: r for r, m in enumerate(tgt)}
        mat = la.zeros(len(tgt), len(src))
        for col, m in enumerate(src):
            for t, c in self.d_mono(m).items():
                mat[idx[t]][col] = c
        return mat

    def check_square_zero(self) -> None:
        for m in self.masks:
            dd = self.apply(self.d_mono(m))
            if dd:
                raise MathError(f"d^2 != 0 on monomial {m:b}")

    def cohomology(self) -> "CohomologyBasis":
        return CohomologyBasis(self)


class CohomologyBasis:
    """Per degree: dimension, representatives, and a projector for cocycles."""

    def __init__(self, cx: CochainComplex):
        self.complex = cx
        n = cx.n
        self.dims = [0] * (n + 1)
        self.reps: list = [[] for _ in range(n + 1)]
        self._parts: list = []  # per component: degree -> (masks, span, n_image, rep indices)
        for comp in cx.components:
            info = {}
            prev_cols: list = []
            for p in range(n + 1):
                src = comp.get(p, [])
                if not src:
                    prev_cols = []
                    continue
                mat = cx.matrix(comp, p)
                if mat:
                    ker = la.nullspace(mat, cx.assumptions)
                else:
                    ker = [[ONE if i == j else ZERO for i in range(len(src))] for j in range(len(src))]
                sp = Span(len(src), cx.assumptions)
                nimg = sum(1 for v in prev_cols if sp.add(v))
                start = len(self.reps[p])
                for v in ker:
                    if sp.add(v):
                        self.reps[p].append({m: x for m, x in zip(src, v) if x})
                if len(sp) != len(ker):
                    raise MathError("image of d is not contained in its kernel")
                k = len(sp) - nimg
                info[p] = (src, sp, nimg, start, k)
                self.dims[p] += k
                # columns of this degree's matrix are images of the next degree's sources
                prev_cols = _columns(mat, len(comp.get(p + 1, [])), len(src))
            self._parts.append(info)

    @property
    def betti(self) -> list:
        return list(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def project(self, form: Form, p: int, check: bool = True) -> list:
        """Coordinates of the class of a closed form in the representative basis."""
        cx = self.complex
        if check and cx.apply(form):
            raise MathError("project: form is not closed")
        out = [ZERO] * self.dims[p]
        split: dict = {}
        for m, c in form.items():
            if degree(m) != p:
                raise MathError("project: form has wrong degree")
            ci = cx.component_of.get(m)
            if ci is None:
                raise MathError("project: monomial outside the complex")
            split.setdefault(ci, {})[m] = c
        for ci, part in split.items():
            info = self._parts[ci].get(p)
            if info is None:
                continue
            src, sp, nimg, start, k = info
            v = [part.get(m, ZERO) for m in src]
            coords = sp.coordinates(v)
            if coords is None:
                raise MathError("project: form is not a cocycle")
            for t in range(k):
                out[start + t] = coords[nimg + t]
        return out

    def is_exact(self, form: Form, p: int) -> bool:
        return not any(self.project(form, p))

    def preimage(self, form: Form, p: int) -> Form | None:
        """Some x of degree p-1 with d x = form, or None."""
        cx = self.complex
        out: Form = {}
        split: dict = {}
        for m, c in form.items():
            ci = cx.component_of.get(m)
            if ci is None:
                return None
            split.setdefault(ci, {})[m] = c
        for ci, part in split.items():
            comp = cx.components[ci]
            src = comp.get(p - 1, [])
            tgt = comp.get(p, [])
            if not src:
                return None
            mat = cx.matrix(comp, p - 1)
            sol = la.solve(mat, [part.get(m, ZERO) for m in tgt], cx.assumptions)
            if sol is None:
                return None
            out.update({m: x for m, x in zip(src, sol) if x})
        return out

    def form_of(self, p: int, coords: Sequence) -> Form:
        out: Form = {}
        for c, rep in zip(coords, self.reps[p]):
            if c:
                out = form_add(out, rep, S(c))
        return out


def _columns(mat: la.Matrix, nrows: int, ncols: int) -> list:
    return [[mat[r][c] for r in range(nrows)] for c in range(ncols)]


# -- form strings -------------------------------------------------------------------

_FTOK = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()]))")


class _FormParser:
    """Forms as sums of products; '*' and '^' between forms both mean wedge.

    ``^`` followed by an integer is a scalar power.
    """

    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.index = {nm: k for k, nm in enumerate(names)}
        t = text.replace("−", "-").replace("∧", "^").replace("·", "*")
        self.toks, pos = [], 0
        t = t.rstrip()
        while pos < len(t):
            m = _FTOK.match(t, pos)
            if not m:
                raise ParseError(f"unexpected character in form {text!r}")
            if m.group(1):
                self.toks.append(("num", int(m.group(1))))
            elif m.group(2):
                self.toks.append(("name", m.group(2)))
            else:
                self.toks.append(("op", m.group(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Form:
        if not self.toks:
            raise ParseError("empty form")
        f = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in form {self.text!r}")
        return {m: c for m, c in f.items() if c}

    def expr(self) -> Form:
        f = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = form_add(f, g, ONE if op == "+" else -ONE)
        return f

    def term(self) -> Form:
        f = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            g = self.unary()
            if op == "*":
                f = wedge(f, g)
            else:
                if set(g) != {0}:
                    raise ParseError(f"can only divide by a nonzero scalar in {self.text!r}")
                f = form_scale(g[0].inverse(), f)
        return f

    def unary(self) -> Form:
        if self.peek() == ("op", "-"):
            self.take()
            return form_scale(-ONE, self.unary())
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.chain()

    def chain(self) -> Form:
        f = self.atom()
        while self.peek() == ("op", "^"):
            self.take()
            if self.peek()[0] == "num":
                k = self.take()[1]
                if set(f) - {0}:
                    raise ParseError(f"integer power of a non-scalar form in {self.text!r}")
                f = {0: f[0] ** k} if f else {}
            else:
                f = wedge(f, self.atom())
        return f

    def atom(self) -> Form:
        kind, val = self.take()
        if kind == "num":
            return {0: S(val)}
        if kind == "name":
            if val in self.index:
                return {1 << self.index[val]: ONE}
            if val == "i":
                return {0: I}
            return {0: ScalarValue._from_poly(Poly.var(val))}
        if (kind, val) == ("op", "("):
            f = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError(f"missing ')' in form {self.text!r}")
            return f
        raise ParseError(f"unexpected token {val!r} in form {self.text!r}")


def parse_form(text: str, names: Sequence[str]) -> Form:
    return _FormParser(text, names).parse()
