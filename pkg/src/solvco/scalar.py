"""Exact coefficient field: rational functions over Q(i) in named parameters.

Parameters are plain names (``a1``, ``c2``, ``pi`` ...). The name ``i`` is
reserved for the imaginary unit. ``pi`` is an ordinary transcendental
parameter here; only :mod:`solvco.lattice` gives it a meaning.

Values are kept in lowest terms (gcd removed, denominator monic in lex
order), so equality and hashing are structural.
"""

from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq, mpz
from math import gcd, isqrt
from typing import Iterable, Mapping

from .errors import DenominatorVanishes, DivisionByZero, ParseError, UnboundParameter

__all__ = [
    "GaussRational",
    "Poly",
    "ScalarValue",
    "S",
    "ZERO",
    "ONE",
    "I",
    "PI",
    "scalar_arith",
    "is_zero",
    "evaluate",
    "substitute",
    "split_real_imag",
    "parse_scalar",
]


_RATIONAL = (int, Fraction, type(mpq(0)), type(mpz(0)))
Q = type(mpq(0))


def _frac_sqrt(q) -> "mpq | None":
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return mpq(rn, rd)
    return None


class GaussRational:
    """Element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Q else mpq(re)
        self.im = im if type(im) is Q else mpq(im)

    @staticmethod
    def coerce(x) -> "GaussRational":
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, _RATIONAL):
            return GaussRational(x)
        if isinstance(x, ScalarValue):
            return x.constant()
        if isinstance(x, str):
            return parse_scalar(x).constant()
        raise TypeError(f"cannot convert {x!r} to GaussRational")

    def __add__(self, other):
        other = GaussRational.coerce(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussRational.coerce(other)
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussRational.coerce(other)
        if not self.im and not other.im:
            return GaussRational(self.re * other.re)
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussRational.coerce(other)
        if not other:
            raise DivisionByZero("division by zero in Q(i)")
        if not other.im:
            return GaussRational(self.re / other.re, self.im / other.re)
        n = other.re * other.re + other.im * other.im
        return GaussRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) / self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pow__(self, k: int):
        if k < 0:
            return GaussRational(1) / (self ** (-k))
        out = GaussRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RATIONAL):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return not self.im

    def sqrt(self) -> "GaussRational | None":
        """Square root inside Q(i), or None when it does not exist."""
        a, b = self.re, self.im
        if not b:
            r = _frac_sqrt(a)
            if r is not None:
                return GaussRational(r)
            r = _frac_sqrt(-a)
            return None if r is None else GaussRational(0, r)
        m = _frac_sqrt(a * a + b * b)
        if m is None:
            return None
        x = _frac_sqrt((a + m) / 2)
        y = _frac_sqrt((m - a) / 2)
        if x is None or y is None:
            return None
        if b < 0:
            y = -y
        return GaussRational(x, y)

    def __repr__(self):
        return f"GaussRational({self})"

    def __str__(self):
        return _format_coeff(self)


def _format_coeff(c: GaussRational) -> str:
    if not c.im:
        return str(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{c.im}*i"
    sign = "-" if c.im < 0 else "+"
    im = abs(c.im)
    im_s = "i" if im == 1 else f"{im}*i"
    return f"({c.re} {sign} {im_s})"


_G0 = GaussRational(0)
_G1 = GaussRational(1)


# -- monomials: tuples of (name, exponent) sorted by name -----------------------


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_div(m1, m2):
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        r = d.get(v, 0) - e
        if r < 0:
            return None
        if r:
            d[v] = r
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _mono_deg(m) -> int:
    return sum(e for _, e in m)


class Poly:
    """Sparse multivariate polynomial with Q(i) coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms
        self._hash = None

    @staticmethod
    def const(c) -> "Poly":
        c = GaussRational.coerce(c)
        return Poly({(): c}) if c else Poly()

    @staticmethod
    def var(name: str) -> "Poly":
        return Poly({((name, 1),): _G1})

    # -- inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        t = self.terms
        return not t or (len(t) == 1 and () in t)

    def is_one(self) -> bool:
        t = self.terms
        return len(t) == 1 and t.get(()) == _G1

    def constant_value(self) -> GaussRational:
        return self.terms.get((), _G0)

    def variables(self) -> frozenset:
        return frozenset(v for m in self.terms for v, _ in m)

    def total_degree(self) -> int:
        return max((_mono_deg(m) for m in self.terms), default=0)

    def degree_in(self, x: str) -> int:
        best = 0
        for m in self.terms:
            for v, e in m:
                if v == x and e > best:
                    best = e
        return best

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic
    def __add__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            r = t.get(m)
            if r is None:
                t[m] = c
            else:
                s = r + c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Poly(t)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        t = dict(self.terms)
        for m, c in other.terms.items():
            r = t.get(m)
            if r is None:
                t[m] = -c
            else:
                s = r - c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Poly(t)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly()
        if len(b) == 1 and () in b:
            return self.scale(b[()])
        if len(a) == 1 and () in a:
            return other.scale(a[()])
        t: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _mono_mul(m1, m2)
                r = t.get(m)
                s = c1 * c2 if r is None else r + c1 * c2
                if s:
                    t[m] = s
                else:
                    t.pop(m, None)
        return Poly(t)

    def scale(self, c: GaussRational) -> "Poly":
        if not c:
            return Poly()
        if c == _G1:
            return self
        return Poly({m: v * c for m, v in self.terms.items()})

    def mul_mono(self, mono, c: GaussRational) -> "Poly":
        return Poly({_mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "Poly":
        return Poly({m: c.conj() for m, c in self.terms.items()})

    # -- ordering
    def _order(self, others=()) -> list:
        vs = set(self.variables())
        for o in others:
            vs |= o.variables()
        return sorted(vs)

    def leading(self, order=None):
        """Leading (monomial, coefficient) in lex order over sorted names."""
        if order is None:
            order = self._order()
        return max(self.terms.items(), key=lambda mc: _lex_key(mc[0], order))

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        _, c = self.leading()
        return self.scale(_G1 / c) if c != _G1 else self

    def exact_div(self, other: "Poly") -> "Poly | None":
        """Quotient if ``other`` divides ``self`` exactly, else None."""
        if not other.terms:
            raise DivisionByZero("polynomial division by zero")
        if other.is_constant():
            return self.scale(_G1 / other.constant_value())
        if not self.terms:
            return Poly()
        order = self._order((other,))
        key = lambda m: _lex_key(m, order)
        lbm, lbc = max(other.terms.items(), key=lambda mc: key(mc[0]))
        inv = _G1 / lbc
        r = dict(self.terms)
        q: dict = {}
        bterms = list(other.terms.items())
        while r:
            lm = max(r, key=key)
            qm = _mono_div(lm, lbm)
            if qm is None:
                return None
            qc = r[lm] * inv
            q[qm] = qc
            for m, c in bterms:
                mm = _mono_mul(m, qm)
                v = r.get(mm)
                s = -(c * qc) if v is None else v - c * qc
                if s:
                    r[mm] = s
                else:
                    r.pop(mm, None)
        return Poly(q)

    # -- substitution
    def substitute(self, bindings: Mapping[str, "ScalarValue"]) -> "ScalarValue":
        out = ZERO
        for m, c in self.terms.items():
            term = ScalarValue._from_poly(Poly({(): c}))
            rest = []
            for v, e in m:
                if v in bindings:
                    term = term * bindings[v] ** e
                else:
                    rest.append((v, e))
            if rest:
                term = term * ScalarValue._from_poly(Poly({tuple(rest): _G1}))
            out = out + term
        return out

    def sqrt(self) -> "Poly | None":
        """Exact square root (up to sign) or None."""
        if not self.terms:
            return Poly()
        order = self._order()
        key = lambda m: _lex_key(m, order)
        lm, lc = self.leading(order)
        if any(e % 2 for _, e in lm):
            return None
        c0 = lc.sqrt()
        if c0 is None:
            return None
        s0m = tuple((v, e // 2) for v, e in lm)
        root = Poly({s0m: c0})
        two_lead = c0 * 2
        for _ in range(4 * len(self.terms) + 16):
            rem = self - root * root
            if not rem.terms:
                return root
            rm = max(rem.terms, key=key)
            tm = _mono_div(rm, s0m)
            if tm is None or key(tm) >= key(s0m):
                return None
            root = root + Poly({tm: rem.terms[rm] / two_lead})
        return None

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return _format_poly(self)


def _lex_key(m, order):
    d = dict(m)
    return tuple(d.get(v, 0) for v in order)


def _format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    items = sorted(p.terms.items(), key=lambda mc: (-_mono_deg(mc[0]), mc[0]))
    parts = []
    for m, c in items:
        ms = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
        if not ms:
            s = _format_coeff(c)
        elif c == _G1:
            s = ms
        elif c == GaussRational(-1):
            s = "-" + ms
        else:
            s = _format_coeff(c) + "*" + ms
        parts.append(s)
    out = parts[0]
    for s in parts[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out


# -- gcd (recursive primitive PRS) --------------------------------------------


def _coeffs_in(p: Poly, x: str) -> dict:
    out: dict = {}
    for m, c in p.terms.items():
        k = 0
        rest = []
        for v, e in m:
            if v == x:
                k = e
            else:
                rest.append((v, e))
        out.setdefault(k, {})[tuple(rest)] = c
    return {k: Poly(t) for k, t in out.items()}


def _from_coeffs(cs: Mapping[int, Poly], x: str) -> Poly:
    out = Poly()
    for k, c in cs.items():
        out = out + (c if k == 0 else c.mul_mono(((x, k),), _G1))
    return out


def _content(p: Poly, x: str) -> Poly:
    g = Poly()
    for c in _coeffs_in(p, x).values():
        g = poly_gcd(g, c)
        if g.is_constant():
            return Poly.const(1)
    return g


def _prem(a: Poly, b: Poly, x: str) -> Poly:
    db = b.degree_in(x)
    lb = _coeffs_in(b, x)[db]
    r = a
    e = a.degree_in(x) - db + 1
    while r.terms and r.degree_in(x) >= db:
        dr = r.degree_in(x)
        lr = _coeffs_in(r, x)[dr]
        shift = dr - db
        rhs = lr * b
        if shift:
            rhs = rhs.mul_mono(((x, shift),), _G1)
        r = lb * r - rhs
        e -= 1
    if e > 0:
        r = (lb ** e) * r
    return r


def _mono_gcd_of(p: Poly) -> dict:
    it = iter(p.terms)
    g = dict(next(it))
    for m in it:
        d = dict(m)
        g = {v: min(e, d[v]) for v, e in g.items() if v in d}
        if not g:
            break
    return g


def _eval_except(p: Poly, x: str, point: Mapping) -> dict:
    """Univariate image in x: degree -> GaussRational."""
    out: dict = {}
    for m, c in p.terms.items():
        k = 0
        val = c
        for v, e in m:
            if v == x:
                k = e
            else:
                val = val * point[v] ** e
        r = out.get(k)
        out[k] = val if r is None else r + val
    return {k: v for k, v in out.items() if v}


def _uni_gcd_degree(a: dict, b: dict) -> int:
    da = max(a) if a else -1
    db = max(b) if b else -1
    ra = [a.get(k, _G0) for k in range(da + 1)]
    rb = [b.get(k, _G0) for k in range(db + 1)]
    if len(ra) < len(rb):
        ra, rb = rb, ra
    while rb:
        inv = _G1 / rb[-1]
        while len(ra) >= len(rb) and ra:
            f = ra[-1] * inv
            shift = len(ra) - len(rb)
            for j, y in enumerate(rb):
                if y:
                    ra[shift + j] = ra[shift + j] - f * y
            ra.pop()
            while ra and not ra[-1]:
                ra.pop()
        ra, rb = rb, ra
    return len(ra) - 1


_POINT = {}
_GCD_CACHE: dict = {}


def _point_value(v: str, salt: int) -> GaussRational:
    key = (v, salt)
    if key not in _POINT:
        h = 0
        for ch in f"{salt}:{v}":
            h = (h * 131 + ord(ch)) % 1000003
        _POINT[key] = GaussRational(h + 17)
    return _POINT[key]


def _certainly_coprime(a: Poly, b: Poly, common) -> bool:
    """Coprimality certificate from univariate images (sound, possibly inconclusive)."""
    allv = a.variables() | b.variables()
    for x in common:
        for salt in range(2):
            point = {v: _point_value(v, salt) for v in allv if v != x}
            ia, ib = _eval_except(a, x, point), _eval_except(b, x, point)
            if not ia or not ib:
                continue
            # leading coefficients must survive so that degrees are preserved
            if max(ia) != a.degree_in(x) or max(ib) != b.degree_in(x):
                continue
            if _uni_gcd_degree(ia, ib) > 0:
                return False
            break
        else:
            return False
    return True


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q(i)."""
    if not a.terms:
        return b.monic()
    if not b.terms:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return Poly.const(1)
    if a == b:
        return a.monic()
    common = a.variables() & b.variables()
    if not common:
        return Poly.const(1)
    key = (a, b)
    hit = _GCD_CACHE.get(key)
    if hit is not None:
        return hit
    out = _poly_gcd(a, b, common)
    if len(_GCD_CACHE) > 20000:
        _GCD_CACHE.clear()
    _GCD_CACHE[key] = out
    return out


def _poly_gcd(a: Poly, b: Poly, common) -> Poly:
    # monomial factors
    if len(a.terms) == 1 or len(b.terms) == 1:
        ga, gb = _mono_gcd_of(a), _mono_gcd_of(b)
        g = tuple(sorted((v, min(e, gb[v])) for v, e in ga.items() if v in gb))
        return Poly({g: _G1}) if g else Poly.const(1)
    for p, q in ((a, b), (b, a)):
        if p.total_degree() == 1:
            return p.monic() if q.exact_div(p) is not None else Poly.const(1)
    ga, gb = _mono_gcd_of(a), _mono_gcd_of(b)
    mg = tuple(sorted((v, min(e, gb[v])) for v, e in ga.items() if v in gb))
    if mg:
        m = Poly({mg: _G1})
        return m * poly_gcd(a.exact_div(m), b.exact_div(m))
    if _certainly_coprime(a, b, common):
        return Poly.const(1)
    x = min(common, key=lambda v: (a.degree_in(v) + b.degree_in(v), v))
    ca, cb = _content(a, x), _content(b, x)
    c = poly_gcd(ca, cb)
    pa = a.exact_div(ca)
    pb = b.exact_div(cb)
    if pa.degree_in(x) < pb.degree_in(x):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, x)
        if not r.terms:
            break
        if r.degree_in(x) == 0:
            pb = Poly.const(1)
            break
        pa, pb = pb, r.exact_div(_content(r, x))
    if not pb.is_constant():
        pb = pb.exact_div(_content(pb, x))
    return (c * pb).monic()


# -- rational functions ---------------------------------------------------------


_P1 = Poly.const(1)


class ScalarValue:
    """Reduced fraction num/den of polynomials over Q(i). Immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, ScalarValue):
            self.num, self.den = value.num, value.den
        elif isinstance(value, str):
            v = parse_scalar(value)
            self.num, self.den = v.num, v.den
        elif isinstance(value, Poly):
            self.num, self.den = value, _P1
        else:
            self.num, self.den = Poly.const(GaussRational.coerce(value)), _P1
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "ScalarValue":
        out = object.__new__(cls)
        out.num, out.den, out._hash = num, den, None
        return out

    @classmethod
    def _from_poly(cls, p: Poly) -> "ScalarValue":
        return cls._raw(p, _P1)

    @classmethod
    def _make(cls, num: Poly, den: Poly) -> "ScalarValue":
        if not den.terms:
            raise DivisionByZero("zero denominator")
        if not num.terms:
            return ZERO
        if den.is_constant():
            c = den.constant_value()
            return cls._raw(num if c == _G1 else num.scale(_G1 / c), _P1)
        if not num.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = num.exact_div(g)
                den = den.exact_div(g)
                if den.is_constant():
                    return cls._raw(num.scale(_G1 / den.constant_value()), _P1)
        _, lc = den.leading()
        if lc != _G1:
            inv = _G1 / lc
            num, den = num.scale(inv), den.scale(inv)
        return cls._raw(num, den)

    @staticmethod
    def coerce(x) -> "ScalarValue":
        return x if isinstance(x, ScalarValue) else ScalarValue(x)

    # -- inspection
    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def constant(self) -> GaussRational:
        if not self.is_constant():
            raise UnboundParameter(f"{self} depends on parameters {sorted(self.variables())}")
        return self.num.constant_value()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def variables(self) -> frozenset:
        return self.num.variables() | self.den.variables()

    def complexity(self) -> tuple:
        return (
            self.num.total_degree() + self.den.total_degree(),
            len(self.num.terms) + len(self.den.terms),
        )

    def __eq__(self, other):
        if not isinstance(other, ScalarValue):
            try:
                other = ScalarValue(other)
            except (TypeError, ParseError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- arithmetic
    def __add__(self, other):
        if not isinstance(other, ScalarValue):
            other = ScalarValue(other)
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den is _P1 or self.den.is_one():
            if other.den.is_one():
                n = self.num + other.num
                return ScalarValue._raw(n, _P1) if n.terms else ZERO
            return ScalarValue._make(self.num * other.den + other.num, other.den)
        if other.den.is_one():
            return ScalarValue._make(self.num + other.num * self.den, self.den)
        if self.den == other.den:
            return ScalarValue._make(self.num + other.num, self.den)
        return ScalarValue._make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return ScalarValue._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, ScalarValue):
            other = ScalarValue(other)
        return self + (-other)

    def __rsub__(self, other):
        return ScalarValue(other) - self

    def __mul__(self, other):
        if not isinstance(other, ScalarValue):
            other = ScalarValue(other)
        if not self.num.terms or not other.num.terms:
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return ScalarValue._raw(self.num * other.num, _P1)
        if other.is_constant():
            return ScalarValue._raw(self.num.scale(other.num.constant_value()), self.den)
        if self.is_constant():
            return ScalarValue._raw(other.num.scale(self.num.constant_value()), other.den)
        return ScalarValue._make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "ScalarValue":
        if not self.num.terms:
            raise DivisionByZero("division by zero")
        return ScalarValue._make(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, ScalarValue):
            other = ScalarValue(other)
        if not other.num.terms:
            raise DivisionByZero(f"division of {self} by zero")
        if other.is_constant():
            return ScalarValue._raw(self.num.scale(_G1 / other.num.constant_value()), self.den)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ScalarValue(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.den.is_one():
            return ScalarValue._raw(self.num ** k, _P1) if k else ONE
        return ScalarValue._raw(self.num ** k, self.den ** k) if k else ONE

    def conj(self) -> "ScalarValue":
        """Complex conjugate, treating every parameter as real."""
        return ScalarValue._make(self.num.conj(), self.den.conj())

    def sqrt(self) -> "ScalarValue | None":
        rn = self.num.sqrt()
        if rn is None:
            return None
        rd = self.den.sqrt()
        if rd is None:
            return None
        return ScalarValue._make(rn, rd)

    def substitute(self, bindings: Mapping[str, object]) -> "ScalarValue":
        b = {k: ScalarValue.coerce(v) for k, v in bindings.items()}
        if not (self.variables() & b.keys()):
            return self
        n = self.num.substitute(b)
        d = self.den.substitute(b)
        if d.is_zero():
            raise DenominatorVanishes(f"denominator of {self} vanishes under {dict(bindings)}")
        return n / d

    def __repr__(self):
        return f"S({str(self)!r})"

    def __str__(self):
        if self.den.is_one():
            return _format_poly(self.num)
        # print with integer coefficients in the denominator
        lcm = 1
        for c in self.den.terms.values():
            for part in (c.re, c.im):
                d = int(part.denominator)
                lcm = lcm * d // gcd(lcm, d)
        num, den = self.num.scale(GaussRational(lcm)), self.den.scale(GaussRational(lcm))
        return f"({_format_poly(num)})/({_format_poly(den)})"


def S(value) -> ScalarValue:
    """Shorthand constructor."""
    return ScalarValue.coerce(value)


ZERO = ScalarValue._raw(Poly(), _P1)
ONE = ScalarValue._raw(Poly.const(1), _P1)
I = ScalarValue._raw(Poly.const(GaussRational(0, 1)), _P1)
PI = ScalarValue._raw(Poly.var("pi"), _P1)


# -- string grammar -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list:
    text = text.replace("−", "-").replace("·", "*")
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        if m.group(1):
            out.append(("num", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def fail(self, what):
        raise ParseError(f"{what} in scalar expression {self.text!r}")

    def parse(self) -> ScalarValue:
        if not self.toks:
            self.fail("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            self.fail(f"trailing token {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            r = self.term()
            v = v + r if op == "+" else v - r
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            r = self.unary()
            if op == "*":
                v = v * r
            else:
                if r.is_zero():
                    raise DivisionByZero(f"division by zero in {self.text!r}")
                v = v / r
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "num":
                self.fail("exponent must be an integer")
            return base ** (-val if neg else val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return ScalarValue(val)
        if kind == "name":
            if val == "i":
                return I
            return ScalarValue._from_poly(Poly.var(val))
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return v
        self.fail(f"unexpected token {val!r}")


def parse_scalar(text: str) -> ScalarValue:
    return _Parser(str(text)).parse()


# -- operation-level API --------------------------------------------------------


def scalar_arith(a, b, op: str) -> ScalarValue:
    a, b = S(a), S(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def is_zero(a) -> bool:
    return S(a).is_zero()


def substitute(a, bindings: Mapping[str, object]) -> ScalarValue:
    return S(a).substitute(bindings)


def evaluate(a, bindings: Mapping[str, object]) -> GaussRational:
    """Substitute Gaussian rationals for every parameter."""
    a = S(a)
    missing = sorted(a.variables() - set(bindings))
    if missing:
        raise UnboundParameter(f"no binding for {', '.join(missing)} in {a}")
    return a.substitute(bindings).constant()


def split_real_imag(a, kinds: Mapping[str, str] | None = None) -> tuple[ScalarValue, ScalarValue]:
    """Return (re, im) with a = re + i*im; parameters must be real."""
    a = S(a)
    kinds = kinds or {}
    bad = sorted(v for v in a.variables() if kinds.get(v, "real") != "real")
    if bad:
        raise ValueError(f"split_real_imag needs real parameters; {bad} declared complex")
    dc = a.den.conj()
    n = a.num * dc
    d = a.den * dc  # real coefficients
    re_p = Poly({m: GaussRational(c.re) for m, c in n.terms.items() if c.re})
    im_p = Poly({m: GaussRational(c.im) for m, c in n.terms.items() if c.im})
    return ScalarValue._make(re_p, d), ScalarValue._make(im_p, d)


def parameters_of(values: Iterable) -> frozenset:
    out: frozenset = frozenset()
    for v in values:
        out |= S(v).variables()
    return out
