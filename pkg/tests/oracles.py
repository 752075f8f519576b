"""Independent reference computations (sympy only, no solvco imports).

Algebras are entered by hand as differentials of the dual basis,
d e^k = sum c * e^a ^ e^b, and weights as values on the input basis.
The exterior algebra, Leibniz rule and ranks are reimplemented here so the
package can be checked against code that shares nothing with it.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import sympy as sp

pi, I = sp.pi, sp.I
a1, a2, c1, c2, c3 = sp.symbols("a1 a2 c1 c2 c3", real=True)


def _merge(a: tuple, b: tuple):
    """Sign and sorted union of two increasing index tuples (None if they overlap)."""
    if set(a) & set(b):
        return None
    inv = sum(1 for x in a for y in b if x > y)
    return (-1) ** inv, tuple(sorted(a + b))


def _d_mono(mono: tuple, d1: dict, theta: dict) -> dict:
    out: dict = {}
    for s, k in enumerate(mono):
        rest_left, rest_right = mono[:s], mono[s + 1:]
        for (a, b), c in d1.get(k, {}).items():
            m1 = _merge(rest_left, (a, b))
            if m1 is None:
                continue
            m2 = _merge(m1[1], rest_right)
            if m2 is None:
                continue
            key = m2[1]
            out[key] = out.get(key, 0) + (-1) ** s * m1[0] * m2[0] * c
    for k, c in theta.items():
        m = _merge((k,), mono)
        if m is not None:
            out[m[1]] = out.get(m[1], 0) + m[0] * c
    return out


def ce_matrices(n: int, d1: dict, theta: dict | None = None) -> list:
    """Matrices of d + theta^ on wedge^p, p = 0..n-1."""
    theta = theta or {}
    mats = []
    for p in range(n):
        src = list(combinations(range(n), p))
        tgt = {m: r for r, m in enumerate(combinations(range(n), p + 1))}
        mat = sp.zeros(len(tgt), len(src))
        for col, mono in enumerate(src):
            for m, c in _d_mono(mono, d1, theta).items():
                mat[tgt[m], col] += c
        mats.append(mat.applyfunc(sp.expand))
    return mats


def _rank(mat) -> int:
    if mat.rows == 0 or mat.cols == 0:
        return 0
    return mat.rank(simplify=True)


def betti(n: int, d1: dict, theta: dict | None = None) -> list:
    mats = ce_matrices(n, d1, theta)
    for a, b in zip(mats, mats[1:]):
        assert (b * a).applyfunc(sp.expand).is_zero_matrix, "d^2 != 0"
    ranks = [_rank(m) for m in mats] + [0]
    dims = [sp.binomial(n, p) for p in range(n + 1)]
    return [int(dims[p] - ranks[p] - (ranks[p - 1] if p else 0)) for p in range(n + 1)]


def subset_sums(weights: list) -> list:
    """Distinct sums over subsets; each weight is a tuple of values on the input basis."""
    n = len(weights[0])
    found = {tuple([sp.Integer(0)] * n)}
    for w in weights:
        found |= {tuple(sp.expand(x + y) for x, y in zip(s, w)) for s in found}
    return sorted(found, key=str)


def total_betti(n: int, d1: dict, weights: list) -> list:
    out = [0] * (n + 1)
    for s in subset_sums(weights):
        b = betti(n, d1, {k: v for k, v in enumerate(s) if v != 0})
        out = [x + y for x, y in zip(out, b)]
    return out


def trivial_on_lattice(values: list) -> bool:
    """exp(lambda(gamma)) = 1 for every generator value lambda(gamma)."""
    for v in values:
        re, im = sp.re(v), sp.im(v)
        if sp.simplify(re) != 0:
            return False
        q = sp.simplify(im / (2 * pi))
        if not q.is_integer:
            return False
    return True


def lattice_betti(n: int, d1: dict, weights: list, lattice: list) -> list:
    out = [0] * (n + 1)
    for s in subset_sums(weights):
        vals = [sum(g[i] * s[i] for i in range(len(g))) for g in lattice]
        if trivial_on_lattice(vals):
            b = betti(n, d1, {k: v for k, v in enumerate(s) if v != 0})
            out = [x + y for x, y in zip(out, b)]
    return out


# -- hand-entered algebras --------------------------------------------------------
# d e^k = -sum_{i<j} c^k_ij e^i ^ e^j for [e_i, e_j] = sum_k c^k_ij e_k


def semidirect(n: int, m: int, ders: list) -> dict:
    """R^n acting on R^m: [t_i, x_j] = sum_k D_i[k][j] x_k."""
    d1: dict = {}
    for i, d in enumerate(ders):
        for j in range(m):
            for k in range(m):
                if d[k][j] != 0:
                    d1.setdefault(n + k, {})
                    key = (i, n + j)
                    d1[n + k][key] = d1[n + k].get(key, 0) - d[k][j]
    return d1


def sawai_d1(x=a1, y=a2) -> dict:
    """alpha, beta, zeta1..3, eta1..3 with d zeta_i = a_i alpha^zeta_i,
    d eta_i = -a_i alpha^eta_i - zeta_j^zeta_k (cyclic), a3 = -a1 - a2."""
    a = [x, y, -x - y]
    d1 = {}
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        d1[2 + i] = {(0, 2 + i): a[i]}
        lo, hi = sorted((2 + j, 2 + k))
        sign = 1 if (2 + j) < (2 + k) else -1
        d1[5 + i] = {(0, 5 + i): -a[i], (lo, hi): -sign}
    return d1


def sawai_hull_d1() -> dict:
    return {5: {(3, 4): -1}, 6: {(2, 4): 1}, 7: {(2, 3): -1}}


def ot_data(s: int):
    cs = [c1, c2, c3][:s]
    m = s + 2
    ders = []
    for i in range(s):
        d = [[0] * m for _ in range(m)]
        d[i][i] = 1
        d[s][s], d[s][s + 1] = sp.Rational(-1, 2), -cs[i] * pi
        d[s + 1][s], d[s + 1][s + 1] = cs[i] * pi, sp.Rational(-1, 2)
        ders.append(d)
    n = s + m
    zero = [0] * n

    def w(vals):
        return tuple(list(vals) + [0] * m)

    weights = [tuple(zero)] * s
    weights += [w([1 if t == i else 0 for t in range(s)]) for i in range(s)]
    weights += [w([sp.Rational(-1, 2) + I * pi * c for c in cs]), w([sp.Rational(-1, 2) - I * pi * c for c in cs])]
    lattice = [[1 if t == i else 0 for t in range(s)] for i in range(s)]
    return n, semidirect(s, m, ders), weights, lattice


def _pad(vals, n):
    return tuple(list(vals) + [0] * (n - len(vals)))


@lru_cache(maxsize=None)
def cases() -> dict:
    """name -> (dim, d1, weights, lattice or None)."""
    out = {}
    out["heisenberg3"] = (3, semidirect(1, 2, [[[0, 0], [1, 0]]]), [(0, 0, 0)] * 3, [[1]])
    for k in (2, 3, 4):
        out[f"torus{k}"] = (k, {}, [tuple([0] * k)] * k, [[int(i == j) for j in range(k)] for i in range(k)])
    out["aff_line"] = (2, {1: {(0, 1): -1}}, [(0, 0), (1, 0)], None)
    out["sol3"] = (3, semidirect(1, 2, [[[1, 0], [0, -1]]]), [(0, 0, 0), (1, 0, 0), (-1, 0, 0)], None)
    out["e2_rotation"] = (3, semidirect(1, 2, [[[0, -pi], [pi, 0]]]),
                          [(0, 0, 0), (I * pi, 0, 0), (-I * pi, 0, 0)], [[1]])
    sw = [0, 0, -a1, -a2, a1 + a2, a1, a2, -a1 - a2]
    out["sawai8"] = (8, sawai_d1(), [_pad([v], 8) for v in sw], None)
    du = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    dv = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    nw = [(0, 0), (0, 0), (1, I), (1, -I), (-1, I), (-1, -I)]
    out["nakamura"] = (6, semidirect(2, 4, [du, dv]), [_pad(v, 6) for v in nw], None)
    n, d1, w, lat = ot_data(2)
    out["ot2"] = (n, d1, w, lat)
    return out


def jc_reference(m) -> tuple:
    """(S, N) from sympy's Jordan form."""
    mat = sp.Matrix(m)
    p, j = mat.jordan_form()
    d = sp.diag(*[j[i, i] for i in range(j.rows)])
    s = (p * d * p.inv()).applyfunc(sp.nsimplify)
    return s, mat - s
