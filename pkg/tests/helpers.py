"""Shared generators and invariant checks for the test-suite."""

import random

from solvco import linalg as la
from solvco.scalar import S


def random_upper_triangular(rng: random.Random, n: int) -> list:
    """Upper-triangular rational matrix whose diagonal repeats a few eigenvalues."""
    pool = [S(rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))]
    diag = [rng.choice(pool) for _ in range(n)]
    m = la.zeros(n, n)
    for i in range(n):
        m[i][i] = diag[i]
        for j in range(i + 1, n):
            if rng.random() < 0.6:
                m[i][j] = S(f"{rng.randint(-5, 5)}/{rng.randint(1, 3)}")
    return m


def is_polynomial_in(s: list, a: list) -> bool:
    n = len(a)
    span = la.Span(n * n)
    p = la.identity(n)
    for _ in range(n):
        span.add([x for row in p for x in row])
        p = la.matmul(p, a)
    return span.contains([x for row in s for x in row])


def jc_invariants(a: list, dec) -> dict:
    n = len(a)
    s, nil = dec.semisimple, dec.nilpotent
    power = la.identity(n)
    for _ in range(n):
        power = la.matmul(power, nil)
    return {
        "sum": la.matadd(s, nil) == a,
        "commute": la.is_zero_matrix(la.commutator(s, nil)),
        "nilpotent": la.is_zero_matrix(power),
        "semisimple": la.is_semisimple(s),
        "polynomial": is_polynomial_in(s, a),
    }


def off_lattice_twists(model, rng: random.Random, count: int) -> list:
    """Closed twisting 1-forms whose character is not a subset-sum weight.

    With dim V > 0 these are random rational weights on V; with V = 0 every
    weight is zero, so a random nonzero closed 1-form of g is used instead.
    """
    from solvco.lie import WeightVector

    out = []
    if model.ads.dimV:
        sums = {w for w, _ in model.subset_weights()}
        while len(out) < count:
            w = WeightVector([S(f"{rng.randint(-9, 9)}/{rng.randint(1, 4)}") for _ in range(model.ads.dimV)])
            if w not in sums:
                out.append(model.twist(w))
        return out
    closed = [k for k in range(model.n) if not model.dx[k]]
    while len(out) < count:
        t = [S(0)] * model.n
        for k in closed:
            t[k] = S(rng.randint(-5, 5))
        if any(t):
            out.append(t)
    return out


def random_form(rng: random.Random, n: int, p: int, terms: int = 3) -> dict:
    from itertools import combinations

    monos = [sum(1 << i for i in c) for c in combinations(range(n), p)]
    out = {}
    for m in rng.sample(monos, min(terms, len(monos))):
        c = S(f"{rng.randint(-6, 6)}/{rng.randint(1, 3)}")
        if c:
            out[m] = c
    return out


# filled by test_acceptance, printed by the terminal-summary hook in conftest
ACCEPTANCE_LINES: list = []


def record_criterion(key: str, ok: bool, elapsed: float, limit: float | None, detail: str) -> str:
    timing = f"{elapsed:.2f}s" + (f" (limit {limit:g}s)" if limit is not None else "")
    line = f"{'PASS' if ok else 'FAIL'}  criterion {key:<4} {timing:<22} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line
