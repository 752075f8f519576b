import random

import pytest
import sympy

from helpers import jc_invariants, random_upper_triangular
from oracles import jc_reference
from solvco import linalg as la
from solvco.errors import FieldTooSmall, NonSquare, NotCommuting, NotSemisimple
from solvco.linalg import Assumptions, UniPoly
from solvco.scalar import ONE, ZERO, S


def M(rows):
    return la.matrix(rows)


def test_rank_examples():
    assert la.rank(la.identity(2)) == 2
    ns = la.nullspace(M([[0, 1], [0, 0]]))
    assert len(ns) == 1 and ns[0][1] == ZERO and ns[0][0] != ZERO
    a = Assumptions()
    assert la.rank(M([["a1", "a2"], ["a2", "a1"]]), a) == 2
    assert a


def test_rank_nullity_and_kernel():
    rng = random.Random(3)
    for _ in range(25):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = M([[rng.choice(["0", "1", "-2", "a", "b", "a*b", "1/2"]) for _ in range(c)] for _ in range(r)])
        ns = la.nullspace(m)
        assert la.rank(m) + len(ns) == c
        for v in ns:
            assert all(x.is_zero() for x in la.matvec(m, v))
        if ns:
            assert la.rank(ns) == len(ns)


def test_fraction_free_agrees_with_field_elimination():
    # symbolic route vs the constant-field route after specialization, and vs sympy
    rng = random.Random(11)
    a, b = sympy.symbols("a b")
    for _ in range(20):
        r, c = rng.randint(2, 5), rng.randint(2, 5)
        rows = [[rng.choice(["0", "1", "a", "b", "a - b", "a^2", "2*b + 1"]) for _ in range(c)] for _ in range(r)]
        m = M(rows)
        sym = sympy.Matrix([[sympy.sympify(x.replace("^", "**"), locals={"a": a, "b": b}) for x in row] for row in rows])
        assert la.rank(m) == sym.rank()
        bound = la.substitute_matrix(m, {"a": S(101), "b": S(-37)})
        assert la.rank(bound) == la.rank(m)


def test_solve():
    m = M([[1, 2], [3, 4]])
    x = la.solve(m, [S(5), S(6)])
    assert la.matvec(m, x) == [S(5), S(6)]
    assert la.solve(M([[1, 1], [1, 1]]), [S(1), S(2)]) is None
    inv = la.inverse(M([["a", 1], [0, "a"]]))
    assert la.matmul(inv, M([["a", 1], [0, "a"]])) == la.identity(2)


def test_charpoly_examples():
    t = UniPoly([0, 1])
    assert la.charpoly(M([[1, 0], [0, 2]])) == (t - UniPoly([1])) * (t - UniPoly([2]))
    assert la.charpoly(M([[0, "-pi"], ["pi", 0]])) == UniPoly(["pi^2", 0, 1])
    assert la.charpoly(M([[1, 1], [0, 1]])) == (t - UniPoly([1])) * (t - UniPoly([1]))
    with pytest.raises(NonSquare):
        la.charpoly(M([[1, 2]]))


def test_charpoly_against_sympy():
    rng = random.Random(5)
    x = sympy.Symbol("x")
    for _ in range(15):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        ours = la.charpoly(M(rows))
        ref = sympy.Matrix(rows).charpoly(x).all_coeffs()[::-1]
        assert [c.constant().re for c in ours.coeffs] == [sympy.Rational(c) for c in ref]


def test_jordan_chevalley_examples():
    nil = M([[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    d = la.jordan_chevalley(nil)
    assert la.is_zero_matrix(d.semisimple) and d.nilpotent == nil
    diag = M([[2, 0], [0, -1]])
    d = la.jordan_chevalley(diag)
    assert d.semisimple == diag and la.is_zero_matrix(d.nilpotent)
    d = la.jordan_chevalley(M([[1, 1], [0, 1]]))
    assert d.semisimple == la.identity(2) and d.nilpotent == M([[0, 1], [0, 0]])


def test_jordan_chevalley_against_jordan_form():
    rng = random.Random(99)
    for _ in range(30):
        n = rng.randint(2, 5)
        m = random_upper_triangular(rng, n)
        d = la.jordan_chevalley(m)
        s_ref, _ = jc_reference([[x.constant().re for x in row] for row in m])
        assert [[x.constant().re for x in row] for row in d.semisimple] == s_ref.tolist()
        assert all(jc_invariants(m, d).values())


def test_jordan_chevalley_parametric():
    m = M([["a", 1, 0], [0, "a", 0], [0, 0, "b"]])
    d = la.jordan_chevalley(m)
    assert d.semisimple == M([["a", 0, 0], [0, "a", 0], [0, 0, "b"]])
    assert all(jc_invariants(m, d).values())


def test_minimal_polynomial_and_semisimplicity():
    assert la.minimal_polynomial(la.identity(3)).degree == 1
    assert not la.is_semisimple(M([[1, 1], [0, 1]]))
    assert la.is_semisimple(M([[0, "-pi"], ["pi", 0]]))


def test_span_coordinates():
    sp = la.Span(3)
    assert sp.add([S(1), S(1), ZERO])
    assert sp.add([ZERO, S(1), S(1)])
    assert not sp.add([S(1), S(2), S(1)])
    assert sp.coordinates([S(2), S(3), S(1)]) == [S(2), S(1)]
    assert sp.coordinates([S(0), S(0), S(1)]) is None


def test_simultaneous_weights_examples():
    pieces = la.simultaneous_weights([M([[1, 0], [0, -1]])])
    assert sorted(str(v[0]) for v, _ in pieces) == ["-1", "1"]
    pieces = la.simultaneous_weights([M([[0, "-pi"], ["pi", 0]])])
    assert sorted(str(v[0]) for v, _ in pieces) == ["-i*pi", "i*pi"]
    d = la.zeros(8, 8)
    for k, v in enumerate(["a1", "a2", "a3", "-a1", "-a2", "-a3", 0, 0]):
        d[k][k] = S(v)
    pieces = la.simultaneous_weights([d], Assumptions())
    dims = sorted((str(v[0]), len(b)) for v, b in pieces)
    assert dims == sorted([("a1", 1), ("a2", 1), ("a3", 1), ("-a1", 1), ("-a2", 1), ("-a3", 1), ("0", 2)])


def test_simultaneous_weights_properties():
    ops = [M([[1, 0, 0], [0, 1, 0], [0, 0, 2]]), M([[0, 1, 0], [1, 0, 0], [0, 0, 0]])]
    pieces = la.simultaneous_weights(ops)
    assert la.rank([v for _, b in pieces for v in b]) == 3
    for vals, basis in pieces:
        for op, lam in zip(ops, vals):
            for v in basis:
                assert la.matvec(op, v) == [lam * x for x in v]


def test_simultaneous_weights_errors():
    with pytest.raises(NotSemisimple):
        la.simultaneous_weights([M([[1, 1], [0, 1]])])
    with pytest.raises(NotCommuting):
        la.simultaneous_weights([M([[1, 0], [0, 2]]), M([[0, 1], [1, 0]])])
    with pytest.raises(FieldTooSmall) as exc:
        la.simultaneous_weights([M([[0, 2], [1, 0]])])
    assert exc.value.factor is not None
    with pytest.raises(FieldTooSmall):
        la.simultaneous_weights([M([[0, 0, 2], [1, 0, 0], [0, 1, 0]])])


def test_gaussian_eigenvalues_and_assumptions():
    a = Assumptions()
    pieces = la.simultaneous_weights([M([["x", "-y"], ["y", "x"]])], a)
    assert {v[0] for v, _ in pieces} == {S("x + i*y"), S("x - i*y")}
    assert "y" in a.as_strings()
