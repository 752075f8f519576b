import pytest

from solvco import corpus
from solvco import linalg as la
from solvco.cdga import SolvModel
from solvco.exterior import ce_generators
from solvco.hull import hull_bracket, is_abelian, splitting_shape, unipotent_hull
from solvco.lie import LieAlgebra, check_jacobi, construct_ads, lower_central_series, unit
from solvco.scalar import ONE, ZERO


def _hull(name):
    g = corpus.get(name).algebra
    ads = construct_ads(g)
    return g, ads, unipotent_hull(g, ads, name)


def test_nilpotent_hull_is_identity():
    g, _, u = _hull("heisenberg3")
    assert u.underlying == g
    assert not is_abelian(u)[0]


def test_affine_line_hull_abelian():
    g, ads, u = _hull("aff_line")
    assert hull_bracket(g, ads, unit(2, 0), unit(2, 1)) == [ZERO, ZERO]
    assert is_abelian(u) == (True, None)
    assert splitting_shape(g, ads, u) == {"acting_dim": 1, "fiber_dim": 1, "fiber_weights": ["(1)"]}


def test_sawai_hull():
    g, ads, u = _hull("sawai8")
    d = u.diagonal
    z2, z3, e1 = (d.names.index(x) for x in ("zeta2", "zeta3", "eta1"))
    assert d.bracket_basis(z2, z3) == [ONE if k == e1 else ZERO for k in range(8)]
    ok, witness = is_abelian(u)
    assert not ok and witness is not None
    i, j = (d.names.index(x) for x in witness)
    assert any(d.bracket_basis(i, j))
    assert splitting_shape(g, ads, u) is None


def test_nakamura_hull():
    g, ads, u = _hull("nakamura")
    assert is_abelian(u) == (True, None)
    shape = splitting_shape(g, ads, u)
    assert shape["acting_dim"] == 2 and shape["fiber_dim"] == 4
    assert shape["fiber_weights"] == sorted(["(1, i)", "(1, -i)", "(-1, i)", "(-1, -i)"])


@pytest.mark.parametrize("name", ["heisenberg3", "sol3", "e2_rotation", "sawai8", "nakamura", "ot2", "torus2"])
def test_hull_invariants(name):
    g, ads, u = _hull(name)
    check_jacobi(u.underlying)
    assert not lower_central_series(u.underlying)[-1]
    assert u.underlying.dim == g.dim
    n = g.dim
    for i in range(n):
        for j in range(n):
            assert la.is_zero_matrix(ads.ads(hull_bracket(g, ads, unit(n, i), unit(n, j))))


@pytest.mark.parametrize("name", ["sol3", "e2_rotation", "sawai8", "nakamura", "ot2"])
def test_structure_constants_formula(name):
    # in the diagonal basis: mu^k_ij = c^k_ij - a_ij [k = j] + a_ji [k = i]
    g, ads, u = _hull(name)
    gd = ads.diagonal_algebra()
    a = ads.a_matrix()
    n = g.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                want = gd.c[i][j][k] - (a[i][j] if k == j else ZERO) + (a[j][i] if k == i else ZERO)
                assert u.diagonal.c[i][j][k] == want


def test_semisimple_split_equivalence():
    for e in corpus.default_corpus():
        ok, _ = is_abelian(SolvModel(e.algebra, name=e.name).hull())
        if e.semisimple_split:
            assert ok, e.name
        elif e.name in ("sawai8", "heisenberg3"):
            assert not ok, e.name


def test_hull_json_has_provenance():
    _, _, u = _hull("sol3")
    data = u.to_json()
    assert data["hull_of"] == "sol3"
    assert LieAlgebra.from_json(data).dim == 3
