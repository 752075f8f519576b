import json
from pathlib import Path

import pytest

from solvco import corpus
from solvco.cdga import SolvModel
from solvco.errors import NonCommutingAction, ParseError, UndecidableWithParameters, UnsupportedTranscendence
from solvco.lattice import (
    SolvmanifoldSpec,
    assemble_algebra,
    character_on_lattice,
    criterion_C,
    criterion_D,
    is_trivial_on_lattice,
    trivial_weights,
    untwisted_betti,
    untwisted_betti_by_slices,
)
from solvco.lie import WeightVector
from solvco.scalar import ONE, S, ZERO

ORACLE = json.loads((Path(__file__).parent / "data" / "oracle_values.json").read_text())


def rotation_spec(lattice) -> SolvmanifoldSpec:
    return SolvmanifoldSpec(1, 2, [[[ZERO, S("-pi")], [S("pi"), ZERO]]], [[S(x) for x in v] for v in lattice])


def model_of(spec: SolvmanifoldSpec) -> SolvModel:
    return SolvModel(assemble_algebra(spec))


def test_assemble_semidirect_product():
    spec = corpus.get("heisenberg3").spec
    g = assemble_algebra(spec)
    assert g.names == ["t1", "x1", "x2"]
    assert g.bracket_basis(0, 1) == [ZERO, ZERO, ONE]


def test_noncommuting_derivations_rejected():
    d1 = [[S(1), ZERO], [ZERO, ZERO]]
    d2 = [[ZERO, S(1)], [ZERO, ZERO]]
    with pytest.raises(NonCommutingAction):
        assemble_algebra(SolvmanifoldSpec(2, 2, [d1, d2], None))


def test_character_values():
    spec = rotation_spec([[1]])
    m = model_of(spec)
    w = WeightVector([S("pi*i")])
    assert character_on_lattice(w, m, spec) == [(ZERO, ONE)]
    assert not is_trivial_on_lattice([(ZERO, ONE)])
    assert is_trivial_on_lattice([(ZERO, S(2)), (ZERO, S(-4))])
    assert not is_trivial_on_lattice([(S(1), S(2))])
    assert not is_trivial_on_lattice([(ZERO, S("1/2"))])
    assert not is_trivial_on_lattice([(ZERO, S("2*i"))])


def test_parameter_dependent_character_is_refused():
    with pytest.raises(UndecidableWithParameters):
        is_trivial_on_lattice([(ZERO, S("c1"))])
    spec = rotation_spec([["t0"]])
    m = model_of(spec)
    with pytest.raises(UndecidableWithParameters):
        criterion_C(m, spec)


def test_pi_in_real_part_is_refused():
    spec = corpus.get("sol3").spec
    spec = SolvmanifoldSpec(spec.n, spec.m, spec.derivations, [[S("pi")]])
    m = model_of(spec)
    w = next(w for w in m.weights if not w.is_zero())
    with pytest.raises(UnsupportedTranscendence):
        character_on_lattice(w, m, spec)


def test_rotation_criteria():
    entry = corpus.get("e2_rotation")
    m = SolvModel(entry.algebra)
    c = criterion_C(m, entry.spec)
    assert c["passes"] and c["consistent"]
    assert c["untwisted_betti"] == c["ce_betti"] == c["slice_betti"] == [1, 1, 1, 1]
    d = criterion_D(m)
    assert not d["passes"]
    assert S(d["offending"]["weight"].strip("()")) in (S("pi*i"), S("-pi*i"))
    assert len(d["offending"]["subset"]) == 1


def test_sol3_criteria():
    entry = corpus.get("sol3")
    m = SolvModel(entry.algebra)
    assert criterion_D(m)["passes"]
    c = criterion_C(m, entry.spec)
    assert c["passes"] and c["untwisted_betti"] == ORACLE["sol3"]["ce_betti"]


@pytest.mark.parametrize("name", ["heisenberg3", "torus2", "torus3", "e2_rotation", "ot2"])
def test_lattice_betti_matches_brute_force(name):
    entry = corpus.get(name)
    m = SolvModel(entry.algebra)
    assert untwisted_betti(m, entry.spec) == ORACLE[name]["lattice_betti"]
    assert untwisted_betti_by_slices(m, entry.spec) == ORACLE[name]["lattice_betti"]


def test_ot2_vanishing_middle_degree():
    entry = corpus.get("ot2")
    m = SolvModel(entry.algebra)
    b = untwisted_betti(m, entry.spec)
    assert b == [1, 2, 1, 0, 1, 2, 1] and b[3] == 0
    assert criterion_C(m, entry.spec)["passes"]


def test_monotonicity_on_nested_lattices():
    # 4Z in 2Z in Z: each enlargement can only shrink the set of trivial weights
    chain = [[[4]], [[4], [2]], [[4], [2], [1]]]
    prev_weights, prev_betti = None, None
    for lat in chain:
        spec = rotation_spec(lat)
        m = model_of(spec)
        ws = {w for w, _ in trivial_weights(m, spec)}
        b = untwisted_betti(m, spec)
        assert b == untwisted_betti_by_slices(m, spec)
        if prev_weights is not None:
            assert ws <= prev_weights
            assert all(x <= y for x, y in zip(b, prev_betti))
        prev_weights, prev_betti = ws, b
    assert prev_betti == [1, 1, 1, 1]
    assert untwisted_betti(model_of(rotation_spec([[2]])), rotation_spec([[2]])) == [1, 3, 3, 1]


def test_spec_json_round_trip():
    for name in ("heisenberg3", "sol3", "e2_rotation", "ot2"):
        spec = corpus.get(name).spec
        again = SolvmanifoldSpec.from_json(json.loads(json.dumps(spec.to_json())))
        assert again.to_json() == spec.to_json()
        assert assemble_algebra(again) == assemble_algebra(spec)


def test_spec_json_errors():
    with pytest.raises(ParseError):
        SolvmanifoldSpec.from_json({"n": 1, "m": 2, "derivations": [[[0, 0]]], "lattice": [[1]]})
    with pytest.raises(ParseError):
        SolvmanifoldSpec.from_json({"n": 1, "m": 1, "derivations": [[[0]]], "lattice": [[1, 2]]})
    with pytest.raises(ParseError):
        SolvmanifoldSpec.from_json({"m": 1})
