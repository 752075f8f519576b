"""Semidirect products R^n x_phi R^m with a lattice: character restriction and Betti numbers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import linalg as la
from .cdga import SolvModel
from .errors import (
    NonCommutingAction,
    ParseError,
    UndecidableWithParameters,
    UnsupportedTranscendence,
)
from .exterior import bits
from .lie import LieAlgebra, WeightVector
from .scalar import PI, ZERO, ScalarValue, S, split_real_imag


@dataclass
class SolvmanifoldSpec:
    n: int
    m: int
    derivations: list  # n matrices m x m
    lattice: list  # generators in R^n coordinates
    parameters: list = field(default_factory=list)  # (name, kind)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "derivations": [[[str(x) for x in row] for row in d] for d in self.derivations],
            "lattice": None if self.lattice is None else [[str(x) for x in v] for v in self.lattice],
            "parameters": [{"name": p, "kind": k} for p, k in self.parameters],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SolvmanifoldSpec":
        try:
            n, m = int(data["n"]), int(data["m"])
            ders = [la.matrix(d) for d in data["derivations"]]
            lat = data.get("lattice")
            lat = None if lat is None else [[S(x) for x in v] for v in lat]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed solvmanifold spec: {exc}") from None
        if len(ders) != n or any(len(d) != m or any(len(r) != m for r in d) for d in ders):
            raise ParseError(f"need {n} derivations of size {m}x{m}")
        if lat is not None and any(len(v) != n for v in lat):
            raise ParseError(f"lattice generators must have {n} coordinates")
        params = []
        for p in data.get("parameters", []):
            params.append((p, "real") if isinstance(p, str) else (p["name"], p.get("kind", "real")))
        return cls(n, m, ders, lat, params)

    def substitute(self, bindings) -> "SolvmanifoldSpec":
        b = {k: S(v) for k, v in bindings.items()}
        return SolvmanifoldSpec(
            self.n, self.m,
            [la.substitute_matrix(d, b) for d in self.derivations],
            None if self.lattice is None else [[x.substitute(b) for x in v] for v in self.lattice],
            [(p, k) for p, k in self.parameters if p not in b],
        )

    def kinds(self) -> dict:
        return dict(self.parameters)


def assemble_algebra(spec: SolvmanifoldSpec) -> LieAlgebra:
    """[t_i, x_j] = D_i x_j; both factors abelian."""
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            if not la.is_zero_matrix(la.commutator(spec.derivations[i], spec.derivations[j])):
                raise NonCommutingAction(f"derivations D{i + 1} and D{j + 1} do not commute")
    n, m = spec.n, spec.m
    names = [f"t{i + 1}" for i in range(n)] + [f"x{j + 1}" for j in range(m)]
    br = {}
    for i, d in enumerate(spec.derivations):
        for j in range(m):
            coeffs = {n + k: d[k][j] for k in range(m) if d[k][j]}
            if coeffs:
                br[(i, n + j)] = coeffs
    return LieAlgebra(names, br, spec.parameters)


def character_on_lattice(w: WeightVector, model: SolvModel, spec: SolvmanifoldSpec) -> list:
    """(re, pi_coeff) per generator, meaning w(gamma) = re + pi_coeff * pi * i."""
    out = []
    kinds = spec.kinds()
    for gen in spec.lattice:
        vec = list(gen) + [ZERO] * spec.m
        val = w(model.ads.v_coords(vec))
        re, im = split_real_imag(val, kinds)
        if "pi" in re.variables():
            raise UnsupportedTranscendence(f"real part {re} involves pi")
        pc = im / PI
        if "pi" in pc.variables():
            raise UnsupportedTranscendence(f"imaginary part {im} is not a multiple of pi")
        out.append((re, pc))
    return out


def is_trivial_on_lattice(cv: Sequence) -> bool:
    """exp(w(gamma)) = 1 for every generator."""
    if any(re for re, _ in cv):
        return False
    for _, pc in cv:
        if not pc.is_constant():
            raise UndecidableWithParameters(f"pi coefficient {pc} depends on parameters")
        c = pc.constant()
        if c.im or c.re.denominator != 1 or c.re.numerator % 2:
            return False
    return True


def trivial_weights(model: SolvModel, spec: SolvmanifoldSpec) -> list:
    """A_Gamma: subset-sum weights whose character is trivial on the lattice."""
    out = []
    for w, m in model.subset_weights():
        if w.is_zero() or is_trivial_on_lattice(character_on_lattice(w, model, spec)):
            out.append((w, m))
    return out


def untwisted_betti(model: SolvModel, spec: SolvmanifoldSpec) -> list:
    """Cohomology of the sub-DGA of hull monomials whose weight lies in A_Gamma."""
    good = {w for w, _ in trivial_weights(model, spec)}
    allowed = [m for m in range(1 << model.n) if model.mono_weight(m) in good]
    return model.hull_complex(allowed=allowed).cohomology().dims


def untwisted_betti_by_slices(model: SolvModel, spec: SolvmanifoldSpec) -> list:
    """Second route: sum of twisted slice cohomologies over A_Gamma."""
    out = [0] * (model.n + 1)
    for w, _ in trivial_weights(model, spec):
        out = [a + b for a, b in zip(out, model.cohomology(w).dims)]
    return out


def _subset_names(model: SolvModel, mask: int) -> list:
    return [model.names[i] for i in bits(mask)]


def _nonempty_subsets(model: SolvModel):
    """(weight, mask) with nonzero weight, smallest subsets first, each weight once."""
    seen = set()
    for mask in sorted(range(1, 1 << model.n), key=lambda m: (bin(m).count("1"), m)):
        w = model.mono_weight(mask)
        if w.is_zero() or w in seen:
            continue
        seen.add(w)
        yield w, mask


def criterion_C(model: SolvModel, spec: SolvmanifoldSpec) -> dict:
    """Every nonzero subset-sum weight restricts nontrivially to the lattice."""
    offending = None
    for w, m in _nonempty_subsets(model):
        if is_trivial_on_lattice(character_on_lattice(w, model, spec)):
            offending = {"subset": _subset_names(model, m), "weight": str(w)}
            break
    report = {"passes": offending is None, "offending": offending}
    lattice_betti = untwisted_betti(model, spec)
    report["untwisted_betti"] = lattice_betti
    report["ce_betti"] = model.ce_cohomology().dims
    report["slice_betti"] = untwisted_betti_by_slices(model, spec)
    report["consistent"] = (lattice_betti == report["slice_betti"]) and (
        offending is not None or lattice_betti == report["ce_betti"]
    )
    return report


def criterion_D(model: SolvModel) -> dict:
    """No nonzero subset-sum weight is unitary (purely imaginary on V)."""
    kinds = model.g.kinds()
    for w, m in _nonempty_subsets(model):
        if not any(split_real_imag(v, kinds)[0] for v in w.values):
            return {"passes": False, "offending": {"subset": _subset_names(model, m), "weight": str(w)}}
    return {"passes": True, "offending": None}
