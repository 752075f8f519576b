"""Twisted Chevalley-Eilenberg model A*(g, ad_s) and what is computed from it.

Everything is written in the diagonal basis X_1..X_n of ad_s: the weight-mu
slice is (wedge g*, d + mu^) with mu^ = sum_i mu(X_i) x_i, and the invariant
monomials are x_I (x) v_{lambda_I} with lambda_I the sum of the weights in I.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from . import linalg as la
from .errors import (
    MathError,
    NotComposable,
    NotSymplectic,
    OddDimension,
    QuasiIsoFails,
)
from .exterior import (
    CochainComplex,
    CohomologyBasis,
    Form,
    bits,
    ce_generators,
    change_dual_basis,
    degree,
    form_add,
    form_substitute,
    form_to_json,
    form_to_str,
    parse_form,
    wedge,
)
from .hull import HullAlgebra, is_abelian, unipotent_hull
from .lie import AdSData, LieAlgebra, WeightVector, construct_ads, substitute_ads
from .linalg import Assumptions
from .scalar import ONE, ZERO, S


@dataclass(frozen=True)
class CohomologyClass:
    weight: WeightVector
    degree: int
    coords: tuple

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass
class MinimalModel:
    names: list
    dy: list  # Form per generator
    weights: list

    def relations(self) -> dict:
        return {nm: form_to_str(f, self.names) for nm, f in zip(self.names, self.dy)}

    def to_json(self) -> dict:
        return {
            "generators": list(self.names),
            "differential": self.relations(),
            "morphism": {
                nm: f"x_{nm[2:]} (x) v[{w}]" for nm, w in zip(self.names, self.weights)
            },
        }


@dataclass
class MasseyResult:
    weight: WeightVector
    degree: int
    form: Form
    coords: list
    indeterminacy: list
    nonzero: bool


class SolvModel:
    """Direct sum over weights of twisted CE complexes for a solvable g."""

    def __init__(
        self,
        g: LieAlgebra,
        ads: AdSData | None = None,
        assumptions: Assumptions | None = None,
        name: str = "g",
    ):
        self.assumptions = assumptions if assumptions is not None else Assumptions()
        self.g = g
        self.name = name
        self.ads = ads if ads is not None else construct_ads(g, self.assumptions)
        self.gd = self.ads.diagonal_algebra()
        self.names = list(self.ads.diagonal_names)
        self.n = g.dim
        self.dx = ce_generators(self.gd.c, self.n)
        self.weights = list(self.ads.weights)
        self.vcoords = [self.ads.v_coords(x) for x in self.ads.diagonal_basis]
        self._slices: dict = {}
        self._coh: dict = {}
        self._hull: HullAlgebra | None = None
        self._subsets = None
        # generator i of the input dual basis as a form in the diagonal dual basis
        self.input_to_diag = [
            {1 << k: v[i] for k, v in enumerate(self.ads.diagonal_basis) if v[i]}
            for i in range(self.n)
        ]

    # -- weights
    def weight_zero(self) -> WeightVector:
        return WeightVector.zero(self.ads.dimV)

    def mono_weight(self, mask: int) -> WeightVector:
        w = self.weight_zero()
        for i in bits(mask):
            w = w + self.weights[i]
        return w

    def subset_weights(self) -> list:
        """Distinct subset sums of the weights, with one representative subset each."""
        if self._subsets is None:
            found = {self.weight_zero(): 0}
            for i, lam in enumerate(self.weights):
                for w, m in list(found.items()):
                    nw = w + lam
                    if nw not in found:
                        found[nw] = m | (1 << i)
            self._subsets = sorted(found.items(), key=lambda wm: (not wm[0].is_zero(), wm[0].sort_key()))
        return self._subsets

    def weight_label(self, w: WeightVector) -> str:
        for u, m in self.subset_weights():
            if u == w:
                if not m:
                    return "0"
                return "+".join(f"w({self.names[i]})" for i in bits(m))
        return str(w)

    def twist(self, w: WeightVector) -> list:
        return [w(c) for c in self.vcoords]

    # -- complexes
    def twisted_slice(self, w: WeightVector) -> CochainComplex:
        if w not in self._slices:
            self._slices[w] = CochainComplex(
                self.n, self.dx, self.twist(w), assumptions=self.assumptions, label=w
            )
        return self._slices[w]

    def cohomology(self, w: WeightVector) -> CohomologyBasis:
        if w not in self._coh:
            self._coh[w] = self.twisted_slice(w).cohomology()
        return self._coh[w]

    def total_cohomology(self) -> list:
        return [(w, self.cohomology(w)) for w, _ in self.subset_weights()]

    def total_betti(self) -> list:
        out = [0] * (self.n + 1)
        for _, coh in self.total_cohomology():
            out = [a + b for a, b in zip(out, coh.dims)]
        return out

    def ce_cohomology(self) -> CohomologyBasis:
        """Untwisted CE cohomology of g."""
        return self.cohomology(self.weight_zero())

    # -- hull and minimal model
    def hull(self) -> HullAlgebra:
        if self._hull is None:
            self._hull = unipotent_hull(self.g, self.ads, self.name)
        return self._hull

    def invariant_subdga(self) -> MinimalModel:
        n = self.n
        a = self.ads.a_matrix()
        c = self.gd.c
        dy = []
        for k in range(n):
            f: Form = {}
            for i in range(n):
                for j in range(i + 1, n):
                    if c[i][j][k]:
                        f = form_add(f, {(1 << i) | (1 << j): -c[i][j][k]})
            for i in range(n):
                if i != k and a[i][k]:
                    # a_ik y_i ^ y_k
                    sign = ONE if i < k else -ONE
                    f = form_add(f, {(1 << i) | (1 << k): sign * a[i][k]})
            dy.append(f)
        names = [f"y_{nm}" for nm in self.names]
        cx = CochainComplex(n, dy, assumptions=self.assumptions)  # asserts d^2 = 0
        hull_dx = ce_generators(self.hull().diagonal.c, n)
        if dy != hull_dx:
            raise MathError("invariant sub-DGA differs from the CE complex of the hull")
        del cx
        return MinimalModel(names, dy, [str(w) for w in self.weights])

    def hull_complex(self, allowed=None) -> CochainComplex:
        return CochainComplex(
            self.n, ce_generators(self.hull().diagonal.c, self.n), allowed=allowed,
            assumptions=self.assumptions,
        )

    def push_forward(self, form: Form) -> dict:
        """Image of a hull cochain under y_I -> x_I (x) v_{lambda_I}, split by weight."""
        out: dict = {}
        for m, c in form.items():
            w = self.mono_weight(m)
            out.setdefault(w, {})[m] = c
        return out

    def verify_quasi_iso(self) -> dict:
        hull_coh = self.hull_complex().cohomology()
        model = self.total_betti()
        if hull_coh.dims != model:
            raise QuasiIsoFails(f"dimension mismatch: hull {hull_coh.dims} vs model {model}")
        order = [w for w, _ in self.subset_weights()]
        offsets, total = {}, 0
        ranks = []
        for p in range(self.n + 1):
            offs, t = {}, 0
            for w in order:
                offs[w] = t
                t += self.cohomology(w).dims[p]
            rows = []
            for rep in hull_coh.reps[p]:
                vec = [ZERO] * t
                for w, part in self.push_forward(rep).items():
                    coh = self.cohomology(w)
                    if self.twisted_slice(w).apply(part):
                        raise QuasiIsoFails("pushed-forward cocycle is not closed")
                    for k, x in enumerate(coh.project(part, p, check=False)):
                        vec[offs[w] + k] = x
                rows.append(vec)
            r = la.rank(rows, self.assumptions) if rows else 0
            if r != t:
                raise QuasiIsoFails(f"degree {p}: induced map has rank {r}, expected {t}")
            ranks.append(r)
        return {"hull_betti": hull_coh.dims, "model_betti": model, "isomorphism": True, "ranks": ranks}

    # -- classes and products
    def basis_classes(self, p: int, w: WeightVector | None = None) -> list:
        ws = [w] if w is not None else [u for u, _ in self.subset_weights()]
        out = []
        for u in ws:
            k = self.cohomology(u).dims[p]
            for t in range(k):
                out.append(CohomologyClass(u, p, tuple(ONE if s == t else ZERO for s in range(k))))
        return out

    def class_of(self, w: WeightVector, form: Form) -> CohomologyClass:
        p = _homogeneous_degree(form)
        coh = self.cohomology(w)
        return CohomologyClass(w, p, tuple(coh.project(form, p)))

    def representative(self, cls: CohomologyClass) -> Form:
        return self.cohomology(cls.weight).form_of(cls.degree, cls.coords)

    def cup(self, a: CohomologyClass, b: CohomologyClass, ra: Form | None = None, rb: Form | None = None) -> CohomologyClass:
        ra = self.representative(a) if ra is None else ra
        rb = self.representative(b) if rb is None else rb
        w = a.weight + b.weight
        p = a.degree + b.degree
        if p > self.n:
            return CohomologyClass(w, p, ())
        prod = wedge(ra, rb)
        return CohomologyClass(w, p, tuple(self.cohomology(w).project(prod, p)))

    def massey_triple(
        self,
        a: CohomologyClass,
        b: CohomologyClass,
        c: CohomologyClass,
        reps: Sequence[Form] | None = None,
    ) -> MasseyResult:
        ra, rb, rc = reps if reps is not None else [self.representative(x) for x in (a, b, c)]
        if not self.cup(a, b, ra, rb).is_zero() or not self.cup(b, c, rb, rc).is_zero():
            raise NotComposable("Massey product needs a.b = 0 and b.c = 0")
        wab, wbc = a.weight + b.weight, b.weight + c.weight
        x = self.cohomology(wab).preimage(wedge(ra, rb), a.degree + b.degree)
        y = self.cohomology(wbc).preimage(wedge(rb, rc), b.degree + c.degree)
        if x is None or y is None:
            raise MathError("could not solve for a defining system")
        sign = -ONE if a.degree % 2 else ONE
        m = form_add(wedge(x, rc), wedge(ra, y), -sign)
        w = a.weight + b.weight + c.weight
        p = a.degree + b.degree + c.degree - 1
        coords = list(self.cohomology(w).project(m, p)) if p <= self.n else []
        indet = []
        q = b.degree + c.degree - 1
        for h in self.basis_classes(q, wbc) if q <= self.n else []:
            indet.append(list(self.cup(a, h, ra, None).coords))
        q = a.degree + b.degree - 1
        for h in self.basis_classes(q, wab) if q <= self.n else []:
            indet.append(list(self.cup(h, c, None, rc).coords))
        indet = [v for v in indet if any(v)]
        base = la.rank(indet, self.assumptions) if indet else 0
        with_m = la.rank(indet + [coords], self.assumptions) if any(coords) else base
        return MasseyResult(w, p, m, coords, indet, with_m > base)

    def formality_verdict(self, search_bound: int = 2000, search_when_abelian: bool = False) -> dict:
        ok, witness = is_abelian(self.hull())
        report = {
            "formal": ok,
            "decided_by": "(B) unipotent hull abelian" if ok else "(B) unipotent hull not abelian",
            "hull_abelian": ok,
            "hull_witness": list(witness) if witness else None,
            "massey_witness": None,
        }
        if ok and not search_when_abelian:
            return report
        found = self.search_massey(search_bound)
        if found is not None:
            report["massey_witness"] = found
        return report

    def search_massey(self, bound: int) -> dict | None:
        h1 = self.basis_classes(1)
        tried = 0
        for a, b, c in product(h1, repeat=3):
            if tried >= bound:
                break
            tried += 1
            try:
                res = self.massey_triple(a, b, c)
            except NotComposable:
                continue
            if res.nonzero:
                return {
                    "classes": [self.class_to_json(x) for x in (a, b, c)],
                    "product": form_to_json(res.form, self.names),
                    "product_weight": self.weight_label(res.weight),
                }
        return None

    def class_to_json(self, cls: CohomologyClass) -> dict:
        return {
            "weight": self.weight_label(cls.weight),
            "degree": cls.degree,
            "representative": form_to_json(self.representative(cls), self.names),
        }

    # -- hard Lefschetz
    def parse_form(self, text: str, basis: str = "input") -> Form:
        """Parse a form written in input basis names (or diagonal ones) into the diagonal basis."""
        if basis == "diagonal":
            return parse_form(text, self.names)
        return change_dual_basis(parse_form(text, self.g.names), self.input_to_diag)

    def hard_lefschetz(self, omega: Form) -> dict:
        if self.n % 2:
            raise OddDimension(f"dimension {self.n} is odd")
        half = self.n // 2
        if omega and _homogeneous_degree(omega) != 2:
            raise NotSymplectic("omega must be a 2-form")
        zero = self.weight_zero()
        if any(not self.mono_weight(m).is_zero() for m in omega):
            raise NotSymplectic("omega is not of weight zero")
        if self.twisted_slice(zero).apply(omega):
            raise NotSymplectic("omega is not closed")
        powers = [{0: ONE}]
        for _ in range(half):
            powers.append(wedge(powers[-1], omega))
        if not powers[half]:
            raise NotSymplectic("omega^n vanishes")
        failures, table = [], []
        for w, _ in self.subset_weights():
            coh = self.cohomology(w)
            for i in range(half + 1):
                src, tgt = coh.dims[i], coh.dims[self.n - i]
                if not src and not tgt:
                    continue
                cols = [
                    coh.project(wedge(powers[half - i], rep), self.n - i, check=False)
                    for rep in coh.reps[i]
                ]
                mat = la.transpose(cols) if cols and tgt else []
                r = la.rank(mat, self.assumptions) if mat else 0
                iso = src == tgt and r == src
                table.append({"weight": self.weight_label(w), "degree": i, "source_dim": src, "target_dim": tgt, "rank": r, "iso": iso})
                if not iso:
                    entry = {"weight": self.weight_label(w), "degree": i, "source_dim": src, "target_dim": tgt, "rank": r}
                    if r < src:
                        ker = la.nullspace(mat, self.assumptions, ncols=src) if mat else [
                            [ONE if s == t else ZERO for s in range(src)] for t in range(src)
                        ]
                        entry["kernel_witness"] = form_to_json(coh.form_of(i, ker[0]), self.names)
                    failures.append(entry)
        return {"hard_lefschetz": not failures, "failures": failures, "table": table}

    def specialize(self, bindings: Mapping[str, object]) -> "SolvModel":
        b = {k: S(v) for k, v in bindings.items()}
        return SolvModel(self.g.substitute(b), substitute_ads(self.ads, b), name=self.name)


def _homogeneous_degree(form: Form) -> int:
    ds = {degree(m) for m in form}
    if len(ds) > 1:
        raise MathError("form is not homogeneous")
    return ds.pop() if ds else 0


def hard_lefschetz_report(model: SolvModel, omega_text: str, bindings: Mapping | None = None) -> dict:
    """Generic verdict plus, when bindings are given, the verdict at those values."""
    omega = model.parse_form(omega_text)
    out = {"generic": model.hard_lefschetz(omega), "assumptions": model.assumptions.as_strings()}
    if bindings:
        spec = model.specialize(bindings)
        b = {k: S(v) for k, v in bindings.items()}
        out["bound"] = spec.hard_lefschetz(form_substitute(omega, b))
        out["bindings"] = {k: str(v) for k, v in sorted(b.items())}
    return out
