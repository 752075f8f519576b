"""Input files: a Lie algebra or a solvmanifold spec, plus optional form and metadata."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import CorpusEntry
from .errors import ParseError
from .exterior import parse_form
from .lattice import SolvmanifoldSpec, assemble_algebra
from .lie import LieAlgebra
from .scalar import S


@dataclass
class AnalysisInput:
    name: str
    algebra: LieAlgebra
    spec: SolvmanifoldSpec | None = None
    omega: str | None = None
    derived: dict = field(default_factory=dict)

    def parameter_names(self) -> set:
        names = set(self.algebra.kinds())
        if self.spec is not None:
            names |= set(self.spec.kinds())
            if self.spec.lattice is not None:
                for v in self.spec.lattice:
                    for x in v:
                        names |= x.variables()
        if self.omega:
            for c in parse_form(self.omega, self.algebra.names).values():
                names |= c.variables()
        names |= set(self.derived)
        names.discard("pi")
        return names


def load_input(data) -> AnalysisInput:
    if not isinstance(data, dict):
        raise ParseError("input must be a JSON object")
    name = str(data.get("name", "g"))
    omega = data.get("omega")
    if omega is not None and not isinstance(omega, str):
        raise ParseError("omega must be a string")
    derived = data.get("derived", {})
    if not isinstance(derived, dict):
        raise ParseError("derived must map parameter names to expressions")
    derived = {str(k): str(v) for k, v in derived.items()}
    if "derivations" in data:
        spec = SolvmanifoldSpec.from_json(data)
        return AnalysisInput(name, assemble_algebra(spec), spec, omega, derived)
    if "brackets" in data or "basis" in data or "dim" in data:
        return AnalysisInput(name, LieAlgebra.from_json(data), None, omega, derived)
    raise ParseError("input needs either 'brackets' (Lie algebra) or 'derivations' (solvmanifold)")


def dump_input(inp: AnalysisInput) -> dict:
    out = inp.spec.to_json() if inp.spec is not None else inp.algebra.to_json()
    out["name"] = inp.name
    if inp.omega is not None:
        out["omega"] = inp.omega
    if inp.derived:
        out["derived"] = dict(sorted(inp.derived.items()))
    return out


def read_input(path: str) -> AnalysisInput:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return load_input(data)


def from_corpus(entry: CorpusEntry) -> AnalysisInput:
    return AnalysisInput(entry.name, entry.algebra, entry.spec, entry.omega, dict(entry.derived))


def bind(inp: AnalysisInput, bindings: dict) -> tuple:
    """Apply parameter bindings before analysis; returns (bound input, free bindings)."""
    known = inp.parameter_names()
    unknown = sorted(set(bindings) - known)
    if unknown:
        raise ParseError(f"unknown parameter(s) {', '.join(unknown)}; known: {', '.join(sorted(known)) or 'none'}")
    b = {k: S(v) for k, v in bindings.items()}
    free = {k: v for k, v in b.items() if k not in inp.derived}
    for k, expr in inp.derived.items():
        if k in b:
            val = S(expr).substitute(free)
            if val != b[k]:
                raise ParseError(f"binding {k}={b[k]} contradicts {k} = {expr} (= {val})")
    if inp.spec is not None:
        spec = inp.spec.substitute(free)
        algebra = assemble_algebra(spec)
    else:
        spec = None
        algebra = inp.algebra.substitute({k: v for k, v in free.items() if k in inp.algebra.kinds()})
    return AnalysisInput(inp.name, algebra, spec, inp.omega, {}), free
