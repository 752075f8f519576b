"""Command-line front end: ``solvco <command> [input.json] [flags]``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import corpus
from .cdga import SolvModel
from .errors import DimensionTooLarge, MathError, ParseError, SolvcoError
from .exterior import form_substitute, form_to_json, form_to_str
from .io import AnalysisInput, bind, dump_input, from_corpus, read_input
from .lattice import criterion_C, criterion_D, untwisted_betti
from .lie import validate

TAGS = {
    "quasi_isomorphism": "hull cochains -> sum of twisted weight slices",
    "formality": "formal iff the unipotent hull is abelian",
    "hard_lefschetz": "cup with [omega]^(n-i) on the twisted model",
    "criterion_C": "every nonzero subset weight restricts nontrivially to the lattice",
    "criterion_D": "no nonzero subset weight is unitary",
    "untwisted_betti": "invariant subcomplex over characters trivial on the lattice",
    "massey": "triple Massey product modulo indeterminacy",
}


def max_dim() -> int:
    raw = os.environ.get("SOLVCO_MAX_DIM", "12")
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"SOLVCO_MAX_DIM must be an integer, got {raw!r}") from None


def parse_bindings(text: str | None) -> dict:
    out: dict = {}
    if not text:
        return out
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ParseError(f"binding {part!r} is not of the form name=value")
        k, v = (x.strip() for x in part.split("=", 1))
        if not k or not v:
            raise ParseError(f"binding {part!r} is incomplete")
        out[k] = v
    return out


class Session:
    """A bound input plus its lazily built model."""

    def __init__(self, inp: AnalysisInput, bindings: dict | None = None, omega: str | None = None):
        cap = max_dim()
        if inp.algebra.dim > cap:
            raise DimensionTooLarge(f"dimension {inp.algebra.dim} exceeds SOLVCO_MAX_DIM={cap}")
        self.source = inp
        if omega is not None:
            inp = AnalysisInput(inp.name, inp.algebra, inp.spec, omega, inp.derived)
        self.bound, self.bindings = bind(inp, bindings or {})
        self.omega_text = inp.omega
        self._model = None

    @property
    def model(self) -> SolvModel:
        if self._model is None:
            self._model = SolvModel(self.bound.algebra, name=self.bound.name)
        return self._model

    def omega_form(self):
        if self.omega_text is None:
            raise ParseError("no symplectic form given (use --omega)")
        return form_substitute(self.model.parse_form(self.omega_text), self.bindings)

    def header(self) -> dict:
        return {
            "name": self.bound.name,
            "input": dump_input(self.source),
            "bindings": {k: str(v) for k, v in sorted(self.bindings.items())},
        }


# -- report pieces


def validation_section(s: Session) -> dict:
    return validate(s.bound.algebra).to_json()


def cohomology_table(m: SolvModel) -> list:
    rows = []
    for w, coh in m.total_cohomology():
        if any(coh.dims):
            rows.append({"weight": m.weight_label(w), "value": str(w), "betti": coh.dims})
    return rows


def betti_section(s: Session) -> dict:
    m = s.model
    out = {
        "total_betti": m.total_betti(),
        "ce_betti": m.ce_cohomology().dims,
        "by_weight": cohomology_table(m),
    }
    spec = s.bound.spec
    if spec is not None and spec.lattice is not None:
        out["lattice"] = lattice_section(m, spec)
    return out


def lattice_section(m: SolvModel, spec) -> dict:
    c = criterion_C(m, spec)
    d = criterion_D(m)
    return {
        "untwisted_betti": {"tag": TAGS["untwisted_betti"], "betti": untwisted_betti(m, spec)},
        "criterion_C": {"tag": TAGS["criterion_C"], **c},
        "criterion_D": {"tag": TAGS["criterion_D"], **d},
    }


def model_section(s: Session) -> dict:
    m = s.model
    qi = m.verify_quasi_iso()
    return {
        "weights": m.ads.to_json(),
        "hull": m.hull().to_json(),
        "minimal_model": m.invariant_subdga().to_json(),
        "quasi_isomorphism": {"tag": TAGS["quasi_isomorphism"], **qi},
    }


def formality_section(s: Session, search_bound: int = 2000) -> dict:
    return {"tag": TAGS["formality"], **s.model.formality_verdict(search_bound=search_bound)}


def lefschetz_section(s: Session, table: bool = False) -> dict:
    m = s.model
    omega = s.omega_form()
    res = m.hard_lefschetz(omega)
    out = {
        "tag": TAGS["hard_lefschetz"],
        "omega": form_to_str(omega, m.names),
        "hard_lefschetz": res["hard_lefschetz"],
        "failures": res["failures"],
        "failing_degrees": sorted({f["degree"] for f in res["failures"]}),
    }
    if table:
        out["table"] = res["table"]
    return out


def massey_section(s: Session, classes: str) -> dict:
    m = s.model
    parts = [p.strip() for p in classes.split(",")]
    if len(parts) != 3 or not all(parts):
        raise ParseError("--classes needs three comma-separated forms, e.g. zeta2,zeta3,zeta3")
    cls, reps = [], []
    for text in parts:
        form = m.parse_form(text, basis="diagonal")
        form = form_substitute(form, s.bindings)
        if not form:
            raise ParseError(f"class {text!r} is the zero form")
        ws = {m.mono_weight(mono) for mono in form}
        if len(ws) != 1:
            raise ParseError(f"class {text!r} mixes weights")
        w = ws.pop()
        if m.twisted_slice(w).apply(form):
            raise MathError(f"{text!r} is not closed in its weight slice {m.weight_label(w)}")
        cls.append(m.class_of(w, form))
        reps.append(form)
    res = m.massey_triple(*cls, reps=reps)
    return {
        "tag": TAGS["massey"],
        "classes": [m.class_to_json(c) for c in cls],
        "weight": m.weight_label(res.weight),
        "degree": res.degree,
        "product": form_to_json(res.form, m.names),
        "coordinates": [str(x) for x in res.coords],
        "indeterminacy_rank": len(res.indeterminacy),
        "nonzero": res.nonzero,
    }


def analyze(s: Session, search_bound: int = 2000) -> dict:
    out = s.header()
    out["validation"] = validation_section(s)
    out.update(model_section(s))
    out["cohomology"] = betti_section(s)
    out["formality"] = formality_section(s, search_bound)
    if s.omega_text is not None:
        out["hard_lefschetz"] = lefschetz_section(s)
    out["assumptions"] = s.model.assumptions.as_strings()
    return out


# -- rendering


def _cell(x) -> str:
    if isinstance(x, list):
        return "(" + ", ".join(_cell(y) for y in x) + ")"
    if isinstance(x, dict):
        return json.dumps(x, sort_keys=True)
    if x is None:
        return "-"
    return str(x)


def _table(rows: list, indent: str) -> list:
    keys = []
    for r in rows:
        keys.extend(k for k in r if k not in keys)
    cells = [[_cell(r.get(k)) for k in keys] for r in rows]
    widths = [max(len(k), *(len(c[t]) for c in cells)) for t, k in enumerate(keys)]
    line = lambda vals: indent + "  ".join(v.ljust(w) for v, w in zip(vals, widths)).rstrip()
    return [line(keys), line(["-" * w for w in widths])] + [line(c) for c in cells]


def render_text(obj, indent: str = "") -> str:
    lines = []
    for key, val in obj.items():
        if isinstance(val, dict) and val:
            lines.append(f"{indent}{key}:")
            lines.append(render_text(val, indent + "  "))
        elif isinstance(val, list) and val and all(isinstance(v, dict) for v in val):
            lines.append(f"{indent}{key}:")
            lines.extend(_table(val, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {_cell(val)}")
    return "\n".join(lines)


def emit(report: dict, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(render_text(report) + "\n")


# -- argument handling


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text tables")
    common.add_argument("--bind", default=None, help="parameter bindings, e.g. a1=1,a2=2")

    ap = _Parser(prog="solvco", description="Exact cohomology, formality and hard Lefschetz for solvable Lie algebras.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", help="Lie algebra or solvmanifold JSON file")
        return p

    with_input("validate", "check Jacobi, solvability, nilpotency")
    p = with_input("analyze", "full pipeline report")
    p.add_argument("--omega", default=None, help="symplectic form in input basis names")
    p.add_argument("--search-bound", type=int, default=2000)
    with_input("betti", "cohomology of the twisted model, lattice Betti numbers")
    with_input("minimal-model", "weights, unipotent hull and minimal model")
    p = with_input("formality", "formality verdict and Massey witness")
    p.add_argument("--search-bound", type=int, default=2000)
    p = with_input("lefschetz", "hard Lefschetz test for a symplectic form")
    p.add_argument("--omega", default=None, help="symplectic form in input basis names")
    p = with_input("massey", "triple Massey product of three classes")
    p.add_argument("--classes", required=True, help="three forms in the diagonal basis, e.g. zeta2,zeta3,zeta3")

    p = sub.add_parser("examples", parents=[common], help="built-in examples")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--run", metavar="NAME")
    g.add_argument("--show", metavar="NAME", help="print the input JSON of an example")
    p.add_argument("--s", type=int, default=None, help="size for torus/ot families")
    p.add_argument("--omega", default=None)
    p.add_argument("--search-bound", type=int, default=2000)
    return ap


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        report = dispatch(args)
        # example inputs are meant to be saved and fed back in
        emit(report, args.json or getattr(args, "show", None) is not None)
        return 0
    except ParseError as exc:
        print(f"solvco: error: {exc}", file=sys.stderr)
        return 1
    except SolvcoError as exc:
        print(f"solvco: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def dispatch(args) -> dict:
    bindings = parse_bindings(args.bind)
    if args.command == "examples":
        if args.list:
            return {"examples": [{"name": nm, "description": _describe(nm)} for nm in corpus.names()]}
        name = args.show or args.run
        entry = corpus.get(name, args.s)
        if args.show:
            return dump_input(from_corpus(entry))
        s = Session(from_corpus(entry), bindings, args.omega)
        return analyze(s, args.search_bound)
    s = Session(read_input(args.input), bindings, getattr(args, "omega", None))
    if args.command == "validate":
        return {**s.header(), "validation": validation_section(s)}
    if args.command == "analyze":
        return analyze(s, args.search_bound)
    out = s.header()
    if args.command == "betti":
        out["cohomology"] = betti_section(s)
    elif args.command == "minimal-model":
        out.update(model_section(s))
    elif args.command == "formality":
        out["formality"] = formality_section(s, args.search_bound)
    elif args.command == "lefschetz":
        out["hard_lefschetz"] = lefschetz_section(s, table=True)
    elif args.command == "massey":
        out["massey"] = massey_section(s, args.classes)
    out["assumptions"] = s.model.assumptions.as_strings()
    return out


def _describe(name: str) -> str:
    if "{" in name:
        return corpus.get(name.split("{")[0], 2).description + " (size via --s)"
    return corpus.get(name).description


def main() -> None:
    sys.exit(run())
