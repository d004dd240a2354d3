"""End-to-end analysis of one algebra and its report."""

from __future__ import annotations

import json
from collections.abc import Callable
from dataclasses import dataclass

from ..errors import InputError, LieExpError, ValidationError
from ..exactlin import Subspace
from ..exprad import (
    SplitData,
    exponential_radical,
    minimality_candidates,
    probe_minimality,
    semisimple_or_zero,
    validate_split,
)
from ..liecore import LieAlgebra, center, is_ideal, quotient, restrict, series
from ..oexp import NOTE_CARTAN_CHOICE, NOTE_V_CHOICE, length_profile, oexp_descriptor
from ..structure import classify, is_nilpotent, is_solvable, levi_subalgebra

__all__ = ["AnalysisReport", "analyze", "STANDING_ASSUMPTIONS"]

STANDING_ASSUMPTIONS = (
    "group-level hypotheses are assumed, not checked: G is connected and linear, "
    "and the solvable factor B is simply connected"
)
NOTE_NO_SPLIT = (
    "no split declared and g is not solvable: a reductive complement is not unique, "
    "so the descriptor stage is skipped; declare b and l to obtain it"
)
NOTE_DEFAULT_SPLIT = "no split declared; g is solvable, so b = g and l = 0"


def basis_block(g: LieAlgebra, u: Subspace) -> dict:
    return {
        "dim": u.dim,
        "basis": [g.pretty(v) for v in u.vectors],
        "vectors": [[c.to_json() for c in v] for v in u.vectors],
    }


def _series_block(g: LieAlgebra, kind: str, on: Subspace | None = None) -> dict:
    chain = series(g, on, kind)
    return {"dims": chain.dims(), "terms": [[g.pretty(v) for v in t.vectors] for t in chain.terms]}


def _input_echo(g: LieAlgebra, name: str, split: SplitData | None) -> dict:
    names = g.basis_names
    brackets = []
    for (i, j), v in sorted(g.structure_constants().items()):
        brackets.append({"lhs": names[i], "rhs": names[j], "value": g.pretty(v)})
    out = {"name": name, "dim": g.dim, "basis": list(names), "brackets": brackets}
    if split is not None:
        out["split"] = {
            "b": [g.pretty(v) for v in split.b.vectors],
            "l": [g.pretty(v) for v in split.l.vectors],
            "l_label": split.l_label,
        }
    return out


def _stage(label: str, fn: Callable, *args):
    """Run one stage, prefixing any package error with the stage name."""
    try:
        return fn(*args)
    except ValidationError as exc:
        raise ValidationError(f"{label}: {exc}", witness=exc.witness) from exc
    except LieExpError as exc:
        raise type(exc)(f"{label}: {exc}") from exc


@dataclass(frozen=True)
class AnalysisReport:
    """Structured analysis; ``data`` has a fixed key order and only JSON types."""

    data: dict

    @property
    def ok(self) -> bool:
        split = self.data["split"]
        return split["validation"] is None or split["validation"]["ok"]

    def to_dict(self) -> dict:
        return json.loads(self.to_json())

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        d = self.data
        lines = [f"algebra {d['input']['name']} (dim {d['input']['dim']})"]
        cls = d["classification"]
        flags = [k.removeprefix("is_") for k, v in cls.items() if v]
        lines.append("classification: " + (", ".join(flags) or "none"))
        lines.append(f"radical: {_span(d['radical'])}")
        lines.append(f"levi: {_span(d['levi'])}")
        for kind in ("lower_central", "derived"):
            lines.append(f"{kind.replace('_', ' ')} series dims: {d['series'][kind]['dims']}")
        er = d["exponential_radical"]
        lines.append(f"exponential radical e: {_span(er['e'])}")
        lines.append(f"  R-decomposed: {er['R_decomposed']}; g/e has dim {er['quotient_dim']}")
        lines.append(
            f"  minimality probe: {er['minimality_probe']['candidates']} candidates, "
            f"{er['minimality_probe']['failures']} failures"
        )
        sp = d["split"]
        lines.append(f"split: {sp['source']}")
        if sp["validation"] is not None:
            for c in sp["validation"]["checks"]:
                mark = {True: "ok", False: "FAIL", None: "skip"}[c["passed"]]
                wit = f"  witness: {c['witness']}" if c["witness"] else ""
                lines.append(f"  [{mark}] {c['name']}: {c['detail']}{wit}")
        desc = d["descriptor"]
        if desc is not None:
            lines.append(f"cartan subalgebra of b: {_span(d['cartan'])}")
            lines.append(f"O_exp(G) ≅ {desc['tensor']}")
            lines.append(f"  {desc['expansion']}")
            be = desc["factor_BE"]
            if be["dim"]:
                lines.append(f"  weights on b/e: {be['weights']}")
            lines.append(f"length: {d['length_profile']['formula']}")
        for note in d["notes"]:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def _span(block: dict) -> str:
    if not block["dim"]:
        return "0"
    return "span{" + ", ".join(block["basis"]) + "}"


def analyze(g: LieAlgebra, split: SplitData | None = None, name: str = "algebra") -> AnalysisReport:
    """Run the whole chain: classification, Levi data, series, exponential
    radical, split validation, descriptor and length profile.

    Raises ValidationError when a declared split fails its checks; the
    failing checks are carried in the witness.
    """
    if split is not None and (split.b.ambient_dim != g.dim or split.l.ambient_dim != g.dim):
        raise InputError("split subspaces do not live in g")
    cls = _stage("classification", classify, g)
    levi = _stage("levi", levi_subalgebra, g)
    exp = _stage("exponential radical", exponential_radical, g)
    e = exp.e

    q, _ = _stage("quotient", quotient, g, e)
    q_exp = _stage("quotient exponential radical", exponential_radical, q)
    if not q_exp.e.is_zero():
        raise ValidationError("g/e is not R-decomposed")
    if not is_ideal(g, e) or (not e.is_zero() and not is_nilpotent(restrict(g, e))):
        raise ValidationError("exponential radical failed re-validation")
    if not semisimple_or_zero(g, levi.levi):
        raise ValidationError("Levi factor failed re-validation")
    candidates = minimality_candidates(g, e)
    failures = _stage("minimality probe", probe_minimality, g, e)

    notes = [STANDING_ASSUMPTIONS]
    source = "declared"
    if split is None:
        if is_solvable(g):
            split = SplitData(g.full(), Subspace.zero(g.dim))
            source = "default"
            notes.append(NOTE_DEFAULT_SPLIT)
        else:
            source = "none"
            notes.append(NOTE_NO_SPLIT)

    validation = None
    descriptor = profile = cartan = None
    if split is not None:
        report = _stage("split validation", validate_split, g, split, exp)
        validation = report.as_dict()
        if not report.ok:
            failed = [c.name for c in report.checks if not c.passed]
            raise ValidationError(f"split validation: failed {', '.join(failed)}", witness=report)
        desc = _stage("descriptor", oexp_descriptor, g, split, exp)
        descriptor = desc.as_dict()
        profile = length_profile(desc).as_dict()
        cartan = basis_block(g, desc.cartan)
        notes.extend([NOTE_V_CHOICE, NOTE_CARTAN_CHOICE])

    data = {
        "input": _input_echo(g, name, split if source == "declared" else None),
        "classification": cls.as_dict(),
        "radical": basis_block(g, levi.radical),
        "levi": basis_block(g, levi.levi),
        "center": basis_block(g, center(g)),
        "series": {
            "lower_central": _series_block(g, "lower_central"),
            "derived": _series_block(g, "derived"),
            "radical_lower_central": _series_block(g, "lower_central", levi.radical),
        },
        "exponential_radical": {
            "e": basis_block(g, e),
            "r_infinity": basis_block(g, exp.r_infinity),
            "s_bracket_r": basis_block(g, exp.s_bracket_r),
            "s_bracket_r_span_dim": exp.s_bracket_r_span.dim,
            "quotient_dim": q.dim,
            "R_decomposed": e.is_zero(),
            "minimality_probe": {"candidates": len(candidates), "failures": len(failures)},
        },
        "split": {
            "source": source,
            "b": basis_block(g, split.b) if split is not None else None,
            "l": basis_block(g, split.l) if split is not None else None,
            "validation": validation,
        },
        "cartan": cartan,
        "descriptor": descriptor,
        "length_profile": profile,
        "notes": notes,
    }
    return AnalysisReport(data)
