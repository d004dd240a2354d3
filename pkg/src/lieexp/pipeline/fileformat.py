"""JSON algebra files.

Layout::

    {
      "name": "heisenberg3",
      "dim": 3,
      "basis": ["a", "c", "b"],
      "brackets": [{"lhs": "a", "rhs": "c", "value": [["b", "1/1", "0/1"]]}],
      "split": {"b": [...], "l": [...], "l_label": "SL_2"}     # optional
    }

Omitted pairs are zero; only ``lhs`` before ``rhs`` in basis order is legal.
Scalars are ``"p/q"`` strings, a Gaussian rational is ``[name, re, im]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import InputError
from ..exactlin import GaussianRational, Subspace, format_rational, parse_rational
from ..exprad import SplitData
from ..liecore import LieAlgebra


@dataclass
class AlgebraFile:
    name: str
    dim: int
    basis: list[str]
    brackets: list[dict]
    split: dict | None = field(default=None)

    def to_dict(self) -> dict:
        out = {"name": self.name, "dim": self.dim, "basis": list(self.basis), "brackets": self.brackets}
        if self.split is not None:
            out["split"] = self.split
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def render_algebra_file(g: LieAlgebra, name: str, split: SplitData | None = None) -> AlgebraFile:
    """Serialize an algebra (and optional split given by unit-vector spans)."""
    names = g.basis_names
    brackets = []
    for (i, j), v in sorted(g.structure_constants().items()):
        value = [[names[k], format_rational(c.re), format_rational(c.im)] for k, c in enumerate(v) if c]
        brackets.append({"lhs": names[i], "rhs": names[j], "value": value})
    split_doc = None
    if split is not None:
        split_doc = {
            "b": _unit_names(g, split.b, "b"),
            "l": _unit_names(g, split.l, "l"),
            "l_label": split.l_label,
        }
    return AlgebraFile(name=name, dim=g.dim, basis=list(names), brackets=brackets, split=split_doc)


def _unit_names(g: LieAlgebra, u: Subspace, what: str) -> list[str]:
    out = []
    for v in u.vectors:
        nz = [k for k, x in enumerate(v) if x]
        if len(nz) != 1:
            raise InputError(f"split part {what} is not spanned by basis vectors; cannot serialize")
        out.append(g.basis_names[nz[0]])
    return out


def _field_error(path: str, msg: str) -> InputError:
    return InputError(f"{path}: {msg}")


def load_algebra_file(text: str) -> AlgebraFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise _field_error("<root>", "expected an object")
    for key in ("name", "dim", "basis", "brackets"):
        if key not in doc:
            raise _field_error(key, "missing field")
    extra = set(doc) - {"name", "dim", "basis", "brackets", "split"}
    if extra:
        raise _field_error(sorted(extra)[0], "unknown field")
    if not isinstance(doc["name"], str):
        raise _field_error("name", "must be a string")
    if not isinstance(doc["dim"], int) or isinstance(doc["dim"], bool) or doc["dim"] < 0:
        raise _field_error("dim", "must be a non-negative integer")
    basis = doc["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise _field_error("basis", "must be an array of strings")
    if len(basis) != doc["dim"]:
        raise _field_error("basis", f"has {len(basis)} names but dim is {doc['dim']}")
    if len(set(basis)) != len(basis):
        raise _field_error("basis", "names are not distinct")
    if not isinstance(doc["brackets"], list):
        raise _field_error("brackets", "must be an array")
    for k, entry in enumerate(doc["brackets"]):
        path = f"brackets[{k}]"
        if not isinstance(entry, dict) or set(entry) != {"lhs", "rhs", "value"}:
            raise _field_error(path, "must be an object with exactly lhs, rhs, value")
        if not isinstance(entry["value"], list):
            raise _field_error(f"{path}.value", "must be an array")
    split = doc.get("split")
    if split is not None:
        if not isinstance(split, dict) or not {"b", "l"} <= set(split) or set(split) - {"b", "l", "l_label"}:
            raise _field_error("split", "must be an object with b, l and optional l_label")
    return AlgebraFile(doc["name"], doc["dim"], list(basis), doc["brackets"], split)


def build_algebra(f: AlgebraFile) -> tuple[LieAlgebra, SplitData | None]:
    """Resolve names, enforce lhs-before-rhs and uniqueness, validate Jacobi."""
    idx = {nm: k for k, nm in enumerate(f.basis)}
    n = f.dim
    brackets: dict[tuple[int, int], list] = {}
    for k, entry in enumerate(f.brackets):
        path = f"brackets[{k}]"
        lhs, rhs = entry["lhs"], entry["rhs"]
        for side, nm in (("lhs", lhs), ("rhs", rhs)):
            if nm not in idx:
                raise _field_error(f"{path}.{side}", f"unknown basis name {nm!r}")
        i, j = idx[lhs], idx[rhs]
        if i >= j:
            raise _field_error(path, f"lhs {lhs!r} must come before rhs {rhs!r} in basis order")
        if (i, j) in brackets:
            raise _field_error(path, f"duplicate bracket pair ({lhs}, {rhs})")
        vec = [GaussianRational(0)] * n
        seen = set()
        for t, term in enumerate(entry["value"]):
            tpath = f"{path}.value[{t}]"
            if not (isinstance(term, list) and len(term) == 3):
                raise _field_error(tpath, "must be [basis_name, re, im]")
            nm, re, im = term
            if nm not in idx:
                raise _field_error(tpath, f"unknown basis name {nm!r}")
            if nm in seen:
                raise _field_error(tpath, f"basis name {nm!r} repeated")
            seen.add(nm)
            try:
                vec[idx[nm]] = GaussianRational(parse_rational(re), parse_rational(im))
            except InputError as exc:
                raise _field_error(tpath, str(exc)) from None
        brackets[(i, j)] = vec
    g = LieAlgebra(f.basis, brackets)
    split = None
    if f.split is not None:
        parts = {}
        for part in ("b", "l"):
            names = f.split[part]
            if not isinstance(names, list):
                raise _field_error(f"split.{part}", "must be an array of basis names")
            for nm in names:
                if nm not in idx:
                    raise _field_error(f"split.{part}", f"unknown basis name {nm!r}")
            parts[part] = Subspace.span_of_units([idx[nm] for nm in names], n)
        label = f.split.get("l_label", "")
        if not isinstance(label, str):
            raise _field_error("split.l_label", "must be a string")
        split = SplitData(parts["b"], parts["l"], label)
    return g, split


def parse_algebra_file(text: str) -> tuple[LieAlgebra, SplitData | None]:
    return build_algebra(load_algebra_file(text))
