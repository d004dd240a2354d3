"""Built-in example algebras."""

from __future__ import annotations

from fractions import Fraction

from ..errors import InputError
from ..exactlin import Subspace
from ..exprad import SplitData
from ..liecore import LieAlgebra
from .fileformat import AlgebraFile, render_algebra_file

FAMILIES = {
    "dim2_solvable": ("2-dim non-abelian solvable algebra [e1, e2] = e2", None),
    "heisenberg3": ("3-dim Heisenberg algebra [a, c] = b", None),
    "example6dim": ("6-dim solvable e1 ⋉ (span(e2, e3) ⋉ heisenberg(f1, f2, f3))", None),
    "cn_sln": ("C^n ⋊ sl_n with the standard action", ("n", 2)),
    "abelian": ("abelian C^m", ("m", 2)),
}


def dim2_solvable() -> LieAlgebra:
    return LieAlgebra.from_table(["e1", "e2"], {("e1", "e2"): {"e2": 1}})


def heisenberg3() -> LieAlgebra:
    # upper unitriangular 3x3 matrices: a = E12, c = E23, b = E13
    return LieAlgebra.from_table(["a", "c", "b"], {("a", "c"): {"b": 1}})


def example6dim() -> LieAlgebra:
    # e3 acts trivially on span(f1, f2, f3): ad e3 restricted there must be the
    # commutator [ad e1, ad e2] = 0, so nonzero [e3, f_i] would break Jacobi.
    return LieAlgebra.from_table(
        ["e1", "e2", "e3", "f1", "f2", "f3"],
        {
            ("e1", "e2"): {"e3": 1},
            ("e2", "f1"): {"f1": 1},
            ("e2", "f2"): {"f2": 1},
            ("e2", "f3"): {"f3": 2},
            ("f1", "f2"): {"f3": 1},
        },
    )


def sl_basis(n: int) -> tuple[list[str], list[list[list[Fraction]]]]:
    """Names and matrices of the standard basis h_k, E_ij of sl_n."""
    names, mats = [], []
    for k in range(n - 1):
        m = [[Fraction(0)] * n for _ in range(n)]
        m[k][k], m[k + 1][k + 1] = Fraction(1), Fraction(-1)
        names.append(f"h{k + 1}")
        mats.append(m)
    for i in range(n):
        for j in range(n):
            if i != j:
                m = [[Fraction(0)] * n for _ in range(n)]
                m[i][j] = Fraction(1)
                names.append(f"E{i + 1}{j + 1}")
                mats.append(m)
    return names, mats


def _sl_coords(m, n: int, names: list[str]) -> dict[str, Fraction]:
    out = {}
    # diagonal d = sum_k c_k (E_kk - E_{k+1,k+1})  =>  c_k = d_1 + ... + d_k
    acc = Fraction(0)
    for k in range(n - 1):
        acc += m[k][k]
        if acc:
            out[f"h{k + 1}"] = acc
    for i in range(n):
        for j in range(n):
            if i != j and m[i][j]:
                out[f"E{i + 1}{j + 1}"] = m[i][j]
    return out


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def cn_sln(n: int) -> tuple[LieAlgebra, SplitData]:
    if n < 2:
        raise InputError("cn_sln needs n >= 2")
    vnames = [f"v{k + 1}" for k in range(n)]
    snames, mats = sl_basis(n)
    table: dict[tuple[str, str], dict[str, Fraction]] = {}
    for a, (na, ma) in enumerate(zip(snames, mats)):
        for b in range(a + 1, len(snames)):
            mb = mats[b]
            ab, ba = _matmul(ma, mb), _matmul(mb, ma)
            comm = [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]
            coords = _sl_coords(comm, n, snames)
            if coords:
                table[(na, snames[b])] = coords
        for j in range(n):
            # X v_j = sum_i X[i][j] v_i
            col = {vnames[i]: ma[i][j] for i in range(n) if ma[i][j]}
            if col:
                table[(na, vnames[j])] = col
    g = LieAlgebra.from_table(vnames + snames, table)
    split = SplitData(
        b=Subspace.span_of_units(range(n), g.dim),
        l=Subspace.span_of_units(range(n, g.dim), g.dim),
        l_label=f"SL_{n}",
    )
    return g, split


def catalog_algebra(name: str, param: int | None = None) -> tuple[LieAlgebra, SplitData | None]:
    if name not in FAMILIES:
        raise InputError(f"unknown catalog entry {name!r}; available: {', '.join(FAMILIES)}")
    param_info = FAMILIES[name][1]
    if param_info is None and param is not None:
        raise InputError(f"catalog entry {name!r} takes no parameter")
    if param_info is not None and param is None:
        param = param_info[1]
    if name == "dim2_solvable":
        return dim2_solvable(), None
    if name == "heisenberg3":
        return heisenberg3(), None
    if name == "example6dim":
        return example6dim(), None
    if name == "cn_sln":
        return cn_sln(param)
    if param < 1:
        raise InputError("abelian needs m >= 1")
    return LieAlgebra.abelian(param), None


def entry_name(name: str, param: int | None = None) -> str:
    param_info = FAMILIES.get(name, (None, None))[1]
    if param_info is None:
        return name
    return f"{name}_{param if param is not None else param_info[1]}"


def catalog(name: str, param: int | None = None) -> AlgebraFile:
    """The shipped fixture as an algebra file."""
    g, split = catalog_algebra(name, param)
    return render_algebra_file(g, entry_name(name, param), split)


def catalog_list() -> list[dict]:
    out = []
    for name, (desc, param_info) in FAMILIES.items():
        item = {"name": name, "description": desc}
        if param_info is not None:
            item["param"] = param_info[0]
            item["default"] = param_info[1]
        out.append(item)
    return out
