"""JSON algebra files.

Scalars are strings (``"3/2"``, ``"7"``) so files are exact and field-agnostic.
Multiplication is stored as sparse ``[i, j, k, coeff]`` triples sorted by index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from qfalg.algebra import AlgMap, FDAlgebra, check_algebra
from qfalg.exactla import Field, field_from_name, span
from qfalg.extension import GradedAlgebra
from qfalg.hopf import HopfData
from qfalg.zoo import AbelianGroupSpec

FORMAT = "qfalg-algebra/1"


def field_name(F: Field) -> str:
    return "Q" if F.characteristic == 0 else "F%d" % F.characteristic


@dataclass(frozen=True, eq=False)
class AlgebraFile:
    algebra: FDAlgebra
    grading: GradedAlgebra | None = None
    hopf: HopfData | None = None
    meta: dict | None = None


def _vec(F, v):
    return [F.format(x) for x in v]


def _sparse(F, arr):
    return [[*map(int, idx), F.format(arr[tuple(idx)])] for idx in np.argwhere(arr != 0)]


def to_dict(f: AlgebraFile) -> dict:
    A = f.algebra
    F = A.field
    out = {"format": FORMAT, "field": field_name(F), "dim": A.dim, "basis": list(A.names),
           "unit": _vec(F, A.unit), "mult": _sparse(F, A.mult)}
    if f.grading is not None:
        G = f.grading
        out["grading"] = {"group": list(G.group.orders),
                          "components": [{"degree": list(g), "basis": [_vec(F, row) for row in S.basis]}
                                         for g, S in sorted(G.components.items())]}
    if f.hopf is not None:
        H = f.hopf
        n = A.dim
        out["hopf"] = {"counit": _vec(F, H.counit),
                       "comul": [[int(a), int(b), int(i), F.format(H.comul[a * n + b, i])]
                                 for a, b, i in np.argwhere(H.comul.reshape(n, n, n) != 0)],
                       "antipode": [_vec(F, row) for row in H.antipode.matrix]}
    if f.meta:
        out["meta"] = f.meta
    return out


def from_dict(d: dict, validate: bool = True) -> AlgebraFile:
    if d.get("format", FORMAT) != FORMAT:
        raise ValueError("unsupported format %r" % d.get("format"))
    F = field_from_name(d["field"])
    n = int(d["dim"])
    names = tuple(d["basis"])
    if len(names) != n or len(d["unit"]) != n:
        raise ValueError("basis/unit length does not match dim")
    mult = F.zeros((n, n, n))
    for i, j, k, c in d["mult"]:
        mult[i, j, k] = F.parse(c)
    A = FDAlgebra(F, mult, np.array([F.parse(x) for x in d["unit"]], dtype=object), names)
    if validate:
        bad = check_algebra(A)
        if bad:
            raise ValueError("invalid algebra: %d violations, first %s" % (len(bad), bad[0]))
    grading = None
    if "grading" in d:
        G = AbelianGroupSpec(tuple(d["grading"]["group"]))
        comps = {tuple(c["degree"]): span(F, [[F.parse(x) for x in row] for row in c["basis"]], n)
                 for c in d["grading"]["components"]}
        grading = GradedAlgebra(A, G, comps)
    hopf = None
    if "hopf" in d:
        h = d["hopf"]
        comul = F.zeros((n * n, n))
        for a, b, i, c in h["comul"]:
            comul[a * n + b, i] = F.parse(c)
        S = np.array([[F.parse(x) for x in row] for row in h["antipode"]], dtype=object)
        hopf = HopfData(A, np.array([F.parse(x) for x in h["counit"]], dtype=object), comul,
                        AlgMap(A, A, S, anti=True))
    return AlgebraFile(A, grading, hopf, d.get("meta"))


def dumps(f: AlgebraFile) -> str:
    return json.dumps(to_dict(f), indent=1, ensure_ascii=False)


def loads(text: str, validate: bool = True) -> AlgebraFile:
    return from_dict(json.loads(text), validate)


def save(path, f: AlgebraFile) -> None:
    Path(path).write_text(dumps(f) + "\n", encoding="utf-8")


def load(path, validate: bool = True) -> AlgebraFile:
    return loads(Path(path).read_text(encoding="utf-8"), validate)
