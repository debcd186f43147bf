"""Bimodules over an FDAlgebra, stored as action matrices.

``left[i] @ v`` is ``e_i . v`` and ``right[i] @ v`` is ``v . e_i``.  Either
side may be ``None`` for a one-sided module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from qfalg.algebra import (
    DEFAULT_TRIALS, AlgMap, FDAlgebra, Search, same_algebra, search_nonsingular,
)
from qfalg.exactla import (
    LinearSubspace, QuotientSpace, Rng, inverse, is_nonsingular, kernel, kron, quotient_by, solve,
    span,
)

KINDS = ("left", "right", "bimodule")


@dataclass(frozen=True, eq=False)
class Bimodule:
    algebra: FDAlgebra
    left: np.ndarray | None
    right: np.ndarray | None
    names: tuple[str, ...] = ()
    size: int | None = None  # only needed when neither action is present

    @property
    def dim(self) -> int:
        acts = self.left if self.left is not None else self.right
        return acts.shape[1] if acts is not None else self.size

    @property
    def field(self):
        return self.algebra.field

    def left_action(self, r) -> np.ndarray:
        return _act(self.left, r, self.field, self.dim)

    def right_action(self, r) -> np.ndarray:
        return _act(self.right, r, self.field, self.dim)

    def sides(self, kind: str) -> list[str]:
        return {"left": ["left"], "right": ["right"], "bimodule": ["left", "right"]}[kind]

    def __repr__(self):
        sides = [s for s in ("left", "right") if getattr(self, s) is not None]
        return "Bimodule(dim=%d, %s over dim-%d algebra)" % (self.dim, "+".join(sides), self.algebra.dim)


def _act(mats, r, F, m):
    if mats is None:
        raise ValueError("module has no action on this side")
    out = F.zeros((m, m))
    for c, mat in zip(r, mats):
        if c != 0:
            out = out + mat * c
    return out


@dataclass(frozen=True, eq=False)
class TensorBimodule(Bimodule):
    """``V (x)_A W`` realised as a quotient of the full tensor square."""

    quotient: QuotientSpace | None = None
    factors: tuple = ()

    def class_of(self, a: int, b: int) -> np.ndarray:
        """Quotient coordinates of the monomial ``v_a (x) w_b``."""
        return self.quotient.projection[:, a * self.factors[1].dim + b].copy()

    def project(self, v) -> np.ndarray:
        return self.quotient.project(v)

    def lift(self, q) -> np.ndarray:
        return self.quotient.lift(q)


def check_bimodule(V: Bimodule) -> list[tuple]:
    """Violated action axioms; empty means ``V`` is a valid (one- or two-sided) module."""
    A, F = V.algebra, V.field
    n, eye = A.dim, F.eye(V.dim)
    bad = []
    for side in ("left", "right"):
        mats = getattr(V, side)
        if mats is None:
            continue
        if not np.array_equal(_act(mats, A.unit, F, V.dim), eye):
            bad.append((side, "unit"))
        for i, j in itertools.product(range(n), repeat=2):
            prod = _act(mats, A.mult[i, j], F, V.dim)
            expect = F.matmul(mats[i], mats[j]) if side == "left" else F.matmul(mats[j], mats[i])
            if not np.array_equal(prod, expect):
                bad.append((side, A.names[i], A.names[j]))
    if V.left is not None and V.right is not None:
        for i, j in itertools.product(range(n), repeat=2):
            if not np.array_equal(F.matmul(V.left[i], V.right[j]), F.matmul(V.right[j], V.left[i])):
                bad.append(("commute", A.names[i], A.names[j]))
    return bad


def regular(A: FDAlgebra) -> Bimodule:
    return Bimodule(A, A.left_mats, A.right_mats, A.names)


def left_regular(A: FDAlgebra) -> Bimodule:
    return Bimodule(A, A.left_mats, None, A.names)


def dual(V: Bimodule) -> Bimodule:
    """Dual space with ``(r . f)(v) = f(v . r)`` and ``(f . r)(v) = f(r . v)``."""
    def tr(m):
        return None if m is None else np.ascontiguousarray(m.transpose(0, 2, 1))
    names = tuple(s + "*" for s in V.names) if V.names else ()
    return Bimodule(V.algebra, tr(V.right), tr(V.left), names)


def twist(V: Bimodule, alpha: AlgMap | None, beta: AlgMap | None) -> Bimodule:
    """Same space with ``r * v = alpha(r) v`` and ``v * r = v beta(r)``; ``None`` means identity."""
    def pull(mats, f):
        if mats is None or f is None:
            return mats
        return np.einsum("kab,ki->iab", mats, f.matrix)
    return Bimodule(V.algebra, pull(V.left, alpha), pull(V.right, beta), V.names)


def tensor_over(V: Bimodule, W: Bimodule) -> TensorBimodule:
    """``V (x)_A W``: full tensor square modulo ``(v r) (x) w - v (x) (r w)``."""
    if not same_algebra(V.algebra, W.algebra):
        raise ValueError("tensor factors must share an algebra")
    if V.right is None or W.left is None:
        raise ValueError("need a right action on V and a left action on W")
    F, A = V.field, V.algebra
    m, k = V.dim, W.dim
    eye_m, eye_k = F.eye(m), F.eye(k)
    blocks = [kron(F, eye_m, W.left[r], kron(F, V.right[r], eye_k), -1).T for r in range(A.dim)]
    rel = span(F, np.concatenate(blocks), m * k)
    Q = quotient_by(rel)

    def induced(mats, side):
        if mats is None:
            return None
        out = []
        for mat in mats:
            big = kron(F, mat, eye_k) if side == "left" else kron(F, eye_m, mat)
            out.append(F.matmul(Q.projection, F.matmul(big, Q.section)))
        return np.array(out, dtype=object).reshape(len(out), Q.dim, Q.dim)

    names = tuple("%s⊗%s" % (V.names[j // k], W.names[j % k]) if V.names and W.names else "t%d" % j
                  for j in Q.free)
    return TensorBimodule(A, induced(V.left, "left"), induced(W.right, "right"), names, Q.dim, Q, (V, W))


def tensor_well_defined(T: TensorBimodule) -> bool:
    """Induced actions preserve the relation subspace."""
    V, W = T.factors
    F = T.field
    rel = T.quotient.relations.basis.T
    if rel.shape[1] == 0:
        return True
    eye_m, eye_k = F.eye(V.dim), F.eye(W.dim)
    for mats, side in ((V.left, "left"), (W.right, "right")):
        if mats is None:
            continue
        for mat in mats:
            big = kron(F, mat, eye_k) if side == "left" else kron(F, eye_m, mat)
            if any(x != 0 for x in F.matmul(T.quotient.projection, F.matmul(big, rel)).flat):
                return False
    return True


# ---------------------------------------------------------------------------
# Maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BimoduleMap:
    """Linear map ``source -> target`` given by a ``target.dim x source.dim`` matrix."""

    source: Bimodule
    target: Bimodule
    matrix: np.ndarray

    def violations(self, kind: str = "bimodule") -> list[tuple[str, str]]:
        F = self.source.field
        bad = []
        for side in self.source.sides(kind):
            src, tgt = getattr(self.source, side), getattr(self.target, side)
            if src is None or tgt is None:
                bad.append((side, "missing action"))
                continue
            for i in range(self.source.algebra.dim):
                if not np.array_equal(F.matmul(self.matrix, src[i]), F.matmul(tgt[i], self.matrix)):
                    bad.append((side, self.source.algebra.names[i]))
        return bad

    def is_module_map(self, kind: str = "bimodule") -> bool:
        return not self.violations(kind)

    def is_isomorphism(self, kind: str = "bimodule") -> bool:
        return (self.source.dim == self.target.dim and is_nonsingular(self.source.field, self.matrix)
                and self.is_module_map(kind))

    def compose(self, other: "BimoduleMap") -> "BimoduleMap":
        """``self ∘ other``."""
        return BimoduleMap(other.source, self.target, self.source.field.matmul(self.matrix, other.matrix))

    def inverse(self) -> "BimoduleMap":
        inv = inverse(self.source.field, self.matrix)
        if inv is None:
            raise ValueError("map is not invertible")
        return BimoduleMap(self.target, self.source, inv)


def hom_equations(V: Bimodule, W: Bimodule, kind: str) -> np.ndarray:
    """Rows cut out ``f L^V_i = L^W_i f`` on row-major ``vec(f)``."""
    if kind not in KINDS:
        raise ValueError("kind must be one of %s" % (KINDS,))
    if not same_algebra(V.algebra, W.algebra):
        raise ValueError("modules over different algebras")
    F = V.field
    eye_v, eye_w = F.eye(V.dim), F.eye(W.dim)
    blocks = []
    for side in V.sides(kind):
        sv, sw = getattr(V, side), getattr(W, side)
        if sv is None or sw is None:
            raise ValueError("both modules need a %s action" % side)
        for i in range(V.algebra.dim):
            blocks.append(kron(F, eye_w, sv[i].T, kron(F, sw[i], eye_v), -1))
    return np.concatenate(blocks)


def hom_space(V: Bimodule, W: Bimodule, kind: str = "bimodule") -> LinearSubspace:
    """Intertwiners ``V -> W`` as row-major flattened ``W.dim x V.dim`` matrices."""
    return kernel(V.field, hom_equations(V, W, kind))


def hom_matrices(V: Bimodule, W: Bimodule, kind: str = "bimodule") -> list[np.ndarray]:
    return [b.reshape(W.dim, V.dim) for b in hom_space(V, W, kind).basis]


def is_isomorphic(V: Bimodule, W: Bimodule, kind: str, rng: Rng,
                  trials: int = DEFAULT_TRIALS) -> Search:
    """Witness is a verified BimoduleMap; a miss carries a bound or exact certificate."""
    if V.dim != W.dim:
        return Search(None, "dimension", 0, detail={"dims": (V.dim, W.dim)})
    homs = hom_matrices(V, W, kind)
    mats = np.array(homs, dtype=object).reshape(len(homs), V.dim, V.dim)
    res = search_nonsingular(V.field, mats, rng, trials)
    detail = {"hom_dim": len(homs)}
    if not res:
        return Search(None, res.method, res.trials, res.failure_bound, detail)
    f = BimoduleMap(V, W, res.witness[1])
    if not f.is_isomorphism(kind):  # pragma: no cover - defensive
        raise AssertionError("isomorphism witness failed verification")
    return Search(f, res.method, res.trials, None, detail)


def submodule(V: Bimodule, S: LinearSubspace, names=None) -> Bimodule:
    """Restrict the actions of ``V`` to an invariant subspace (basis = echelon rows of ``S``)."""
    F = V.field
    basis = S.basis

    def restrict(mats):
        if mats is None:
            return None
        out = F.zeros((len(mats), S.dim, S.dim))
        for i, mat in enumerate(mats):
            for k in range(S.dim):
                out[i, :, k] = S.coordinates(F.matmul(mat, basis[k]))
        return out

    if names is None:
        names = []
        for row in basis:
            nz = [j for j, x in enumerate(row) if x != 0]
            names.append(V.names[nz[0]] if len(nz) == 1 and row[nz[0]] == 1 and V.names else "v%d" % len(names))
    return Bimodule(V.algebra, restrict(V.left), restrict(V.right), tuple(names))


def left_part(V: Bimodule) -> Bimodule:
    return Bimodule(V.algebra, V.left, None, V.names)


def right_part(V: Bimodule) -> Bimodule:
    return Bimodule(V.algebra, None, V.right, V.names)


# ---------------------------------------------------------------------------
# Invertibility sub-checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Section:
    """Left-module maps ``h_a : V -> A`` with ``sum_a h_a(v) . v_a = v``."""

    maps: tuple[np.ndarray, ...]


def is_projective_left(V: Bimodule) -> Section | None:
    """Split the free cover ``A^m -> V`` built on the basis of ``V``, or return ``None``."""
    A, F = V.algebra, V.field
    L = left_part(V)
    homs = hom_matrices(L, left_regular(A), "left")
    m, d = V.dim, len(homs)
    if d == 0:
        return None if m else Section(())
    # unknown c[a, k] at column a * d + k; equation (b, component) at row b * m + component
    system = F.zeros((m * m, m * d))
    for k, h in enumerate(homs):
        for b in range(m):
            act = V.left_action(h[:, b])
            for a in range(m):
                system[b * m:(b + 1) * m, a * d + k] = act[:, a]
    rhs = F.eye(m).reshape(-1)
    sol = solve(F, system, rhs)
    if sol is None:
        return None
    maps = tuple(sum((h * sol[a * d + k] for k, h in enumerate(homs)), F.zeros(homs[0].shape))
                 for a in range(m))
    return Section(maps)


@dataclass(frozen=True, eq=False)
class GeneratorReport:
    is_generator: bool
    trace_ideal: LinearSubspace

    def __bool__(self):
        return self.is_generator


def is_generator_left(V: Bimodule) -> GeneratorReport:
    """Trace ideal ``sum_h h(V)`` over ``h in Hom_A(V, A)``; generator iff it is all of ``A``."""
    A = V.algebra
    homs = hom_matrices(left_part(V), left_regular(A), "left")
    images = [h[:, b] for h in homs for b in range(V.dim)]
    ideal = span(V.field, images, A.dim) if images else span(V.field, [], A.dim)
    return GeneratorReport(ideal.dim == A.dim, ideal)


@dataclass(frozen=True, eq=False)
class InvertibilityReport:
    projective: Section | None
    generator: GeneratorReport
    omega_iso: bool
    endomorphism_dim: int

    @property
    def invertible(self) -> bool:
        return self.projective is not None and bool(self.generator) and self.omega_iso

    def __bool__(self):
        return self.invertible

    def summary(self) -> dict:
        return {"projective": self.projective is not None, "generator": bool(self.generator),
                "trace_ideal_dim": self.generator.trace_ideal.dim,
                "omega_iso": self.omega_iso, "end_dim": self.endomorphism_dim,
                "invertible": self.invertible}


def omega_is_iso(P: Bimodule) -> tuple[bool, int]:
    """Is ``r -> (p -> p r)`` a bijection onto ``End(_A P)``?  Also returns ``dim End``."""
    A, F = P.algebra, P.field
    end = hom_space(left_part(P), left_part(P), "left")
    if P.right is None:
        return False, end.dim
    images = [P.right[i].reshape(-1) for i in range(A.dim)]
    if not all(end.contains(v) for v in images):
        return False, end.dim
    independent = span(F, images, P.dim * P.dim).dim == A.dim
    return independent and end.dim == A.dim, end.dim


def is_invertible_bimodule(P: Bimodule) -> InvertibilityReport:
    ok, end_dim = omega_is_iso(P)
    return InvertibilityReport(is_projective_left(P), is_generator_left(P), ok, end_dim)
