"""Frobenius forms, Nakayama automorphisms and Picard-order probes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from qfalg.algebra import (
    DEFAULT_TRIALS, AlgMap, FDAlgebra, InnerWitness, OrderResult, Search,
    is_inner, multiply, out_order, search_nonsingular,
)
from qfalg.bimodule import (
    BimoduleMap, InvertibilityReport, dual, is_invertible_bimodule, is_isomorphic, regular,
    tensor_over,
)
from qfalg.exactla import Rng, inverse, kernel


def pairing_matrix(A: FDAlgebra, functional) -> np.ndarray:
    """``B[i, j] = functional(e_i e_j)``."""
    n = A.dim
    return A.field.matmul(A.mult.reshape(n * n, n), np.asarray(functional, dtype=object)).reshape(n, n)


@dataclass(frozen=True, eq=False)
class FrobeniusWitness:
    """A functional with nonsingular pairing and its Nakayama automorphism."""

    functional: np.ndarray
    pairing: np.ndarray
    nakayama: AlgMap

    def left_iso(self) -> BimoduleMap:
        """``a -> a ⇀ λ`` as a left-module map ``A -> A*``."""
        R = regular(self.nakayama.source)
        return BimoduleMap(R, dual(R), self.pairing)

    def right_iso(self) -> BimoduleMap:
        """``a -> λ ↼ a`` as a right-module map ``A -> A*``."""
        R = regular(self.nakayama.source)
        return BimoduleMap(R, dual(R), self.pairing.T.copy())


def nakayama(A: FDAlgebra, functional) -> AlgMap:
    """The automorphism with ``λ(a r) = λ(r ν(a))``, i.e. ``ν(a) ⇀ λ = λ ↼ a``."""
    B = pairing_matrix(A, functional)
    B_inv = inverse(A.field, B)
    if B_inv is None:
        raise ValueError("functional has a singular pairing")
    nu = AlgMap(A, A, A.field.matmul(B_inv, B.T.copy()))
    if not nu.is_automorphism():  # pragma: no cover - cannot happen for a nonsingular form
        raise AssertionError("Nakayama map is not an automorphism")
    return nu


def frobenius_witness(A: FDAlgebra, functional) -> FrobeniusWitness:
    functional = np.asarray(functional, dtype=object)
    return FrobeniusWitness(functional, pairing_matrix(A, functional), nakayama(A, functional))


def _form_search(A: FDAlgebra, functionals, rng: Rng, trials: int) -> Search:
    """Nonsingular member of the pencil of pairings spanned by ``functionals``."""
    n = A.dim
    mats = np.array([pairing_matrix(A, f) for f in functionals], dtype=object).reshape(len(functionals), n, n)
    res = search_nonsingular(A.field, mats, rng, trials)
    detail = {"pencil_dim": len(functionals)}
    if not res:
        return Search(None, res.method, res.trials, res.failure_bound, detail)
    coeffs, _ = res.witness
    lam = A.field.matmul(coeffs.reshape(1, -1), np.array(functionals, dtype=object).reshape(len(functionals), n))[0]
    return Search(frobenius_witness(A, lam), res.method, res.trials, None, detail)


def find_frobenius_form(A: FDAlgebra, rng: Rng, trials: int = DEFAULT_TRIALS) -> Search:
    """Witness is a FrobeniusWitness; a miss carries a bound or an exhaustive certificate."""
    return _form_search(A, list(A.field.eye(A.dim)), rng, trials)


def trace_forms(A: FDAlgebra):
    """Functionals with ``λ(ab) = λ(ba)`` on all basis pairs."""
    n = A.dim
    rows = [A.mult[i, j] - A.mult[j, i] for i, j in itertools.combinations(range(n), 2)]
    if not rows:
        return kernel(A.field, A.field.zeros((1, n)))
    return kernel(A.field, np.array(rows, dtype=object))


@dataclass(frozen=True, eq=False)
class SymmetricWitness:
    form: FrobeniusWitness
    iso: BimoduleMap


def is_symmetric(A: FDAlgebra, rng: Rng, trials: int = DEFAULT_TRIALS) -> Search:
    """Nonsingular trace form; the witness includes the bimodule iso ``A -> A*``."""
    space = trace_forms(A)
    res = _form_search(A, list(space.basis), rng, trials)
    if not res:
        return res
    w = res.witness
    R = regular(A)
    iso = BimoduleMap(R, dual(R), w.pairing)
    if not iso.is_isomorphism("bimodule"):  # pragma: no cover
        raise AssertionError("trace form does not give a bimodule isomorphism")
    return Search(SymmetricWitness(w, iso), res.method, res.trials, None, res.detail)


def is_quasi_frobenius(A: FDAlgebra) -> InvertibilityReport:
    """QF iff the dual bimodule is invertible."""
    return is_invertible_bimodule(dual(regular(A)))


def out_class_equal(A: FDAlgebra, a: AlgMap, b: AlgMap, rng: Rng, trials: int = DEFAULT_TRIALS) -> Search:
    """Do ``a`` and ``b`` differ by an inner automorphism?"""
    return is_inner(A, b.inverse().compose(a), rng, trials)


def twisted_dual_iso(A: FDAlgebra, witness: FrobeniusWitness) -> BimoduleMap:
    """``1_A_ν -> A*``, ``a -> a ⇀ λ``."""
    from qfalg.bimodule import twist
    R = regular(A)
    return BimoduleMap(twist(R, None, witness.nakayama), dual(R), witness.pairing)


@dataclass(frozen=True)
class PicProbeResult:
    order: int | None
    powers: tuple[int, ...]
    certificates: tuple[Search, ...]
    nakayama_order: OrderResult | None = None
    notes: tuple[str, ...] = field(default=())

    def summary(self) -> dict:
        out = {"order": self.order, "powers": list(self.powers),
               "steps": [c.summary() for c in self.certificates]}
        if self.nakayama_order is not None:
            out["nakayama_out_order"] = self.nakayama_order.order
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def pic_order_probe(A: FDAlgebra, max_order: int, rng: Rng, trials: int = DEFAULT_TRIALS,
                    frobenius: FrobeniusWitness | None = None) -> PicProbeResult:
    """Order of ``[A*]`` by tensor powers, cross-checked with ``out_order(ν)`` if a form is given."""
    R = regular(A)
    D = dual(R)
    P = D
    powers, certs, notes = [], [], []
    order = None
    for k in range(1, max_order + 1):
        if k > 1:
            P = tensor_over(P, D)
        powers.append(P.dim)
        if P.dim != A.dim:
            notes.append("tensor power %d has dimension %d, expected %d" % (k, P.dim, A.dim))
            break
        res = is_isomorphic(P, R, "bimodule", rng, trials)
        certs.append(res)
        if res:
            order = k
            break
    nu_order = None
    if frobenius is not None:
        nu_order = out_order(A, frobenius.nakayama, max_order, rng, trials)
        if nu_order.order != order:
            notes.append("tensor route gives %s but Nakayama route gives %s" % (order, nu_order.order))
    return PicProbeResult(order, tuple(powers), tuple(certs), nu_order, tuple(notes))


class NotInnerError(ValueError):
    """Raised when ν² could not be certified inner."""


@dataclass(frozen=True, eq=False)
class FrobeniusPairing:
    """``ψ((r ⇀ λ) ⊗ (s ⇀ λ)) = r ν(s) u⁻¹`` descended to ``A* ⊗_A A*``."""

    map: BimoduleMap
    full: np.ndarray
    inner: InnerWitness
    nu_fixes_u: bool


def frobenius_pairing_map(A: FDAlgebra, witness: FrobeniusWitness, rng: Rng,
                          trials: int = DEFAULT_TRIALS) -> FrobeniusPairing:
    F, n = A.field, A.dim
    nu = witness.nakayama
    res = is_inner(A, nu.compose(nu), rng, trials)
    if not res:
        raise NotInnerError("ν² not certified inner (%s)" % res.summary())
    u, u_inv = res.witness.u, res.witness.u_inv
    # dual basis element p is θ(r_p) with r_p the p-th column of the inverse pairing
    theta_inv = inverse(F, witness.pairing)
    full = F.zeros((n, n * n))
    nu_cols = [nu(theta_inv[:, q]) for q in range(n)]
    for p in range(n):
        rp = theta_inv[:, p]
        for q in range(n):
            full[:, p * n + q] = multiply(A, multiply(A, rp, nu_cols[q]), u_inv)
    D = dual(regular(A))
    T = tensor_over(D, D)
    if any(x != 0 for x in F.matmul(full, T.quotient.relations.basis.T).flat):
        raise AssertionError("ψ does not descend to the tensor product")
    psi = BimoduleMap(T, regular(A), F.matmul(full, T.quotient.section))
    if not psi.is_isomorphism("bimodule"):
        raise AssertionError("ψ is not a bimodule isomorphism")
    return FrobeniusPairing(psi, full, res.witness, bool(np.array_equal(nu(u), u)))
