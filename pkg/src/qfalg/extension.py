"""Associative pairings ``A* ⊗_A A* -> A`` and the extensions they define on ``A × A*``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from qfalg.algebra import DEFAULT_TRIALS, FDAlgebra, check_algebra
from qfalg.bimodule import (
    BimoduleMap, TensorBimodule, dual, hom_space, regular, tensor_over,
)
from qfalg.exactla import LinearSubspace, Rng, is_nonsingular, span
from qfalg.zoo import AbelianGroupSpec


@dataclass(frozen=True, eq=False)
class Pairing:
    """A bimodule map ``ψ`` on ``A* ⊗_A A*``; ``bracket[p, q]`` is ``ψ(e_p* ⊗ e_q*)``."""

    map: BimoduleMap

    @property
    def algebra(self) -> FDAlgebra:
        return self.map.target.algebra

    @property
    def tensor(self) -> TensorBimodule:
        return self.map.source

    @property
    def full(self) -> np.ndarray:
        """``ψ`` on the full tensor square, ``n x n*n``."""
        return self.algebra.field.matmul(self.map.matrix, self.tensor.quotient.projection)

    @property
    def bracket(self) -> np.ndarray:
        n = self.algebra.dim
        return np.ascontiguousarray(self.full.T.reshape(n, n, n))

    def is_invertible(self) -> bool:
        return self.map.source.dim == self.map.target.dim and is_nonsingular(self.algebra.field, self.map.matrix)


def dual_tensor(A: FDAlgebra) -> TensorBimodule:
    D = dual(regular(A))
    return tensor_over(D, D)


def pairing_from_full(A: FDAlgebra, full, tensor: TensorBimodule | None = None) -> Pairing:
    """Descend an ``n x n*n`` matrix on the tensor square; it must vanish on the relations."""
    F = A.field
    T = tensor if tensor is not None else dual_tensor(A)
    full = np.asarray(full, dtype=object)
    rel = T.quotient.relations.basis
    if rel.shape[0] and any(x != 0 for x in F.matmul(full, rel.T).flat):
        raise ValueError("map does not vanish on middle-linearity relations")
    psi = BimoduleMap(T, regular(A), F.matmul(full, T.quotient.section))
    if not psi.is_module_map("bimodule"):
        raise ValueError("map is not a bimodule map")
    return Pairing(psi)


def zero_pairing(A: FDAlgebra, tensor: TensorBimodule | None = None) -> Pairing:
    n = A.dim
    return pairing_from_full(A, A.field.zeros((n, n * n)), tensor)


def _action_tables(A: FDAlgebra, bracket):
    """``[p,q] ⇀ t*`` and ``p* ↼ [q,t]`` for all dual-basis triples, both indexed (p, q, t, s)."""
    F, n = A.field, A.dim
    flat = bracket.reshape(n * n, n)
    # (r ⇀ f) has matrix right_mats[r].T, so its s-th coordinate on e_t* is right_mats[i][t, s]
    lhs = F.matmul(flat, A.right_mats.reshape(n, n * n)).reshape(n, n, n, n)
    rhs = F.matmul(flat, A.left_mats.reshape(n, n * n)).reshape(n, n, n, n)  # (q, t, p, s)
    return lhs, rhs.transpose(2, 0, 1, 3)


def is_associative_pairing(psi: Pairing) -> list[tuple[str, str, str]]:
    """Dual-basis triples violating ``[r*, s*] ⇀ t* = r* ↼ [s*, t*]``."""
    A = psi.algebra
    lhs, rhs = _action_tables(A, psi.bracket)
    bad = []
    for p, q, t in itertools.product(range(A.dim), repeat=3):
        if not np.array_equal(lhs[p, q, t], rhs[p, q, t]):
            bad.append((A.names[p] + "*", A.names[q] + "*", A.names[t] + "*"))
    return bad


def associativity_table(psi: Pairing) -> dict[tuple[str, str, str], dict[str, object]]:
    """Nonzero values of ``[r*, s*] ⇀ t*`` keyed by name triples."""
    A = psi.algebra
    lhs, _ = _action_tables(A, psi.bracket)
    table = {}
    for p, q, t in itertools.product(range(A.dim), repeat=3):
        v = lhs[p, q, t]
        if any(x != 0 for x in v):
            table[(A.names[p], A.names[q], A.names[t])] = {A.names[s] + "*": v[s] for s in range(A.dim) if v[s] != 0}
    return table


def right_associativity_table(psi: Pairing) -> dict[tuple[str, str, str], dict[str, object]]:
    """Nonzero values of ``r* ↼ [s*, t*]`` keyed by name triples."""
    A = psi.algebra
    _, rhs = _action_tables(A, psi.bracket)
    table = {}
    for p, q, t in itertools.product(range(A.dim), repeat=3):
        v = rhs[p, q, t]
        if any(x != 0 for x in v):
            table[(A.names[p], A.names[q], A.names[t])] = {A.names[s] + "*": v[s] for s in range(A.dim) if v[s] != 0}
    return table


def pairing_identity_2(psi: Pairing) -> list[tuple[str, str, str]]:
    """Triples violating ``t*([r*, s*]) = r*([s*, t*])``."""
    A, B = psi.algebra, psi.bracket
    return [(A.names[p] + "*", A.names[q] + "*", A.names[t] + "*")
            for p, q, t in itertools.product(range(A.dim), repeat=3) if B[p, q, t] != B[q, t, p]]


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    algebra: FDAlgebra
    group: AbelianGroupSpec
    components: dict

    def violations(self) -> list[str]:
        A, G, F = self.algebra, self.group, self.algebra.field
        bad = []
        total = span(F, np.concatenate([c.basis for c in self.components.values()]), A.dim)
        if total.dim != A.dim or sum(c.dim for c in self.components.values()) != A.dim:
            bad.append("components do not form a direct sum decomposition")
        if not self.components[G.identity].contains(A.unit):
            bad.append("unit is not homogeneous of degree e")
        from qfalg.algebra import multiply
        for g, h in itertools.product(G.elements(), repeat=2):
            target = self.components[G.mul(g, h)]
            for a in self.components[g].basis:
                for b in self.components[h].basis:
                    if not target.contains(multiply(A, a, b)):
                        bad.append("A_%s A_%s not inside A_%s" % (G.label(g), G.label(h), G.label(G.mul(g, h))))
                        break
                else:
                    continue
                break
        return bad


def graded_products(G: GradedAlgebra, g, h) -> LinearSubspace:
    from qfalg.algebra import multiply
    A = G.algebra
    prods = [multiply(A, a, b) for a in G.components[g].basis for b in G.components[h].basis]
    return span(A.field, prods, A.dim) if prods else span(A.field, [], A.dim)


def is_strongly_graded(G: GradedAlgebra) -> dict[tuple, bool]:
    """``A_g A_h == A_{gh}`` for every pair of group elements."""
    return {(g, h): graded_products(G, g, h) == G.components[G.group.mul(g, h)]
            for g, h in itertools.product(G.group.elements(), repeat=2)}


def trivially_graded(A: FDAlgebra) -> GradedAlgebra:
    C1 = AbelianGroupSpec((1,))
    return GradedAlgebra(A, C1, {(0,): span(A.field, A.field.eye(A.dim), A.dim)})


def semitrivial_extension(A: FDAlgebra, psi: Pairing) -> GradedAlgebra:
    """``(r, f)(s, g) = (rs + [f, g], r ⇀ g + f ↼ s)`` on the basis ``[A, A*]``."""
    bad = is_associative_pairing(psi)
    if bad:
        raise ValueError("pairing is not associative, e.g. at %s" % (bad[0],))
    F, n = A.field, A.dim
    mult = F.zeros((2 * n, 2 * n, 2 * n))
    mult[:n, :n, :n] = A.mult
    B = psi.bracket
    for i in range(n):
        for q in range(n):
            # e_i ⇀ e_q* has coordinates right_mats[i][q, :]
            mult[i, n + q, n:] = A.right_mats[i][q, :]
            # e_q* ↼ e_i has coordinates left_mats[i][q, :]
            mult[n + q, i, n:] = A.left_mats[i][q, :]
    mult[n:, n:, :n] = B
    unit = np.concatenate([A.unit, F.zeros(n)])
    names = tuple(A.names) + tuple(s + "*" for s in A.names)
    E = FDAlgebra(F, mult, unit, names)
    eye = F.eye(2 * n)
    C2 = AbelianGroupSpec((2,))
    comps = {(0,): span(F, eye[:n], 2 * n), (1,): span(F, eye[n:], 2 * n)}
    G = GradedAlgebra(E, C2, comps)
    if check_algebra(E):  # pragma: no cover - associativity of psi guarantees this
        raise AssertionError("extension failed the algebra axioms")
    return G


def symmetrizing_form(G: GradedAlgebra) -> BimoduleMap:
    """``Φ(r, f)(s, g) = f(s) + g(r)`` as a verified bimodule isomorphism ``E -> E*``."""
    E = G.algebra
    F, n = E.field, E.dim // 2
    m = F.zeros((2 * n, 2 * n))
    for i in range(n):
        m[i, n + i] = F.one
        m[n + i, i] = F.one
    R = regular(E)
    phi = BimoduleMap(R, dual(R), m)
    if not phi.is_isomorphism("bimodule"):
        raise AssertionError("symmetrizing form failed verification")
    return phi


@dataclass(frozen=True)
class IsoFamilyReport:
    hom_dim: int
    checked: int
    invertible: int
    failures: tuple

    @property
    def holds(self) -> bool:
        return self.invertible > 0 and not self.failures

    def summary(self) -> dict:
        return {"hom_dim": self.hom_dim, "checked": self.checked, "invertible": self.invertible,
                "failures": len(self.failures), "holds": self.holds}


def all_isos_associative(A: FDAlgebra, rng: Rng, trials: int = DEFAULT_TRIALS,
                         tensor: TensorBimodule | None = None) -> IsoFamilyReport:
    """Check associativity on a basis of ``Hom(A* ⊗ A*, A)`` and on random combinations."""
    F = A.field
    T = tensor if tensor is not None else dual_tensor(A)
    R = regular(A)
    space = hom_space(T, R, "bimodule")
    candidates = [b for b in space.basis]
    for _ in range(trials):
        if space.dim:
            coeffs = np.array([F.random_scalar(rng) for _ in range(space.dim)], dtype=object)
            candidates.append(coeffs @ space.basis)
    invertible, failures = 0, []
    for k, vec in enumerate(candidates):
        psi = Pairing(BimoduleMap(T, R, vec.reshape(A.dim, T.dim)))
        if not psi.is_invertible():
            continue
        invertible += 1
        if is_associative_pairing(psi):
            failures.append(k)
    return IsoFamilyReport(space.dim, len(candidates), invertible, tuple(failures))


def find_associative_pairing(A: FDAlgebra, rng: Rng, trials: int = DEFAULT_TRIALS,
                             tensor: TensorBimodule | None = None) -> Pairing:
    """An invertible associative pairing: the Frobenius construction first, then random
    members of ``Hom(A* ⊗ A*, A)``.  Raises ``ValueError`` if none is found."""
    from qfalg.frobenius import NotInnerError, find_frobenius_form, frobenius_pairing_map

    T = tensor if tensor is not None else dual_tensor(A)
    form = find_frobenius_form(A, rng, trials)
    if form:
        try:
            fp = frobenius_pairing_map(A, form.witness, rng, trials)
            psi = Pairing(fp.map)
            if not is_associative_pairing(psi):
                return psi
        except NotInnerError:
            pass
    F, R = A.field, regular(A)
    space = hom_space(T, R, "bimodule")
    if space.dim:
        candidates = list(space.basis)
        for _ in range(trials):
            coeffs = np.array([F.random_scalar(rng) for _ in range(space.dim)], dtype=object)
            candidates.append(coeffs @ space.basis)
        for vec in candidates:
            psi = Pairing(BimoduleMap(T, R, vec.reshape(A.dim, T.dim)))
            if psi.is_invertible() and not is_associative_pairing(psi):
                return psi
    raise ValueError("no invertible associative pairing found (Hom dimension %d, %d trials)" % (space.dim, trials))


def central_pairing(A: FDAlgebra, functional, z) -> Pairing:
    """``ψ(θa ⊗ θb) = z a b`` for a symmetric form ``functional`` and central ``z``, ``θa = a ⇀ λ``.

    Under ``θ`` the extension multiplies as ``(r, a)(s, b) = (rs + zab, rb + as)``.
    """
    from qfalg.algebra import multiply
    from qfalg.exactla import inverse
    from qfalg.frobenius import pairing_matrix

    F, n = A.field, A.dim
    B = pairing_matrix(A, functional)
    if not np.array_equal(B, B.T):
        raise ValueError("functional is not a trace form")
    B_inv = inverse(F, B)
    if B_inv is None:
        raise ValueError("functional is degenerate")
    z = np.asarray(z, dtype=object)
    cols = [B_inv[:, p] for p in range(n)]
    full = F.zeros((n, n * n))
    for p in range(n):
        zp = multiply(A, z, cols[p])
        for q in range(n):
            full[:, p * n + q] = multiply(A, zp, cols[q])
    return pairing_from_full(A, full)
