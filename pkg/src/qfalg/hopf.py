"""Hopf algebras as explicit linear data: integrals, modular elements, convolution.

Elements of ``H ⊗ H`` are flat vectors of length ``n*n`` with index ``a*n + b``.
``comul`` is the ``n*n x n`` matrix of ``Δ``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qfalg.algebra import DEFAULT_TRIALS, AlgMap, FDAlgebra, OrderResult, multiply, out_order
from qfalg.exactla import Rng, kernel, kron


def tensor_multiply(H: FDAlgebra, X, Y) -> np.ndarray:
    """Product in ``H ⊗ H`` of two flat tensors."""
    n, F = H.dim, H.field
    X = np.asarray(X, dtype=object).reshape(n, n)
    Y = np.asarray(Y, dtype=object).reshape(n, n)
    out = F.zeros((n, n))
    rows_x = [(p, X[p]) for p in range(n) if any(v != 0 for v in X[p])]
    rows_y = [(r, Y[r]) for r in range(n) if any(v != 0 for v in Y[r])]
    for p, xp in rows_x:
        for r, yr in rows_y:
            left = H.mult[p, r]
            if not any(v != 0 for v in left):
                continue
            out += np.multiply.outer(left, multiply(H, xp, yr))
    return out.reshape(-1)


@dataclass(frozen=True, eq=False)
class HopfData:
    algebra: FDAlgebra
    counit: np.ndarray
    comul: np.ndarray
    antipode: AlgMap

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def field(self):
        return self.algebra.field

    def delta(self, h) -> np.ndarray:
        return self.field.matmul(self.comul, np.asarray(h, dtype=object))

    def mult_matrix(self) -> np.ndarray:
        """``m : H ⊗ H -> H`` as an ``n x n*n`` matrix."""
        n = self.dim
        return self.algebra.mult.reshape(n * n, n).T.copy()

    def violations(self) -> list[str]:
        H, F, n = self.algebra, self.field, self.dim
        bad = []
        eps, D, S = self.counit, self.comul, self.antipode.matrix
        eye = F.eye(n)
        if eps @ H.unit != F.one:
            bad.append("counit(1) != 1")
        for i in range(n):
            for j in range(n):
                if eps @ H.mult[i, j] != eps[i] * eps[j]:
                    bad.append("counit not multiplicative on (%s, %s)" % (H.names[i], H.names[j]))
                if not np.array_equal(self.delta(H.mult[i, j]), tensor_multiply(H, D[:, i], D[:, j])):
                    bad.append("comul not multiplicative on (%s, %s)" % (H.names[i], H.names[j]))
        if not np.array_equal(self.delta(H.unit), np.multiply.outer(H.unit, H.unit).reshape(-1)):
            bad.append("comul(1) != 1⊗1")
        if not np.array_equal(F.matmul(kron(F, D, eye), D), F.matmul(kron(F, eye, D), D)):
            bad.append("comul not coassociative")
        row = eps.reshape(1, n)
        if not np.array_equal(F.matmul(kron(F, row, eye), D), eye):
            bad.append("left counit law")
        if not np.array_equal(F.matmul(kron(F, eye, row), D), eye):
            bad.append("right counit law")
        m = self.mult_matrix()
        target = np.multiply.outer(H.unit, eps)
        if not np.array_equal(F.matmul(m, F.matmul(kron(F, S, eye), D)), target):
            bad.append("left antipode law")
        if not np.array_equal(F.matmul(m, F.matmul(kron(F, eye, S), D)), target):
            bad.append("right antipode law")
        if self.antipode.violations():
            bad.append("antipode is not an anti-homomorphism")
        return bad

    def is_valid(self) -> bool:
        return not self.violations()


def is_character(H: HopfData, f) -> bool:
    A = H.algebra
    f = np.asarray(f, dtype=object)
    if f @ A.unit != H.field.one:
        return False
    return all(f @ A.mult[i, j] == f[i] * f[j] for i in range(A.dim) for j in range(A.dim))


def left_integral_in(H: HopfData) -> np.ndarray:
    """Spanning vector of ``{t : h t = ε(h) t}``."""
    A, F = H.algebra, H.field
    eye = F.eye(A.dim)
    eqs = np.concatenate([A.left_mats[i] - eye * H.counit[i] for i in range(A.dim)])
    space = kernel(F, eqs)
    if space.dim != 1:
        raise ValueError("space of left integrals has dimension %d" % space.dim)
    return space.basis[0]


def modular_element(H: HopfData, t) -> np.ndarray:
    """The character ``G`` with ``t h = G(h) t``."""
    A, F = H.algebra, H.field
    t = np.asarray(t, dtype=object)
    k = next(i for i, v in enumerate(t) if v != 0)
    G = F.zeros(A.dim)
    for i in range(A.dim):
        th = multiply(A, t, A.basis_vector(i))
        G[i] = th[k] / t[k]
        if not np.array_equal(th, t * G[i]):
            raise ValueError("t h is not a multiple of t for h = %s" % A.names[i])
    if not is_character(H, G):
        raise ValueError("modular element is not a character")
    return G


def convolution(H: HopfData, f, g) -> np.ndarray:
    """``(f * g)(h) = (f ⊗ g)(Δ h)`` on every basis element."""
    return H.field.matmul(kron(H.field, f, g).reshape(1, -1),
                          H.comul)[0]


def convolution_order(H: HopfData, f, max_order: int) -> int | None:
    f = np.asarray(f, dtype=object)
    cur = f
    for k in range(1, max_order + 1):
        if np.array_equal(cur, H.counit):
            return k
        cur = convolution(H, cur, f)
    return None


def left_translation(H: HopfData, G) -> np.ndarray:
    """Matrix of ``h -> Σ h₁ G(h₂)``."""
    n = H.dim
    D = H.comul.reshape(n, n, n)
    return np.einsum("abi,b->ai", D, np.asarray(G, dtype=object))


@dataclass(frozen=True)
class LcmReport:
    s2_out_order: OrderResult
    modular_order: int | None
    pic_order: int | None
    holds: bool

    def summary(self) -> dict:
        return {"s2_out_order": self.s2_out_order.order, "modular_order": self.modular_order,
                "pic_order": self.pic_order, "lcm_holds": self.holds}


def theorem_A_check(H: HopfData, max_order: int, rng: Rng, trials: int = DEFAULT_TRIALS,
                    integral=None) -> LcmReport:
    """Compare the Picard order of ``[H*]`` with ``lcm(out-order of S², order of G)``."""
    from qfalg.frobenius import frobenius_witness, pic_order_probe

    S2 = H.antipode.compose(H.antipode)
    a = out_order(H.algebra, S2, max_order, rng, trials)
    b = convolution_order(H, modular_element(H, left_integral_in(H)), max_order)
    wit = frobenius_witness(H.algebra, integral) if integral is not None else None
    c = pic_order_probe(H.algebra, max_order, rng, trials, frobenius=wit).order
    holds = None not in (a.order, b, c) and c == math.lcm(a.order, b)
    return LcmReport(a, b, c, holds)


@dataclass(frozen=True, eq=False)
class RadfordCheck:
    """``holds`` is the comparison with G itself; ``holds_inverse`` uses G∘S.

    With t a left integral, t h = G(h) t and ν read off from λ(a r) = λ(r ν(a)),
    the two agree whenever G has order at most 2. Past that only the inverse
    character matches (Taft algebras with n = 3 are the smallest witness).
    """

    nakayama: np.ndarray
    predicted: np.ndarray
    holds: bool
    predicted_inverse: np.ndarray
    holds_inverse: bool


def nakayama_radford_identity(H: HopfData, integral) -> RadfordCheck:
    """Compare ν for the given form with ``S² ∘ (h -> Σ h₁ G(h₂))`` and with G replaced by G∘S."""
    from qfalg.frobenius import nakayama

    F = H.field
    nu = nakayama(H.algebra, integral).matrix
    G = modular_element(H, left_integral_in(H))
    S2 = F.matmul(H.antipode.matrix, H.antipode.matrix)
    pred = F.matmul(S2, left_translation(H, G))
    G_inv = F.matmul(np.asarray(G, dtype=object).reshape(1, -1), H.antipode.matrix).ravel()
    pred_inv = F.matmul(S2, left_translation(H, G_inv))
    return RadfordCheck(nu, pred, bool(np.array_equal(nu, pred)),
                        pred_inv, bool(np.array_equal(nu, pred_inv)))
