"""Finite-dimensional algebras given by structure constants.

An element is a coordinate vector in the declared basis.  ``mult[i, j, k]``
is the coefficient of basis ``k`` in the product ``e_i e_j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from qfalg import _kernels
from qfalg.exactla import (
    Field, LinearSubspace, Rng, inverse, is_nonsingular, kernel, solve,
)

EXHAUSTIVE_LIMIT = 10**6
DEFAULT_TRIALS = 8


@dataclass(frozen=True, eq=False)
class FDAlgebra:
    field: Field
    mult: np.ndarray
    unit: np.ndarray
    names: tuple[str, ...]

    @property
    def dim(self) -> int:
        return len(self.names)

    @classmethod
    def from_table(cls, F: Field, names, products, unit) -> "FDAlgebra":
        """Build from ``{(a, b): {c: coeff}}`` keyed by basis names; missing products are 0.

        ``unit`` is a ``{name: coeff}`` mapping.
        """
        names = tuple(names)
        index = {s: i for i, s in enumerate(names)}
        n = len(names)
        mult = F.zeros((n, n, n))
        for (a, b), value in products.items():
            for c, coeff in value.items():
                mult[index[a], index[b], index[c]] += F(coeff)
        u = F.zeros(n)
        for s, coeff in unit.items():
            u[index[s]] = F(coeff)
        return cls(F, mult, u, names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def basis_vector(self, name_or_index) -> np.ndarray:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return self.field.unit_vector(self.dim, i)

    def element(self, coeffs: dict) -> np.ndarray:
        v = self.field.zeros(self.dim)
        for s, c in coeffs.items():
            v[self.index(s)] += self.field(c)
        return v

    @cached_property
    def left_mats(self) -> np.ndarray:
        """``left_mats[i] @ v == e_i * v``."""
        return np.ascontiguousarray(self.mult.transpose(0, 2, 1))

    @cached_property
    def right_mats(self) -> np.ndarray:
        """``right_mats[i] @ v == v * e_i``."""
        return np.ascontiguousarray(self.mult.transpose(1, 2, 0))

    @cached_property
    def _nonzero(self):
        return [[[(k, self.mult[i, j, k]) for k in range(self.dim) if self.mult[i, j, k] != 0]
                 for j in range(self.dim)] for i in range(self.dim)]

    def left_matrix(self, a) -> np.ndarray:
        return _combine(self.left_mats, a)

    def right_matrix(self, a) -> np.ndarray:
        return _combine(self.right_mats, a)

    def fmt(self, v) -> str:
        terms = ["%s*%s" % (c, s) for c, s in zip(v, self.names) if c != 0]
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return "FDAlgebra(dim=%d, %s)" % (self.dim, self.field)


def same_algebra(A: FDAlgebra, B: FDAlgebra) -> bool:
    """Identical structure constants over the same field."""
    return A is B or (A.field is B.field and A.dim == B.dim and np.array_equal(A.mult, B.mult)
                      and np.array_equal(A.unit, B.unit))


def _combine(mats: np.ndarray, coeffs) -> np.ndarray:
    out = None
    for c, m in zip(coeffs, mats):
        if c != 0:
            out = m * c if out is None else out + m * c
    if out is None:
        out = np.empty(mats.shape[1:], dtype=object)
        out.fill(mats.flat[0] * 0)
    return out


def multiply(A: FDAlgebra, a, b) -> np.ndarray:
    """Bilinear product of two coordinate vectors."""
    if len(a) != A.dim or len(b) != A.dim:
        raise ValueError("element length does not match algebra dimension")
    out = A.field.zeros(A.dim)
    nz = A._nonzero
    bnz = [(j, y) for j, y in enumerate(b) if y != 0]
    for i, x in enumerate(a):
        if x == 0:
            continue
        row = nz[i]
        for j, y in bnz:
            xy = x * y
            for k, c in row[j]:
                out[k] += xy * c
    return out


def power(A: FDAlgebra, a, k: int) -> np.ndarray:
    out = A.unit.copy()
    for _ in range(k):
        out = multiply(A, out, a)
    return out


def check_algebra(A: FDAlgebra) -> list[tuple[str, tuple[str, ...]]]:
    """All violated associativity triples and unit laws; empty means valid."""
    F, n, c = A.field, A.dim, A.mult
    report = []
    flat = c.reshape(n * n, n)
    lhs = F.matmul(flat, c.reshape(n, n * n)).reshape(n, n, n, n)
    for i in range(n):
        rhs_i = F.matmul(flat, c[i]).reshape(n, n, n)
        for j, k in itertools.product(range(n), repeat=2):
            if not np.array_equal(lhs[i, j, k], rhs_i[j, k]):
                report.append(("assoc", (A.names[i], A.names[j], A.names[k])))
    left_u = A.left_matrix(A.unit)
    right_u = A.right_matrix(A.unit)
    eye = F.eye(n)
    for i in range(n):
        if not np.array_equal(left_u[:, i], eye[:, i]):
            report.append(("unit-left", (A.names[i],)))
        if not np.array_equal(right_u[:, i], eye[:, i]):
            report.append(("unit-right", (A.names[i],)))
    return report


def invert_element(A: FDAlgebra, a):
    """Two-sided inverse of ``a`` or ``None``."""
    x = solve(A.field, A.left_matrix(a), A.unit)
    if x is None:
        return None
    if not np.array_equal(multiply(A, x, a), A.unit):
        return None
    return x


def center(A: FDAlgebra) -> LinearSubspace:
    eqs = np.concatenate([A.left_mats[i] - A.right_mats[i] for i in range(A.dim)])
    return kernel(A.field, eqs)


def tensor_algebra(A: FDAlgebra, B: FDAlgebra) -> FDAlgebra:
    if A.field is not B.field:
        raise ValueError("tensor product needs a common field")
    na, nb = A.dim, B.dim
    c = np.multiply.outer(A.mult, B.mult).transpose(0, 3, 1, 4, 2, 5)
    c = c.reshape(na * nb, na * nb, na * nb)
    unit = np.multiply.outer(A.unit, B.unit).reshape(-1)
    names = tuple("%s⊗%s" % (a, b) for a in A.names for b in B.names)
    return FDAlgebra(A.field, np.ascontiguousarray(c), unit, names)


# ---------------------------------------------------------------------------
# Algebra maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AlgMap:
    """Linear map whose columns are the images of the source basis."""

    source: FDAlgebra
    target: FDAlgebra
    matrix: np.ndarray
    anti: bool = False

    def __call__(self, v):
        return self.matrix @ np.asarray(v, dtype=object)

    def compose(self, other: "AlgMap") -> "AlgMap":
        """``self ∘ other``."""
        return AlgMap(other.source, self.target, self.target.field.matmul(self.matrix, other.matrix),
                      self.anti != other.anti)

    def power(self, k: int) -> "AlgMap":
        out = identity_map(self.source)
        for _ in range(k):
            out = self.compose(out)
        return out

    def inverse(self) -> "AlgMap":
        inv = inverse(self.source.field, self.matrix)
        if inv is None:
            raise ValueError("map is not invertible")
        return AlgMap(self.target, self.source, inv, self.anti)

    def violations(self) -> list[tuple[str, ...]]:
        S, T = self.source, self.target
        bad = []
        images = [self.matrix[:, i] for i in range(S.dim)]
        for i, j in itertools.product(range(S.dim), repeat=2):
            lhs = self.matrix @ S.mult[i, j]
            rhs = multiply(T, images[j], images[i]) if self.anti else multiply(T, images[i], images[j])
            if not np.array_equal(lhs, rhs):
                bad.append((S.names[i], S.names[j]))
        if not np.array_equal(self.matrix @ S.unit, T.unit):
            bad.append(("unit",))
        return bad

    def is_homomorphism(self) -> bool:
        return not self.violations()

    def is_isomorphism(self) -> bool:
        return (self.source.dim == self.target.dim and is_nonsingular(self.source.field, self.matrix)
                and self.is_homomorphism())

    def is_automorphism(self) -> bool:
        return self.source is self.target and self.is_isomorphism()

    def __eq__(self, other):
        if not isinstance(other, AlgMap):
            return NotImplemented
        return self.anti == other.anti and np.array_equal(self.matrix, other.matrix)

    __hash__ = None


def identity_map(A: FDAlgebra) -> AlgMap:
    return AlgMap(A, A, A.field.eye(A.dim))


def algebra_map_from_images(A: FDAlgebra, B: FDAlgebra, images: dict, anti=False) -> AlgMap:
    """Map sending basis names of ``A`` to the given elements of ``B``."""
    m = B.field.zeros((B.dim, A.dim))
    for name, v in images.items():
        m[:, A.index(name)] = v
    return AlgMap(A, B, m, anti)


# ---------------------------------------------------------------------------
# Randomised search for nonsingular members of a linear pencil
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Search:
    """Outcome of a witness search.

    A positive outcome carries ``witness``.  A negative one is either exact
    (``method`` is ``"exhaustive"``, ``"empty"`` or ``"dimension"``) or sampled,
    in which case ``failure_bound`` bounds the probability that a witness
    exists but was missed.
    """

    witness: object = None
    method: str = ""
    trials: int = 0
    failure_bound: Fraction | None = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.witness is not None

    @property
    def exact(self) -> bool:
        return self.witness is not None or self.method in ("exhaustive", "empty", "dimension")

    def summary(self) -> dict:
        out = {"found": self.witness is not None, "method": self.method, "trials": self.trials}
        if self.failure_bound is not None:
            out["failure_bound"] = float(self.failure_bound)
            out["failure_bound_log2"] = _log2(self.failure_bound)
        out.update(self.detail)
        return out


def _log2(x: Fraction) -> float:
    if x == 0:
        return float("-inf")
    return x.numerator.bit_length() - x.denominator.bit_length()


def search_nonsingular(F: Field, mats, rng: Rng, trials: int = DEFAULT_TRIALS,
                       exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> Search:
    """Find coefficients ``t`` with ``sum t_k mats[k]`` nonsingular.

    Over GF(p) with ``p**d <= exhaustive_limit`` every coefficient vector is
    tried (exact answer).  Otherwise the pencil members and their sum are
    probed, then ``trials`` random points are tested and a miss is reported with the Schwartz-Zippel bound ``(m / |S|)**trials``.
    The witness is ``(coefficients, matrix)``.
    """
    mats = np.asarray(mats, dtype=object)
    d = mats.shape[0]
    if d == 0:
        return Search(None, "empty", 0, Fraction(0))
    m = mats.shape[1]
    flat = mats.reshape(d, m * m)
    if F.characteristic and F.characteristic ** d <= exhaustive_limit:
        return _exhaustive_nonsingular(F, flat, m)
    # cheap deterministic probes first: they give readable witnesses and do not enter the bound
    probes = list(F.eye(d)) + ([np.array([F.one] * d, dtype=object)] if d > 1 else [])
    for coeffs in probes:
        mat = F.matmul(coeffs, flat).reshape(m, m)
        if is_nonsingular(F, mat):
            return Search((coeffs, mat), "basis", 0)
    for t in range(trials):
        coeffs = np.array([F.random_scalar(rng) for _ in range(d)], dtype=object)
        mat = F.matmul(coeffs, flat).reshape(m, m)
        if is_nonsingular(F, mat):
            return Search((coeffs, mat), "sample", t + 1)
    bound = Fraction(m, F.sample_size(rng)) ** trials
    return Search(None, "sample", trials, min(bound, Fraction(1)))


def _exhaustive_nonsingular(F: Field, flat, m: int, chunk: int = 1 << 15) -> Search:
    p, d = F.characteristic, flat.shape[0]
    flat64 = F.to_int64(flat)
    total = p ** d
    for start in range(1, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = np.empty((idx.size, d), dtype=np.int64)
        rest = idx.copy()
        for k in range(d - 1, -1, -1):
            digits[:, k] = rest % p
            rest //= p
        pencil = _kernels.matmul_modp(digits, flat64, p).reshape(-1, m, m)
        dets = _kernels.batch_det_modp(pencil, p)
        hit = np.flatnonzero(dets)
        if hit.size:
            coeffs = F.from_int64(digits[hit[0]])
            return Search((coeffs, F.from_int64(pencil[hit[0]])), "exhaustive", int(idx[hit[0]]))
    return Search(None, "exhaustive", total - 1, Fraction(0))


def find_invertible_in_subspace(A: FDAlgebra, S: LinearSubspace, rng: Rng,
                                trials: int = DEFAULT_TRIALS) -> Search:
    """Invertible element of ``S`` (witness is the element) or a certified miss."""
    mats = np.array([A.left_matrix(b) for b in S.basis], dtype=object).reshape(S.dim, A.dim, A.dim)
    res = search_nonsingular(A.field, mats, rng, trials)
    if not res:
        return res
    coeffs, _ = res.witness
    u = coeffs @ S.basis
    if invert_element(A, u) is None:  # pragma: no cover - defensive
        raise AssertionError("nonsingular left multiplication without inverse")
    return Search(u, res.method, res.trials)


@dataclass(frozen=True, eq=False)
class InnerWitness:
    """``alpha(r) == u_inv * r * u`` for every basis ``r``."""

    u: np.ndarray
    u_inv: np.ndarray


def conjugation_space(A: FDAlgebra, alpha: AlgMap) -> LinearSubspace:
    """``{u : u * alpha(r) == r * u for all basis r}``."""
    blocks = [A.right_matrix(alpha.matrix[:, r]) - A.left_mats[r] for r in range(A.dim)]
    return kernel(A.field, np.concatenate(blocks))


def verify_inner(A: FDAlgebra, alpha: AlgMap, u) -> InnerWitness | None:
    u_inv = invert_element(A, u)
    if u_inv is None:
        return None
    for r in range(A.dim):
        conj = multiply(A, multiply(A, u_inv, A.basis_vector(r)), u)
        if not np.array_equal(conj, alpha.matrix[:, r]):
            return None
    return InnerWitness(u, u_inv)


def is_inner(A: FDAlgebra, alpha: AlgMap, rng: Rng, trials: int = DEFAULT_TRIALS) -> Search:
    """Search for ``u`` with ``alpha(r) = u^-1 r u``; witness is an InnerWitness."""
    if alpha.anti:
        raise ValueError("inner automorphisms are not anti-homomorphisms")
    space = conjugation_space(A, alpha)
    res = find_invertible_in_subspace(A, space, rng, trials)
    detail = {"space_dim": space.dim}
    if not res:
        return Search(None, res.method, res.trials, res.failure_bound, detail)
    wit = verify_inner(A, alpha, res.witness)
    if wit is None:  # pragma: no cover - defensive
        raise AssertionError("inner witness failed verification")
    return Search(wit, res.method, res.trials, None, detail)


@dataclass(frozen=True)
class OrderResult:
    order: int | None
    steps: tuple[Search, ...]

    def summary(self) -> dict:
        return {"order": self.order, "steps": [s.summary() for s in self.steps]}


def out_order(A: FDAlgebra, alpha: AlgMap, max_order: int, rng: Rng,
              trials: int = DEFAULT_TRIALS) -> OrderResult:
    """Least ``k <= max_order`` with ``alpha**k`` inner, with per-step evidence."""
    steps = []
    cur = identity_map(A)
    for k in range(1, max_order + 1):
        cur = alpha.compose(cur)
        res = is_inner(A, cur, rng, trials)
        steps.append(res)
        if res:
            return OrderResult(k, tuple(steps))
    return OrderResult(None, tuple(steps))
