"""Constructors for the concrete algebras, maps and Hopf algebras used in the checks.

Basis orders are fixed here and define the JSON exports:

* ``nakayama_R``: ``E, X1, X2, Y1, Y2, F11, F12, F21, F22``
* ``morita_R``: matrix units ``e00, e01, e02, e10, e20, e11, e12, e21, e22``
* ``quantum_plane_quotient``: ``1, x, y, xy``
* ``nakayama_nesbitt``: ``1, x, y, z``
* ``quantum_line``: ``g x^j`` ordered group-element-major (index ``g * n + j``)
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from qfalg.algebra import AlgMap, FDAlgebra, algebra_map_from_images, multiply
from qfalg.bimodule import Bimodule, BimoduleMap, dual, regular, submodule, tensor_over
from qfalg.exactla import QQ, Field, inverse, span

R_NAMES = ("E", "X1", "X2", "Y1", "Y2", "F11", "F12", "F21", "F22")
MORITA_NAMES = ("e00", "e01", "e02", "e10", "e20", "e11", "e12", "e21", "e22")


# ---------------------------------------------------------------------------
# The 9-dimensional algebra and its Morita-ring form
# ---------------------------------------------------------------------------

def nakayama_R(F: Field = QQ) -> FDAlgebra:
    products = {("E", "E"): {"E": 1}}
    for i in (1, 2):
        products[("E", "X%d" % i)] = {"X%d" % i: 1}
        products[("Y%d" % i, "E")] = {"Y%d" % i: 1}
        for j in (1, 2):
            products[("F%d%d" % (i, j), "Y%d" % j)] = {"Y%d" % i: 1}
            products[("X%d" % i, "F%d%d" % (i, j))] = {"X%d" % j: 1}
            for r in (1, 2):
                products[("F%d%d" % (i, j), "F%d%d" % (j, r))] = {"F%d%d" % (i, r): 1}
    return FDAlgebra.from_table(F, R_NAMES, products, {"E": 1, "F11": 1, "F22": 1})


def _blocks(v):
    """Split a Morita-ring vector into ``(a, x, y, f)`` with x a row and y a column."""
    v = np.asarray(v, dtype=object)
    return v[0], v[1:3].reshape(1, 2), v[3:5].reshape(2, 1), v[5:9].reshape(2, 2)


def _unblock(F, a, x, y, f):
    out = F.zeros(9)
    out[0] = a
    out[1:3] = np.asarray(x, dtype=object).reshape(-1)
    out[3:5] = np.asarray(y, dtype=object).reshape(-1)
    out[5:9] = np.asarray(f, dtype=object).reshape(-1)
    return out


def morita_product(F: Field, u, v):
    """Block product; the off-diagonal blocks multiply to zero in both orders."""
    a, x, y, f = _blocks(u)
    b, x2, y2, f2 = _blocks(v)
    return _unblock(F, a * b, x2 * a + x @ f2, y * b + f @ y2, f @ f2)


def morita_R(F: Field = QQ) -> tuple[FDAlgebra, AlgMap]:
    """Morita-ring presentation and the algebra isomorphism ``nakayama_R -> morita_R``."""
    mult = F.zeros((9, 9, 9))
    for i, j in itertools.product(range(9), repeat=2):
        mult[i, j] = morita_product(F, F.unit_vector(9, i), F.unit_vector(9, j))
    unit = _unblock(F, F.one, F.zeros(2), F.zeros(2), F.eye(2))
    M = FDAlgebra(F, mult, unit, MORITA_NAMES)
    R = nakayama_R(F)
    iso = algebra_map_from_images(R, M, {r: M.basis_vector(m) for r, m in zip(R_NAMES, MORITA_NAMES)})
    return M, iso


@dataclass(frozen=True)
class MoritaAutParams:
    x1: tuple
    y1: tuple
    lam: object
    P: tuple

    def arrays(self, F: Field):
        x1 = F.array(self.x1).reshape(1, 2)
        y1 = F.array(self.y1).reshape(2, 1)
        P = F.array(self.P).reshape(2, 2)
        return x1, y1, F(self.lam), P

    def then(self, other: "MoritaAutParams", F: Field) -> "MoritaAutParams":
        """Parameters of ``other ∘ self`` from the composition law."""
        x1, y1, lam, P = self.arrays(F)
        x1b, y1b, lamb, Pb = other.arrays(F)
        Pb_inv = inverse(F, Pb)
        return MoritaAutParams(tuple((x1b + lamb * (x1 @ Pb_inv)).reshape(-1)),
                               tuple((y1b + Pb @ y1).reshape(-1)), lamb * lam,
                               tuple(map(tuple, Pb @ P)))


def morita_aut(params: MoritaAutParams, F: Field = QQ, algebra: FDAlgebra | None = None) -> AlgMap:
    x1, y1, lam, P = params.arrays(F)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    P_inv = inverse(F, P)
    if P_inv is None:
        raise ValueError("P must be invertible")
    M = algebra if algebra is not None else morita_R(F)[0]
    cols = []
    for i in range(9):
        a, x, y, f = _blocks(F.unit_vector(9, i))
        PfPi = P @ f @ P_inv
        cols.append(_unblock(F, a, x1 * a + lam * (x @ P_inv) - x1 @ PfPi,
                             y1 * a + P @ y - PfPi @ y1, PfPi))
    phi = AlgMap(M, M, np.array(cols, dtype=object).T.copy())
    if not phi.is_automorphism():  # pragma: no cover - would contradict the formula
        raise AssertionError("Morita automorphism failed verification")
    return phi


def morita_inner_element(params: MoritaAutParams, F: Field = QQ):
    """For ``lam == 1``: the element ``u`` with ``phi(r) = u^-1 r u``."""
    x1, y1, lam, P = params.arrays(F)
    P_inv = inverse(F, P)
    return _unblock(F, F.one, x1, -(P_inv @ y1), P_inv)


# ---------------------------------------------------------------------------
# The pairing R* (x)_R R* -> R and the indecomposable pieces
# ---------------------------------------------------------------------------

def varphi_table() -> dict[tuple[str, str], str]:
    """Nonzero dual-basis monomials ``a* (x) b*`` and their images in ``R``."""
    table = {}
    for i in (1, 2):
        table[("Y%d" % i, "X%d" % i)] = "E"
        table[("E", "Y%d" % i)] = "X%d" % i
        table[("X%d" % i, "E")] = "Y%d" % i
        for j in (1, 2):
            table[("X%d" % i, "Y%d" % j)] = "F%d%d" % (i, j)
            table[("Y%d" % i, "F%d%d" % (j, i))] = "X%d" % j
            table[("F%d%d" % (i, j), "X%d" % i)] = "Y%d" % j
    return table


def varphi_full(F: Field = QQ) -> np.ndarray:
    """The pairing on the full tensor square of ``R*`` as a ``9 x 81`` matrix."""
    out = F.zeros((9, 81))
    idx = {s: i for i, s in enumerate(R_NAMES)}
    for (a, b), c in varphi_table().items():
        out[idx[c], idx[a] * 9 + idx[b]] += F.one
    return out


def varphi_pairing(F: Field = QQ, algebra: FDAlgebra | None = None):
    """``R* (x)_R R* -> R`` as a verified bimodule isomorphism, with its tensor carrier."""
    R = algebra if algebra is not None else nakayama_R(F)
    D = dual(regular(R))
    T = tensor_over(D, D)
    full = varphi_full(F)
    if any(x != 0 for x in F.matmul(full, T.quotient.relations.basis.T).flat):
        raise AssertionError("pairing does not vanish on middle-linearity relations")
    phi = BimoduleMap(T, regular(R), F.matmul(full, T.quotient.section))
    if not phi.is_isomorphism("bimodule"):  # pragma: no cover
        raise AssertionError("pairing is not a bimodule isomorphism")
    return phi


def idempotent_ideal(A: FDAlgebra, e: str, side: str):
    """``A e`` (side='left', a left module) or ``e A`` (side='right')."""
    ev = A.basis_vector(e)
    vecs = [multiply(A, A.basis_vector(i), ev) if side == "left" else multiply(A, ev, A.basis_vector(i))
            for i in range(A.dim)]
    S = span(A.field, vecs, A.dim)
    V = regular(A)
    mod = submodule(Bimodule(A, V.left, None, V.names) if side == "left" else Bimodule(A, None, V.right, V.names), S)
    return mod, S


def indecomposable_pieces(F: Field = QQ, algebra: FDAlgebra | None = None) -> dict[str, Bimodule]:
    """One-sided ideals ``V1 = R F11, V1' = R F22, V2 = R E`` and ``U1 = E R, U2 = F11 R, U2' = F22 R``."""
    R = algebra if algebra is not None else nakayama_R(F)
    idems = {"V1": ("F11", "left"), "V1'": ("F22", "left"), "V2": ("E", "left"),
            "U1": ("E", "right"), "U2": ("F11", "right"), "U2'": ("F22", "right")}
    return {k: idempotent_ideal(R, e, side)[0] for k, (e, side) in idems.items()}


def dual_piece_maps(F: Field = QQ, algebra: FDAlgebra | None = None) -> dict[str, BimoduleMap]:
    """Left-module maps ``V1 -> U1*`` and ``V2 -> U2*`` given on named bases."""
    pieces = indecomposable_pieces(F, algebra)
    images = {"V1": ("U1", {"X1": "E", "F11": "X1", "F21": "X2"}),
              "V2": ("U2", {"Y1": "F11", "Y2": "F12", "E": "Y1"})}
    out = {}
    for v, (u, rule) in images.items():
        src, tgt = pieces[v], dual(pieces[u])
        m = F.zeros((tgt.dim, src.dim))
        for a, b in rule.items():
            m[tgt.names.index(b + "*"), src.names.index(a)] = F.one
        out[v] = BimoduleMap(src, tgt, m)
    return out


# ---------------------------------------------------------------------------
# Quantum planes and the Nakayama-Nesbitt algebras
# ---------------------------------------------------------------------------

class ParameterCoincidenceWarning(UserWarning):
    """A parameter became 1 only after reduction into the field (e.g. q = -1 in characteristic 2)."""


def _flag_collapse(F: Field, raw, label: str) -> None:
    if F.characteristic and F(raw) == F.one and not _is_literal_one(raw):
        warnings.warn("%s = %s equals 1 in characteristic %d" % (label, raw, F.characteristic),
                      ParameterCoincidenceWarning, stacklevel=3)


def _is_literal_one(x) -> bool:
    try:
        return Fraction(str(x)) == 1
    except (ValueError, ZeroDivisionError):
        return False


def quantum_plane_quotient(F: Field, q) -> FDAlgebra:
    """``K<x, y>/(x^2, y^2, yx - q xy)`` on the basis ``1, x, y, xy``.

    Warns with :class:`ParameterCoincidenceWarning` when ``q`` collapses to 1 in ``F``.
    """
    _flag_collapse(F, q, "q")
    q = F(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    products = {("x", "y"): {"xy": 1}, ("y", "x"): {"xy": q}}
    for b in ("1", "x", "y", "xy"):
        products[("1", b)] = {b: 1}
        if b != "1":
            products[(b, "1")] = {b: 1}
    return FDAlgebra.from_table(F, ("1", "x", "y", "xy"), products, {"1": 1})


def nakayama_nesbitt(F: Field, u, v) -> tuple[FDAlgebra, AlgMap]:
    """``x^2 = y^2 = 0, xy = u z, yx = v z`` and the isomorphism onto ``R_{v/u}``."""
    if F(u) == F(v) and u != v:
        warnings.warn("u = %s and v = %s coincide in characteristic %d" % (u, v, F.characteristic),
                      ParameterCoincidenceWarning, stacklevel=2)
    u, v = F(u), F(v)
    if u == 0 or v == 0:
        raise ValueError("u and v must be nonzero")
    products = {("x", "y"): {"z": u}, ("y", "x"): {"z": v}}
    for b in ("1", "x", "y", "z"):
        products[("1", b)] = {b: 1}
        if b != "1":
            products[(b, "1")] = {b: 1}
    A = FDAlgebra.from_table(F, ("1", "x", "y", "z"), products, {"1": 1})
    Rq = quantum_plane_quotient(F, v / u)
    iso = algebra_map_from_images(A, Rq, {"1": Rq.basis_vector("1"), "x": Rq.basis_vector("x"),
                                          "y": Rq.basis_vector("y"),
                                          "z": Rq.basis_vector("xy") * (F.one / u)})
    return A, iso


# ---------------------------------------------------------------------------
# Finite abelian groups, group algebras and quantum lines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroupSpec:
    orders: tuple[int, ...]

    def __post_init__(self):
        if any(d < 1 for d in self.orders):
            raise ValueError("cyclic orders must be positive")

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(d) for d in self.orders)))

    def index(self, g) -> int:
        return self.elements().index(self.normalize(g))

    def normalize(self, g) -> tuple[int, ...]:
        return tuple(a % d for a, d in zip(g, self.orders))

    def mul(self, g, h) -> tuple[int, ...]:
        return self.normalize(tuple(a + b for a, b in zip(g, h)))

    def inv(self, g) -> tuple[int, ...]:
        return self.normalize(tuple(-a for a in g))

    def power(self, g, k: int) -> tuple[int, ...]:
        return self.normalize(tuple(a * k for a in g))

    @property
    def identity(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.orders)

    def element_order(self, g) -> int:
        return reduce(math.lcm, (d // math.gcd(d, a) for a, d in zip(self.normalize(g), self.orders)), 1)

    def label(self, g) -> str:
        return ",".join(str(a) for a in g)


@dataclass(frozen=True)
class CharacterSpec:
    values: tuple

    def check(self, C: AbelianGroupSpec, F: Field):
        if len(self.values) != len(C.orders):
            raise ValueError("one character value per cyclic factor")
        for z, d in zip(self.values, C.orders):
            if F(z) ** d != F.one:
                raise ValueError("character value %s is not a %d-th root of unity" % (z, d))

    def __call__(self, g, F: Field):
        out = F.one
        for z, a in zip(self.values, g):
            out = out * F(z) ** a
        return out


def group_algebra(C: AbelianGroupSpec, F: Field = QQ):
    """``K C`` with ``g`` grouplike; returns HopfData."""
    from qfalg.hopf import HopfData

    els = C.elements()
    n = len(els)
    names = tuple("g" + C.label(g) for g in els)
    mult = F.zeros((n, n, n))
    for i, g in enumerate(els):
        for j, h in enumerate(els):
            mult[i, j, C.index(C.mul(g, h))] = F.one
    A = FDAlgebra(F, mult, F.unit_vector(n, C.index(C.identity)), names)
    comul = F.zeros((n * n, n))
    S = F.zeros((n, n))
    for i, g in enumerate(els):
        comul[i * n + i, i] = F.one
        S[C.index(C.inv(g)), i] = F.one
    counit = np.array([F.one] * n, dtype=object)
    return HopfData(A, counit, comul, AlgMap(A, A, S, anti=True))


def _multiplicative_order(F: Field, z, limit: int = 10**6) -> int | None:
    z = F(z)
    if z == 0:
        return None
    w = z
    for k in range(1, limit + 1):
        if w == F.one:
            return k
        w = w * z
    return None


def quantum_line(kind: str, C: AbelianGroupSpec, n: int, c, cstar: CharacterSpec, F: Field = QQ):
    """The Hopf algebras generated by ``K C`` and a ``(1, c)``-skew-primitive ``x``.

    ``x g = c*(g) g x``, ``Δ(x) = c ⊗ x + x ⊗ 1`` and ``x^n = c^n - 1`` (kind H1)
    or ``x^n = 0`` (kind H2).  Returns ``(hopf, integral)`` where the integral is
    the functional that is 1 on ``c^(1-n) x^(n-1)`` and 0 on other basis elements.
    """
    from qfalg.hopf import HopfData, tensor_multiply

    if kind not in ("H1", "H2"):
        raise ValueError("kind must be H1 or H2")
    if n < 2:
        raise ValueError("n must be at least 2")
    if F.characteristic and n % F.characteristic == 0:
        raise ValueError("no primitive %d-th root of unity in characteristic %d" % (n, F.characteristic))
    c = C.normalize(c)
    cstar.check(C, F)
    if _multiplicative_order(F, cstar(c, F), n) != n:
        raise ValueError("c*(c) must have multiplicative order exactly %d" % n)
    cn = C.power(c, n)
    if kind == "H1":
        if cn == C.identity:
            raise ValueError("H1 needs c^n != 1")
        if any(F(z) ** n != F.one for z in cstar.values):
            raise ValueError("H1 needs (c*)^n = 1")

    els = C.elements()
    size = len(els) * n

    def idx(g, j):
        return C.index(g) * n + j

    names = tuple("g%s" % C.label(g) + ("" if j == 0 else "*x" if j == 1 else "*x^%d" % j)
                  for g in els for j in range(n))
    mult = F.zeros((size, size, size))
    for g, i, h, j in itertools.product(els, range(n), els, range(n)):
        coeff = cstar(h, F) ** i
        gh = C.mul(g, h)
        a, b = idx(g, i), idx(h, j)
        if i + j < n:
            mult[a, b, idx(gh, i + j)] += coeff
        elif kind == "H1":
            mult[a, b, idx(C.mul(gh, cn), i + j - n)] += coeff
            mult[a, b, idx(gh, i + j - n)] -= coeff
    A = FDAlgebra(F, mult, F.unit_vector(size, idx(C.identity, 0)), names)

    def vec(g, j):
        return F.unit_vector(size, idx(g, j))

    x = vec(C.identity, 1)
    delta_x = (np.multiply.outer(vec(c, 0), x) + np.multiply.outer(x, vec(C.identity, 0))).reshape(-1)
    c_inv = C.inv(c)
    s_x = -multiply(A, vec(c_inv, 0), x)
    comul = F.zeros((size * size, size))
    S = F.zeros((size, size))
    for g in els:
        dg = np.multiply.outer(vec(g, 0), vec(g, 0)).reshape(-1)
        sg = vec(C.inv(g), 0)
        d, s = dg, sg
        for j in range(n):
            comul[:, idx(g, j)] = d
            S[:, idx(g, j)] = s
            d = tensor_multiply(A, d, delta_x)
            s = multiply(A, s_x, s)
    counit = F.zeros(size)
    for g in els:
        counit[idx(g, 0)] = F.one
    lam = F.zeros(size)
    lam[idx(C.power(c, 1 - n), n - 1)] = F.one
    return HopfData(A, counit, comul, AlgMap(A, A, S, anti=True)), lam


def sweedler(F: Field = QQ):
    """Sweedler's 4-dimensional algebra as ``H2(C2, 2, c, c*(c) = -1)``."""
    return quantum_line("H2", AbelianGroupSpec((2,)), 2, (1,), CharacterSpec((-1,)), F)


def quantum_line_order_formula(C: AbelianGroupSpec, n: int, c, cstar: CharacterSpec, F: Field) -> int:
    """``m / gcd(m / n, n - 1)`` with ``m`` the order of the character ``c*``."""
    m = reduce(math.lcm, (_multiplicative_order(F, z) for z in cstar.values), 1)
    return m // math.gcd(m // n, n - 1)
