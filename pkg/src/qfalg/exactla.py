"""Exact linear algebra over the rationals and prime fields.

Matrices and vectors are numpy object arrays whose entries are
:class:`fractions.Fraction` (over ``QQ``) or :class:`ModInt` (over ``GF(p)``),
so ordinary ``+``, ``-``, ``*`` and ``@`` are exact.  Row reduction goes through
the int64 kernels in :mod:`qfalg._kernels`; over the rationals it runs
multi-modularly and the reconstructed answer is verified before it is
returned.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, isqrt, lcm

import numpy as np

from qfalg import _kernels

__all__ = [
    "Field", "QQ", "GF", "ModInt", "field_from_name", "Rng",
    "LinearSubspace", "QuotientSpace",
    "rref", "rref_exact", "rank", "kernel", "solve", "inverse", "is_nonsingular",
    "span", "quotient_by", "random_vector", "is_prime",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class ModInt:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _c(self, o):
        if type(o) is ModInt:
            return o.v
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, o):
        o = self._c(o)
        return NotImplemented if o is NotImplemented else ModInt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._c(o)
        return NotImplemented if o is NotImplemented else ModInt(self.v - o, self.p)

    def __rsub__(self, o):
        o = self._c(o)
        return NotImplemented if o is NotImplemented else ModInt(o - self.v, self.p)

    def __mul__(self, o):
        o = self._c(o)
        return NotImplemented if o is NotImplemented else ModInt(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._c(o)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModInt(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, o):
        o = self._c(o)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModInt(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e):
        if e < 0:
            return ModInt(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return ModInt(pow(self.v, e, self.p), self.p)

    def __eq__(self, o):
        o = self._c(o)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __ne__(self, o):
        return not self == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return str(self.v)


class Field:
    """A ground field; calling it converts ints, Fractions and strings."""

    characteristic: int
    name: str

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def array(self, data) -> np.ndarray:
        a = np.array(data, dtype=object)
        out = np.empty(a.shape, dtype=object)
        for idx, x in np.ndenumerate(a):
            out[idx] = self(x)
        return out

    def zeros(self, shape) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        out.fill(self.zero)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def unit_vector(self, n: int, i: int) -> np.ndarray:
        v = self.zeros(n)
        v[i] = self.one
        return v

    def format(self, x) -> str:
        return str(self(x))

    def parse(self, s):
        return self(Fraction(s))

    def __repr__(self):
        return self.name


class RationalField(Field):
    characteristic = 0
    order = None
    name = "QQ"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, ModInt):
            raise TypeError("cannot coerce a residue into QQ")
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    def matmul(self, a, b):
        """Exact product; integral int64 fast path when the bounds allow."""
        a = np.asarray(a, dtype=object)
        b = np.asarray(b, dtype=object)
        vec_a, vec_b = a.ndim == 1, b.ndim == 1
        if vec_a:
            a = a.reshape(1, -1)
        if vec_b:
            b = b.reshape(-1, 1)
        an, ad = _integer_rows(a)
        bn, bd = _integer_rows(b.T)
        bn = bn.T
        inner = a.shape[1]
        amax = max((abs(x) for x in an.flat), default=0)
        bmax = max((abs(x) for x in bn.flat), default=0)
        if amax * bmax * max(inner, 1) < 2**62:
            prod = (an.astype(np.int64) @ bn.astype(np.int64)).astype(object)
        else:
            prod = an @ bn
        dd = np.multiply.outer(np.array(ad, dtype=object), np.array(bd, dtype=object))
        out = _to_fraction(prod, dd).astype(object)
        if vec_a and vec_b:
            return out[0, 0]
        if vec_a:
            return out[0]
        if vec_b:
            return out[:, 0]
        return out

    def random_scalar(self, rng: "Rng"):
        return Fraction(rng.integer())

    def sample_size(self, rng: "Rng") -> int:
        return 2 * rng.bound + 1


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError("%d is not prime" % p)
        if p >= _kernels.MAX_MODULUS:
            raise ValueError("prime fields need p < 2**31")
        self.characteristic = p
        self.order = p
        self.name = "GF(%d)" % p

    def __call__(self, x):
        p = self.characteristic
        if type(x) is ModInt:
            if x.p != p:
                raise TypeError("mixing residues of different moduli")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError("denominator divisible by %d" % p)
            return ModInt(x.numerator * pow(x.denominator, -1, p), p)
        return ModInt(int(x), p)

    def to_int64(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=object)
        p = self.characteristic
        flat = [x.v if type(x) is ModInt else self(x).v for x in a.flat]
        return np.array(flat, dtype=np.int64).reshape(a.shape) % p

    def from_int64(self, a) -> np.ndarray:
        p = self.characteristic
        out = np.empty(a.shape, dtype=object)
        for idx, x in np.ndenumerate(a):
            out[idx] = ModInt(int(x), p)
        return out

    def matmul(self, a, b):
        a = np.asarray(a, dtype=object)
        b = np.asarray(b, dtype=object)
        vec_a, vec_b = a.ndim == 1, b.ndim == 1
        a2 = a.reshape(1, -1) if vec_a else a
        b2 = b.reshape(-1, 1) if vec_b else b
        prod = self.from_int64(_kernels.matmul_modp(self.to_int64(a2), self.to_int64(b2),
                                                    self.characteristic))
        if vec_a and vec_b:
            return prod[0, 0]
        if vec_a:
            return prod[0]
        if vec_b:
            return prod[:, 0]
        return prod

    def random_scalar(self, rng: "Rng"):
        return ModInt(rng.below(self.characteristic), self.characteristic)

    def sample_size(self, rng: "Rng") -> int:
        return self.characteristic

    def format(self, x) -> str:
        return str(self(x).v)

    def elements(self):
        return [ModInt(i, self.characteristic) for i in range(self.characteristic)]

    def multiplicative_order(self, x) -> int:
        x = self(x)
        if not x:
            raise ValueError("zero has no multiplicative order")
        k, y = 1, x
        while y != 1:
            y = y * x
            k += 1
        return k


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str) -> Field:
    """Parse ``Q``/``QQ`` or ``F13``/``GF(13)``/``GF13``."""
    s = name.strip()
    if s in ("Q", "QQ", "rationals"):
        return QQ
    m = re.fullmatch(r"(?:F|GF|Fp)\(?(\d+)\)?", s)
    if m:
        return GF(int(m.group(1)))
    raise ValueError("unknown field %r" % name)


_numerator = np.frompyfunc(lambda x: x.numerator, 1, 1)
_denominator = np.frompyfunc(lambda x: x.denominator, 1, 1)
_to_fraction = np.frompyfunc(Fraction, 2, 1)


def _integer_rows(a: np.ndarray):
    """Split a 2-D rational array into integer rows and row denominators."""
    if a.size == 0:
        return np.zeros(a.shape, dtype=object), [1] * a.shape[0]
    den = _denominator(a)
    num = _numerator(a)
    if all(d == 1 for d in den.flat):
        return num, [1] * a.shape[0]
    dens = [reduce(lcm, set(row), 1) for row in den]
    scale = np.array(dens, dtype=object).reshape(-1, 1) // den
    return num * scale, dens


# ---------------------------------------------------------------------------
# Random sampling
# ---------------------------------------------------------------------------

class Rng:
    """Seeded source of integer samples in ``[-bound, bound]``.

    The default bound makes the rational sample set larger than ``2**60``.
    """

    def __init__(self, seed: int = 0, bound: int = 2**59):
        if bound < 1:
            raise ValueError("sample bound must be positive")
        self.seed = seed
        self.bound = bound
        self._r = random.Random(seed)

    def integer(self) -> int:
        return self._r.randint(-self.bound, self.bound)

    def integers(self, k: int) -> list[int]:
        return [self.integer() for _ in range(k)]

    def below(self, n: int) -> int:
        return self._r.randrange(n)

    def small(self, lo: int, hi: int) -> int:
        return self._r.randint(lo, hi)

    def spawn(self) -> "Rng":
        return Rng(self._r.getrandbits(64), self.bound)


# ---------------------------------------------------------------------------
# Row reduction
# ---------------------------------------------------------------------------

def rref_exact(F: Field, a) -> tuple[np.ndarray, list[int]]:
    """Gauss-Jordan elimination with field scalars; no kernels involved."""
    a = np.asarray(a, dtype=object)
    rows = [[F(x) for x in row] for row in a]
    ncols = a.shape[1] if a.ndim == 2 else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = F.one / rows[r][c]
        pr = [x * inv for x in rows[r]]
        rows[r] = pr
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    ri = rows[i]
                    rows[i] = [ri[j] - f * pr[j] if pr[j] != 0 else ri[j] for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    out = F.zeros((r, ncols))
    for i in range(r):
        out[i] = rows[i]
    return out, pivots


_PRIME_CACHE: list[int] = []


def _modular_primes():
    i = 0
    while True:
        while i >= len(_PRIME_CACHE):
            q = _PRIME_CACHE[-1] - 2 if _PRIME_CACHE else 2**31 - 1
            while not is_prime(q):
                q -= 2
            _PRIME_CACHE.append(q)
        yield _PRIME_CACHE[i]
        i += 1


def _ratrecon(a: int, m: int):
    """Rational n/d with n = a*d mod m and |n|, d <= sqrt(m/2), or None."""
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _kernel_from_rref(F: Field, r: np.ndarray, pivots, ncols: int) -> np.ndarray:
    """Columns spanning the null space of an RREF matrix (ncols x nullity)."""
    free = [j for j in range(ncols) if j not in set(pivots)]
    k = F.zeros((ncols, len(free)))
    for t, j in enumerate(free):
        k[j, t] = F.one
        for i, pc in enumerate(pivots):
            k[pc, t] = -r[i, j]
    return k


def _product_vanishes(m_int: np.ndarray, k: np.ndarray) -> bool:
    """Exact test of ``m_int @ k == 0`` for integer ``m_int`` and rational ``k``.

    Columns of ``k`` are scaled to integers; the product is checked modulo
    enough primes to exceed twice the Hadamard-type entry bound.
    """
    if k.shape[1] == 0 or m_int.shape[0] == 0:
        return True
    kn, _ = _integer_rows(k.T)
    kn = kn.T
    mmax = max((abs(x) for x in m_int.flat), default=0)
    kmax = max((abs(x) for x in kn.flat), default=0)
    bound = 2 * mmax * kmax * m_int.shape[1] + 1
    covered = 1
    for p in _modular_primes():
        mp = np.array((m_int % p).tolist(), dtype=np.int64).reshape(m_int.shape)
        kp = np.array((kn % p).tolist(), dtype=np.int64).reshape(kn.shape)
        if _kernels.matmul_modp(mp, kp, p).any():
            return False
        covered *= p
        if covered > bound:
            return True


_DIRECT_LIMIT = 150_000


def _rref_rational(a: np.ndarray):
    nrows, ncols = a.shape
    if nrows * ncols * min(nrows, ncols) <= _DIRECT_LIMIT:
        return rref_exact(QQ, a)
    m_int, _ = _integer_rows(a)
    best = None            # (rank, pivots)
    residues = None        # CRT-accumulated RREF entries
    modulus = 1
    previous = None
    for count, p in enumerate(_modular_primes()):
        if count > 400:
            break
        mp = np.array((m_int % p).tolist(), dtype=np.int64).reshape(m_int.shape)
        red, rk, piv = _kernels.rref_modp(mp, p)
        key = (rk, tuple(int(x) for x in piv))
        if best is not None:
            if rk < best[0] or (rk == best[0] and key[1] > best[1]):
                continue
        if best is None or key != best:
            best = key
            residues = red[:rk].astype(object)
            modulus = p
            previous = None
        else:
            red = red[:rk].astype(object)
            inv = pow(modulus % p, -1, p)
            residues = residues + modulus * (((red - residues) % p) * inv % p)
            modulus *= p
        rk, pivots = best[0], list(best[1])
        if rk == ncols:
            return QQ.eye(ncols), pivots
        if rk == 0:
            if not any(x != 0 for x in m_int.flat):
                return QQ.zeros((0, ncols)), []
            continue
        cand = QQ.zeros((rk, ncols))
        ok = True
        for idx, x in np.ndenumerate(residues):
            v = _ratrecon(int(x), modulus)
            if v is None:
                ok = False
                break
            cand[idx] = v
        if not ok:
            continue
        if previous is not None and np.array_equal(previous, cand):
            if _product_vanishes(m_int, _kernel_from_rref(QQ, cand, pivots, ncols)):
                return cand, pivots
        previous = cand
    return rref_exact(QQ, a)


def rref(F: Field, a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped, and pivot columns."""
    a = np.asarray(a, dtype=object)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-D array")
    if a.shape[0] == 0 or a.shape[1] == 0:
        return F.zeros((0, a.shape[1])), []
    if F.characteristic == 0:
        return _rref_rational(a)
    red, rk, piv = _kernels.rref_modp(F.to_int64(a), F.characteristic)
    return F.from_int64(red[:rk]), [int(x) for x in piv]


def rank(F: Field, a) -> int:
    return len(rref(F, a)[1])


def kernel(F: Field, a) -> "LinearSubspace":
    """Null space ``{x : a @ x = 0}`` as an echelon subspace."""
    a = np.asarray(a, dtype=object)
    ncols = a.shape[1]
    r, piv = rref(F, a)
    k = _kernel_from_rref(F, r, piv, ncols)
    return span(F, k.T, ncols)


def solve(F: Field, a, b):
    """A solution of ``a @ x = b`` or ``None`` when inconsistent."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.ndim != 2 or b.ndim != 1 or a.shape[0] != b.shape[0]:
        raise ValueError("dimension mismatch: %s vs %s" % (a.shape, b.shape))
    ncols = a.shape[1]
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    r, piv = rref(F, aug)
    if piv and piv[-1] == ncols:
        return None
    x = F.zeros(ncols)
    for i, c in enumerate(piv):
        x[c] = r[i, ncols]
    return x


def inverse(F: Field, a):
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    r, piv = rref(F, np.concatenate([a, F.eye(n)], axis=1))
    if piv[:n] != list(range(n)) or len(piv) < n:
        return None
    return r[:n, n:]


def is_nonsingular(F: Field, a) -> bool:
    """Exact nonsingularity test.

    A nonzero determinant modulo some prime certifies nonsingularity over
    QQ; otherwise the exact rank decides.
    """
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("square matrix expected")
    if n == 0:
        return True
    if F.characteristic:
        return bool(_kernels.batch_det_modp(F.to_int64(a)[None], F.characteristic)[0])
    m_int, _ = _integer_rows(a)
    for p, _ in zip(_modular_primes(), range(3)):
        mp = np.array((m_int % p).tolist(), dtype=np.int64).reshape(a.shape)
        if _kernels.batch_det_modp(mp[None], p)[0]:
            return True
    return rank(F, a) == n


# ---------------------------------------------------------------------------
# Subspaces and quotients
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LinearSubspace:
    """Subspace of ``F^ambient`` stored by its reduced echelon basis (rows)."""

    field: Field
    ambient: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other):
        if not isinstance(other, LinearSubspace):
            return NotImplemented
        return (self.ambient == other.ambient and self.pivots == other.pivots
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.ambient, self.pivots))

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=object)
        w = v - self.coordinates_unchecked(v) @ self.basis if self.dim else v
        return not any(x != 0 for x in w)

    def coordinates_unchecked(self, v):
        return np.array([v[c] for c in self.pivots], dtype=object)

    def coordinates(self, v):
        """Coordinates of ``v`` in the echelon basis; raises if ``v`` is outside."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return self.coordinates_unchecked(np.asarray(v, dtype=object))

    def __add__(self, other: "LinearSubspace") -> "LinearSubspace":
        return span(self.field, np.concatenate([self.basis, other.basis]), self.ambient)

    def contains_space(self, other: "LinearSubspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __repr__(self):
        return "LinearSubspace(dim=%d, ambient=%d, %s)" % (self.dim, self.ambient, self.field)


def _nonzeros(a: np.ndarray):
    idx = np.argwhere(a != 0)
    return [(int(i), int(j), a[i, j]) for i, j in idx]


def kron(F: Field, a, b, out: np.ndarray | None = None, sign: int = 1) -> np.ndarray:
    """Kronecker product touching only nonzero entries; optionally accumulates ``sign * kron`` into ``out``."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if b.ndim == 1:
        b = b.reshape(1, -1)
    rb, cb = b.shape
    if out is None:
        out = F.zeros((a.shape[0] * rb, a.shape[1] * cb))
    nz_b = _nonzeros(b)
    for i, j, x in _nonzeros(a):
        if sign < 0:
            x = -x
        for k, l, y in nz_b:
            out[i * rb + k, j * cb + l] += x * y
    return out


def span(F: Field, vectors, ambient: int | None = None) -> LinearSubspace:
    vecs = np.asarray(vectors, dtype=object)
    if ambient is None:
        ambient = vecs.shape[1]
    if vecs.size == 0:
        return LinearSubspace(F, ambient, F.zeros((0, ambient)), ())
    vecs = vecs.reshape(-1, ambient)
    r, piv = rref(F, vecs)
    return LinearSubspace(F, ambient, r, tuple(piv))


@dataclass(frozen=True, eq=False)
class QuotientSpace:
    """``F^ambient / relations`` with explicit projection and section.

    Quotient coordinates are the non-pivot coordinates of the relation basis;
    ``section`` maps them back to the matching standard basis vectors.
    """

    relations: LinearSubspace
    projection: np.ndarray
    section: np.ndarray
    free: tuple[int, ...] = field(default=())

    @property
    def ambient(self) -> int:
        return self.relations.ambient

    @property
    def dim(self) -> int:
        return self.projection.shape[0]

    def project(self, v):
        return self.relations.field.matmul(self.projection, np.asarray(v, dtype=object))

    def lift(self, q):
        return self.relations.field.matmul(self.section, np.asarray(q, dtype=object))


def quotient_by(relations: LinearSubspace) -> QuotientSpace:
    F = relations.field
    n = relations.ambient
    piv = relations.pivots
    free = tuple(j for j in range(n) if j not in set(piv))
    # reduced(v) = v - sum_k v[piv_k] * row_k ; keep free coordinates
    proj = F.zeros((len(free), n))
    for t, j in enumerate(free):
        proj[t, j] = F.one
    for k, pc in enumerate(piv):
        row = relations.basis[k]
        for t, j in enumerate(free):
            if row[j] != 0:
                proj[t, pc] = -row[j]
    sec = F.zeros((n, len(free)))
    for t, j in enumerate(free):
        sec[j, t] = F.one
    return QuotientSpace(relations, proj, sec, free)


def random_vector(space: LinearSubspace, rng: Rng):
    """Nonzero random vector of ``space`` with coordinates drawn from the Rng."""
    if space.dim == 0:
        raise ValueError("cannot sample from the zero subspace")
    F = space.field
    while True:
        coeffs = np.array([F.random_scalar(rng) for _ in range(space.dim)], dtype=object)
        if any(c != 0 for c in coeffs):
            return coeffs @ space.basis
