"""The polynomials ``D_i(s)``, the group ring ``Z[C_p]`` and a nilpotent-operator lemma.

``D_i(s) = sum_{j=0}^{p-i-1} C(p-j-1, i) s^j``.  With ``sigma`` a generator of
``C_p`` acting on a free rank-one module with basis ``alpha``, the element
``A_i = D_i(sigma) alpha`` satisfies ``(sigma - 1) A_i = A_{i-1} - C(p, i) alpha``;
this is the additive form of a multiplicative Kummer-theoretic identity, with
exponents cleared of their ``1/p`` denominators.

Integer polynomials and group-ring elements use Python integers.  Linear maps
over ``Z/p`` use numpy ``int64`` arrays reduced after every product; entries
stay below ``d p^2``, far from overflow for the sizes used here.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import zip_longest

import numpy as np

from .arith import is_prime, require_prime
from .errors import DomainError, InvalidParameter
from .report import Report


def binom(a: int, b: int) -> int:
    """``C(a, b)``, zero when ``b < 0``, ``a < 0`` or ``a < b``."""
    if b < 0 or a < 0 or a < b:
        return 0
    return math.comb(a, b)


# --- integer polynomials --------------------------------------------------


@dataclass(frozen=True)
class IntPoly:
    """Polynomial over ``Z`` with ascending coefficients, trailing zeros trimmed."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def s(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __add__(self, other):
        other = _as_poly(other)
        return IntPoly(tuple(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __call__(self, x):
        """Horner evaluation; ``x`` may be an int or a :class:`GroupRingElem`."""
        if isinstance(x, GroupRingElem):
            acc = GroupRingElem.zero(x.p)
            for c in reversed(self.coeffs):
                acc = acc * x + GroupRingElem.scalar(x.p, c)
            return acc
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reduce_mod(self, p: int) -> "IntPoly":
        return IntPoly(tuple(c % p for c in self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c:
                mono = "" if j == 0 else "s" if j == 1 else f"s^{j}"
                parts.append(str(c) if not mono else mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


def _as_poly(x) -> IntPoly:
    return x if isinstance(x, IntPoly) else IntPoly((int(x),))


def d_poly(p: int, i: int) -> IntPoly:
    require_prime(p)
    if not 0 <= i <= p - 1:
        raise InvalidParameter(f"need 0 <= i <= p-1, got i={i}, p={p}")
    return IntPoly(tuple(binom(p - j - 1, i) for j in range(p - i)))


# --- the group ring Z[C_p] ------------------------------------------------


@dataclass(frozen=True)
class GroupRingElem:
    """``sum_t c_t sigma^t`` in ``Z[C_p]``."""

    p: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.p:
            raise InvalidParameter(f"need exactly {self.p} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def zero(cls, p: int) -> "GroupRingElem":
        return cls(p, (0,) * p)

    @classmethod
    def scalar(cls, p: int, c: int) -> "GroupRingElem":
        return cls(p, (c,) + (0,) * (p - 1))

    @classmethod
    def sigma(cls, p: int, t: int = 1) -> "GroupRingElem":
        c = [0] * p
        c[t % p] = 1
        return cls(p, tuple(c))

    @classmethod
    def from_poly(cls, f: IntPoly, p: int) -> "GroupRingElem":
        """Image of ``f`` under ``s -> sigma``, folding exponents mod ``p``."""
        c = [0] * p
        for j, a in enumerate(f.coeffs):
            c[j % p] += a
        return cls(p, tuple(c))

    def _other(self, other) -> "GroupRingElem":
        if isinstance(other, GroupRingElem):
            if other.p != self.p:
                raise InvalidParameter("group rings of different primes")
            return other
        return GroupRingElem.scalar(self.p, int(other))

    def __add__(self, other):
        o = self._other(other)
        return GroupRingElem(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElem(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[(i + j) % p] += a * b
        return GroupRingElem(p, tuple(out))

    __rmul__ = __mul__

    def reduce_mod(self, q: int) -> "GroupRingElem":
        return GroupRingElem(self.p, tuple(c % q for c in self.coeffs))

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self):
        return " + ".join(f"{c}*sigma^{t}" for t, c in enumerate(self.coeffs) if c) or "0"


def norm_element(p: int) -> GroupRingElem:
    return GroupRingElem(p, (1,) * p)


# --- identity checks ------------------------------------------------------


def lemma_di_check(p: int) -> Report:
    """``(s - 1) D_i(s) = D_{i-1}(s) - C(p, i)`` as integer polynomials, ``1 <= i <= p-1``."""
    require_prime(p)
    rep = Report("D_i recurrence", {"p": p})
    s = IntPoly.s()
    rep.expect_equal("D_0 = 1 + s + ... + s^(p-1)", (1,) * p, d_poly(p, 0).coeffs, "D_0 is the norm polynomial")
    for i in range(1, p):
        lhs = (s - 1) * d_poly(p, i)
        rhs = d_poly(p, i - 1) - binom(p, i)
        rep.check(f"(s-1) D_{i} = D_{i - 1} - C({p},{i})", lhs == rhs,
                  "(s-1) D_i(s) = D_{i-1}(s) - C(p,i)", list(rhs.coeffs), list(lhs.coeffs))
        rep.expect_equal(f"deg D_{i} = p-i-1", p - i - 1, d_poly(p, i).degree, "degree of D_i")
    return rep


def _A(p: int, i: int) -> GroupRingElem:
    # A_i = D_i(sigma) applied to the basis vector alpha = sigma^0
    return d_poly(p, i)(GroupRingElem.sigma(p)) * GroupRingElem.scalar(p, 1)


def module_recurrence_check(p: int) -> Report:
    """``(sigma - 1) A_i = A_{i-1} - C(p, i) alpha`` in ``Z[C_p]``, and ``A_0`` is the norm."""
    require_prime(p)
    rep = Report("group-ring recurrence", {"p": p})
    sigma = GroupRingElem.sigma(p)
    one = GroupRingElem.scalar(p, 1)
    A0 = _A(p, 0)
    rep.expect_equal("A_0 = norm of alpha", norm_element(p).to_list(), A0.to_list(),
                     "A_0 = D_0(sigma)(alpha) = N(alpha) = b")
    rep.expect_equal("sigma A_0 = A_0", A0.to_list(), (sigma * A0).to_list(), "the norm is sigma-invariant")
    for i in range(1, p):
        Ai, Aprev = _A(p, i), _A(p, i - 1)
        lhs = (sigma - 1) * Ai
        rhs = Aprev - binom(p, i) * one
        rep.check(f"(sigma-1) A_{i} = A_{i - 1} - C({p},{i}) alpha", lhs == rhs,
                  "sigma(A_i)/A_i = A_{i-1}/alpha^C(p,i)", rhs.to_list(), lhs.to_list())
        rep.check(f"(sigma-1) A_{i} = A_{i - 1} mod p", lhs.reduce_mod(p) == Aprev.reduce_mod(p),
                  "p | C(p,i) for 1 <= i <= p-1")
        folded = GroupRingElem.from_poly(d_poly(p, i), p)
        rep.check(f"D_{i}(sigma) by Horner = folded coefficients", folded == Ai,
                  "substituting s -> sigma commutes with s^p -> 1")
    return rep


def correction_coefficient(p: int, n: int, t: int, i: int) -> int:
    """``c_{n,t,i} = sum_{l=0}^{i-1} C(n-1-t, l) C(p, i-l)``."""
    return sum(binom(n - 1 - t, l) * binom(p, i - l) for l in range(i))


def tower_rhs(p: int, i: int, n: int) -> GroupRingElem:
    """``sum_j C(n,j) D_{i-j}(sigma) - sum_{t<n} c_{n,t,i} sigma^t``."""
    sigma = GroupRingElem.sigma(p)
    acc = GroupRingElem.zero(p)
    for j in range(i + 1):
        acc = acc + binom(n, j) * d_poly(p, i - j)(sigma)
    for t in range(n):
        acc = acc - correction_coefficient(p, n, t, i) * GroupRingElem.sigma(p, t)
    return acc


def tower_induction_check(p: int, i: int, n: int) -> Report:
    """``sigma^n D_i(sigma)`` against its binomial expansion with correction terms.

    At ``n = p`` also checks that the expansion collapses back to ``D_i(sigma)``,
    that is ``sum_{j>=1} C(p,j) D_{i-j}(sigma) = sum_t c_{p,t,i} sigma^t``.
    """
    require_prime(p)
    if not 1 <= i <= p - 1 or not 1 <= n <= p:
        raise InvalidParameter(f"need 1 <= i <= p-1 and 1 <= n <= p, got i={i}, n={n}")
    rep = Report("tower induction", {"p": p, "i": i, "n": n})
    sigma = GroupRingElem.sigma(p)
    Di = d_poly(p, i)(sigma)
    lhs = GroupRingElem.sigma(p, n) * Di
    rhs = tower_rhs(p, i, n)
    rep.check(f"sigma^{n} D_{i} = binomial expansion", lhs == rhs,
              "sigma^n(A_i) = prod_j A_{i-j}^C(n,j) times correction factors", rhs.to_list(), lhs.to_list())
    if n == 1:
        rec = Di + d_poly(p, i - 1)(sigma) - binom(p, i)
        rep.check("n = 1 is the one-step recurrence", rhs == rec, "(sigma-1) A_i = A_{i-1} - C(p,i) alpha")
    if n == p:
        left = GroupRingElem.zero(p)
        for j in range(1, i + 1):
            left = left + binom(p, j) * d_poly(p, i - j)(sigma)
        right = GroupRingElem.zero(p)
        for t in range(p):
            right = right + correction_coefficient(p, p, t, i) * GroupRingElem.sigma(p, t)
        rep.check("n = p: correction terms cancel the binomial tail", left == right,
                  "sigma^p fixes the p-th root of A_i", right.to_list(), left.to_list())
        rep.check("n = p: sigma^p D_i = D_i", lhs == Di, "sigma^p = 1")
    rep.data.update({"lhs": lhs.to_list(), "rhs": rhs.to_list()})
    return rep


# --- linear algebra over Z/p ----------------------------------------------


class FpLinearMap:
    """Square matrix over ``Z/p`` acting on column vectors."""

    def __init__(self, matrix, p: int):
        require_prime(p)
        m = np.asarray(matrix, dtype=np.int64) % p
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidParameter(f"need a square matrix, got shape {m.shape}")
        self.p = p
        self.matrix = m
        self.matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: "FpLinearMap") -> "FpLinearMap":
        return FpLinearMap(self.matrix @ other.matrix, self.p)

    def apply(self, v) -> np.ndarray:
        return (self.matrix @ (np.asarray(v, dtype=np.int64) % self.p)) % self.p

    def power(self, e: int) -> "FpLinearMap":
        out = FpLinearMap(np.eye(self.dim, dtype=np.int64), self.p)
        base = self
        while e:
            if e & 1:
                out = out @ base
            e >>= 1
            if e:
                base = base @ base
        return out

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def nilpotency_index(self) -> int | None:
        """Smallest ``e`` with ``N^e = 0``, or ``None`` if ``N^dim != 0``."""
        cur = FpLinearMap(np.eye(self.dim, dtype=np.int64), self.p)
        for e in range(self.dim + 1):
            if cur.is_zero():
                return e
            cur = cur @ self
        return None

    def is_nilpotent(self) -> bool:
        return self.nilpotency_index() is not None


def rank_mod_p(rows, p: int) -> int:
    """Rank over ``Z/p`` by Gaussian elimination."""
    a = np.array(rows, dtype=np.int64) % p
    if a.size == 0:
        return 0
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        piv = np.nonzero(a[r:, c])[0]
        if piv.size == 0:
            continue
        j = r + piv[0]
        a[[r, j]] = a[[j, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        r += 1
        if r == nrows:
            break
    return r


def krylov_vectors(N: FpLinearMap, v, k: int) -> np.ndarray:
    """Rows ``v, N v, ..., N^k v``."""
    out = [np.asarray(v, dtype=np.int64) % N.p]
    for _ in range(k):
        out.append(N.apply(out[-1]))
    return np.array(out)


def nilpotent_independence_check(N: FpLinearMap, v, k: int) -> bool:
    """Whether ``v, N v, ..., N^k v`` are linearly independent over ``Z/p``.

    Requires ``N`` nilpotent and ``N^k v != 0``; under those conditions the
    answer is always ``True``.
    """
    if k < 0:
        raise InvalidParameter(f"k must be >= 0, got {k}")
    v = np.asarray(v, dtype=np.int64) % N.p
    if v.shape != (N.dim,):
        raise InvalidParameter(f"vector of length {N.dim} expected, got shape {v.shape}")
    if not N.is_nilpotent():
        raise DomainError("operator is not nilpotent")
    vecs = krylov_vectors(N, v, k)
    if not vecs[-1].any():
        raise DomainError(f"N^{k} v = 0")
    return rank_mod_p(vecs, N.p) == k + 1


def _unit_triangular(rng: random.Random, d: int, p: int, lower: bool) -> np.ndarray:
    m = np.eye(d, dtype=np.int64)
    for i in range(d):
        for j in range(d):
            if (j < i if lower else j > i):
                m[i, j] = rng.randrange(p)
    return m


def _unit_triangular_inverse(m: np.ndarray, p: int, lower: bool) -> np.ndarray:
    # forward/back substitution against the identity
    d = m.shape[0]
    x = np.eye(d, dtype=np.int64)
    order = range(d) if lower else range(d - 1, -1, -1)
    for i in order:
        rng_t = range(i) if lower else range(i + 1, d)
        for t in rng_t:
            x[i] = (x[i] - m[i, t] * x[t]) % p
    return x


def random_nilpotent(rng: random.Random, d: int, p: int, density: float = 0.5) -> FpLinearMap:
    """``P T P^-1`` with ``T`` strictly upper triangular and ``P = Perm L U``."""
    T = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        for j in range(i + 1, d):
            if rng.random() < density:
                T[i, j] = rng.randrange(p)
    L = _unit_triangular(rng, d, p, lower=True)
    U = _unit_triangular(rng, d, p, lower=False)
    perm = list(range(d))
    rng.shuffle(perm)
    Pm = np.eye(d, dtype=np.int64)[perm]
    P = Pm @ L @ U % p
    P_inv = _unit_triangular_inverse(U, p, lower=False) @ _unit_triangular_inverse(L, p, lower=True) @ Pm.T % p
    return FpLinearMap(P @ T % p @ P_inv, p)


def random_instance(rng: random.Random, d: int, p: int):
    """Random ``(N, v, k)`` with ``N`` nilpotent and ``N^k v != 0``."""
    N = random_nilpotent(rng, d, p, density=rng.random())
    while True:
        v = np.array([rng.randrange(p) for _ in range(d)], dtype=np.int64)
        if v.any():
            break
    # longest chain for this v, then a random k along it
    vecs = [v]
    while True:
        w = N.apply(vecs[-1])
        if not w.any():
            break
        vecs.append(w)
    k = rng.randrange(len(vecs))
    return N, v, k


def nilpotent_suite(count: int, seed: int = 0, primes=(3, 5), max_dim: int = 20) -> Report:
    """Seeded random instances of the independence lemma."""
    rng = random.Random(seed)
    rep = Report("nilpotent independence", {"count": count, "seed": seed, "primes": list(primes), "max_dim": max_dim})
    failures = []
    for n in range(count):
        p = rng.choice(primes)
        d = rng.randint(1, max_dim)
        N, v, k = random_instance(rng, d, p)
        if not nilpotent_independence_check(N, v, k):
            failures.append({"index": n, "p": p, "d": d, "k": k})
    rep.check("v, Nv, ..., N^k v independent whenever N^k v != 0", not failures,
              "N nilpotent, N^k v != 0 implies independence", [], failures[:5])
    rep.data["instances"] = count
    return rep


def dpoly_suite(p: int) -> Report:
    """All group-ring identities for one prime."""
    rep = Report("D_i identities", {"p": p})
    parts = [lemma_di_check(p), module_recurrence_check(p)]
    parts += [tower_induction_check(p, i, n) for i in range(1, p) for n in range(1, p + 1)]
    for part in parts:
        prefix = ", ".join(f"{k}={v}" for k, v in part.params.items() if k != "p")
        for c in part.checks:
            c.name = f"{part.title}{' (' + prefix + ')' if prefix else ''}: {c.name}"
            rep.checks.append(c)
    return rep


def primes_up_to(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if is_prime(q)]
