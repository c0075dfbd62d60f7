"""Exact integer arithmetic: p-adic valuations and truncated p-adic log/exp.

Everything here works on Python integers and :class:`fractions.Fraction`;
there is no floating point.  A :class:`PadicInt` is a residue modulo
``p**precision``.  The log and exp series are evaluated exactly on an integer
representative and then reduced, which is lossless because both maps are
isometries on their convergence domains.  The only place digits are lost is
:func:`solve_power_exponent`, which divides two logarithms of valuation ``k``
and therefore returns ``precision - k`` digits.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import DomainError, InvalidParameter


@total_ordering
class _Infinite:
    """Valuation of zero. Compares greater than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("infinite")

    def __repr__(self):
        return "infinite"

    def __add__(self, other):
        return self

    __radd__ = __add__


INFINITE = _Infinite()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidParameter(f"p={p!r} is not prime")


def vp(n: int, p: int):
    """Exponent of the largest power of ``p`` dividing ``n``; ``INFINITE`` for 0."""
    require_prime(p)
    if n == 0:
        return INFINITE
    n = abs(n)
    e = 0
    # strip large powers first so huge valuations stay cheap
    step, q = 1, p
    while True:
        r, m = divmod(n, q)
        if m:
            if step == 1:
                return e
            step, q = 1, p
            continue
        n = r
        e += step
        step, q = step * 2, q * q


def unit_power_valuation(p: int, alpha: int, n: int) -> int:
    """``v_p((1 + alpha)**n - 1)`` computed by exact expansion.

    On the domain ``v_p(alpha) >= 1`` (``>= 2`` when ``p == 2``) this equals
    ``v_p(alpha) + v_p(n)``; outside it the identity can fail, so the input is
    rejected.
    """
    require_prime(p)
    if n < 1:
        raise InvalidParameter(f"n must be positive, got {n}")
    va = vp(alpha, p)
    if va is INFINITE or va < (2 if p == 2 else 1):
        raise DomainError(f"v_{p}(alpha) = {va} outside the identity's domain")
    return vp((1 + alpha) ** n - 1, p)


@dataclass(frozen=True)
class PadicInt:
    """Element of ``Z_p`` known modulo ``p**precision``."""

    p: int
    precision: int
    residue: int

    def __post_init__(self):
        require_prime(self.p)
        if self.precision < 1:
            raise InvalidParameter(f"precision must be >= 1, got {self.precision}")
        object.__setattr__(self, "residue", self.residue % self.p**self.precision)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def valuation(self):
        """Valuation of the residue; ``INFINITE`` when it is 0 at this precision."""
        return vp(self.residue, self.p)

    def _coerce(self, other) -> "PadicInt":
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise InvalidParameter("mixed primes")
            return other
        return PadicInt(self.p, self.precision, other)

    def __add__(self, other):
        o = self._coerce(other)
        return PadicInt(self.p, min(self.precision, o.precision), self.residue + o.residue)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return PadicInt(self.p, min(self.precision, o.precision), self.residue - o.residue)

    def __neg__(self):
        return PadicInt(self.p, self.precision, -self.residue)

    def __mul__(self, other):
        o = self._coerce(other)
        return PadicInt(self.p, min(self.precision, o.precision), self.residue * o.residue)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise DomainError("not a p-adic unit")
        return PadicInt(self.p, self.precision, pow(self.residue, -1, self.modulus))

    def congruent(self, other: int, precision: int | None = None) -> bool:
        n = self.precision if precision is None else precision
        return (self.residue - other) % self.p**n == 0

    def __repr__(self):
        return f"PadicInt({self.residue} mod {self.p}^{self.precision})"


def _convergence_floor(p: int) -> int:
    # smallest n with n > 1/(p-1)
    return 2 if p == 2 else 1


def _reduce(q: Fraction, p: int, precision: int) -> int:
    mod = p**precision
    if q.denominator % p == 0:
        raise DomainError("series sum has p in its denominator")
    return q.numerator * pow(q.denominator, -1, mod) % mod


def padic_log(u: PadicInt) -> PadicInt:
    """Truncated series ``sum (-1)**(i+1) (u-1)**i / i`` at the input precision."""
    p, N = u.p, u.precision
    x = u.residue - 1
    if x % p**N == 0:
        return PadicInt(p, N, 0)
    n = vp(x, p)
    if n < _convergence_floor(p):
        raise DomainError(f"log needs u = 1 mod p^{_convergence_floor(p)}, got {u}")
    total = Fraction(0)
    xi = 1
    i = 0
    while True:
        i += 1
        xi *= x
        # v(x^i / i) >= i*n - floor(log_p i); the bound increases with i
        if i * n - _ilog(i, p) >= N:
            break
        term = Fraction(xi, i)
        total += term if i % 2 else -term
    return PadicInt(p, N, _reduce(total, p, N))


def padic_exp(x: PadicInt) -> PadicInt:
    """Truncated series ``sum x**i / i!`` at the input precision."""
    p, N = x.p, x.precision
    if x.residue == 0:
        return PadicInt(p, N, 1)
    n = vp(x.residue, p)
    if n < _convergence_floor(p):
        raise DomainError(f"exp needs v_p(x) >= {_convergence_floor(p)}, got {x}")
    total = Fraction(1)
    term = Fraction(1)
    i = 0
    while True:
        i += 1
        # v(x^i / i!) >= i*n - (i-1)/(p-1), increasing in i on this domain
        if (i * n) * (p - 1) - (i - 1) >= N * (p - 1):
            break
        term = term * x.residue / i
        total += term
    return PadicInt(p, N, _reduce(total, p, N))


def _ilog(i: int, p: int) -> int:
    e = 0
    while i >= p:
        i //= p
        e += 1
    return e


def solve_power_exponent(p: int, k: int, u, N: int) -> PadicInt:
    """Return ``v`` with ``(1 + p**k u)**v == 1 + p**k`` in ``Z_p``.

    ``v = log(1 + p**k) / log(1 + p**k u)``.  Both logarithms are known to
    ``N`` digits and have valuation exactly ``k``, so ``v`` is known to
    ``N - k`` digits.  An error of ``p**(N-k)`` in the exponent moves the
    power by a factor in ``1 + p**N Z_p``, so :func:`unit_pow` reproduces
    ``1 + p**k`` modulo ``p**N``.
    """
    require_prime(p)
    if k < _convergence_floor(p):
        raise DomainError(f"k={k} violates k > 1/(p-1) for p={p}")
    if N <= k:
        raise InvalidParameter(f"precision N={N} must exceed k={k}")
    u_res = u.residue if isinstance(u, PadicInt) else u
    if u_res % p == 0:
        raise DomainError("u must be a p-adic unit")
    pk = p**k
    a = padic_log(PadicInt(p, N, 1 + pk))
    b = padic_log(PadicInt(p, N, 1 + pk * u_res))
    if a.valuation() != k or b.valuation() != k:
        raise DomainError("logarithms do not have valuation k")
    out = N - k
    mod = p**out
    v = (a.residue // pk) * pow(b.residue // pk, -1, mod) % mod
    return PadicInt(p, out, v)


def unit_pow(base: int, v: PadicInt, precision: int) -> int:
    """``base**v mod p**precision`` using the residue of the truncated exponent."""
    return pow(base, v.residue, v.p**precision)


def power_exponent_report(p: int, k: int, u: int, N: int):
    """Solve ``(1 + p^k u)^v = 1 + p^k`` and check the congruence at the output precisions."""
    from .report import Report

    rep = Report("p-adic exponent", {"p": p, "k": k, "u": u, "N": N})
    v = solve_power_exponent(p, k, u, N)
    base, target = 1 + p**k * u, 1 + p**k
    rep.expect_equal("output precision = N - k", N - k, v.precision, "log quotient loses k digits")
    got = unit_pow(base, v, N)
    rep.check(f"(1+p^k u)^v = 1+p^k mod p^{N}", (got - target) % p**N == 0,
              "exponent known mod p^(N-k) fixes the power mod p^N", target % p**N, got)
    floor = max(N - 2 * k, 1)
    rep.check(f"(1+p^k u)^v = 1+p^k mod p^{floor}", (got - target) % p**floor == 0,
              "required precision p^(N-2k)", target % p**floor, got % p**floor)
    x = padic_log(PadicInt(p, N, target))
    rep.check("exp(log(1+p^k)) = 1+p^k", padic_exp(x).congruent(target), "log and exp are inverse isometries")
    rep.data.update({"v": v.residue, "v_precision": v.precision, "v_modulus": v.modulus})
    return rep
