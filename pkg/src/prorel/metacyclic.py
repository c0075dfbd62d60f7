"""The metacyclic group ``G(a,m) = <sigma, tau | tau^(p^m) = sigma^(p^(m-k)) = 1, sigma tau sigma^-1 = tau^(1+p^k)>``.

Elements are kept in the normal form ``tau^a sigma^b`` with ``a`` mod ``p^m``
and ``b`` mod ``p^(m-k)``.  Moving ``sigma^b`` past ``tau^a'`` gives::

    (tau^a1 sigma^b1)(tau^a2 sigma^b2) = tau^(a1 + a2 (1+p^k)^b1) sigma^(b1 + b2)

Also here: the action on the Kummer symbols (root and root of unity, tracked
as exponents of zeta) and the finite quotients of the multi-generator group
``<sigma, tau_i | [tau_i, tau_j] = 1, [sigma, tau_i] = tau_i^(p^k)>``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import groups as gr
from .arith import require_prime
from .errors import InvalidParameter
from .report import Report


@dataclass(frozen=True)
class MetacyclicParams:
    p: int
    k: int
    m: int

    def __post_init__(self):
        require_prime(self.p)
        if self.k < (2 if self.p == 2 else 1):
            raise InvalidParameter(f"k={self.k} too small for p={self.p}")
        if self.m < self.k:
            raise InvalidParameter(f"need m >= k, got m={self.m}, k={self.k}")

    @property
    def tau_order(self) -> int:
        return self.p**self.m

    @property
    def sigma_order(self) -> int:
        return self.p ** (self.m - self.k)

    @property
    def ratio(self) -> int:
        """``1 + p^k``, the exponent by which sigma conjugates tau."""
        return 1 + self.p**self.k

    @property
    def order(self) -> int:
        return self.tau_order * self.sigma_order

    @property
    def degenerate(self) -> bool:
        # m = k: sigma is trivial and the group is cyclic of order p^m
        return self.m == self.k


class MetacyclicElement:
    """Immutable normal-form element ``tau^a sigma^b``."""

    __slots__ = ("params", "a", "b")

    def __init__(self, params: MetacyclicParams, a: int, b: int):
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "a", a % params.tau_order)
        object.__setattr__(self, "b", b % params.sigma_order)

    @classmethod
    def _raw(cls, params, a, b):
        # a, b already reduced
        obj = object.__new__(cls)
        object.__setattr__(obj, "params", params)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("MetacyclicElement is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, MetacyclicElement)
            and self.a == other.a
            and self.b == other.b
            and (self.params is other.params or self.params == other.params)
        )

    def __hash__(self):
        return hash((self.a, self.b))

    def __mul__(self, other):
        return mc_mul(self, other)

    def __pow__(self, e: int):
        return mc_power(self, e)

    def __repr__(self):
        return f"MetacyclicElement(a={self.a}, b={self.b}, {self.params})"

    def __str__(self):
        return f"tau^{self.a} sigma^{self.b}"


def _check_same(g: MetacyclicElement, h: MetacyclicElement) -> None:
    if g.params != h.params:
        raise InvalidParameter(f"parameter mismatch: {g.params} vs {h.params}")


def mc_mul(g: MetacyclicElement, h: MetacyclicElement) -> MetacyclicElement:
    _check_same(g, h)
    P = g.params
    a = g.a + h.a * pow(P.ratio, g.b, P.tau_order)
    return MetacyclicElement(P, a, g.b + h.b)


def mc_inverse(g: MetacyclicElement) -> MetacyclicElement:
    P = g.params
    # (tau^a sigma^b)^-1 = sigma^-b tau^-a = tau^(-a r^-b) sigma^-b
    r_inv = pow(P.ratio, -g.b, P.tau_order)
    return MetacyclicElement(P, -g.a * r_inv, -g.b)


def mc_power(g: MetacyclicElement, e: int) -> MetacyclicElement:
    if e < 0:
        g, e = mc_inverse(g), -e
    acc = MetacyclicElement(g.params, 0, 0)
    while e:
        if e & 1:
            acc = mc_mul(acc, g)
        e >>= 1
        if e:
            g = mc_mul(g, g)
    return acc


def act_on_root(g: MetacyclicElement) -> int:
    """Exponent ``c`` with ``g(root) = zeta^c root`` (``sigma`` fixes the root, ``tau`` multiplies by zeta)."""
    return g.a


def act_on_zeta(g: MetacyclicElement) -> int:
    """Exponent ``c`` with ``g(zeta) = zeta^c``, a unit mod ``p^m``."""
    P = g.params
    return pow(P.ratio, g.b, P.tau_order)


class MetacyclicGroup(gr.FiniteGroup):
    def __init__(self, params: MetacyclicParams):
        self.params = params
        self.name = f"G(p={params.p},k={params.k},m={params.m})"
        self.identity = MetacyclicElement(params, 0, 0)
        self._pow = [pow(params.ratio, b, params.tau_order) for b in range(params.sigma_order)]
        self._q = params.tau_order
        self._r = params.sigma_order

    @classmethod
    def of(cls, p: int, k: int, m: int) -> "MetacyclicGroup":
        return cls(MetacyclicParams(p, k, m))

    @property
    def sigma(self) -> MetacyclicElement:
        return MetacyclicElement(self.params, 0, 1)

    @property
    def tau(self) -> MetacyclicElement:
        return MetacyclicElement(self.params, 1, 0)

    def element(self, a: int, b: int = 0) -> MetacyclicElement:
        return MetacyclicElement(self.params, a, b)

    def mul(self, g, h):
        return MetacyclicElement._raw(
            self.params, (g.a + h.a * self._pow[g.b]) % self._q, (g.b + h.b) % self._r
        )

    def inv(self, g):
        b = -g.b % self._r
        return MetacyclicElement._raw(self.params, -g.a * self._pow[b] % self._q, b)

    def encode(self, g):
        return f"{g.a},{g.b}".encode()

    def describe(self, g):
        return str(g)

    def elements(self):
        P = self.params
        for a in range(P.tau_order):
            for b in range(P.sigma_order):
                yield MetacyclicElement(P, a, b)

    def whole(self, max_order: int | None = None) -> gr.Subgroup:
        return gr.closure([self.sigma, self.tau], self, max_order)


def cyclic_power_subgroup(G: MetacyclicGroup, e: int) -> gr.Subgroup:
    """``<tau^e>``."""
    return gr.closure([G.element(e, 0)], G)


def _ceil_log(n: int, p: int) -> int:
    s = 0
    while p**s < n:
        s += 1
    return s


def verify_metacyclic_structure(params: MetacyclicParams, max_order: int | None = None) -> Report:
    """Brute-force check of order, filtrations, powerfulness and exponent of ``G(a,m)``."""
    p, k, m = params.p, params.k, params.m
    G = MetacyclicGroup(params)
    rep = Report("metacyclic structure", {"p": p, "k": k, "m": m})
    H = G.whole(max_order)

    rep.expect_equal("order = p^(2m-k)", p ** (2 * m - k), H.order, "presentation C_{p^m} x| C_{p^(m-k)}")

    lcs = gr.lower_central_series(H)
    i = 1
    while True:
        want = cyclic_power_subgroup(G, p ** (k * i))
        got = gr.term(lcs, i + 1)
        rep.check(f"LCS term {i + 1} = <tau^(p^{k * i})>", got == want,
                  "G_{i+1} = <tau^(p^(k i))>", want.order, got.order)
        if want.is_trivial():
            break
        i += 1

    powerful = gr.is_powerful(H, p)
    rep.check("G is powerful", powerful, "[G,G] <= G^p (G^4 if p = 2)")

    zf = gr.zassenhaus_filtration(H, p)
    m0 = gr.first_trivial_index(zf)
    for n in range(1, len(zf) + 1):
        s = _ceil_log(n, p)
        want = gr.power_subgroup(H, p**s)
        rep.check(f"Zassenhaus term {n} = G^(p^{s})", zf[n - 1] == want,
                  "G_(n) = G^(p^s) for p^(s-1) < n <= p^s", want.order, zf[n - 1].order)
    gr.filtration_crosscheck(H, p, rep)

    pds = gr.p_descending_series(H, p)
    n0 = gr.first_trivial_index(pds)
    exp_ = gr.exponent(H)
    rep.expect_equal("exponent = p^m", p**m, exp_, "exponent of G(a,m) is p^m")
    rep.expect_equal("n0 = m+1", m + 1, n0, "smallest n0 with G^(n0) = 1")
    rep.expect_equal("m0 = p^(m-1)+1", p ** (m - 1) + 1, m0, "smallest m0 with G_(m0) = 1")


    rep.data.update({
        "order": H.order,
        "exponent": exp_,
        "lcs_orders": gr.orders(lcs),
        "pds_orders": gr.orders(pds),
        "zassenhaus_orders": gr.orders(zf),
        "powerful": powerful,
        "n0": n0,
        "m0": m0,
        "degenerate": params.degenerate,
    })
    return rep


def cyclotomic_commutator_identity(params: MetacyclicParams, mu: int, nu: int, lam: int) -> bool:
    """``[sigma^mu tau^nu, tau^lam] == tau^(lam ((1+p^k)^mu - 1))`` in ``G(a,m)``."""
    G = MetacyclicGroup(params)
    s, t = G.sigma, G.tau
    lhs = G.commutator(G.mul(G.power(s, mu), G.power(t, nu)), G.power(t, lam))
    # mu may be negative; the ratio is a unit mod p^m
    e = lam * (pow(params.ratio, mu, params.tau_order) - 1)
    return lhs == G.element(e, 0)


# --- multi-generator quotients --------------------------------------------


@dataclass(frozen=True)
class CRParams:
    p: int
    k: int
    M: int
    n: int  # number of tau_i

    def __post_init__(self):
        require_prime(self.p)
        if self.k < (2 if self.p == 2 else 1) or self.M < self.k or self.n < 1:
            raise InvalidParameter(f"invalid quotient parameters {self}")

    @property
    def tau_order(self) -> int:
        return self.p**self.M

    @property
    def sigma_order(self) -> int:
        return self.p ** (self.M - self.k)

    @property
    def order(self) -> int:
        return self.tau_order**self.n * self.sigma_order


@dataclass(frozen=True)
class CRQuotientElement:
    params: CRParams
    a: tuple
    b: int

    def __post_init__(self):
        P = self.params
        if len(self.a) != P.n:
            raise InvalidParameter(f"expected {P.n} tau exponents, got {len(self.a)}")
        object.__setattr__(self, "a", tuple(x % P.tau_order for x in self.a))
        object.__setattr__(self, "b", self.b % P.sigma_order)

    def __hash__(self):
        return hash((self.a, self.b))

    def __str__(self):
        taus = " ".join(f"tau{i + 1}^{x}" for i, x in enumerate(self.a))
        return f"{taus} sigma^{self.b}"


class CRQuotientGroup(gr.FiniteGroup):
    """``(Z/p^M)^n x| Z/p^(M-k)`` with sigma acting on every tau_i by ``1 + p^k``."""

    def __init__(self, params: CRParams):
        self.params = params
        self.name = f"CR(p={params.p},k={params.k},M={params.M},|I|={params.n})"
        self.identity = CRQuotientElement(params, (0,) * params.n, 0)
        r = 1 + params.p**params.k
        self._pow = [pow(r, b, params.tau_order) for b in range(params.sigma_order)]

    @property
    def sigma(self):
        return CRQuotientElement(self.params, (0,) * self.params.n, 1)

    def tau(self, i: int):
        a = [0] * self.params.n
        a[i] = 1
        return CRQuotientElement(self.params, tuple(a), 0)

    def mul(self, g, h):
        r = self._pow[g.b]
        return CRQuotientElement(self.params, tuple(x + y * r for x, y in zip(g.a, h.a)), g.b + h.b)

    def inv(self, g):
        P = self.params
        r_inv = pow(1 + P.p**P.k, -g.b, P.tau_order)
        return CRQuotientElement(P, tuple(-x * r_inv for x in g.a), -g.b)

    def encode(self, g):
        return (",".join(map(str, g.a)) + f";{g.b}").encode()

    def describe(self, g):
        return str(g)


def cr_quotient_check(p: int, k: int, M: int, n: int, max_order: int | None = None) -> Report:
    P = CRParams(p, k, M, n)
    G = CRQuotientGroup(P)
    rep = Report("cyclotomic radical quotient", {"p": p, "k": k, "M": M, "|I|": n})
    taus = [G.tau(i) for i in range(n)]
    s = G.sigma
    e = G.identity
    comm_ok = all(G.commutator(x, y) == e for x, y in itertools.product(taus, taus))
    rep.check("[tau_i, tau_j] = 1 for all i, j", comm_ok, "[tau_i,tau_j] = 1")
    act_ok = all(G.commutator(s, t) == G.power(t, p**k) for t in taus)
    rep.check("[sigma, tau_i] = tau_i^(p^k) for all i", act_ok, "[sigma,tau_i] = tau_i^(p^k)")
    pow_ok = all(G.power(t, p**M) == e for t in taus) and G.power(s, p ** (M - k)) == e
    rep.check("tau_i^(p^M) = sigma^(p^(M-k)) = 1", pow_ok, "finite quotient exponents")
    H = gr.closure([s] + taus, G, max_order)
    rep.expect_equal("order = p^(M|I|) p^(M-k)", P.order, H.order, "semidirect product order")
    if n == 1:
        mc = MetacyclicGroup(MetacyclicParams(p, k, M))
        to_mc = {g: mc.element(g.a[0], g.b) for g in H.elements}
        # multiplicativity against generators extends to all products
        hom = all(to_mc[G.mul(g, h)] == mc.mul(to_mc[g], to_mc[h]) for g in H.elements for h in H.gens)
        rep.check("single tau reduces to G(a,M)", hom, "one-generator case is the metacyclic group")
    rep.data["order"] = H.order
    return rep
