"""Finite-group engine: closures, commutator and power subgroups, filtrations.

A carrier is any object with ``identity``, ``mul``, ``inv`` and ``encode``;
subclass :class:`FiniteGroup` to get ``power``, ``commutator`` and friends.
Elements must be hashable immutable values whose equality agrees with
``encode``.  Every subgroup is fully enumerated.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from .errors import InvalidParameter, ResourceLimitError

DEFAULT_MAX_ORDER = int(os.environ.get("PROREL_MAX_ORDER", 10**6))
# [H,K] from generator pairs is re-derived from all element pairs below this size
PAIR_VALIDATION_LIMIT = 10**6


class FiniteGroup:
    name = "group"
    identity: Hashable

    def mul(self, g, h):
        raise NotImplementedError

    def inv(self, g):
        raise NotImplementedError

    def encode(self, g) -> bytes:
        return repr(g).encode()

    def describe(self, g):
        return repr(g)

    def power(self, g, e: int):
        if e < 0:
            g, e = self.inv(g), -e
        acc = self.identity
        while e:
            if e & 1:
                acc = self.mul(acc, g)
            e >>= 1
            if e:
                g = self.mul(g, g)
        return acc

    def commutator(self, g, h):
        return self.mul(self.mul(g, h), self.mul(self.inv(g), self.inv(h)))

    def conjugate(self, c, g):
        """``c g c^-1``."""
        return self.mul(self.mul(c, g), self.inv(c))

    def __repr__(self):
        return self.name


class CyclicGroup(FiniteGroup):
    """``Z/nZ`` written multiplicatively; element ``a`` stands for ``g**a``."""

    def __init__(self, n: int):
        if n < 1:
            raise InvalidParameter(f"cyclic group order must be >= 1, got {n}")
        self.n = n
        self.identity = 0
        self.name = f"C_{n}"

    def mul(self, g, h):
        return (g + h) % self.n

    def inv(self, g):
        return -g % self.n

    def power(self, g, e):
        return g * e % self.n

    def encode(self, g):
        return g.to_bytes(max(1, (self.n.bit_length() + 7) // 8), "big")

    def describe(self, g):
        return f"g^{g}"

    def generator(self):
        return 1 % self.n


@dataclass(frozen=True, eq=False)
class Subgroup:
    group: FiniteGroup
    gens: tuple
    elements: frozenset = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group is other.group
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return self.elements <= other.elements

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens={len(self.gens)} in {self.group!r})"


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (), frozenset([G.identity]))


def closure(gens: Iterable, G: FiniteGroup, max_order: int | None = None, base: Subgroup | None = None) -> Subgroup:
    """Subgroup generated by ``gens`` (and ``base``), by breadth-first right multiplication."""
    bound = DEFAULT_MAX_ORDER if max_order is None else max_order
    if bound < 1:
        raise InvalidParameter(f"max_order must be >= 1, got {bound}")
    if base is None:
        elements = {G.identity}
        kept: list = []
    else:
        elements = set(base.elements)
        kept = list(base.gens)
    mul = G.mul
    for g in gens:
        if g in elements:
            continue
        kept.append(g)
        steps = list({x for s in kept for x in (s, G.inv(s))})
        new = [g, G.inv(g)]
        queue = []
        for x in list(elements):
            for s in new:
                y = mul(x, s)
                if y not in elements:
                    elements.add(y)
                    queue.append(y)
        while queue:
            if len(elements) > bound:
                raise ResourceLimitError(bound)
            nxt = []
            for x in queue:
                for s in steps:
                    y = mul(x, s)
                    if y not in elements:
                        elements.add(y)
                        nxt.append(y)
            queue = nxt
        if len(elements) > bound:
            raise ResourceLimitError(bound)
    return Subgroup(G, tuple(kept), frozenset(elements))


def normal_closure(gens: Iterable, within: Subgroup, max_order: int | None = None) -> Subgroup:
    """Smallest subgroup containing ``gens`` that is normalized by ``within``."""
    G = within.group
    conj_by = list(within.gens) + [G.inv(c) for c in within.gens]
    N = closure(gens, G, max_order)
    changed = True
    while changed:
        changed = False
        for n in N.gens:
            for c in conj_by:
                x = G.conjugate(c, n)
                if x not in N:
                    N = closure([x], G, max_order, base=N)
                    changed = True
                    break
            if changed:
                break
    return N


def join(subgroups: Sequence[Subgroup], G: FiniteGroup, max_order: int | None = None) -> Subgroup:
    gens = [g for H in subgroups for g in H.gens]
    return closure(gens, G, max_order)


@lru_cache(maxsize=4096)
def commutator_subgroup(H: Subgroup, K: Subgroup, validate: bool = True) -> Subgroup:
    """``[H, K]``: generated by all ``[h, k]``.

    Built as the normal closure of generator commutators in ``<H, K>`` and,
    when ``|H| |K|`` is small enough, re-derived from every element pair.
    """
    G = H.group
    gens = [G.commutator(a, b) for a in H.gens for b in K.gens]
    ambient = closure(list(H.gens) + list(K.gens), G)
    result = normal_closure(gens, ambient)
    if validate and H.order * K.order <= PAIR_VALIDATION_LIMIT:
        mul = G.mul
        inv_h = [(a, G.inv(a)) for a in H.elements]
        inv_k = [(b, G.inv(b)) for b in K.elements]
        pairs = {mul(mul(a, b), mul(ai, bi)) for a, ai in inv_h for b, bi in inv_k}
        full = closure(pairs, G)
        if full != result:
            raise AssertionError("generator-pair [H,K] disagrees with element-pair [H,K]")
    return result


@lru_cache(maxsize=4096)
def power_subgroup(H: Subgroup, q: int) -> Subgroup:
    """``H^q``: generated by the ``q``-th powers of all elements of ``H``."""
    G = H.group
    return closure({G.power(h, q) for h in H.elements}, G)


def term(chain: Sequence[Subgroup], n: int) -> Subgroup:
    """``n``-th term (1-based) of a stabilized chain; past the end the last term repeats."""
    if n < 1:
        raise InvalidParameter(f"filtration index must be >= 1, got {n}")
    return chain[min(n, len(chain)) - 1]


def lower_central_series(H: Subgroup) -> list[Subgroup]:
    """``G_1 = H``, ``G_{i+1} = [G_i, H]``, until a term repeats."""
    chain = [H]
    while not chain[-1].is_trivial():
        nxt = commutator_subgroup(chain[-1], H)
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain


def p_descending_series(H: Subgroup, p: int) -> list[Subgroup]:
    """``G^(1) = H``, ``G^(i+1) = (G^(i))^p [G^(i), H]``, until a term repeats."""
    chain = [H]
    while not chain[-1].is_trivial():
        cur = chain[-1]
        nxt = join([power_subgroup(cur, p), commutator_subgroup(cur, H)], H.group)
        if nxt == cur:
            break
        chain.append(nxt)
    return chain


def _require_p_group(H: Subgroup, p: int) -> None:
    n = H.order
    while n % p == 0:
        n //= p
    if n != 1:
        raise InvalidParameter(f"|H| = {H.order} is not a power of {p}")


def zassenhaus_filtration(H: Subgroup, p: int) -> list[Subgroup]:
    """``G_(1) = H``, ``G_(n) = G_(ceil(n/p))^p prod_{i+j=n} [G_(i), G_(j)]``.

    Terms are listed for ``n = 1, 2, ...`` up to and including the first
    trivial one; repeated terms are kept so that list position is ``n - 1``.
    """
    _require_p_group(H, p)
    terms = [H]
    while not terms[-1].is_trivial():
        n = len(terms) + 1
        parts = [power_subgroup(terms[-(-n // p) - 1], p)]
        for i in range(1, n // 2 + 1):
            parts.append(commutator_subgroup(terms[i - 1], terms[n - i - 1]))
        terms.append(join(parts, H.group))
    return terms


def zassenhaus_lazard(H: Subgroup, p: int) -> list[Subgroup]:
    """``G_(n) = prod_{i p^h >= n} G_i^(p^h)`` from the lower central series."""
    _require_p_group(H, p)
    lcs = lower_central_series(H)
    terms = [H]
    while not terms[-1].is_trivial():
        n = len(terms) + 1
        parts = []
        for i, Gi in enumerate(lcs, start=1):
            h = 0
            while i * p**h < n:
                h += 1
            parts.append(power_subgroup(Gi, p**h))
        terms.append(join(parts, H.group))
    return terms


def is_powerful(H: Subgroup, p: int) -> bool:
    """``[H,H] <= H^p`` for odd ``p``, ``[H,H] <= H^4`` for ``p = 2``."""
    return commutator_subgroup(H, H) <= power_subgroup(H, 4 if p == 2 else p)


def element_order(g, G: FiniteGroup) -> int:
    n, cur = 1, g
    while cur != G.identity:
        cur = G.mul(cur, g)
        n += 1
    return n


def exponent(H: Subgroup) -> int:
    e = 1
    for g in H.elements:
        e = math.lcm(e, element_order(g, H.group))
    return e


def first_trivial_index(chain: Sequence[Subgroup]) -> int | None:
    """Smallest ``n`` with ``chain[n-1]`` trivial, or ``None``."""
    for n, S in enumerate(chain, start=1):
        if S.is_trivial():
            return n
    return None


def orders(chain: Sequence[Subgroup]) -> list[int]:
    return [S.order for S in chain]


def filtration_crosscheck(H: Subgroup, p: int, rep) -> None:
    """Append the Zassenhaus/Lazard agreement and ``H_(p^(l-1)+1) <= H^(l+1)`` (l = 2, 3) checks to ``rep``."""
    zf = zassenhaus_filtration(H, p)
    zl = zassenhaus_lazard(H, p)
    rep.check("Zassenhaus recursion = Lazard product", zf == zl,
              "G_(n) = prod_{i p^h >= n} G_i^(p^h)", orders(zl), orders(zf))
    pds = p_descending_series(H, p)
    for l in (2, 3):
        rep.check(f"G_(p^{l - 1}+1) <= G^({l + 1})",
                  term(zf, p ** (l - 1) + 1) <= term(pds, l + 1),
                  "S_(p^(l-1)+1) <= S^(l+1) on finite images")
