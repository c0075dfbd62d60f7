"""Witnesses that a relation of the shape ``x^(p^l u) s`` cannot hold.

Each checker maps the free generators into an explicit finite quotient (a
cyclic group or a metacyclic ``G(a,m)``), evaluates the relation there and
confirms the image is not the identity.  That the quotient is realized as a
Galois group over the field in question is taken for granted: a checker
verifies only the group computation that the argument rests on.

Tail tags and what is verified about them:

``in-[S,S]T``
    exponent sum of ``x`` in the tail is zero (exact membership test).
``commutator-expr-avoiding-x``
    the tail is a product of bracketings of letters and no innermost
    commutator ``[u, v]`` has ``u`` or ``v`` equal to ``x^(+-1)``.
``in-T``
    ``x`` does not occur in the tail.
``in-[T,T]-with-t``
    ``x`` does not occur in ``s`` and every exponent sum of ``s`` vanishes;
    ``t`` has vanishing exponent sums and must map into the ``(l+1)``-st
    p-descending term of the quotient.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import groups as gr
from . import words as wd
from .arith import require_prime, unit_power_valuation, vp
from .errors import HypothesisViolation, InvalidParameter, ResourceLimitError
from .metacyclic import MetacyclicGroup, MetacyclicParams, act_on_zeta, mc_power
from .report import Check

TAGS = ("in-[S,S]T", "commutator-expr-avoiding-x", "in-T", "in-[T,T]-with-t")
THEOREMS = ("l<m", "thm1", "thmT", "filtration")
ASSUMPTION = ("the quotient is assumed to be realized as a Galois group over the field; "
              "only the image of the relation in it is computed")


@dataclass(frozen=True)
class RelationShape:
    """``x^(lead) s t`` over the alphabet ``x, y_1, ..., y_n``."""

    alphabet: wd.Alphabet
    l: int
    u: int
    s: wd.Word = wd.EMPTY
    tag: str = "in-[S,S]T"
    t: wd.Word | None = None

    def __post_init__(self):
        if self.l < 1:
            raise InvalidParameter(f"need l >= 1, got {self.l}")
        if self.u == 0:
            raise InvalidParameter("u must be nonzero")
        if self.tag not in TAGS:
            raise InvalidParameter(f"unknown tail tag {self.tag!r}; expected one of {TAGS}")
        for w in (self.s, self.t or wd.EMPTY):
            stray = w.letters() - set(self.alphabet.names)
            if stray:
                raise InvalidParameter(f"letters {sorted(stray)} not in alphabet {self.alphabet.names}")

    def lead_exponent(self, p: int) -> int:
        shift = 1 if self.tag == "in-[T,T]-with-t" else 0
        return p ** (self.l - shift) * self.u

    def tail(self) -> wd.Word:
        return self.s * (self.t or wd.EMPTY)

    def relation(self, p: int) -> wd.Word:
        return wd.gen(self.alphabet.x, self.lead_exponent(p)) * self.tail()

    def verify_tag(self) -> None:
        """Raise :class:`HypothesisViolation` when the tail does not have the tagged form."""
        x = self.alphabet.x
        s = self.s
        if self.tag == "in-[S,S]T":
            e = wd.exponent_sums(self.tail()).get(x, 0)
            if e:
                raise HypothesisViolation(f"tail has x-exponent sum {e}, so it is not in [S,S]T")
        elif self.tag == "commutator-expr-avoiding-x":
            if not wd.is_commutator_expression(s):
                raise HypothesisViolation(f"tail {wd.render_word(s)!r} is not a commutator expression")
            for a, b in sorted(wd.appearing_pairs(s), key=lambda ab: (str(ab[0]), str(ab[1]))):
                if x in (a.name, b.name):
                    raise HypothesisViolation(f"commutator [{a},{b}] involving {x} appears in the tail")
        elif self.tag == "in-T":
            if x in s.letters():
                raise HypothesisViolation(f"tail {wd.render_word(s)!r} involves {x}, so it is not in T")
        else:
            if x in s.letters() or wd.exponent_sums(s):
                raise HypothesisViolation(f"s = {wd.render_word(s)!r} is not in [T,T]")
            if self.t is not None and wd.exponent_sums(self.t):
                raise HypothesisViolation(f"t = {wd.render_word(self.t)!r} is not in [S,S]")


def infer_alphabet(*ws: wd.Word, x: str = "x") -> wd.Alphabet:
    names = set()
    for w in ws:
        names |= w.letters()
    names.discard(x)
    return wd.Alphabet(x, tuple(sorted(names, key=_natural_key)))


def _natural_key(name: str):
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else -1)


def parse_relation(text, p: int, l: int, u: int, tag: str, t=None, alphabet: wd.Alphabet | None = None) -> RelationShape:
    """Parse ``x^(lead) s`` and check the leading exponent against ``p``, ``l``, ``u``."""
    w = wd.parse_word(text, alphabet) if isinstance(text, str) else wd.as_word(text)
    t_word = None if t is None else (wd.parse_word(t, alphabet) if isinstance(t, str) else wd.as_word(t))
    alpha = alphabet or infer_alphabet(w, *([t_word] if t_word else []))
    e, s = wd.leading_power(w, alpha.x)
    shape = RelationShape(alpha, l, u, s, tag, t_word)
    want = shape.lead_exponent(p)
    if e != want:
        raise HypothesisViolation(
            f"relation must start with {alpha.x}^{want}, found {alpha.x}^{e}" if e else
            f"relation must start with a power of {alpha.x}")
    return shape


# --- reports --------------------------------------------------------------


@dataclass
class WitnessReport:
    """Outcome of one checker run.

    ``image_order`` is the order of the obstructing quantity: of the image
    itself for the cyclic and metacyclic witnesses, and of the root-action
    exponent (an element of ``Z/p^m``) for ``thmT``.  ``element_order`` is always
    the order of the image element.
    """

    theorem: str
    params: dict
    quotient: str = ""
    relation: str = ""
    assignment: dict = field(default_factory=dict)
    image: str = ""
    witness_value: int | None = None
    image_order: int | None = None
    element_order: int | None = None
    verdict: str = "hypothesis-violation"
    reason: str = ""
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def check(self, name: str, passed: bool, ref: str = "", expected=None, actual=None) -> bool:
        self.checks.append(Check(name, bool(passed), ref, expected, actual))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return self.verdict == "obstructed" and all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": dict(self.params),
            "quotient": self.quotient,
            "relation": self.relation,
            "assignment": dict(self.assignment),
            "image": self.image,
            "witness_value": self.witness_value,
            "image_order": self.image_order,
            "element_order": self.element_order,
            "verdict": self.verdict,
            "reason": self.reason,
            "passed": self.passed,
            "assertions": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        head = ", ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"{self.theorem} ({head}): {self.verdict}"]
        if self.reason:
            lines.append(f"  reason: {self.reason}")
        if self.quotient:
            lines.append(f"  quotient: {self.quotient}")
            lines.append(f"  relation: {self.relation}")
            lines.append(f"  image: {self.image} (order {self.image_order})")
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}"
            if not c.passed:
                line += f"  expected={c.expected!r} actual={c.actual!r}  ({c.ref})"
            lines.append(line)
        return "\n".join(lines)


def _require_coprime(p: int, u: int) -> None:
    if u == 0 or math.gcd(p, u) != 1:
        raise HypothesisViolation(f"need gcd(p, u) = 1, got p={p}, u={u}")


def default_assignment(ys: Sequence[str], sigma_order: int) -> dict[str, int]:
    """``y_i -> sigma^c_i`` with ``c_i`` cycling through the nonzero residues mod ``sigma_order``."""
    if sigma_order <= 1:
        return {y: 0 for y in ys}
    return {y: (i % (sigma_order - 1)) + 1 for i, y in enumerate(ys)}


def _resolve_assignment(ys: Sequence[str], sigma_order: int, c) -> dict[str, int]:
    if c is None:
        return default_assignment(ys, sigma_order)
    if isinstance(c, Mapping):
        missing = [y for y in ys if y not in c]
        if missing:
            raise InvalidParameter(f"no exponent given for {missing}")
        return {y: int(c[y]) % max(sigma_order, 1) for y in ys}
    c = list(c)
    if len(c) < len(ys):
        raise InvalidParameter(f"need {len(ys)} assignment exponents, got {len(c)}")
    return {y: int(e) % max(sigma_order, 1) for y, e in zip(ys, c)}


def _metacyclic_witness(rep: WitnessReport, G: MetacyclicGroup, shape: RelationShape, x_image, c) -> dict:
    """Evaluate tail and relation with ``x -> x_image``, ``y_i -> sigma^c_i``; record the assignment."""
    P = G.params
    cs = _resolve_assignment(shape.alphabet.ys, P.sigma_order, c)
    env = {shape.alphabet.x: x_image}
    env.update({y: G.element(0, e) for y, e in cs.items()})
    rep.assignment = {shape.alphabet.x: str(x_image), **{y: f"sigma^{e}" for y, e in cs.items()}}
    return env


def _order_of_residue(a: int, modulus: int) -> int:
    return modulus // math.gcd(a % modulus, modulus)


# --- the four checkers ----------------------------------------------------


def check_thm_l_less_m(p: int, k: int | None, m: int, l: int, u: int, tail="") -> WitnessReport:
    """Cyclic quotient ``C_(p^m)`` with ``x -> g`` and ``y_i -> 1``; requires ``1 <= l < m``."""
    require_prime(p)
    rep = WitnessReport("l<m", {"p": p, "k": k, "m": m, "l": l, "u": u})
    if m < 2:
        raise HypothesisViolation(f"need m >= 2, got m={m}")
    if not 1 <= l < m:
        raise HypothesisViolation(f"need 1 <= l < m, got l={l}, m={m}")
    _require_coprime(p, u)
    s = wd.parse_word(tail) if isinstance(tail, str) and tail.strip() else wd.as_word(tail) if tail else wd.EMPTY
    shape = RelationShape(infer_alphabet(s), l, u, s, "in-[S,S]T")
    shape.verify_tag()
    q = p**m
    C = gr.CyclicGroup(q)
    env = {shape.alphabet.x: C.generator(), **{y: C.identity for y in shape.alphabet.ys}}
    rep.quotient = f"C_{q}"
    rep.relation = wd.render_word(shape.relation(p))
    rep.assignment = {shape.alphabet.x: "g", **{y: "1" for y in shape.alphabet.ys}}
    tail_img = wd.evaluate(shape.tail(), env, C)
    img = wd.evaluate(shape.relation(p), env, C)
    expected = p**l * u % q
    rep.check("tail maps to 1", tail_img == C.identity, "res(s) = 1 for s in [S,S]T", 0, tail_img)
    rep.check("image = g^(p^l u)", img == expected, "res(pi(x))^(p^l u)", expected, img)
    rep.image = C.describe(img)
    rep.witness_value = img
    rep.element_order = gr.element_order(img, C) if img else 1
    rep.image_order = rep.element_order
    rep.check("image order = p^(m-l)", rep.image_order == p ** (m - l), "order p^m of res(pi(x)) exceeds p^l",
              p ** (m - l), rep.image_order)
    rep.verdict = "obstructed" if img != C.identity else "not-obstructed"
    rep.notes.append(ASSUMPTION)
    return rep


def check_thm_1(p: int, k: int, m: int, l: int, u: int, relation, c=None) -> WitnessReport:
    """``G(a,m)`` with ``x -> tau`` and ``y_i -> sigma^c_i``; requires ``m > max(k, l)``."""
    require_prime(p)
    rep = WitnessReport("thm1", {"p": p, "k": k, "m": m, "l": l, "u": u})
    if l < 1:
        raise HypothesisViolation(f"need l >= 1, got {l}")
    if m <= max(k, l):
        raise HypothesisViolation(f"need m > max(k, l), got m={m}, k={k}, l={l}")
    _require_coprime(p, u)
    shape = parse_relation(relation, p, l, u, "commutator-expr-avoiding-x")
    shape.verify_tag()
    G = MetacyclicGroup(MetacyclicParams(p, k, m))
    env = _metacyclic_witness(rep, G, shape, G.tau, c)
    rep.quotient = G.name
    rep.relation = wd.render_word(shape.relation(p))
    tail_img = wd.evaluate(shape.s, env, G)
    img = wd.evaluate(shape.relation(p), env, G)
    want = G.element(p**l * u, 0)
    rep.check("tail maps to 1", tail_img == G.identity, "res([y_i, y_j]) = 1 in the abelian <sigma>",
              str(G.identity), str(tail_img))
    rep.check("image = tau^(p^l u)", img == want, "res(pi(x))^(p^l u)", str(want), str(img))
    rep.image = str(img)
    rep.witness_value = img.a
    rep.element_order = gr.element_order(img, G)
    rep.image_order = rep.element_order
    rep.check("image order = p^(m-l)", rep.image_order == p ** (m - l), "order p^m of res(pi(x)) exceeds p^l",
              p ** (m - l), rep.image_order)
    rep.verdict = "obstructed" if img != G.identity else "not-obstructed"
    rep.notes.append(ASSUMPTION)
    return rep


def geometric_exponent(p: int, k: int, w: int, n: int) -> int:
    """``N = ((1+p^k)^(w n) - 1) / ((1+p^k)^w - 1)`` by exact integer division."""
    r = (1 + p**k) ** w
    num, den = r**n - 1, r - 1
    q, rem = divmod(num, den)
    if rem:
        raise AssertionError("geometric sum is not integral")
    return q


def check_thm_T(p: int, k: int, m: int, l: int, u: int, tail="", w: int | None = None, c=None) -> WitnessReport:
    """Root-action witness in ``G(a,m)`` for a tail in ``T``.

    Case 1 (``w`` is ``None`` or 0): ``x -> tau`` fixes the root of unity and moves
    the root by ``zeta^(p^l u)``.  Case 2: ``x -> tau sigma^w`` with
    ``sigma^w != 1`` moves the root by ``zeta^N`` where ``N`` is a geometric sum of
    valuation exactly ``l``.  The cyclotomic character of ``x`` is modeled as
    ``(1+p^k)^w``.
    """
    require_prime(p)
    case = 1 if not w else 2
    rep = WitnessReport("thmT", {"p": p, "k": k, "m": m, "l": l, "u": u, "w": w or 0, "case": case})
    if l < 1:
        raise HypothesisViolation(f"need l >= 1, got {l}")
    if m <= l:
        raise HypothesisViolation(f"need m > l, got m={m}, l={l}")
    _require_coprime(p, u)
    s = wd.parse_word(tail) if isinstance(tail, str) and tail.strip() else wd.as_word(tail) if tail else wd.EMPTY
    shape = RelationShape(infer_alphabet(s), l, u, s, "in-T")
    shape.verify_tag()
    # m < k: zeta_(p^m) lies in F and the quotient is cyclic (sigma trivial)
    P = MetacyclicParams(p, min(k, m), m)
    G = MetacyclicGroup(P)
    q = P.tau_order
    if case == 2 and w % P.sigma_order == 0:
        raise HypothesisViolation(
            f"case 2 needs sigma^w != 1, i.e. w != 0 mod p^(m-k) = {P.sigma_order}")
    x_img = G.tau if case == 1 else G.element(1, w)
    env = _metacyclic_witness(rep, G, shape, x_img, c)
    rep.quotient = G.name
    rep.relation = wd.render_word(shape.relation(p))
    n = p**l * u
    tail_img = wd.evaluate(shape.s, env, G)
    img = wd.evaluate(shape.relation(p), env, G)
    rep.check("tail fixes the root", tail_img.a == 0, "elements of T fix the p^m-th root", 0, tail_img.a)
    if case == 1:
        root_exp = n % q
        rep.check("x fixes zeta", act_on_zeta(x_img) == 1, "case 1: pi(x) acts trivially on zeta",
                  1, act_on_zeta(x_img))
    else:
        N = geometric_exponent(p, k, w, n)
        alpha = (1 + p**k) ** w - 1
        v_direct = vp(N, p)
        v_identity = unit_power_valuation(p, alpha, n) - vp(alpha, p)
        rep.check("v_p(N) = l", v_direct == l and v_identity == l,
                  "v_p((1+alpha)^n - 1) = v_p(alpha) + v_p(n) gives v_p(N) = l", l, [v_direct, v_identity])
        tau_exp = mc_power(x_img, n).a
        rep.check("x moves zeta", act_on_zeta(x_img) != 1, "case 2: pi(x) acts nontrivially on zeta")
        rep.check("N agrees with the tau-exponent of (tau sigma^w)^(p^l u) mod p^m", N % q == tau_exp,
                  "geometric sum 1 + r + ... + r^(n-1)", N % q, tau_exp)
        root_exp = N % q
        rep.params["N"] = N
        rep.params["v_p(N)"] = v_direct
    rep.check("root-action exponent of the image", img.a == root_exp, "pi(r) moves the root by zeta^N",
              root_exp, img.a)
    rep.check("root-action exponent is nonzero mod p^m", img.a != 0, "p^m does not divide N")
    rep.image = str(img)
    rep.witness_value = img.a
    rep.image_order = _order_of_residue(img.a, q)
    rep.element_order = gr.element_order(img, G)
    rep.check("root-action order = p^(m-l)", rep.image_order == p ** (m - l),
              "p^m | N would force m <= v_p(N) = l", p ** (m - l), rep.image_order)
    rep.verdict = "obstructed" if img != G.identity else "not-obstructed"
    rep.notes.append(ASSUMPTION)
    if case == 2:
        rep.notes.append("the cyclotomic character of x is modeled as (1+p^k)^w")
    return rep


@lru_cache(maxsize=64)
def _descending_term_trivial(p: int, k: int, l: int) -> tuple[bool, list[int], frozenset]:
    G = MetacyclicGroup(MetacyclicParams(p, k, l))
    H = G.whole()
    pds = gr.p_descending_series(H, p)
    term = gr.term(pds, l + 1)
    return term.is_trivial(), gr.orders(pds), term.elements


def check_thm_filtration(p: int, k: int, l: int, u: int, s="", with_t: bool = False, t=None,
                         c=None, seed: int = 0) -> WitnessReport:
    """``G(a,l)`` with ``x -> tau``; ``G(a,l)^(l+1) = 1`` kills ``t`` and ``s`` dies in ``<sigma>``.

    When ``l < k`` the quotient is the cyclic group of order ``p^l`` (sigma is trivial).
    """
    require_prime(p)
    rep = WitnessReport("filtration", {"p": p, "k": k, "l": l, "u": u, "with_t": with_t})
    if l < 2:
        raise HypothesisViolation(f"need l >= 2, got l={l}")
    _require_coprime(p, u)
    s_word = wd.parse_word(s) if isinstance(s, str) and s.strip() else wd.as_word(s) if s else wd.EMPTY
    t_word = None if t is None else (wd.parse_word(t) if isinstance(t, str) else wd.as_word(t))
    shape = RelationShape(infer_alphabet(s_word, *([t_word] if t_word else [])), l, u, s_word,
                          "in-[T,T]-with-t", t_word)
    shape.verify_tag()
    k_eff = min(k, l)
    G = MetacyclicGroup(MetacyclicParams(p, k_eff, l))
    trivial, pds_orders, top = _descending_term_trivial(p, k_eff, l)
    rep.check("G^(l+1) = 1", trivial, "exponent of G(a,l): n0 = l+1", 1, pds_orders[min(l, len(pds_orders) - 1)])
    env = _metacyclic_witness(rep, G, shape, G.tau, c)
    rep.quotient = G.name
    rep.relation = wd.render_word(shape.relation(p))
    s_img = wd.evaluate(shape.s, env, G)
    rep.check("s maps to 1", s_img == G.identity, "res([y_i, y_j]) = 1", str(G.identity), str(s_img))
    if t_word is not None:
        t_img = wd.evaluate(t_word, env, G)
        if t_img not in top:
            raise HypothesisViolation(f"t maps to {t_img}, outside G^(l+1); t is not in S^(l+1)")
        rep.check("t maps into G^(l+1) = 1", t_img == G.identity, "res(pi(t)) in G(a,l)^(l+1) = 1",
                  str(G.identity), str(t_img))
    elif with_t:
        sample = random.Random(seed).choice(sorted(top, key=lambda g: (g.a, g.b)))
        rep.check("sampled element of G^(l+1) is 1", sample == G.identity, "G(a,l)^(l+1) = 1",
                  str(G.identity), str(sample))
    img = wd.evaluate(shape.relation(p), env, G)
    want = G.element(p ** (l - 1) * u, 0)
    rep.check("image = tau^(p^(l-1) u)", img == want, "res(pi(x))^(p^(l-1) u)", str(want), str(img))
    rep.image = str(img)
    rep.witness_value = img.a
    rep.element_order = gr.element_order(img, G)
    rep.image_order = rep.element_order
    rep.check("image order = p", rep.image_order == p, "order p^l of res(pi(x)) does not divide p^(l-1) u",
              p, rep.image_order)
    rep.verdict = "obstructed" if img != G.identity else "not-obstructed"
    rep.notes.append(ASSUMPTION)
    if k > l:
        rep.notes.append("l < k: the quotient is cyclic of order p^l")
    return rep


def check_relation(theorem: str, p: int, k: int, m: int, l: int, u: int, relation: str,
                   w: int | None = None, t: str | None = None, with_t: bool = False, c=None,
                   seed: int = 0) -> WitnessReport:
    """Parse a full relation ``x^(lead) tail`` and dispatch to the theorem's checker."""
    theorem = _canonical_theorem(theorem)
    tag = {"l<m": "in-[S,S]T", "thm1": "commutator-expr-avoiding-x", "thmT": "in-T",
           "filtration": "in-[T,T]-with-t"}[theorem]
    shape = parse_relation(relation, p, l, u, tag, t)
    if theorem == "l<m":
        return check_thm_l_less_m(p, k, m, l, u, shape.s)
    if theorem == "thm1":
        return check_thm_1(p, k, m, l, u, relation, c)
    if theorem == "thmT":
        return check_thm_T(p, k, m, l, u, shape.s, w, c)
    return check_thm_filtration(p, k, l, u, shape.s, with_t, shape.t, c, seed)


_ALIASES = {"l<m": "l<m", "lm": "l<m", "l-less-m": "l<m", "thm1": "thm1", "1": "thm1",
            "thmt": "thmT", "t": "thmT", "filtration": "filtration", "filt": "filtration"}


def _canonical_theorem(name: str) -> str:
    try:
        return _ALIASES[name.lower()]
    except KeyError:
        raise InvalidParameter(f"unknown theorem {name!r}; expected one of {THEOREMS}") from None


# --- sweeps ---------------------------------------------------------------


def default_tail(theorem: str, p: int, l: int) -> dict:
    """Tails used by sweeps, one per theorem, each satisfying its tag."""
    if theorem == "l<m":
        return {"tail": "[x,y1] y2"}
    if theorem == "thm1":
        return {"relation_tail": "[y1,y2] [y3,y4]"}
    if theorem == "thmT":
        return {"tail": "y1^2 y2 [y1,y2]"}
    # [x,y1] lies in S^(2); its p^(l-1)-th power lies in S^(l+1)
    return {"s": "[y1,y2]", "t": f"[x,y1]^{p ** (l - 1)}"}


@dataclass(frozen=True)
class GridSpec:
    theorems: tuple = THEOREMS
    ps: tuple = (3, 5)
    ks: tuple = (1, 2)
    ms: tuple = (1, 2, 3, 4)
    us: tuple | None = None          # None: (1, 2, p+1) per prime
    ws: tuple = (None, 1, 2)         # thmT: case 1 plus case-2 exponents
    assignment_samples: int = 2
    seed: int = 0


def _us_for(grid: GridSpec, p: int) -> tuple:
    return grid.us if grid.us is not None else (1, 2, p + 1)


def grid_points(grid: GridSpec) -> list[dict]:
    """Deterministically ordered grid points; ``l`` runs over ``1 .. m`` so ``l = m`` points appear too
    (``1 .. m-1`` for the filtration theorem)."""
    pts = []
    for thm in grid.theorems:
        thm = _canonical_theorem(thm)
        for p in grid.ps:
            for k in grid.ks:
                for m in grid.ms:
                    # filtration has no m; there m only bounds l
                    for l in range(1, m if thm == "filtration" else m + 1):
                        for u in _us_for(grid, p):
                            for w in (grid.ws if thm == "thmT" else (None,)):
                                pts.append({"theorem": thm, "p": p, "k": k, "m": m, "l": l, "u": u, "w": w})
    return pts


def run_point(pt: dict, c=None, seed: int = 0) -> WitnessReport:
    thm, p, k, m, l, u, w = (pt[key] for key in ("theorem", "p", "k", "m", "l", "u", "w"))
    tails = default_tail(thm, p, l)
    if thm == "l<m":
        return check_thm_l_less_m(p, k, m, l, u, tails["tail"])
    if thm == "thm1":
        return check_thm_1(p, k, m, l, u, f"x^{p ** l * u} {tails['relation_tail']}", c)
    if thm == "thmT":
        return check_thm_T(p, k, m, l, u, tails["tail"], w, c)
    # the filtration quotient depends on l only; m bounds l in the grid
    return check_thm_filtration(p, k, l, u, tails["s"], True, tails["t"], c, seed)


def _violation(pt: dict, exc: Exception) -> WitnessReport:
    params = {key: pt[key] for key in ("p", "k", "m", "l", "u")}
    if pt.get("w") is not None:
        params["w"] = pt["w"]
    return WitnessReport(pt["theorem"], params, verdict="hypothesis-violation", reason=str(exc))


@dataclass
class SweepResult:
    points: list = field(default_factory=list)

    @property
    def counts(self) -> dict:
        out = {"obstructed": 0, "not-obstructed": 0, "hypothesis-violation": 0, "error": 0}
        for r in self.points:
            out[r.verdict] = out.get(r.verdict, 0) + 1
        return out

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.points if r.verdict != "hypothesis-violation")

    def to_dict(self) -> dict:
        return {"counts": self.counts, "passed": self.passed, "points": [r.to_dict() for r in self.points]}

    def to_text(self) -> str:
        head = ", ".join(f"{k}={v}" for k, v in self.counts.items())
        lines = [f"sweep: {len(self.points)} points ({head}): {'PASS' if self.passed else 'FAIL'}"]
        for r in self.points:
            if r.verdict != "obstructed" or not r.passed:
                lines.append(r.to_text())
        return "\n".join(lines)


def _sigma_order_for(pt: dict) -> int:
    p, k, m, l = pt["p"], pt["k"], pt["m"], pt["l"]
    top = l if pt["theorem"] == "filtration" else m
    return p ** max(top - k, 0)


def sweep(grid: GridSpec | Iterable[dict]) -> SweepResult:
    """Run the applicable checker at every grid point.

    Points failing a hypothesis are recorded as ``hypothesis-violation``.  For
    the others the run is repeated with ``grid.assignment_samples`` random
    ``y``-assignments and the witness must not change.
    """
    if isinstance(grid, GridSpec):
        pts, samples, seed = grid_points(grid), grid.assignment_samples, grid.seed
    else:
        pts, samples, seed = list(grid), 0, 0
    rng = random.Random(seed)
    out = SweepResult()
    for pt in pts:
        try:
            rep = run_point(pt, seed=seed)
        except HypothesisViolation as exc:
            out.points.append(_violation(pt, exc))
            continue
        except (InvalidParameter, ResourceLimitError, AssertionError) as exc:
            bad = _violation(pt, exc)
            bad.verdict = "error"
            out.points.append(bad)
            continue
        key = (rep.witness_value, rep.image_order, rep.verdict)
        if rep.theorem != "l<m":
            so = _sigma_order_for(pt)
            same = True
            for _ in range(samples):
                cs = [rng.randrange(so) if so > 1 else 0 for _ in range(4)]
                alt = run_point(pt, c=cs, seed=seed)
                same &= (alt.witness_value, alt.image_order, alt.verdict) == key and alt.passed
            if samples:
                rep.check(f"witness unchanged under {samples} random y-assignments", same,
                          "the argument holds for every assignment into <sigma>")
        out.points.append(rep)
    return out
