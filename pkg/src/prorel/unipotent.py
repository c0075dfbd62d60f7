"""Unit upper-triangular matrices over ``Z/p`` and the two-generator witness group.

The witness group lives in ``U_{k+2}(Z/p)`` and is generated by::

    X = I + E_{1,2} + ... + E_{k,k+1}      Y = I + E_{k+1,k+2}

It realizes the presentation ``x^p = y^p = [x^(i),y]^p = [[x^(i),y],y] = 1``
(``1 <= i <= k``) and ``[x^(k+1),y] = 1``, has order ``p^(k+2)`` and nilpotency
class ``k+1``.  Indices in the public API are 1-based like the matrix units
``E_{i,j}``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from . import groups as gr
from . import words as wd
from .arith import require_prime
from .errors import InvalidParameter, MembershipError, ResourceLimitError
from .report import Report

# theorem check: exhaustive over (gamma, delta) when |H_2|^2 is at most this
EXHAUSTIVE_PAIR_LIMIT = 10**4
DEFAULT_SAMPLES = 1000


def _upper_index(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@lru_cache(maxsize=None)
def _kernels(n: int, p: int):
    """Unrolled multiply and inverse on the flat strict-upper-triangle tuples of size ``n``."""
    idx = _upper_index(n)
    a = {ij: f"a{ij[0]}_{ij[1]}" for ij in idx}
    b = {ij: f"b{ij[0]}_{ij[1]}" for ij in idx}
    unpack_a = ", ".join(a[ij] for ij in idx) + ("," if len(idx) == 1 else "")
    unpack_b = ", ".join(b[ij] for ij in idx) + ("," if len(idx) == 1 else "")

    prods = []
    for i, j in idx:
        terms = [a[i, j], b[i, j]] + [f"{a[i, t]}*{b[t, j]}" for t in range(i + 1, j)]
        prods.append(f"({' + '.join(terms)}) % {p}")
    mul_src = (f"def mul(A, B):\n    {unpack_a} = A\n    {unpack_b} = B\n"
               f"    return ({', '.join(prods)},)\n")

    lines = [f"def inv(A):", f"    {unpack_a} = A"]
    for d in range(1, n):
        for i in range(n - d):
            j = i + d
            terms = [a[i, j]] + [f"{a[i, t]}*{b[t, j]}" for t in range(i + 1, j)]
            lines.append(f"    {b[i, j]} = -({' + '.join(terms)}) % {p}")
    lines.append(f"    return ({', '.join(b[ij] for ij in idx)},)")
    ns: dict = {}
    exec(mul_src, ns)
    exec("\n".join(lines) + "\n", ns)
    return ns["mul"], ns["inv"]


class UnipotentMatrix:
    """Immutable unit upper-triangular ``n x n`` matrix with entries in ``Z/p``.

    Stored as the strict upper triangle, row by row.
    """

    __slots__ = ("p", "n", "upper")

    def __init__(self, p: int, rows):
        rows = [[int(x) % p for x in r] for r in rows]
        n = len(rows)
        if n < 2 or any(len(r) != n for r in rows):
            raise InvalidParameter("need a square matrix of size >= 2")
        for i, r in enumerate(rows):
            if r[i] != 1 % p or any(r[j] for j in range(i)):
                raise InvalidParameter("matrix is not unit upper triangular")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "upper", tuple(rows[i][j] for i, j in _upper_index(n)))

    @classmethod
    def _raw(cls, p, n, upper):
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "upper", upper)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("UnipotentMatrix is immutable")

    def __eq__(self, other):
        return isinstance(other, UnipotentMatrix) and self.p == other.p and self.upper == other.upper

    def __hash__(self):
        return hash(self.upper)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        out = [[int(i == j) for j in range(self.n)] for i in range(self.n)]
        for (i, j), v in zip(_upper_index(self.n), self.upper):
            out[i][j] = v
        return tuple(map(tuple, out))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i - 1][j - 1]

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def is_identity(self) -> bool:
        return not any(self.upper)

    def __repr__(self):
        return f"UnipotentMatrix(p={self.p}, rows={self.to_list()})"

    def __str__(self):
        terms = [f"{v}*E{i + 1},{j + 1}" if v != 1 else f"E{i + 1},{j + 1}"
                 for (i, j), v in zip(_upper_index(self.n), self.upper) if v]
        return "I" if not terms else "I + " + " + ".join(terms)


class UnipotentGroup(gr.FiniteGroup):
    """``U_n(Z/p)`` as a carrier for the finite-group engine."""

    def __init__(self, n: int, p: int):
        require_prime(p)
        if n < 2:
            raise InvalidParameter(f"matrix size must be >= 2, got {n}")
        self.n, self.p = n, p
        self.name = f"U_{n}(Z/{p})"
        self._index = {ij: t for t, ij in enumerate(_upper_index(n))}
        self.identity = UnipotentMatrix._raw(p, n, (0,) * len(self._index))
        self._mul, self._inv = _kernels(n, p)

    @property
    def order(self) -> int:
        return self.p ** (self.n * (self.n - 1) // 2)

    def unit(self, i: int, j: int, a: int = 1) -> UnipotentMatrix:
        """``I + a E_{i,j}`` (1-based, ``i < j``)."""
        if not 1 <= i < j <= self.n:
            raise InvalidParameter(f"E_{{{i},{j}}} is not strictly upper triangular in size {self.n}")
        upper = [0] * len(self._index)
        upper[self._index[i - 1, j - 1]] = a % self.p
        return UnipotentMatrix._raw(self.p, self.n, tuple(upper))

    def matrix(self, rows) -> UnipotentMatrix:
        m = UnipotentMatrix(self.p, rows)
        if m.n != self.n:
            raise InvalidParameter(f"expected size {self.n}, got {m.n}")
        return m

    def mul(self, g, h):
        return UnipotentMatrix._raw(self.p, self.n, self._mul(g.upper, h.upper))

    def inv(self, g):
        return UnipotentMatrix._raw(self.p, self.n, self._inv(g.upper))

    def encode(self, g):
        return bytes(g.upper) if self.p < 256 else repr(g.upper).encode()

    def describe(self, g):
        return g.to_list()

    def elementary_generators(self) -> list[UnipotentMatrix]:
        return [self.unit(i, i + 1) for i in range(1, self.n)]

    def level(self, g) -> int:
        """Smallest ``d >= 1`` with a nonzero entry on the ``d``-th superdiagonal; ``n`` for the identity."""
        best = self.n
        for (i, j), v in zip(_upper_index(self.n), g.upper):
            if v and j - i < best:
                best = j - i
        return best


# --- the witness group ----------------------------------------------------


@dataclass(frozen=True)
class WitnessGroupSpec:
    p: int
    k: int

    def __post_init__(self):
        require_prime(self.p)
        if not 1 <= self.k <= self.p - 1:
            raise InvalidParameter(f"need 1 <= k <= p-1, got k={self.k}, p={self.p}")

    @property
    def size(self) -> int:
        return self.k + 2

    @property
    def order(self) -> int:
        return self.p ** (self.k + 2)

    def group(self) -> UnipotentGroup:
        return UnipotentGroup(self.k + 2, self.p)


def build_generators(spec: WitnessGroupSpec) -> tuple[UnipotentMatrix, UnipotentMatrix]:
    U = spec.group()
    k = spec.k
    rows = [list(r) for r in U.identity.rows]
    for i in range(k):
        rows[i][i + 1] = 1
    X = UnipotentMatrix(spec.p, rows)
    return X, U.unit(k + 1, k + 2)


def iterated_matrix_commutator(X: UnipotentMatrix, Y: UnipotentMatrix, i: int) -> UnipotentMatrix:
    """``[X^(i), Y]`` with ``[X^(0), Y] = Y``."""
    if i < 0:
        raise InvalidParameter(f"iteration depth must be >= 0, got {i}")
    U = UnipotentGroup(X.n, X.p)
    c = Y
    for _ in range(i):
        c = U.commutator(X, c)
    return c


def _relation_words(k: int) -> list[tuple[str, wd.Word, int]]:
    # (label, word, power): the relator is word^power
    out = [("x^p = 1", wd.gen("x"), None), ("y^p = 1", wd.gen("y"), None)]
    for i in range(1, k + 1):
        out.append((f"[x^({i}),y]^p = 1", wd.iterated_commutator("x", "y", i), None))
    for i in range(1, k + 1):
        out.append((f"[[x^({i}),y],y] = 1", wd.comm(wd.iterated_commutator("x", "y", i), "y"), 1))
    out.append((f"[x^({k + 1}),y] = 1", wd.iterated_commutator("x", "y", k + 1), 1))
    return out


def relator_words(spec: WitnessGroupSpec) -> list[tuple[str, wd.Word]]:
    """Labelled relators; ``None`` powers above stand for ``p``."""
    return [(label, wd.word_power(w, spec.p if e is None else e)) for label, w, e in _relation_words(spec.k)]


class NormalForm:
    """Table between exponent tuples ``(e_k, ..., e_1, e_0, e_-1)`` and elements of ``<X, Y>``.

    The tuple stands for ``[X^(k),Y]^e_k ... [X,Y]^e_1 Y^e_0 X^e_-1``.
    """

    def __init__(self, spec: WitnessGroupSpec):
        self.spec = spec
        self.group = U = spec.group()
        X, Y = build_generators(spec)
        p, k = spec.p, spec.k
        # factors in display order: [X^(k),Y], ..., [X,Y], Y, X
        factors = [iterated_matrix_commutator(X, Y, i) for i in range(k, -1, -1)] + [X]
        powers = [[U.power(f, e) for e in range(p)] for f in factors]
        self._to_matrix: dict[tuple, UnipotentMatrix] = {}
        self._to_tuple: dict[UnipotentMatrix, tuple] = {}
        for exps in itertools.product(range(p), repeat=k + 2):
            g = U.identity
            for f, e in zip(powers, exps):
                g = U.mul(g, f[e])
            self._to_matrix[exps] = g
            self._to_tuple.setdefault(g, exps)

    def compose(self, exps) -> UnipotentMatrix:
        exps = tuple(e % self.spec.p for e in exps)
        if len(exps) != self.spec.k + 2:
            raise InvalidParameter(f"need {self.spec.k + 2} exponents, got {len(exps)}")
        return self._to_matrix[exps]

    def decompose(self, g: UnipotentMatrix) -> tuple:
        try:
            return self._to_tuple[g]
        except KeyError:
            raise MembershipError(f"{g} is not in <X, Y>") from None

    def is_bijective(self) -> bool:
        return len(self._to_tuple) == len(self._to_matrix)

    def image(self) -> frozenset:
        return frozenset(self._to_tuple)


def normal_form_decompose(g: UnipotentMatrix, spec: WitnessGroupSpec) -> tuple:
    return NormalForm(spec).decompose(g)


def witness_group_check(spec: WitnessGroupSpec, max_order: int | None = None) -> Report:
    p, k = spec.p, spec.k
    bound = gr.DEFAULT_MAX_ORDER if max_order is None else max_order
    if spec.order > bound:
        raise ResourceLimitError(bound, f"witness group of order {spec.order}")
    U = spec.group()
    X, Y = build_generators(spec)
    rep = Report("unipotent witness group", {"p": p, "k": k})
    H = gr.closure([X, Y], U, bound)
    rep.expect_equal("|<X,Y>| = p^(k+2)", spec.order, H.order, "|G| <= p^(k+2), attained by <X,Y>")

    env = {"x": X, "y": Y}
    for label, w in relator_words(spec):
        img = wd.evaluate(w, env, U)
        rep.check(f"relation {label}", img.is_identity(), "defining relations of the witness group",
                  None, None if img.is_identity() else img.to_list())

    for i in range(k + 1):
        c = iterated_matrix_commutator(X, Y, i)
        want = U.unit(k + 1 - i, k + 2)
        rep.check(f"[X^({i}),Y] = I + E_{k + 1 - i},{k + 2}", c == want,
                  "[X^(i),Y] = I + E_{k+1-i,k+2}", want.to_list(), c.to_list())

    lcs = gr.lower_central_series(H)
    vanish = gr.first_trivial_index(lcs)
    rep.expect_equal("LCS vanishes exactly at step k+2", k + 2, vanish, "G_{k+2} = 1 and G_{k+1} != 1")
    top = iterated_matrix_commutator(X, Y, k)
    rep.check("[X^(k),Y] != I", not top.is_identity(), "[x^(k),y] != 1")

    nf = NormalForm(spec)
    rep.check("normal-form tuples biject onto <X,Y>", nf.is_bijective() and nf.image() == H.elements,
              "g = [x^(k),y]^e_k ... [x,y]^e_1 y^e_0 x^e_-1, unique", H.order, len(nf.image()))
    gr.filtration_crosscheck(H, p, rep)
    rep.data.update({
        "order": H.order,
        "lcs_orders": gr.orders(lcs),
        "X": X.to_list(),
        "Y": Y.to_list(),
    })
    return rep


def unipotent_lcs_check(n: int, p: int, max_order: int | None = None, seed: int = 0, samples: int = 200,
                        enumerate_limit: int = 2 * 10**4) -> Report:
    """``U_n(Z/p)`` has ``G_i`` equal to the matrices vanishing on the first ``i-1`` superdiagonals.

    Always checked: the commutator relations between matrix units, which force
    ``G_i`` to be that level subgroup, so ``G_n = 1 != G_{n-1}``.  Also checked on
    seeded random pairs.  When ``U_n`` is small enough it is enumerated and its
    lower central series computed outright.
    """
    U = UnipotentGroup(n, p)
    rep = Report("unipotent lower central series", {"n": n, "p": p})
    units = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    ok = True
    for (i, j), (r, s) in itertools.product(units, units):
        c = U.commutator(U.unit(i, j), U.unit(r, s))
        if j == r:
            want = U.unit(i, s)
        elif s == i:
            want = U.inv(U.unit(r, j))
        else:
            want = U.identity
        ok &= c == want
    rep.check("[I+E_ij, I+E_rs] follows the matrix-unit rule", ok,
              "[E_ij, E_jk] = E_ik, other pairs commute")

    rng = random.Random(seed)

    def rand_at_level(d):
        rows = [[int(a == b) for b in range(n)] for a in range(n)]
        for a in range(n):
            for b in range(a + d, n):
                rows[a][b] = rng.randrange(p)
        return U.matrix(rows)

    ok = True
    for _ in range(samples):
        d = rng.randrange(1, n)
        g, h = rand_at_level(d), rand_at_level(1)
        ok &= U.level(U.commutator(g, h)) >= d + 1
    rep.check("[level d, U] lands in level d+1 (sampled)", ok, "[G_i, G] <= G_{i+1}")

    top = U.unit(1, n)
    chain_top = U.unit(1, 2)
    for j in range(2, n):
        chain_top = U.commutator(chain_top, U.unit(j, j + 1))
    rep.check("left-normed commutator of the n-1 elementary generators is I+E_1n",
              chain_top == top and not top.is_identity(), "G_{n-1} != 1")

    bound = min(gr.DEFAULT_MAX_ORDER if max_order is None else max_order, enumerate_limit)
    if U.order <= bound:
        H = gr.closure(U.elementary_generators(), U, bound)
        lcs = gr.lower_central_series(H)
        rep.expect_equal("|U_n| = p^(n(n-1)/2)", U.order, H.order, "order of U_n(Z/p)")
        rep.expect_equal("enumerated LCS vanishes exactly at step n", n, gr.first_trivial_index(lcs),
                         "U_n(Z/p)_n = 1")
        levels_ok = all(
            all(U.level(g) >= i for g in gr.term(lcs, i)) and len(gr.term(lcs, i)) == p ** ((n - i) * (n - i + 1) // 2)
            for i in range(1, n + 1)
        )
        rep.check("enumerated G_i = level-i subgroup", levels_ok, "G_i = matrices zero on superdiagonals < i")
        rep.data["method"] = "enumeration"
        rep.data["lcs_orders"] = gr.orders(lcs)
    else:
        rep.data["method"] = "matrix-unit relations"
    return rep


# --- commutator congruence under Frattini perturbation --------------------


def perturbation_congruence_check(p: int, max_order: int | None = None, seed: int = 0,
                               samples: int = DEFAULT_SAMPLES) -> Report:
    """Perturb the generators of ``H = <X, Y>`` (``k = p-1``) by ``gamma, delta`` in ``H_2``.

    With ``sigma = X gamma`` and ``tau = Y delta`` checks
    ``[sigma^(i),tau] [X^(i),Y]^-1 in H_{i+2}`` for ``1 <= i <= p-1``, equality at
    ``i = p-1`` and ``[sigma^(p-1),tau] != 1``.  Exhaustive over all pairs when
    ``|H_2|^2 <= 10^4``, otherwise ``samples`` pairs drawn with ``random.Random(seed)``.
    """
    require_prime(p)
    if p == 2:
        raise InvalidParameter("the congruence check needs an odd prime")
    spec = WitnessGroupSpec(p, p - 1)
    bound = gr.DEFAULT_MAX_ORDER if max_order is None else max_order
    if spec.order > bound:
        raise ResourceLimitError(bound, f"witness group of order {spec.order}")
    U = spec.group()
    X, Y = build_generators(spec)
    H = gr.closure([X, Y], U, bound)
    lcs = gr.lower_central_series(H)
    H2 = gr.term(lcs, 2)
    rep = Report("commutator congruence", {"p": p, "k": p - 1})

    frattini = gr.join([gr.power_subgroup(H, p), gr.commutator_subgroup(H, H)], U)
    rep.check("Frattini subgroup H^p[H,H] = [H,H] = H_2", frattini == H2 and gr.commutator_subgroup(H, H) == H2,
              "Phi(H) = [H,H] = H_2", H2.order, frattini.order)

    base = [iterated_matrix_commutator(X, Y, i) for i in range(p)]
    h2 = sorted(H2.elements, key=lambda g: g.upper)
    if len(h2) ** 2 <= EXHAUSTIVE_PAIR_LIMIT:
        pairs = list(itertools.product(h2, h2))
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        pairs = [(rng.choice(h2), rng.choice(h2)) for _ in range(samples)]
        mode = f"sampled (seed={seed})"

    congruent = [True] * p
    equal_top = nontrivial_top = True
    bad = None
    for gamma, delta in pairs:
        sigma, tau = U.mul(X, gamma), U.mul(Y, delta)
        c = tau
        for i in range(1, p):
            c = U.commutator(sigma, c)
            ok = U.mul(c, U.inv(base[i])) in gr.term(lcs, i + 2)
            if not ok and bad is None:
                bad = (i, gamma.to_list(), delta.to_list())
            congruent[i] &= ok
        equal_top &= c == base[p - 1]
        nontrivial_top &= not c.is_identity()

    for i in range(1, p):
        rep.check(f"[sigma^({i}),tau] = [X^({i}),Y] mod H_{i + 2}", congruent[i],
                  "[sigma^(i),tau] = [sigma_a^(i),sigma_b] mod H_{i+2}", None, bad)
    rep.check(f"[sigma^({p - 1}),tau] = [X^({p - 1}),Y]", equal_top, "congruence is equality since H_{p+1} = 1")
    rep.check(f"[sigma^({p - 1}),tau] != 1", nontrivial_top, "[sigma^(p-1),tau] != 1")

    ident = U.identity
    c = Y
    exact = True
    for i in range(1, p):
        c = U.commutator(U.mul(X, ident), c)
        exact &= c == base[i]
    rep.check("gamma = delta = 1 gives equality at every i", exact, "unperturbed generators")
    rep.data.update({"mode": mode, "pairs": len(pairs), "order": H.order, "h2_order": H2.order,
                     "lcs_orders": gr.orders(lcs)})
    return rep
