"""Relation words: AST, parser, canonical rendering and evaluation in finite groups.

Grammar (whitespace between terms is optional unless two identifiers touch)::

    word     := term { term }
    term     := atom [ "^" exponent ]
    atom     := ident | "[" word "," word "]"
    exponent := [ "-" ] digit { digit }        (nonzero)
    ident    := letter { letter | digit | "_" }

A negative exponent on a generator is stored as the inverse letter with a
positive exponent, so ``x^-3`` is ``Term(Letter("x", -1), 3)``.  Commutator
terms keep a signed exponent.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import InvalidParameter, ParseError
from .report import Report


@dataclass(frozen=True)
class Letter:
    name: str
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidParameter(f"letter sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> "Letter":
        return Letter(self.name, -self.sign)

    def __str__(self):
        return self.name if self.sign == 1 else f"{self.name}^-1"


@dataclass(frozen=True)
class Commutator:
    left: "Word"
    right: "Word"


@dataclass(frozen=True)
class Term:
    base: Union[Letter, Commutator]
    exponent: int = 1

    def __post_init__(self):
        if self.exponent == 0:
            raise InvalidParameter("exponents must be nonzero")
        if isinstance(self.base, Letter) and self.exponent < 0:
            object.__setattr__(self, "base", self.base.inverse())
            object.__setattr__(self, "exponent", -self.exponent)


@dataclass(frozen=True)
class Word:
    terms: tuple[Term, ...]

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.terms + other.terms)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return render_word(self)

    def letters(self) -> set[str]:
        out: set[str] = set()
        for t in self.terms:
            if isinstance(t.base, Letter):
                out.add(t.base.name)
            else:
                out |= t.base.left.letters() | t.base.right.letters()
        return out


EMPTY = Word(())


@dataclass(frozen=True)
class Alphabet:
    """Distinguished generator ``x`` plus the family ``y_1 .. y_n``."""

    x: str = "x"
    ys: tuple[str, ...] = ()

    def __post_init__(self):
        names = (self.x,) + tuple(self.ys)
        if len(set(names)) != len(names):
            raise InvalidParameter(f"alphabet names must be distinct: {names}")

    @classmethod
    def standard(cls, n: int, x: str = "x", prefix: str = "y") -> "Alphabet":
        return cls(x, tuple(f"{prefix}{i}" for i in range(1, n + 1)))

    @property
    def names(self) -> tuple[str, ...]:
        return (self.x,) + tuple(self.ys)

    def __contains__(self, name: str) -> bool:
        return name in self.names


# --- construction helpers -------------------------------------------------


def as_word(obj) -> Word:
    if isinstance(obj, Word):
        return obj
    if isinstance(obj, str):
        return Word((Term(Letter(obj)),))
    if isinstance(obj, Letter):
        return Word((Term(obj),))
    if isinstance(obj, Term):
        return Word((obj,))
    if isinstance(obj, Commutator):
        return Word((Term(obj),))
    raise TypeError(f"cannot make a Word from {obj!r}")


def gen(name: str, exponent: int = 1) -> Word:
    return Word((Term(Letter(name), exponent),))


def comm(a, b, exponent: int = 1) -> Word:
    return Word((Term(Commutator(as_word(a), as_word(b)), exponent),))


def word_power(w, e: int) -> Word:
    """``w**e`` as a word; single-term words keep a single term."""
    w = as_word(w)
    if e == 0:
        return EMPTY
    if len(w) == 1:
        t = w.terms[0]
        sign = t.base.sign if isinstance(t.base, Letter) else 1
        base = Letter(t.base.name) if isinstance(t.base, Letter) else t.base
        return Word((Term(base, sign * t.exponent * e),))
    if e > 0:
        return Word(w.terms * e)
    return Word(tuple(_invert_term(t) for t in reversed(w.terms)) * (-e))


def _invert_term(t: Term) -> Term:
    if isinstance(t.base, Letter):
        return Term(t.base.inverse(), t.exponent)
    return Term(t.base, -t.exponent)


def iterated_commutator(x, y, i: int) -> Word:
    """``[x^(0), y] = y`` and ``[x^(i), y] = [x, [x^(i-1), y]]``."""
    if i < 0:
        raise InvalidParameter(f"iteration depth must be >= 0, got {i}")
    w = as_word(y)
    for _ in range(i):
        w = comm(x, w)
    return w


# --- parsing and rendering ------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<sym>[\[\],^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet | None):
        self.text = text
        self.alphabet = alphabet
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        self.i += 1
        return tok

    def word(self, stop: tuple[str, ...]) -> Word:
        terms = []
        while True:
            kind, val, pos = self.peek()
            if kind == "end" or (kind == "sym" and val in stop):
                break
            terms.append(self.term())
        if not terms:
            raise ParseError("empty word", self.text, self.peek()[2])
        return Word(tuple(terms))

    def term(self) -> Term:
        kind, val, pos = self.peek()
        if kind == "ident":
            self.i += 1
            if self.alphabet is not None and val not in self.alphabet:
                raise ParseError(f"unknown generator {val!r}", self.text, pos)
            base: Union[Letter, Commutator] = Letter(val)
        elif kind == "sym" and val == "[":
            self.i += 1
            left = self.word(stop=(",",))
            self.take("sym", ",")
            right = self.word(stop=("]",))
            self.take("sym", "]")
            base = Commutator(left, right)
        else:
            raise ParseError(f"unexpected token {val or 'end of input'!r}", self.text, pos)
        exponent = 1
        if self.peek()[:2] == ("sym", "^"):
            self.i += 1
            _, ev, epos = self.take("int")
            exponent = int(ev)
            if exponent == 0:
                raise ParseError("zero exponent", self.text, epos)
        return Term(base, exponent)


def parse_word(text: str, alphabet: Alphabet | None = None) -> Word:
    p = _Parser(text, alphabet)
    w = p.word(stop=())
    p.take("end")
    return w


def _render_term(t: Term) -> str:
    if isinstance(t.base, Letter):
        e = t.exponent * t.base.sign
        head = t.base.name
    else:
        e = t.exponent
        head = f"[{render_word(t.base.left)},{render_word(t.base.right)}]"
    return head if e == 1 else f"{head}^{e}"


def render_word(w: Word) -> str:
    return " ".join(_render_term(t) for t in w.terms)


# --- structural queries ---------------------------------------------------


def _single_letter(w: Word) -> Letter | None:
    if len(w.terms) == 1 and isinstance(w.terms[0].base, Letter):
        return w.terms[0].base
    return None


def _commutators(w: Word):
    for t in w.terms:
        if isinstance(t.base, Commutator):
            yield t.base
            yield from _commutators(t.base.left)
            yield from _commutators(t.base.right)


def appearing_pairs(w: Word) -> set[tuple[Letter, Letter]]:
    """Ordered letter pairs ``(u, v)`` such that ``[u, v]`` is an innermost commutator in ``w``."""
    pairs = set()
    for c in _commutators(w):
        u, v = _single_letter(c.left), _single_letter(c.right)
        if u is not None and v is not None:
            pairs.add((u, v))
    return pairs


def _is_hyper_argument(w: Word) -> bool:
    if len(w.terms) != 1:
        return False
    t = w.terms[0]
    if isinstance(t.base, Letter):
        return t.exponent == 1
    return t.exponent == 1 and _is_hyper(t.base)


def _is_hyper(c: Commutator) -> bool:
    return _is_hyper_argument(c.left) and _is_hyper_argument(c.right)


def is_commutator_expression(w: Word) -> bool:
    """True when ``w`` is a product of (powers of) bracketings of single letters."""
    return bool(w.terms) and all(isinstance(t.base, Commutator) and _is_hyper(t.base) for t in w.terms)


def exponent_sums(w: Word) -> dict[str, int]:
    """Image of ``w`` in the free abelian group on its letters; commutators contribute nothing."""
    out: dict[str, int] = {}
    for t in w.terms:
        if isinstance(t.base, Letter):
            out[t.base.name] = out.get(t.base.name, 0) + t.base.sign * t.exponent
    return {k: v for k, v in out.items() if v}


def leading_power(w: Word, name: str) -> tuple[int, Word]:
    """Split ``w = name^e * rest``; ``e`` is signed and 0 when ``w`` does not start with ``name``."""
    if w.terms and isinstance(w.terms[0].base, Letter) and w.terms[0].base.name == name:
        t = w.terms[0]
        return t.base.sign * t.exponent, Word(w.terms[1:])
    return 0, w


# --- evaluation -----------------------------------------------------------


def evaluate(w, assignment: Mapping[str, object], G):
    """Image of ``w`` under the homomorphism sending each generator to ``assignment[name]``.

    ``G`` supplies ``identity``, ``mul``, ``inv`` and ``power``.  Commutators
    use ``[g, h] = g h g^-1 h^-1``.
    """
    w = as_word(w)
    acc = G.identity
    for t in w.terms:
        if isinstance(t.base, Letter):
            try:
                g = assignment[t.base.name]
            except KeyError:
                raise InvalidParameter(f"no assignment for generator {t.base.name!r}") from None
            if t.base.sign == -1:
                g = G.inv(g)
        else:
            a = evaluate(t.base.left, assignment, G)
            b = evaluate(t.base.right, assignment, G)
            g = G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))
        acc = G.mul(acc, G.power(g, t.exponent))
    return acc


_LEFT = parse_word("[x y, z]")
_LEFT_RHS = parse_word("[x, [y, z]] [y, z] [x, z]")
_RIGHT = parse_word("[x, y z]")
_RIGHT_RHS = parse_word("[x, y] [y, [x, z]] [x, z]")


def commutator_identities_check(G, samples: Iterable[tuple]) -> Report:
    """Check ``[xy,z] = [x,[y,z]][y,z][x,z]`` and ``[x,yz] = [x,y][y,[x,z]][x,z]`` on each triple."""
    rep = Report("commutator identities", {"group": getattr(G, "name", repr(G))})
    n = 0
    bad_left = bad_right = None
    for x, y, z in samples:
        n += 1
        env = {"x": x, "y": y, "z": z}
        if bad_left is None and evaluate(_LEFT, env, G) != evaluate(_LEFT_RHS, env, G):
            bad_left = (x, y, z)
        if bad_right is None and evaluate(_RIGHT, env, G) != evaluate(_RIGHT_RHS, env, G):
            bad_right = (x, y, z)
    rep.data["triples"] = n
    rep.check("[xy,z] = [x,[y,z]][y,z][x,z]", bad_left is None, "commutator expansion, left factor",
              None, None if bad_left is None else [G.describe(g) for g in bad_left])
    rep.check("[x,yz] = [x,y][y,[x,z]][x,z]", bad_right is None, "commutator expansion, right factor",
              None, None if bad_right is None else [G.describe(g) for g in bad_right])
    return rep
