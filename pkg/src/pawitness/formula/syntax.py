"""Abstract syntax for sentences of arithmetic enriched with constants c1, c2, ...

Terms are built from 0, successor, + and *, variables, and the constant
symbols ``c_i``.  Sentences are equations closed under ~, /\\, \\/, -> and the
two quantifiers.  The order relations are not primitive: the parser rewrites
``a <= b`` into ``exists z (a + z = b)`` so that the core language stays
exactly {+, *, S, 0, =}.

All nodes are frozen dataclasses, so structural equality is ``==`` and every
value is hashable and safe to share between threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional, Union


# -- terms -------------------------------------------------------------------


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Succ:
    arg: Term


@dataclass(frozen=True)
class Numeral:
    """Compact stand-in for the term ``S...S0`` with ``value`` successors."""

    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or self.value < 0:
            raise ValueError(f"numeral value must be a natural number, got {self.value!r}")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"constant index must be >= 1, got {self.index!r}")


@dataclass(frozen=True)
class Add:
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul:
    left: Term
    right: Term


Term = Union[Zero, Succ, Numeral, Var, Const, Add, Mul]


# -- sentences ---------------------------------------------------------------


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: Sentence


@dataclass(frozen=True)
class And:
    left: Sentence
    right: Sentence


@dataclass(frozen=True)
class Or:
    left: Sentence
    right: Sentence


@dataclass(frozen=True)
class Implies:
    left: Sentence
    right: Sentence


@dataclass(frozen=True)
class ForAll:
    var: str
    body: Sentence


@dataclass(frozen=True)
class Exists:
    var: str
    body: Sentence


Sentence = Union[Eq, Not, And, Or, Implies, ForAll, Exists]

BINARY_CONNECTIVES = (And, Or, Implies)
QUANTIFIERS = (ForAll, Exists)


def numeral(n: int) -> Numeral:
    """The numeral denoting ``n``."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"numeral needs a natural number, got {n!r}")
    return Numeral(n)


# -- derived relations -------------------------------------------------------


def term_names(t: Term) -> Iterator[str]:
    """Variable names occurring in ``t``."""
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, Succ):
        yield from term_names(t.arg)
    elif isinstance(t, (Add, Mul)):
        yield from term_names(t.left)
        yield from term_names(t.right)


def fresh_var(*terms: Term) -> str:
    """First of z, z1, z2, ... that occurs in none of ``terms``."""
    used = set()
    for t in terms:
        used.update(term_names(t))
    if "z" not in used:
        return "z"
    i = 1
    while f"z{i}" in used:
        i += 1
    return f"z{i}"


def succ(t: Term) -> Term:
    """Successor, folding into the compact numeral form where possible."""
    if isinstance(t, Zero):
        return Numeral(1)
    if isinstance(t, Numeral):
        return Numeral(t.value + 1)
    return Succ(t)


def le(a: Term, b: Term) -> Exists:
    """``a <= b``, i.e. ``exists z (a + z = b)``."""
    z = fresh_var(a, b)
    return Exists(z, Eq(Add(a, Var(z)), b))


def lt(a: Term, b: Term) -> Exists:
    """``a < b``, i.e. ``S(a) <= b``."""
    return le(succ(a), b)


def ge(a: Term, b: Term) -> Exists:
    return le(b, a)


def gt(a: Term, b: Term) -> Exists:
    return lt(b, a)


def ne(a: Term, b: Term) -> Not:
    return Not(Eq(a, b))


# -- normalization and free variables ----------------------------------------


def normalize_term(t: Term) -> Term:
    """Canonical form: closed successor chains over 0 become one numeral.

    ``Numeral(0)`` and ``Zero`` are the same value; the canonical form of both
    is ``Zero``.
    """
    if isinstance(t, Numeral):
        return Zero() if t.value == 0 else t
    if isinstance(t, Succ):
        return succ(normalize_term(t.arg))
    if isinstance(t, Add):
        return Add(normalize_term(t.left), normalize_term(t.right))
    if isinstance(t, Mul):
        return Mul(normalize_term(t.left), normalize_term(t.right))
    return t


def normalize(s: Sentence) -> Sentence:
    if isinstance(s, Eq):
        return Eq(normalize_term(s.left), normalize_term(s.right))
    if isinstance(s, Not):
        return Not(normalize(s.body))
    if isinstance(s, BINARY_CONNECTIVES):
        return type(s)(normalize(s.left), normalize(s.right))
    if isinstance(s, QUANTIFIERS):
        return type(s)(s.var, normalize(s.body))
    raise TypeError(f"not a sentence: {s!r}")


def structurally_equal(a: Sentence, b: Sentence) -> bool:
    return normalize(a) == normalize(b)


def free_vars(s: Sentence) -> frozenset:
    if isinstance(s, Eq):
        return frozenset(term_names(s.left)) | frozenset(term_names(s.right))
    if isinstance(s, Not):
        return free_vars(s.body)
    if isinstance(s, BINARY_CONNECTIVES):
        return free_vars(s.left) | free_vars(s.right)
    if isinstance(s, QUANTIFIERS):
        return free_vars(s.body) - {s.var}
    raise TypeError(f"not a sentence: {s!r}")


def term_constants(t: Term) -> Iterator[int]:
    if isinstance(t, Const):
        yield t.index
    elif isinstance(t, Succ):
        yield from term_constants(t.arg)
    elif isinstance(t, (Add, Mul)):
        yield from term_constants(t.left)
        yield from term_constants(t.right)


def constants(s: Sentence) -> frozenset:
    """Indices of the constant symbols occurring in ``s``."""
    if isinstance(s, Eq):
        return frozenset(term_constants(s.left)) | frozenset(term_constants(s.right))
    if isinstance(s, Not):
        return constants(s.body)
    if isinstance(s, BINARY_CONNECTIVES):
        return constants(s.left) | constants(s.right)
    if isinstance(s, QUANTIFIERS):
        return constants(s.body)
    raise TypeError(f"not a sentence: {s!r}")


def is_closed(s: Sentence) -> bool:
    return not free_vars(s)


# -- schema tags -------------------------------------------------------------


class Schema(enum.Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"
    OMEGA = "omega"
    SIGMA = "sigma"


@dataclass(frozen=True)
class SchemaTag:
    """Identity of a schema instance: its family plus the index ``i`` and/or prime ``p``.

    Sigma carries no ``i``; Gamma, Omega and Sigma carry ``p``.  Primality of
    ``p`` is checked by the constructors in :mod:`pawitness.schemas`, which are
    the only intended way to build tags.
    """

    kind: Schema
    i: Optional[int] = None
    p: Optional[int] = None

    def __str__(self):
        parts = [self.kind.value]
        if self.i is not None:
            parts.append(str(self.i))
        if self.p is not None:
            parts.append(str(self.p))
        return ":".join(parts)


@dataclass(frozen=True)
class TaggedSentence:
    """A sentence that remembers which schema instance it is.

    ``bound`` is only used by Sigma: the initial segment ``0..bound`` on which
    the universal is checked.
    """

    tag: SchemaTag
    sentence: Sentence
    bound: Optional[int] = None

    def __str__(self):
        from .printer import render

        return render(self.sentence)
