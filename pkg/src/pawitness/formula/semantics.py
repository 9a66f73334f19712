"""Evaluation over the standard model (N, +, *, S, 0).

Two routes are provided:

* :func:`eval_bounded` works on any closed sentence.  Every quantifier is
  enumerated over ``0..bound``; the values above the bound are covered by one
  abstract "tail" evaluation in which the variable is only known to exceed the
  bound.  A quantifier is decided when the enumerated part is decisive or
  when the tail has a definite truth value; otherwise the result is
  ``UnknownUpTo(bound)``.
* :func:`eval_schema` decides tagged schema instances exactly through their
  arithmetic characterizations (comparison, primality, divisibility,
  congruence).
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Optional, Union

from .syntax import (
    Add,
    And,
    Const,
    Eq,
    Exists,
    ForAll,
    Implies,
    Mul,
    Not,
    Numeral,
    Or,
    Schema,
    Succ,
    TaggedSentence,
    Var,
    Zero,
)


class EvaluationError(ValueError):
    pass


class UnboundVariableError(EvaluationError):
    pass


class MissingConstantError(EvaluationError):
    pass


class UntaggedSentenceError(TypeError):
    pass


# -- verdicts ----------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Three-valued result: ``truth`` is True, False or None (undecided up to ``bound``)."""

    truth: Optional[bool]
    bound: Optional[int] = None

    @classmethod
    def unknown(cls, bound: int) -> Verdict:
        return cls(None, bound)

    @property
    def decided(self) -> bool:
        return self.truth is not None

    def __str__(self):
        if self.truth is None:
            return f"UnknownUpTo({self.bound})"
        return str(self.truth)

    @classmethod
    def from_string(cls, text: str) -> Verdict:
        if text == "True":
            return TRUE
        if text == "False":
            return FALSE
        if text.startswith("UnknownUpTo(") and text.endswith(")"):
            return cls.unknown(int(text[len("UnknownUpTo(") : -1]))
        raise ValueError(f"not a verdict: {text!r}")


TRUE = Verdict(True)
FALSE = Verdict(False)


# -- assignments -------------------------------------------------------------


class Assignment(Mapping):
    """Interpretation of the constants ``c_1..c_n`` as natural numbers."""

    __slots__ = ("_values",)

    def __init__(self, values=()):
        if isinstance(values, Mapping):
            keys = sorted(values)
            if keys != list(range(1, len(keys) + 1)):
                raise ValueError(f"constant indices must be exactly 1..n, got {keys}")
            values = [values[k] for k in keys]
        values = tuple(values)
        for v in values:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"constants must denote natural numbers, got {v!r}")
        self._values = values

    def __getitem__(self, index: int) -> int:
        if not isinstance(index, int) or not 1 <= index <= len(self._values):
            raise KeyError(index)
        return self._values[index - 1]

    def __iter__(self):
        return iter(range(1, len(self._values) + 1))

    def __len__(self):
        return len(self._values)

    @property
    def values(self) -> tuple:
        return self._values

    def __repr__(self):
        inner = ", ".join(f"c{i}={v}" for i, v in zip(self, self._values))
        return f"Assignment({inner})"

    def __eq__(self, other):
        if isinstance(other, Assignment):
            return self._values == other._values
        return NotImplemented

    def __hash__(self):
        return hash(self._values)


def _constant(a: Mapping, index: int) -> int:
    try:
        return a[index]
    except KeyError:
        raise MissingConstantError(f"no value assigned to c{index}") from None


# -- exact term evaluation ---------------------------------------------------


def eval_term(t, a: Mapping = Assignment(), env: Optional[Mapping] = None) -> int:
    """Value of ``t`` with constants from ``a`` and variables from ``env``."""
    env = env or {}
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Numeral):
        return t.value
    if isinstance(t, Succ):
        return eval_term(t.arg, a, env) + 1
    if isinstance(t, Add):
        return eval_term(t.left, a, env) + eval_term(t.right, a, env)
    if isinstance(t, Mul):
        return eval_term(t.left, a, env) * eval_term(t.right, a, env)
    if isinstance(t, Const):
        return _constant(a, t.index)
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise UnboundVariableError(f"variable {t.name!r} is not bound") from None
    raise TypeError(f"not a term: {t!r}")


# -- bounded evaluation ------------------------------------------------------


@dataclass(frozen=True)
class AtLeast:
    """An unknown natural number known to be >= ``low``."""

    low: int


Value = Union[int, AtLeast]


def _abstract_term(t, a: Mapping, env: Mapping) -> Value:
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise UnboundVariableError(f"variable {t.name!r} is not bound") from None
    if isinstance(t, (Zero, Numeral, Const)):
        return eval_term(t, a)
    if isinstance(t, Succ):
        v = _abstract_term(t.arg, a, env)
        return AtLeast(v.low + 1) if isinstance(v, AtLeast) else v + 1
    left = _abstract_term(t.left, a, env)
    right = _abstract_term(t.right, a, env)
    if isinstance(t, Add):
        if isinstance(left, int) and isinstance(right, int):
            return left + right
        return AtLeast(_low(left) + _low(right))
    if isinstance(t, Mul):
        if isinstance(left, int) and isinstance(right, int):
            return left * right
        if left == 0 or right == 0:
            return 0
        return AtLeast(_low(left) * _low(right))
    raise TypeError(f"not a term: {t!r}")


def _low(v: Value) -> int:
    return v.low if isinstance(v, AtLeast) else v


def _abstract_eq(left: Value, right: Value) -> Optional[bool]:
    if isinstance(left, int) and isinstance(right, int):
        return left == right
    if isinstance(left, int) and left < right.low:
        return False
    if isinstance(right, int) and right < left.low:
        return False
    return None


def _and(x: Optional[bool], y: Optional[bool]) -> Optional[bool]:
    if x is False or y is False:
        return False
    if x is True and y is True:
        return True
    return None


def _or(x: Optional[bool], y: Optional[bool]) -> Optional[bool]:
    if x is True or y is True:
        return True
    if x is False and y is False:
        return False
    return None


def _not(x: Optional[bool]) -> Optional[bool]:
    return None if x is None else not x


def _eval3(s, a: Mapping, env: dict, bound: int) -> Optional[bool]:
    if isinstance(s, Eq):
        return _abstract_eq(_abstract_term(s.left, a, env), _abstract_term(s.right, a, env))
    if isinstance(s, Not):
        return _not(_eval3(s.body, a, env, bound))
    if isinstance(s, And):
        left = _eval3(s.left, a, env, bound)
        if left is False:
            return False
        return _and(left, _eval3(s.right, a, env, bound))
    if isinstance(s, Or):
        left = _eval3(s.left, a, env, bound)
        if left is True:
            return True
        return _or(left, _eval3(s.right, a, env, bound))
    if isinstance(s, Implies):
        left = _eval3(s.left, a, env, bound)
        if left is False:
            return True
        return _or(_not(left), _eval3(s.right, a, env, bound))
    if isinstance(s, (ForAll, Exists)):
        return _eval_quantifier(s, a, env, bound)
    raise TypeError(f"not a sentence: {s!r}")


def _eval_quantifier(s, a: Mapping, env: dict, bound: int) -> Optional[bool]:
    # the existential is the dual: look for True instead of False
    decisive = s.__class__ is Exists
    saved = env.get(s.var, _MISSING)
    undecided = False
    try:
        for value in range(bound + 1):
            env[s.var] = value
            r = _eval3(s.body, a, env, bound)
            if r is decisive:
                return decisive
            if r is None:
                undecided = True
        env[s.var] = AtLeast(bound + 1)
        tail = _eval3(s.body, a, env, bound)
    finally:
        if saved is _MISSING:
            del env[s.var]
        else:
            env[s.var] = saved
    if tail is decisive:
        return decisive
    if undecided or tail is None:
        return None
    return not decisive


_MISSING = object()


def eval_bounded(s, a: Mapping = Assignment(), bound: int = 10**4) -> Verdict:
    """Evaluate ``s`` with quantifiers enumerated over ``0..bound``.

    Returns True or False only when that is the truth in the standard model;
    a universal that merely holds up to the bound is ``UnknownUpTo(bound)``.
    """
    if isinstance(s, TaggedSentence):
        s = s.sentence
    if bound < 0:
        raise ValueError("bound must be a natural number")
    r = _eval3(s, a, {}, bound)
    return Verdict.unknown(bound) if r is None else Verdict(r)


# -- exact decisions for schema instances ------------------------------------


def eval_schema(s: TaggedSentence, a: Mapping = Assignment()) -> Verdict:
    """Decide a schema instance through its arithmetic characterization.

    Sigma is a universal over all of N; it is checked on ``0..s.bound`` and
    reported as ``UnknownUpTo(bound)`` when no counterexample turns up.
    """
    from ..number_theory import is_prime

    if not isinstance(s, TaggedSentence):
        raise UntaggedSentenceError("exact evaluation needs a schema-tagged sentence")
    tag = s.tag
    if tag.kind is Schema.SIGMA:
        p = tag.p
        for z in range(s.bound + 1):
            if z % p == p - 1 and (z + 2) % p != 1:
                return FALSE
        return Verdict.unknown(s.bound)

    c = _constant(a, tag.i)
    if tag.kind is Schema.ALPHA:
        return Verdict(c >= 2 if tag.i == 1 else c > _constant(a, tag.i - 1))
    if tag.kind is Schema.BETA:
        # literal reading: 0 and 1 have no factorization x*y = c with x, y != c
        return Verdict(c < 2 or bool(is_prime(c)))
    if tag.kind is Schema.GAMMA:
        return Verdict((c + 2) % tag.p != 0)
    if tag.kind is Schema.OMEGA:
        return Verdict(c % tag.p == tag.p - 1)
    raise ValueError(f"unknown schema kind {tag.kind!r}")
