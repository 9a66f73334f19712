"""Recursive-descent parser for the concrete sentence syntax.

Grammar (loosest binding first)::

    sentence := disj ["->" sentence]              right associative
    disj     := conj {"\\/" conj}
    conj     := unary {"/\\" unary}
    unary    := "~" unary
              | ("forall" | "exists") IDENT unary
              | "(" sentence ")"
              | term REL term                     REL in = != <= < >= >
    term     := prod {"+" prod}
    prod     := factor {"*" factor}
    factor   := "0" | "S" "(" term ")" | "S^" NUMBER "(0)"
              | "c" NUMBER | IDENT | "(" term ")"

Quantifiers bind as tightly as negation, so ``forall x A -> B`` reads as
``(forall x A) -> B``.  The Unicode forms of the logical symbols are accepted
as well.  Variables must be bound by an enclosing quantifier.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

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
    Succ,
    Var,
    Zero,
    ge,
    gt,
    le,
    lt,
    ne,
    normalize,
    normalize_term,
)


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownIdentifierError(ParseError):
    pass


_UNICODE = {
    "∀": "forall",
    "∃": "exists",
    "¬": "~",
    "∧": "/\\",
    "∨": "\\/",
    "→": "->",
    "≤": "<=",
    "≥": ">=",
    "≠": "!=",
    "·": "*",
}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>/\\|\\/|->|<=|>=|!=|[~()+*=<>^])
  | (?P<uni>[∀∃¬∧∨→≤≥≠·])
    """,
    re.VERBOSE,
)

_CONST = re.compile(r"c(\d+)\Z")
_KEYWORDS = {"forall", "exists", "S"}
_RELATIONS = {"=": Eq, "!=": ne, "<=": le, "<": lt, ">=": ge, ">": gt}


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op" or "end"
    text: str
    pos: int


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind == "uni":
            word = _UNICODE[m.group()]
            tokens.append(Token("ident" if word.isalpha() else "op", word, pos))
        elif kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.bound: list = []
        self.furthest: ParseError | None = None

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "ident") and self.tok.text == text

    def fail(self, message: str, cls=ParseError):
        err = cls(message, self.tok.pos, self.text)
        if self.furthest is None or err.position >= self.furthest.position:
            self.furthest = err
        raise err

    def expect(self, text: str):
        if not self.at(text):
            found = self.tok.text or "end of input"
            self.fail(f"expected {text!r}, found {found!r}")
        self.i += 1

    # -- sentences -----------------------------------------------------------

    def sentence(self):
        left = self.disjunction()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.sentence())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.at("\\/"):
            self.i += 1
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.at("/\\"):
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self):
        if self.at("~"):
            self.i += 1
            return Not(self.unary())
        if self.at("forall") or self.at("exists"):
            quantifier = ForAll if self.tok.text == "forall" else Exists
            self.i += 1
            var = self.variable_name()
            self.bound.append(var)
            try:
                body = self.unary()
            finally:
                self.bound.pop()
            return quantifier(var, body)
        if self.at("("):
            # "(" opens either a parenthesized sentence or a term of an atom
            start = self.i
            try:
                self.i += 1
                inner = self.sentence()
                self.expect(")")
                return inner
            except ParseError:
                self.i = start
        return self.atom()

    def variable_name(self) -> str:
        tok = self.tok
        if tok.kind != "ident" or tok.text in _KEYWORDS or _CONST.match(tok.text):
            self.fail(f"expected a variable name, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok.text

    def atom(self):
        left = self.term()
        tok = self.tok
        if tok.kind != "op" or tok.text not in _RELATIONS:
            self.fail(f"expected a relation (=, !=, <=, <, >=, >), found {tok.text or 'end of input'!r}")
        self.i += 1
        return _RELATIONS[tok.text](left, self.term())

    # -- terms ---------------------------------------------------------------

    def term(self):
        left = self.product()
        while self.at("+"):
            self.i += 1
            left = Add(left, self.product())
        return left

    def product(self):
        left = self.factor()
        while self.at("*"):
            self.i += 1
            left = Mul(left, self.factor())
        return left

    def factor(self):
        tok = self.tok
        if tok.kind == "num":
            if tok.text != "0":
                self.fail(f"bare numeral {tok.text!r}; write S^{tok.text}(0)")
            self.i += 1
            return Zero()
        if self.at("S"):
            self.i += 1
            if self.at("^"):
                self.i += 1
                count = self.tok
                if count.kind != "num":
                    self.fail("expected a repetition count after 'S^'")
                self.i += 1
                self.expect("(")
                if not (self.tok.kind == "num" and self.tok.text == "0"):
                    self.fail("S^n(...) takes only 0 as its argument")
                self.i += 1
                self.expect(")")
                return Numeral(int(count.text))
            self.expect("(")
            arg = self.term()
            self.expect(")")
            return Succ(arg)
        if self.at("("):
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        if tok.kind == "ident" and tok.text not in _KEYWORDS:
            m = _CONST.match(tok.text)
            if m:
                index = int(m.group(1))
                if index < 1:
                    self.fail(f"constant index must be >= 1 in {tok.text!r}", UnknownIdentifierError)
                self.i += 1
                return Const(index)
            if tok.text not in self.bound:
                self.fail(f"unknown identifier {tok.text!r}", UnknownIdentifierError)
            self.i += 1
            return Var(tok.text)
        self.fail(f"expected a term, found {tok.text or 'end of input'!r}")


def parse(text: str):
    """Parse ``text`` into a normalized sentence.

    Raises :class:`ParseError` (with ``position``) on malformed input and
    :class:`UnknownIdentifierError` for free variables or bad constants.
    """
    p = _Parser(text)
    try:
        result = p.sentence()
        if p.tok.kind != "end":
            p.fail(f"unexpected {p.tok.text!r}")
    except ParseError as err:
        # report the deepest failure, not the backtracking point
        furthest = p.furthest or err
        raise (furthest if furthest.position >= err.position else err) from None
    return normalize(result)


def parse_term(text: str, bound=()):
    """Parse a lone term; ``bound`` lists variable names allowed to occur."""
    p = _Parser(text)
    p.bound.extend(bound)
    result = p.term()
    if p.tok.kind != "end":
        p.fail(f"unexpected {p.tok.text!r}")
    return normalize_term(result)
