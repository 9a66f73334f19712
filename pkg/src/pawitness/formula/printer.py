"""Canonical text rendering.

The output is always accepted by :func:`pawitness.formula.parser.parse` and
reparses to the same tree (after numeral normalization).  Existentials that
are exactly the expansion of ``<=`` / ``<`` are printed back in sugared form,
``b >= a`` or ``b > a``.
"""

from __future__ import annotations

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
    fresh_var,
)

DEFAULT_EXPANSION_CAP = 32

_CONNECTIVE = {And: "/\\", Or: "\\/", Implies: "->"}


def render_numeral(n: int, cap: int = DEFAULT_EXPANSION_CAP) -> str:
    if n == 0:
        return "0"
    if n <= cap:
        return "S(" * n + "0" + ")" * n
    return f"S^{n}(0)"


def render_term(t, cap: int = DEFAULT_EXPANSION_CAP) -> str:
    return _term(t, 0, cap)


# precedence: 0 = sum, 1 = product, 2 = atom
def _term(t, ctx: int, cap: int) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Numeral):
        return render_numeral(t.value, cap)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return f"c{t.index}"
    if isinstance(t, Succ):
        return f"S({_term(t.arg, 0, cap)})"
    if isinstance(t, Add):
        text = f"{_term(t.left, 0, cap)} + {_term(t.right, 1, cap)}"
        return f"({text})" if ctx > 0 else text
    if isinstance(t, Mul):
        text = f"{_term(t.left, 1, cap)} * {_term(t.right, 2, cap)}"
        return f"({text})" if ctx > 1 else text
    raise TypeError(f"not a term: {t!r}")


def _order_sugar(s: Exists, cap: int):
    """Return ``"b >= a"`` / ``"b > a"`` if ``s`` is a parser expansion, else None."""
    body = s.body
    if not (isinstance(body, Eq) and isinstance(body.left, Add)):
        return None
    lower, z, upper = body.left.left, body.left.right, body.right
    if z != Var(s.var) or fresh_var(lower, upper) != s.var:
        return None
    if isinstance(lower, Succ):
        return f"{_term(upper, 0, cap)} > {_term(lower.arg, 0, cap)}"
    return f"{_term(upper, 0, cap)} >= {_term(lower, 0, cap)}"


def render(s, cap: int = DEFAULT_EXPANSION_CAP) -> str:
    """Render a sentence.  Numerals above ``cap`` print as ``S^n(0)``."""
    if isinstance(s, Eq):
        return f"{_term(s.left, 0, cap)} = {_term(s.right, 0, cap)}"
    if isinstance(s, Not):
        return f"~{_negated(s.body, cap)}"
    if isinstance(s, (And, Or, Implies)):
        return f"{_binary_operand(s.left, cap)} {_CONNECTIVE[type(s)]} {_binary_operand(s.right, cap)}"
    if isinstance(s, Exists):
        sugar = _order_sugar(s, cap)
        if sugar is not None:
            return sugar
        return f"exists {s.var} {_unary_operand(s.body, cap)}"
    if isinstance(s, ForAll):
        return f"forall {s.var} {_unary_operand(s.body, cap)}"
    raise TypeError(f"not a sentence: {s!r}")


def _unary_operand(s, cap: int) -> str:
    if isinstance(s, (And, Or, Implies)):
        return f"({render(s, cap)})"
    return render(s, cap)


def _negated(s, cap: int) -> str:
    if isinstance(s, (And, Or, Implies, Eq)) or (isinstance(s, Exists) and _order_sugar(s, cap)):
        return f"({render(s, cap)})"
    return render(s, cap)


def _binary_operand(s, cap: int) -> str:
    if isinstance(s, (And, Or, Implies)):
        return f"({render(s, cap)})"
    return render(s, cap)
