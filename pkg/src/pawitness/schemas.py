"""Generators for the sentence families and their finite fragments.

Every generated sentence is wrapped in a :class:`TaggedSentence` so that the
exact evaluator can recognise it.  ``theta(n, k)`` is the fragment
{alpha_i, beta_i, gamma_{i,p} : i <= n, p <= p_k}; ``omega_block(n, k)`` holds
the congruence sentences used to build its models.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula.syntax import (
    Add,
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
    SchemaTag,
    TaggedSentence,
    Var,
    constants,
    ge,
    gt,
    normalize,
    numeral,
)
from .number_theory import first_primes, is_prime

DEFAULT_SIGMA_BOUND = 10**4


@dataclass(frozen=True)
class FragmentSpec:
    n: int
    k: int

    def __post_init__(self):
        for name in ("n", "k"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")


def _check_index(i):
    if not isinstance(i, int) or isinstance(i, bool) or i < 1:
        raise ValueError(f"constant index must be >= 1, got {i!r}")


def _check_prime(p):
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise ValueError(f"{p!r} is not prime")


def alpha(i: int) -> TaggedSentence:
    """c1 >= SS0 for i = 1, otherwise c_i > c_{i-1}."""
    _check_index(i)
    if i == 1:
        s = ge(Const(1), numeral(2))
    else:
        s = gt(Const(i), Const(i - 1))
    return TaggedSentence(SchemaTag(Schema.ALPHA, i=i), normalize(s))


def beta(i: int) -> TaggedSentence:
    """forall x forall y (x * y = c_i -> x = c_i \\/ y = c_i)."""
    _check_index(i)
    c = Const(i)
    x, y = Var("x"), Var("y")
    s = ForAll("x", ForAll("y", Implies(Eq(Mul(x, y), c), Or(Eq(x, c), Eq(y, c)))))
    return TaggedSentence(SchemaTag(Schema.BETA, i=i), s)


def gamma(i: int, p: int) -> TaggedSentence:
    """forall z ~(c_i + SS0 = z * p)."""
    _check_index(i)
    _check_prime(p)
    s = ForAll("z", Not(Eq(Add(Const(i), numeral(2)), Mul(Var("z"), numeral(p)))))
    return TaggedSentence(SchemaTag(Schema.GAMMA, i=i, p=p), s)


def omega(i: int, p: int) -> TaggedSentence:
    """exists x c_i = x * p + (p - 1)."""
    _check_index(i)
    _check_prime(p)
    s = Exists("x", Eq(Const(i), Add(Mul(Var("x"), numeral(p)), numeral(p - 1))))
    return TaggedSentence(SchemaTag(Schema.OMEGA, i=i, p=p), s)


def sigma(p: int, bound: int = DEFAULT_SIGMA_BOUND) -> TaggedSentence:
    """The constant-free sentence: z = -1 (mod p) implies z + 2 = 1 (mod p).

    It is checked only on ``0..bound``.
    """
    _check_prime(p)
    if bound < 0:
        raise ValueError("bound must be a natural number")
    z = Var("z")
    premise = Exists("x", Eq(z, Add(Mul(Var("x"), numeral(p)), numeral(p - 1))))
    conclusion = Exists("y", Eq(Add(z, numeral(2)), Add(Mul(Var("y"), numeral(p)), Numeral(1))))
    s = ForAll("z", Implies(premise, conclusion))
    return TaggedSentence(SchemaTag(Schema.SIGMA, p=p), s, bound=bound)


def instance(tag: SchemaTag, sigma_bound: int = DEFAULT_SIGMA_BOUND) -> TaggedSentence:
    """The tagged sentence named by ``tag``."""
    kind = tag.kind
    if kind is Schema.ALPHA:
        return alpha(tag.i)
    if kind is Schema.BETA:
        return beta(tag.i)
    if kind is Schema.GAMMA:
        return gamma(tag.i, tag.p)
    if kind is Schema.OMEGA:
        return omega(tag.i, tag.p)
    if kind is Schema.SIGMA:
        return sigma(tag.p, sigma_bound)
    raise ValueError(f"unknown schema kind {kind!r}")


def parse_tag(text: str) -> SchemaTag:
    """Parse ``kind[:i][:p]``, e.g. ``alpha:1``, ``gamma:1:3``, ``sigma:5``."""
    parts = text.strip().split(":")
    try:
        kind = Schema(parts[0].strip().lower())
        nums = [int(x) for x in parts[1:]]
    except ValueError:
        raise ValueError(f"bad schema tag {text!r}") from None
    expected = {Schema.ALPHA: 1, Schema.BETA: 1, Schema.GAMMA: 2, Schema.OMEGA: 2, Schema.SIGMA: 1}[kind]
    if len(nums) != expected:
        raise ValueError(f"schema tag {text!r}: {kind.value} takes {expected} number(s)")
    if kind is Schema.SIGMA:
        tag = SchemaTag(kind, p=nums[0])
    elif expected == 1:
        tag = SchemaTag(kind, i=nums[0])
    else:
        tag = SchemaTag(kind, i=nums[0], p=nums[1])
    instance(tag, 0)  # validates index and primality
    return tag


def tag_from_dict(d: dict) -> SchemaTag:
    """Tag from the JSON form ``{"kind", "i", "p"}``."""
    if not isinstance(d, dict) or "kind" not in d:
        raise ValueError(f"schema tag object needs a 'kind': {d!r}")
    try:
        kind = Schema(str(d["kind"]).lower())
    except ValueError:
        raise ValueError(f"unknown schema kind {d['kind']!r}") from None
    tag = SchemaTag(kind, i=d.get("i"), p=d.get("p"))
    needs_i = kind is not Schema.SIGMA
    needs_p = kind in (Schema.GAMMA, Schema.OMEGA, Schema.SIGMA)
    if (tag.i is not None) != needs_i or (tag.p is not None) != needs_p:
        raise ValueError(f"schema tag {d!r} has the wrong fields for {kind.value}")
    instance(tag, 0)
    return tag


def tag_to_dict(tag: SchemaTag) -> dict:
    return {"kind": tag.kind.value, "i": tag.i, "p": tag.p}


def match_schema(sentence) -> SchemaTag:
    """Recover the schema tag of a plain sentence, e.g. one read from text.

    Raises ValueError if the sentence is not an instance of any family.
    """
    s = normalize(sentence)
    found = sorted(constants(s))
    candidates = []
    if found:
        i = found[-1]
        candidates += [alpha(i), beta(i)]
        for p in _numerals(s):
            if p >= 2 and is_prime(p):
                candidates += [gamma(i, p), omega(i, p)]
    else:
        for p in _numerals(s):
            if p >= 2 and is_prime(p):
                candidates.append(sigma(p))
    for c in candidates:
        if c.sentence == s:
            return c.tag
    raise ValueError("sentence is not an instance of a known schema")


def _numerals(s) -> set:
    out = set()

    def walk(node):
        if isinstance(node, Numeral):
            out.add(node.value)
        for value in getattr(node, "__dict__", {}).values():
            if hasattr(value, "__dataclass_fields__"):
                walk(value)

    walk(s)
    return out


def tag_sentence(sentence, tag: SchemaTag, sigma_bound: int = DEFAULT_SIGMA_BOUND) -> TaggedSentence:
    """Attach ``tag`` to ``sentence`` after checking it really is that instance."""
    expected = instance(tag, sigma_bound)
    if normalize(sentence) != expected.sentence:
        raise ValueError(f"sentence is not the {tag} instance")
    return expected


def theta(spec: FragmentSpec) -> list:
    """The fragment: alpha_i, beta_i and gamma_{i,p} for i <= n, p <= p_k.  Size n(k + 2)."""
    if not isinstance(spec, FragmentSpec):
        spec = FragmentSpec(*spec)
    out = []
    for i in range(1, spec.n + 1):
        out.append(alpha(i))
        out.append(beta(i))
        out.extend(gamma(i, p) for p in first_primes(spec.k))
    return out


def omega_block(spec: FragmentSpec) -> list:
    """omega_{i,p} for i <= n, p <= p_k.  Size n*k."""
    if not isinstance(spec, FragmentSpec):
        spec = FragmentSpec(*spec)
    return [omega(i, p) for i in range(1, spec.n + 1) for p in first_primes(spec.k)]
