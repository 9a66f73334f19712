"""Finite satisfiability on demand.

Given finitely many alpha/beta/gamma sentences, find the smallest fragment
theta(n, k) containing them and exhibit a standard model of it.  The model
satisfies the Peano axioms because it is N itself; those axioms are not
checked here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .formula.parser import parse
from .formula.semantics import eval_schema
from .formula.syntax import Schema
from .number_theory import prime_index
from .schemas import instance, match_schema, tag_from_dict, tag_to_dict
from .witness import SearchPolicy, WitnessCertificate, find_witnesses

PA_ASSUMPTION = (
    "Peano axioms are not checked: the model is the standard structure N, "
    "which satisfies them by construction"
)

_THETA_KINDS = frozenset({Schema.ALPHA, Schema.BETA, Schema.GAMMA})


class NotInThetaError(ValueError):
    """A requested sentence does not belong to the family being covered."""


@dataclass(frozen=True)
class FragmentCover:
    tags: tuple
    n: int
    k: int

    def contains(self, tag) -> bool:
        if tag.i > self.n:
            return False
        return tag.p is None or prime_index(tag.p) <= self.k


@dataclass(frozen=True)
class Demonstration:
    cover: FragmentCover
    certificate: WitnessCertificate
    verdicts: tuple  # (tag, Verdict) pairs in request order
    assumptions: tuple = (PA_ASSUMPTION,)

    @property
    def all_true(self) -> bool:
        return all(v.truth is True for _, v in self.verdicts)

    def to_dict(self) -> dict:
        return {
            "n": self.cover.n,
            "k": self.cover.k,
            "witnesses": [str(w.value) for w in self.certificate.witnesses],
            "verdicts": [dict(tag_to_dict(t), verdict=str(v)) for t, v in self.verdicts],
            "assumptions": list(self.assumptions),
        }


def cover(tags, allow_omega: bool = False) -> FragmentCover:
    """Coordinatewise smallest (n, k) such that theta(n, k) holds every tag.

    Omega tags are machinery rather than members of the family and are
    rejected unless ``allow_omega`` is set.
    """
    tags = tuple(tags)
    if not tags:
        raise ValueError("need at least one sentence to cover")
    allowed = _THETA_KINDS | ({Schema.OMEGA} if allow_omega else set())
    for t in tags:
        if t.kind not in allowed:
            raise NotInThetaError(f"{t} is not a member of the covered family")
    n = max(t.i for t in tags)
    k = max((prime_index(t.p) for t in tags if t.p is not None), default=1)
    return FragmentCover(tags, n, k)


def demonstrate(tags, policy: SearchPolicy = SearchPolicy(), allow_omega: bool = False) -> Demonstration:
    """Cover the tags, build the model for the cover and evaluate each requested sentence."""
    fc = cover(tags, allow_omega)
    cert = find_witnesses(fc.n, fc.k, policy)
    assignment = cert.assignment
    verdicts = tuple((t, eval_schema(instance(t), assignment)) for t in fc.tags)
    return Demonstration(fc, cert, verdicts)


def read_tags(text: str) -> list:
    """Tags from a JSON array of ``{"kind", "i", "p"}`` objects or of sentence strings.

    Strings are parsed and matched back to the schema they instantiate.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ValueError(f"invalid JSON: {err}") from None
    if not isinstance(data, list):
        raise ValueError("expected a JSON array of tags")
    tags = []
    for item in data:
        if isinstance(item, str):
            tags.append(match_schema(parse(item)))
        else:
            tags.append(tag_from_dict(item))
    return tags
