"""Concrete standard models for the finite fragments.

For given ``n`` and ``k`` the constants c_1 < ... < c_n are interpreted as the
``n`` smallest primes of the progression ``m * P_k - 1`` (m = 1, 2, ...),
where ``P_k`` is the k-th primorial.  Those values solve every congruence
``y = p - 1 (mod p)`` for p <= p_k, hence satisfy the whole omega block and,
through it, every gamma sentence of the fragment.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import __version__
from .formula.semantics import Assignment, eval_schema
from .formula.syntax import Schema, SchemaTag
from .number_theory import (
    DEFAULT_ROUNDS,
    Congruence,
    ModularSystem,
    crt_solve,
    default_workers,
    first_primes,
    is_prime,
    primorial,
)
from .schemas import FragmentSpec, omega_block, theta

DEFAULT_MAX_PROGRESSION_INDEX = 10**7
# keeps primorials of hostile certificates within int <-> str conversion limits
MAX_K = 1000


class SearchExhausted(RuntimeError):
    """The progression bound was hit before ``n`` primes were found."""

    def __init__(self, n: int, k: int, max_m: int, found: list):
        self.n, self.k, self.max_m, self.found = n, k, max_m, found
        super().__init__(
            f"found {len(found)} of {n} prime witnesses for k={k} "
            f"among progression indices m <= {max_m}"
        )


class CertificateFormatError(ValueError):
    """A certificate is structurally malformed (as opposed to mathematically wrong)."""


@dataclass(frozen=True)
class SearchPolicy:
    max_progression_index: int = DEFAULT_MAX_PROGRESSION_INDEX
    rounds: int = DEFAULT_ROUNDS
    segment_width: int = 256
    workers: Optional[int] = None


@dataclass(frozen=True)
class Witness:
    i: int
    m: int
    value: int
    regime: str


@dataclass(frozen=True)
class RecordedVerdict:
    tag: SchemaTag
    verdict: str


@dataclass(frozen=True)
class WitnessCertificate:
    n: int
    k: int
    primorial_value: int
    witnesses: tuple
    verdicts: tuple
    tool_version: str = __version__

    @property
    def assignment(self) -> Assignment:
        return Assignment(w.value for w in self.witnesses)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "primorial": str(self.primorial_value),
            "witnesses": [
                {"i": w.i, "m": w.m, "value": str(w.value), "regime": w.regime} for w in self.witnesses
            ],
            "verdicts": [
                {"schema": v.tag.kind.value, "i": v.tag.i, "p": v.tag.p, "verdict": v.verdict}
                for v in self.verdicts
            ],
            "tool_version": self.tool_version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text) -> WitnessCertificate:
        if isinstance(text, bytes):
            try:
                text = text.decode("utf-8")
            except UnicodeDecodeError as err:
                raise CertificateFormatError(f"certificate is not UTF-8: {err}") from None
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise CertificateFormatError(f"invalid JSON: {err}") from None
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data) -> WitnessCertificate:
        if not isinstance(data, dict):
            raise CertificateFormatError("certificate must be a JSON object")
        expected = ["n", "k", "primorial", "witnesses", "verdicts", "tool_version"]
        if sorted(data) != sorted(expected):
            raise CertificateFormatError(f"certificate keys must be exactly {expected}, got {list(data)}")
        n, k = _count(data["n"], "n"), _count(data["k"], "k")
        witnesses = []
        if not isinstance(data["witnesses"], list):
            raise CertificateFormatError("'witnesses' must be a list")
        for pos, w in enumerate(data["witnesses"], start=1):
            if not isinstance(w, dict) or sorted(w) != ["i", "m", "regime", "value"]:
                raise CertificateFormatError(f"witness #{pos} must have exactly the keys i, m, value, regime")
            if not isinstance(w["regime"], str):
                raise CertificateFormatError(f"witness #{pos}: regime must be a string")
            witnesses.append(
                Witness(_count(w["i"], "i"), _count(w["m"], "m"), _decimal(w["value"], "value"), w["regime"])
            )
        verdicts = []
        if not isinstance(data["verdicts"], list):
            raise CertificateFormatError("'verdicts' must be a list")
        for pos, v in enumerate(data["verdicts"], start=1):
            if not isinstance(v, dict) or sorted(v) != ["i", "p", "schema", "verdict"]:
                raise CertificateFormatError(f"verdict #{pos} must have exactly the keys schema, i, p, verdict")
            try:
                kind = Schema(v["schema"])
            except ValueError:
                raise CertificateFormatError(f"verdict #{pos}: unknown schema {v['schema']!r}") from None
            i = _count(v["i"], "i")
            p = None if v["p"] is None else _count(v["p"], "p")
            if not isinstance(v["verdict"], str):
                raise CertificateFormatError(f"verdict #{pos}: verdict must be a string")
            verdicts.append(RecordedVerdict(SchemaTag(kind, i=i, p=p), v["verdict"]))
        if not isinstance(data["tool_version"], str):
            raise CertificateFormatError("'tool_version' must be a string")
        cert = cls(n, k, _decimal(data["primorial"], "primorial"), tuple(witnesses), tuple(verdicts), data["tool_version"])
        cert.check_structure()
        return cert

    def check_structure(self):
        """Raise :class:`CertificateFormatError` on index gaps or a wrong witness count."""
        if self.n < 1 or self.k < 1:
            raise CertificateFormatError("n and k must be >= 1")
        if self.k > MAX_K:
            raise CertificateFormatError(f"k = {self.k} exceeds the supported maximum {MAX_K}")
        indices = [w.i for w in self.witnesses]
        if indices != list(range(1, self.n + 1)):
            raise CertificateFormatError(f"witness indices must be 1..{self.n} in order, got {indices}")
        for v in self.verdicts:
            if not 1 <= v.tag.i <= self.n:
                raise CertificateFormatError(f"verdict for {v.tag} refers to a constant outside c1..c{self.n}")


def _count(value, name) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise CertificateFormatError(f"{name!r} must be a non-negative JSON integer, got {value!r}")
    return value


def _decimal(value, name) -> int:
    if not isinstance(value, str) or not value.isascii() or not value.isdigit():
        raise CertificateFormatError(f"{name!r} must be a decimal string, got {value[:40] if isinstance(value, str) else value!r}")
    try:
        return int(value)
    except ValueError as err:
        raise CertificateFormatError(f"{name!r}: {err}") from None


# -- construction ------------------------------------------------------------


def build_system(n: int, k: int) -> list:
    """One copy of {y = p - 1 (mod p) : p <= p_k} per unknown y_1..y_n."""
    spec = FragmentSpec(n, k)
    row = ModularSystem(Congruence(p - 1, p) for p in first_primes(spec.k))
    return [row] * spec.n


def solution_stream(k: int, start: int = 1) -> Iterator[int]:
    """m * P_k - 1 for m = start, start + 1, ...; these are all the solutions."""
    value = primorial(k).value
    for m in itertools.count(start):
        yield m * value - 1


def _segments(width: int, max_m: int) -> Iterator[range]:
    for lo in range(1, max_m + 1, width):
        yield range(lo, min(lo + width, max_m + 1))


def find_witnesses(n: int, k: int, policy: SearchPolicy = SearchPolicy()) -> WitnessCertificate:
    """The ``n`` smallest primes of the progression, certified against theta and omega.

    The progression is scanned in ascending ``m``; segments may be tested on
    several threads but are joined in order, so the result never depends on
    the thread count.
    """
    spec = FragmentSpec(n, k)
    if policy.max_progression_index < n:
        raise ValueError("max_progression_index must be at least n")
    step = primorial(k).value
    workers = policy.workers or default_workers()

    def test(m):
        return m, is_prime(m * step - 1, policy.rounds)

    found = []
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for segment in _segments(policy.segment_width, policy.max_progression_index):
            results = pool.map(test, segment) if pool else map(test, segment)
            for m, result in results:
                if result:
                    found.append(Witness(len(found) + 1, m, m * step - 1, result.regime))
                    if len(found) == n:
                        break
            if len(found) == n:
                break
    finally:
        if pool:
            pool.shutdown(cancel_futures=True)
    if len(found) < n:
        raise SearchExhausted(n, k, policy.max_progression_index, found)

    assignment = Assignment(w.value for w in found)
    verdicts = tuple(
        RecordedVerdict(s.tag, str(eval_schema(s, assignment))) for s in theta(spec) + omega_block(spec)
    )
    return WitnessCertificate(n, k, step, tuple(found), verdicts)


# -- verification ------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    regimes: dict = field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(Check(name, bool(ok), detail))

    def summary(self) -> str:
        lines = [f"{'ok  ' if c.ok else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else "") for c in self.checks]
        lines.append("ACCEPTED" if self.accepted else f"REJECTED ({len(self.failures)} failed checks)")
        return "\n".join(lines)


def verify_certificate(cert: WitnessCertificate, rounds: int = DEFAULT_ROUNDS) -> VerificationReport:
    """Recompute every claim of ``cert`` from scratch.

    Structural defects raise :class:`CertificateFormatError`; mathematical
    failures are listed in the returned report.
    """
    cert.check_structure()
    report = VerificationReport()
    step = primorial(cert.k).value
    report.add("primorial", cert.primorial_value == step, f"P_{cert.k} = {step}")

    # the residue class of the modular system, recomputed by CRT
    residue, modulus = crt_solve(build_system(1, cert.k)[0])
    ws = cert.witnesses
    for prev, cur in zip(ws, ws[1:]):
        report.add(f"ascending c{prev.i} < c{cur.i}", prev.value < cur.value, f"{prev.value} < {cur.value}")
    for w in ws:
        on_stream = w.m >= 1 and w.value == w.m * step - 1
        report.add(f"progression c{w.i}", on_stream, f"{w.value} == {w.m} * P_{cert.k} - 1")
        report.add(f"congruences c{w.i}", w.value % modulus == residue, f"{w.value} = {residue} (mod {modulus})")
        result = is_prime(w.value, rounds)
        report.regimes[w.i] = result.regime
        report.add(f"primality c{w.i}", bool(result), f"{w.value}: {type(result).__name__}")
        if result:
            report.add(
                f"regime c{w.i}",
                result.regime == w.regime,
                f"recorded {w.regime!r}, recomputed {result.regime!r}",
            )

    spec = FragmentSpec(cert.n, cert.k)
    expected = theta(spec) + omega_block(spec)
    recorded = {}
    for v in cert.verdicts:
        recorded.setdefault(v.tag, []).append(v.verdict)
    assignment = cert.assignment
    truth = {}
    for s in expected:
        verdict = eval_schema(s, assignment)
        truth[s.tag] = verdict.truth
        claims = recorded.pop(s.tag, [])
        ok = verdict.truth is True and claims == ["True"]
        report.add(f"{s.tag}", ok, f"recomputed {verdict}, recorded {', '.join(claims) or 'nothing'}")
    report.add(
        "verdict coverage",
        not recorded,
        "no extra verdicts" if not recorded else f"unexpected verdicts for {', '.join(map(str, recorded))}",
    )

    # every true omega_{i,p} must force gamma_{i,p}
    broken = [
        f"{i}:{p}"
        for i in range(1, cert.n + 1)
        for p in first_primes(cert.k)
        if truth[SchemaTag(Schema.OMEGA, i, p)] and not truth[SchemaTag(Schema.GAMMA, i, p)]
    ]
    report.add("omega implies gamma", not broken, ", ".join(broken) or f"{cert.n * cert.k} instances")
    return report


def verify_json(text) -> VerificationReport:
    return verify_certificate(WitnessCertificate.from_json(text))

