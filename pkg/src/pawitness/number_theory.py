"""Arbitrary-precision number theory: sieves, primality, CRT and primorials.

Primality answers carry their confidence regime.  Below 2**64 Miller-Rabin
with the first twelve prime bases is a proof; above it the test is
Baillie-PSW plus extra random-base rounds and the answer is only ever
:class:`ProbablePrime`.
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np

DETERMINISTIC_LIMIT = 2**64
DEFAULT_ROUNDS = 8
THREADS_ENV = "PAWITNESS_THREADS"

# sufficient for every n < 3.3 * 10**24, so certainly for n < 2**64
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_LIMIT = 1000


def default_workers() -> int:
    """Thread count from ``$PAWITNESS_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


# -- sieving -----------------------------------------------------------------


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def segment_primes(lo: int, hi: int, base: Optional[np.ndarray] = None) -> np.ndarray:
    """Primes in ``[lo, hi)`` using base primes up to sqrt(hi)."""
    lo = max(lo, 2)
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    if base is None:
        base = _simple_sieve(math.isqrt(hi - 1))
    mask = np.ones(hi - lo, dtype=bool)
    for p in base.tolist():
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        mask[start - lo :: p] = False
    return np.flatnonzero(mask).astype(np.int64) + lo


def iter_prime_segments(limit: int, width: int = 1 << 18, workers: Optional[int] = None) -> Iterator[np.ndarray]:
    """Yield the primes <= ``limit`` as ascending arrays, one per segment.

    Segments may be sieved on several threads; they are always yielded in
    order, so the output does not depend on ``workers``.
    """
    if limit < 2:
        return
    workers = workers or default_workers()
    base = _simple_sieve(math.isqrt(limit))
    bounds = [(lo, min(lo + width, limit + 1)) for lo in range(0, limit + 1, width)]
    if workers == 1:
        for lo, hi in bounds:
            yield segment_primes(lo, hi, base)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(lambda b: segment_primes(b[0], b[1], base), bounds)


def primes_up_to(x: int) -> list:
    """All primes <= ``x`` in ascending order."""
    if x < 2:
        return []
    return _simple_sieve(x).tolist()


def prime_count(x: int, workers: Optional[int] = None) -> int:
    return sum(len(seg) for seg in iter_prime_segments(x, workers=workers))


@lru_cache(maxsize=None)
def first_primes(k: int) -> tuple:
    """The first ``k`` primes."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return ()
    if k < 6:
        limit = 13
    else:
        # Rosser's bound p_k < k (ln k + ln ln k) for k >= 6
        limit = int(k * (math.log(k) + math.log(math.log(k)))) + 1
    return tuple(_simple_sieve(limit)[:k].tolist())


def nth_prime(k: int) -> int:
    """The k-th prime, counting from p_1 = 2."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"prime index must be >= 1, got {k!r}")
    return first_primes(k)[-1]


def prime_index(p: int) -> int:
    """The k with p_k == p; ValueError if ``p`` is not prime."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return len(primes_up_to(p))


# -- primality ---------------------------------------------------------------


class PrimalityResult:
    regime: Optional[str] = None

    def __bool__(self):
        return self.regime is not None


@dataclass(frozen=True)
class Prime(PrimalityResult):
    regime = "deterministic"

    def __bool__(self):
        return True


@dataclass(frozen=True)
class ProbablePrime(PrimalityResult):
    rounds: int
    regime = "probable"

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Composite(PrimalityResult):
    """``witness`` is a proper factor (kind "factor") or a Miller-Rabin base (kind "mr-base")."""

    witness: Optional[int] = None
    kind: str = "factor"

    def __bool__(self):
        return False


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    """Strong Lucas test with Selfridge's parameter choice (method A)."""
    if math.isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4

    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def half(x):
        x %= n
        return (x + n) // 2 if x % 2 else x // 2

    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = half(P * U + V), half(D * U + P * V)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def _small_primes() -> tuple:
    return tuple(primes_up_to(_TRIAL_LIMIT))


def is_prime(n: int, rounds: int = DEFAULT_ROUNDS) -> PrimalityResult:
    """Primality of ``n`` with the confidence regime attached.

    Truthy for Prime and ProbablePrime.  Composites found by trial division
    carry a factor; those found by Miller-Rabin carry the witnessing base.
    """
    if n < 2:
        return Composite(None, "below-two")
    for p in _SMALL_PRIMES:
        if n == p:
            return Prime()
        if n % p == 0:
            return Composite(p, "factor")
    if n < _TRIAL_LIMIT * _TRIAL_LIMIT:
        return Prime()
    if n < DETERMINISTIC_LIMIT:
        for a in _MR_BASES:
            if not _strong_probable_prime(n, a):
                return Composite(a, "mr-base")
        return Prime()
    if not _strong_probable_prime(n, 2):
        return Composite(2, "mr-base")
    if not _strong_lucas_probable_prime(n):
        return Composite(None, "lucas")
    # bases drawn from a generator seeded by n itself: reproducible runs
    rng = random.Random(n)
    for _ in range(rounds):
        a = rng.randrange(3, n - 1)
        if not _strong_probable_prime(n, a):
            return Composite(a, "mr-base")
    return ProbablePrime(rounds)


_SMALL_PRIMES = _small_primes()


def trial_division_is_prime(n: int) -> bool:
    """Plain trial division; the slow independent reference for tests."""
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- congruences -------------------------------------------------------------


@dataclass(frozen=True)
class Congruence:
    """The constraint ``y = residue (mod modulus)``."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue} out of range for modulus {self.modulus}")

    def holds(self, y: int) -> bool:
        return y % self.modulus == self.residue

    def __str__(self):
        return f"y = {self.residue} (mod {self.modulus})"


@dataclass(frozen=True)
class ModularSystem:
    congruences: tuple = ()

    def __init__(self, congruences: Sequence = ()):
        items = tuple(c if isinstance(c, Congruence) else Congruence(*c) for c in congruences)
        object.__setattr__(self, "congruences", items)

    def __iter__(self):
        return iter(self.congruences)

    def __len__(self):
        return len(self.congruences)

    def holds(self, y: int) -> bool:
        return all(c.holds(y) for c in self.congruences)


class CRTSolution(NamedTuple):
    residue: int
    modulus: int


class InconsistentSystemError(ValueError):
    """Two congruences of a system admit no common solution."""

    def __init__(self, first: Congruence, second: Congruence, indices: tuple):
        self.pair = (first, second)
        self.indices = indices
        super().__init__(f"inconsistent congruences #{indices[0]} ({first}) and #{indices[1]} ({second})")


def _merge(r1: int, m1: int, r2: int, m2: int) -> Optional[CRTSolution]:
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    m2g = m2 // g
    t = (r2 - r1) // g * pow(m1 // g, -1, m2g) % m2g if m2g > 1 else 0
    lcm = m1 * m2g
    return CRTSolution((r1 + m1 * t) % lcm, lcm)


def crt_solve(system) -> CRTSolution:
    """Solve a system of congruences whose moduli need not be coprime.

    Returns the residue class (r, lcm of moduli) holding every solution.
    Raises :class:`InconsistentSystemError` naming a conflicting pair.
    """
    if not isinstance(system, ModularSystem):
        system = ModularSystem(system)
    acc = CRTSolution(0, 1)
    items = system.congruences
    for j, c in enumerate(items):
        merged = _merge(acc.residue, acc.modulus, c.residue, c.modulus)
        if merged is None:
            # pairwise consistency implies joint consistency, so some
            # earlier congruence must conflict with this one on its own
            for i in range(j):
                if _merge(items[i].residue, items[i].modulus, c.residue, c.modulus) is None:
                    raise InconsistentSystemError(items[i], c, (i, j))
            raise AssertionError("unreachable: no pairwise conflict found")
        acc = merged
    return acc


# -- primorials --------------------------------------------------------------


@dataclass(frozen=True)
class Primorial:
    k: int
    value: int

    @property
    def primes(self) -> tuple:
        return first_primes(self.k)


@lru_cache(maxsize=None)
def primorial(k: int) -> Primorial:
    """p_1 * p_2 * ... * p_k."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"primorial index must be >= 1, got {k!r}")
    return Primorial(k, math.prod(first_primes(k)))


def primorial_totient(k: int) -> int:
    """Euler's phi of the k-th primorial, the number of reduced residues."""
    return math.prod(p - 1 for p in first_primes(k))


def rough_shift_check(q: int, k: int) -> bool:
    """True iff no prime p <= p_k divides q + 2."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return all((q + 2) % p for p in first_primes(k))
