import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pawitness.number_theory import (
    DETERMINISTIC_LIMIT,
    Composite,
    Congruence,
    CRTSolution,
    InconsistentSystemError,
    ModularSystem,
    Prime,
    ProbablePrime,
    crt_solve,
    first_primes,
    is_prime,
    iter_prime_segments,
    jacobi,
    nth_prime,
    prime_count,
    prime_index,
    primes_up_to,
    primorial,
    primorial_totient,
    rough_shift_check,
    segment_primes,
    trial_division_is_prime,
)


def test_nth_prime_examples():
    assert nth_prime(1) == 2
    assert nth_prime(5) == 11
    assert nth_prime(25) == 97


def test_nth_prime_rejects_zero():
    with pytest.raises(ValueError):
        nth_prime(0)


def test_nth_prime_agrees_with_sieve():
    sieved = primes_up_to(8000)
    for k in range(1, 1001):
        assert nth_prime(k) == sieved[k - 1]


def test_primes_up_to_examples():
    assert primes_up_to(1) == []
    assert primes_up_to(11) == [2, 3, 5, 7, 11]
    assert len(primes_up_to(10**6)) == 78498


@pytest.mark.parametrize("workers", [1, 3])
def test_segmented_sieve_matches_plain_sieve(workers):
    segments = list(iter_prime_segments(200_003, width=10_007, workers=workers))
    flat = [int(p) for seg in segments for p in seg]
    assert flat == primes_up_to(200_003)
    assert prime_count(10**6, workers=workers) == 78498


def test_segment_primes_window():
    assert segment_primes(90, 110).tolist() == [97, 101, 103, 107, 109]
    assert segment_primes(0, 3).tolist() == [2]


def test_prime_index():
    assert prime_index(2) == 1
    assert prime_index(11) == 5
    with pytest.raises(ValueError):
        prime_index(9)


# -- primality -------------------------------------------------------------------


def test_is_prime_examples():
    assert is_prime(29) == Prime()
    assert not is_prime(0)
    assert not is_prime(1)
    r = is_prime(2**89 - 1)
    assert isinstance(r, ProbablePrime) and r.regime == "probable"


def test_is_prime_agrees_with_trial_division_below_a_million():
    sieve = [False] * (10**6 + 1)
    for p in primes_up_to(10**6):
        sieve[p] = True
    # the sieve is one oracle; spot-check it against literal trial division too
    for n in random.Random(1).sample(range(10**6 + 1), 2000):
        assert sieve[n] == trial_division_is_prime(n)
    for n in range(10**6 + 1):
        assert bool(is_prime(n)) == sieve[n]


def test_composite_witnesses_are_checkable():
    r = is_prime(91)
    assert isinstance(r, Composite) and r.kind == "factor" and 91 % r.witness == 0
    # strong pseudoprime to base 2 but not to base 3
    n = 3215031751
    r = is_prime(n)
    assert isinstance(r, Composite)
    assert r.kind in ("factor", "mr-base")


@pytest.mark.parametrize(
    "n",
    [
        3215031751,  # strong pseudoprime to bases 2, 3, 5, 7
        2152302898747,
        3474749660383,
        341550071728321,
        3825123056546413051,  # strong pseudoprime to bases 2..23
        318665857834031151167461,  # strong pseudoprime to bases 2..37 (above 2**64)
    ],
)
def test_strong_pseudoprimes_are_rejected(n):
    assert not sympy.isprime(n)
    assert not is_prime(n)


def test_deterministic_regime_boundary():
    below = sympy.prevprime(DETERMINISTIC_LIMIT)
    above = sympy.nextprime(DETERMINISTIC_LIMIT)
    assert is_prime(below) == Prime()
    assert is_prime(above) == ProbablePrime(8)
    assert is_prime(above, rounds=3) == ProbablePrime(3)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=2**40, max_value=2**200))
def test_is_prime_matches_sympy_on_large_numbers(n):
    assert bool(is_prime(n)) == sympy.isprime(n)


def test_is_prime_on_large_known_primes_and_products():
    for p in [2**61 - 1, 2**89 - 1, 2**107 - 1, 2**127 - 1]:
        assert is_prime(p)
    assert not is_prime((2**61 - 1) * (2**89 - 1))
    assert not is_prime((2**31 - 1) ** 2)


def test_jacobi_matches_sympy():
    for n in range(1, 200, 2):
        for a in range(-30, 60):
            assert jacobi(a, n) == sympy.jacobi_symbol(a % n, n)


# -- CRT ----------------------------------------------------------------------------


def test_crt_examples():
    assert crt_solve([(1, 2), (2, 3), (4, 5)]) == CRTSolution(29, 30)
    assert crt_solve([(1, 2)]) == CRTSolution(1, 2)
    with pytest.raises(InconsistentSystemError) as info:
        crt_solve([(0, 2), (1, 2)])
    assert info.value.indices == (0, 1)


def test_crt_non_coprime():
    assert crt_solve([(3, 4), (1, 6)]) == CRTSolution(7, 12)
    with pytest.raises(InconsistentSystemError) as info:
        crt_solve([(1, 3), (3, 4), (0, 6)])
    # 0 (mod 6) clashes with 1 (mod 3) and with 3 (mod 4); the first is reported
    assert info.value.pair == (Congruence(1, 3), Congruence(0, 6))


def test_congruence_validation():
    with pytest.raises(ValueError):
        Congruence(2, 2)
    with pytest.raises(ValueError):
        Congruence(0, 1)


def test_empty_system_is_everything():
    assert crt_solve(ModularSystem()) == CRTSolution(0, 1)


def _scan(system):
    total = math.prod(c.modulus for c in system)
    return [y for y in range(total) if system.holds(y)]


def test_crt_matches_scan_on_coprime_systems():
    rng = random.Random(7)
    for _ in range(300):
        moduli = []
        while True:
            m = rng.randrange(2, 60)
            if all(math.gcd(m, x) == 1 for x in moduli) and math.prod(moduli) * m <= 10**5:
                moduli.append(m)
            if len(moduli) >= 4 or rng.random() < 0.2:
                break
        system = ModularSystem((rng.randrange(m), m) for m in moduli)
        sols = _scan(system)
        r, mod = crt_solve(system)
        assert mod == math.prod(moduli)
        assert sols == [r]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(2, 40).flatmap(lambda m: st.tuples(st.integers(0, m - 1), st.just(m))), min_size=1, max_size=4))
def test_crt_general_systems_match_scan(pairs):
    system = ModularSystem(pairs)
    if math.prod(m for _, m in pairs) > 10**5:
        return
    sols = _scan(system)
    try:
        r, mod = crt_solve(system)
    except InconsistentSystemError as err:
        assert sols == []
        a, b = err.pair
        assert not any(a.holds(y) and b.holds(y) for y in range(a.modulus * b.modulus))
        return
    assert mod == math.lcm(*(m for _, m in pairs))
    assert sols == list(range(r, math.prod(m for _, m in pairs), mod))


# -- primorials -----------------------------------------------------------------------


def test_primorial_examples():
    assert primorial(2).value == 6
    assert primorial(3).value == 30
    assert primorial(15).value == 614889782588491410
    with pytest.raises(ValueError):
        primorial(0)


def test_primorial_divisibility():
    for k in range(1, 21):
        value = primorial(k).value
        assert all(value % p == 0 for p in first_primes(k))
        assert value % nth_prime(k + 1) != 0


def test_primorial_totient():
    assert primorial_totient(3) == 8
    for k in range(1, 8):
        assert primorial_totient(k) == sympy.totient(primorial(k).value)


def test_rough_shift_examples():
    assert rough_shift_check(29, 3)
    assert not rough_shift_check(13, 2)
    assert rough_shift_check(3, 1)
