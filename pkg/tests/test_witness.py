import dataclasses
import json

import pytest

from pawitness.formula import Schema, SchemaTag
from pawitness.number_theory import Congruence, crt_solve, first_primes, primorial, rough_shift_check
from pawitness.witness import (
    CertificateFormatError,
    SearchExhausted,
    SearchPolicy,
    WitnessCertificate,
    build_system,
    find_witnesses,
    solution_stream,
    verify_certificate,
    verify_json,
)

# the five smallest primes m * P_k - 1, computed with sympy.isprime
SMALLEST = {
    1: [(2, 3), (3, 5), (4, 7), (6, 11), (7, 13)],
    2: [(1, 5), (2, 11), (3, 17), (4, 23), (5, 29)],
    3: [(1, 29), (2, 59), (3, 89), (5, 149), (6, 179)],
    4: [(2, 419), (4, 839), (5, 1049), (6, 1259), (9, 1889)],
    5: [(1, 2309), (4, 9239), (5, 11549), (6, 13859), (9, 20789)],
    6: [(1, 30029), (3, 90089), (6, 180179), (7, 210209), (9, 270269)],
}


def test_build_system():
    assert list(build_system(1, 2)[0]) == [Congruence(1, 2), Congruence(2, 3)]
    assert list(build_system(1, 3)[0])[-1] == Congruence(4, 5)
    two = build_system(2, 1)
    assert len(two) == 2 and list(two[0]) == list(two[1]) == [Congruence(1, 2)]


def _take(it, n):
    return [next(it) for _ in range(n)]


def test_solution_stream():
    assert _take(solution_stream(2), 4) == [5, 11, 17, 23]
    assert _take(solution_stream(3), 4) == [29, 59, 89, 119]
    assert _take(solution_stream(1), 4) == [1, 3, 5, 7]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_stream_is_exactly_the_solution_set(k):
    system = build_system(1, k)[0]
    limit = 10**5
    scanned = [x for x in range(limit + 1) if system.holds(x)]
    step = primorial(k).value
    assert scanned == list(range(step - 1, limit + 1, step))
    assert crt_solve(system) == (step - 1, step)


@pytest.mark.parametrize("n, k, values", [(2, 3, [29, 59]), (1, 1, [3]), (2, 2, [5, 11])])
def test_find_witnesses_examples(n, k, values):
    cert = find_witnesses(n, k)
    assert [w.value for w in cert.witnesses] == values
    assert verify_certificate(cert).accepted


def test_witness_progression_indices():
    cert = find_witnesses(1, 1)
    assert cert.witnesses[0].m == 2


@pytest.mark.parametrize("k", range(1, 7))
def test_smallest_witnesses_match_oracle(k):
    cert = find_witnesses(5, k)
    assert [(w.m, w.value) for w in cert.witnesses] == SMALLEST[k]
    assert all(rough_shift_check(w.value, k) for w in cert.witnesses)


def test_every_small_fragment_is_certified():
    for n in range(1, 6):
        for k in range(1, 7):
            cert = find_witnesses(n, k)
            assert len(cert.verdicts) == n * (k + 2) + n * k
            assert all(v.verdict == "True" for v in cert.verdicts)
            report = verify_certificate(WitnessCertificate.from_json(cert.to_json()))
            assert report.accepted, report.summary()


def test_witnesses_grow_with_k():
    values = [find_witnesses(1, k).witnesses[0].value for k in range(1, 16)]
    assert values == sorted(values)


def test_thread_count_does_not_change_result():
    single = find_witnesses(4, 8, SearchPolicy(workers=1, segment_width=7)).to_json()
    for workers in (2, 5):
        assert find_witnesses(4, 8, SearchPolicy(workers=workers, segment_width=7)).to_json() == single
    assert find_witnesses(4, 8).to_json() == single


def test_search_exhausted_reports_progress():
    with pytest.raises(SearchExhausted) as info:
        find_witnesses(3, 4, SearchPolicy(max_progression_index=3))
    # among 209, 419, 629 only 419 is prime
    assert [w.value for w in info.value.found] == [419]
    assert info.value.max_m == 3


def test_policy_bound_below_n_is_rejected():
    with pytest.raises(ValueError):
        find_witnesses(3, 1, SearchPolicy(max_progression_index=2))


def test_big_primorial_witness_is_probable():
    cert = find_witnesses(1, 20)
    assert primorial(20).value > 2**64
    assert cert.witnesses[0].regime == "probable"
    report = verify_certificate(cert)
    assert report.accepted
    assert report.regimes == {1: "probable"}


# -- serialization -------------------------------------------------------------------


def test_json_layout():
    cert = find_witnesses(2, 3)
    text = cert.to_json()
    assert text.endswith("\n")
    data = json.loads(text)
    assert list(data) == ["n", "k", "primorial", "witnesses", "verdicts", "tool_version"]
    assert data["primorial"] == "30"
    assert data["witnesses"][0] == {"i": 1, "m": 1, "value": "29", "regime": "deterministic"}
    assert data["verdicts"][0] == {"schema": "alpha", "i": 1, "p": None, "verdict": "True"}
    assert WitnessCertificate.from_json(text) == cert


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("tool_version"),
        lambda d: d.update(primorial=30),
        lambda d: d["witnesses"][0].update(value="-29"),
        lambda d: d["witnesses"][1].update(i=3),
        lambda d: d["witnesses"].pop(),
        lambda d: d["verdicts"][0].update(schema="delta"),
        lambda d: d.update(k=0),
        lambda d: d.update(k=10**6),
        lambda d: d["verdicts"].append({"schema": "beta", "i": 9, "p": None, "verdict": "True"}),
    ],
)
def test_structural_defects(mutate):
    data = json.loads(find_witnesses(2, 3).to_json())
    mutate(data)
    with pytest.raises(CertificateFormatError):
        verify_json(json.dumps(data))


@pytest.mark.parametrize("text", ["", "{", "[]", "null", '{"n": 1}', b"\xff\xfe"])
def test_garbage_is_structural(text):
    with pytest.raises(CertificateFormatError):
        WitnessCertificate.from_json(text)


# -- tampering ----------------------------------------------------------------------


def _failed(report):
    return {c.name for c in report.failures}


def test_tampered_value_is_rejected():
    cert = find_witnesses(2, 3)
    w2 = dataclasses.replace(cert.witnesses[1], value=60)
    bad = dataclasses.replace(cert, witnesses=(cert.witnesses[0], w2))
    report = verify_certificate(bad)
    assert not report.accepted
    failed = _failed(report)
    assert {"progression c2", "primality c2", "congruences c2"} <= failed
    assert "omega:2:2" in failed and "gamma:2:2" in failed


def test_swapped_witnesses_are_rejected():
    cert = find_witnesses(2, 3)
    a, b = cert.witnesses
    swapped = (dataclasses.replace(b, i=1), dataclasses.replace(a, i=2))
    report = verify_certificate(dataclasses.replace(cert, witnesses=swapped))
    assert not report.accepted
    assert "ascending c1 < c2" in _failed(report)
    assert "alpha:2" in _failed(report)


def test_false_recorded_verdict_is_rejected():
    data = json.loads(find_witnesses(1, 2).to_json())
    data["verdicts"][2]["verdict"] = "False"
    report = verify_json(json.dumps(data))
    assert _failed(report) == {"gamma:1:2"}


def test_missing_verdict_is_rejected():
    data = json.loads(find_witnesses(1, 2).to_json())
    data["verdicts"].pop()
    assert _failed(verify_json(json.dumps(data))) == {"omega:1:3"}


def test_extra_verdict_is_rejected():
    data = json.loads(find_witnesses(1, 2).to_json())
    data["verdicts"].append({"schema": "gamma", "i": 1, "p": 5, "verdict": "True"})
    assert _failed(verify_json(json.dumps(data))) == {"verdict coverage"}


def test_dishonest_regime_is_rejected():
    data = json.loads(find_witnesses(1, 20).to_json())
    data["witnesses"][0]["regime"] = "deterministic"
    assert _failed(verify_json(json.dumps(data))) == {"regime c1"}


def test_wrong_primorial_is_rejected():
    data = json.loads(find_witnesses(1, 3).to_json())
    data["primorial"] = "31"
    assert "primorial" in _failed(verify_json(json.dumps(data)))


def test_composite_on_the_progression_is_rejected():
    # 119 = 4 * 30 - 1 = 7 * 17 satisfies every congruence but is not prime
    data = json.loads(find_witnesses(1, 3).to_json())
    data["witnesses"][0].update(m=4, value="119")
    for v in data["verdicts"]:
        v["verdict"] = "True"
    assert _failed(verify_json(json.dumps(data))) == {"primality c1", "beta:1"}


def test_omega_gamma_check_is_reported():
    report = verify_certificate(find_witnesses(3, 4))
    check = next(c for c in report.checks if c.name == "omega implies gamma")
    assert check.ok and check.detail == "12 instances"


def test_verdict_tags_cover_theta_and_omega():
    cert = find_witnesses(2, 2)
    tags = [v.tag for v in cert.verdicts]
    expected = []
    for i in (1, 2):
        expected += [SchemaTag(Schema.ALPHA, i), SchemaTag(Schema.BETA, i)]
        expected += [SchemaTag(Schema.GAMMA, i, p) for p in first_primes(2)]
    expected += [SchemaTag(Schema.OMEGA, i, p) for i in (1, 2) for p in first_primes(2)]
    assert tags == expected
