import random

import pytest

from cyclodiv.corpus import NON_FAMILY_CORPUS
from cyclodiv.cyclotomic import CycloFactorization, cyclotomic, expand
from cyclodiv.errors import InvariantViolation, PreconditionError
from cyclodiv.numtheory import primes_up_to, radical
from cyclodiv.parser import parse_poly
from cyclodiv.polycore import IntPoly
from cyclodiv.verifier import (
    NECESSARY_VIOLATED,
    OBSTRUCTED,
    SUFFICIENT,
    UNKNOWN,
    DivisibilityReport,
    check_at_prime,
    find_failing_prime,
    is_sufficient_family,
    n2_analyze,
    n2_necessary_check,
    n2_structural_obstruction,
    n2_sufficient_family,
    radical_property_check,
    scan,
)

P = IntPoly
EXAMPLE = P([-1, -1, 0, 1, 1])  # x^4 + x^3 - x - 1

# First failing prime for each corpus entry, found by scanning and pinned here.
FIRST_FAILURES = [
    2, 3, 2, 2, 2, 2, 3, 2, 2, 3, 5, 2, 2, 2, 7, 5, 2, 2, 3, 2, 2, 2, 3, 2, 2,
    2, 2, 2, 5, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 2, 2, 3, 2, 2, 3, 7, 2, 2,
]


def naive(f, p):
    v = f(p)
    w = f(p**p)
    return w == 0 if v == 0 else w % v == 0


def test_check_at_prime_examples():
    assert EXAMPLE(2) == 21 and EXAMPLE(4) == 315 == 15 * 21
    assert check_at_prime(EXAMPLE, 2)
    assert not check_at_prime(P([1, 1, 1]), 3)
    for m in (1, 2, 5):
        f = P.monomial(m) - 1
        assert all(check_at_prime(f, p) for p in primes_up_to(100))


def test_check_at_prime_preconditions():
    with pytest.raises(PreconditionError):
        check_at_prime(EXAMPLE, 4)
    with pytest.raises(PreconditionError):
        check_at_prime(P([1, 2]), 3)


def test_check_at_prime_against_naive():
    rng = random.Random(17)
    primes = primes_up_to(50)
    for _ in range(300):
        deg = rng.randint(1, 6)
        f = P([rng.randint(-6, 6) for _ in range(deg)] + [1])
        p = rng.choice(primes)
        assert check_at_prime(f, p) == naive(f, p), (f, p)


def test_check_at_prime_integer_roots():
    # f(p) = 0: divisibility holds only if p^p is also a root.
    assert not check_at_prime(P([-3, 1]), 3)
    assert check_at_prime(P([-4, 1]) * P([-2, 1]), 2)  # roots 2 and 4 = 2^2
    assert not check_at_prime(P([-2, 1]) * P([1, 1]), 2)


def test_scan_examples():
    r = scan(P([1, 1, 1]), 2, 1000)
    assert r.failures == [3]
    assert r.candidate_N == 5
    assert r.theory_N == 4
    assert r.consistent

    r = scan(P([2, 1]), 2, 100)
    assert 3 in r.failures
    assert r.theory_N is None

    r = scan(P.monomial(7), 2, 500)
    assert r.failures == [] and r.theory_N == 1 and r.candidate_N == 2


def test_scan_counts_and_dict():
    r = scan(EXAMPLE, 2, 100)
    assert r.failures == [] and r.passes_count == 25
    d = r.to_dict()
    assert d["status"] == "CONSISTENT"
    assert d["factorization"] == {"e0": 0, "factors": [[1, 1], [2, 1], [3, 1]]}
    assert d["empirical"] is True


def test_scan_rejects_bad_range():
    with pytest.raises(PreconditionError):
        scan(EXAMPLE, 1, 10)
    with pytest.raises(PreconditionError):
        scan(EXAMPLE, 20, 10)


def test_inconsistent_report_raises():
    report = DivisibilityReport(P([1, 1, 1]), (2, 10), [7], 3, 11, theory_N=4)
    assert not report.consistent
    assert report.to_dict()["status"] == "INCONSISTENT"


def test_scan_threads_agree():
    f = cyclotomic(12) * cyclotomic(5)
    assert scan(f, 2, 3000, threads=1).to_dict() == scan(f, 2, 3000, threads=6).to_dict()


def test_find_failing_prime_examples():
    # f(2) = 4 does not divide f(4) = 6, so 2 is already a failure.
    assert find_failing_prime(P([2, 1])) == 2
    assert find_failing_prime(P([-2, 0, 1])) == 3
    assert find_failing_prime(EXAMPLE) is None


def test_find_failing_prime_corpus():
    got = [find_failing_prime(parse_poly(s)) for s in NON_FAMILY_CORPUS]
    assert got == FIRST_FAILURES


def test_n2_necessary_check():
    assert n2_necessary_check(EXAMPLE)[0]
    assert n2_necessary_check(P.monomial(7)) == (True, "pure power of x: vacuously consistent")
    ok, reason = n2_necessary_check(P([1, 0, 1]))
    assert not ok and "f(1) = 2" in reason
    assert find_failing_prime(P([1, 0, 1]), 100) is not None


def test_n2_sufficient_family():
    assert expand(n2_sufficient_family([])) == P([-1, 1])
    assert expand(n2_sufficient_family({2, 3})) == EXAMPLE
    f = expand(n2_sufficient_family([3, 5]))
    assert scan(f, 2, 500).failures == []
    with pytest.raises(PreconditionError):
        n2_sufficient_family([2, 2])
    with pytest.raises(PreconditionError):
        n2_sufficient_family([4])


def test_sufficient_family_with_multiplicities():
    c = CycloFactorization(2, ((1, 2), (3, 2), (7, 1)))
    assert is_sufficient_family(c)
    assert scan(expand(c), 2, 300).failures == []
    assert not is_sufficient_family(CycloFactorization(0, ((1, 1), (3, 2))))


def test_obstruction_examples():
    v = n2_structural_obstruction(CycloFactorization(0, ((2, 1),)))
    assert v.status == OBSTRUCTED and v.witness == {"d": 2, "p": 2}
    assert not check_at_prime(P([1, 1]), 2)

    v = n2_structural_obstruction(CycloFactorization(0, ((1, 1), (2, 1), (3, 1))))
    assert v.status == SUFFICIENT

    c = CycloFactorization(0, ((1, 1), (6, 1)))
    v = n2_structural_obstruction(c)
    assert v.status == OBSTRUCTED
    assert not check_at_prime(expand(c), v.witness["p"])


def test_phi6_branch():
    # {2, 6}: peeling 6 by 3 lands on 2, but Phi_6(2) = 3 still needs a power of 3.
    c = CycloFactorization(0, ((2, 1), (6, 1)))
    v = n2_structural_obstruction(c)
    assert v.witness == {"d": 6, "p": 2}
    assert cyclotomic(6)(2) == 3
    assert not check_at_prime(expand(c), 2)

    # With 1 = 3^0 present the branch is satisfied; the failure at 2 comes from
    # 3^2 | f(2) and is only visible empirically.
    c = CycloFactorization(0, ((1, 1), (2, 1), (6, 1)))
    assert n2_structural_obstruction(c).status == UNKNOWN
    v = n2_analyze(expand(c))
    assert v.status == OBSTRUCTED and v.witness == {"failing_prime": 2}


def test_obstruction_agrees_with_empirics():
    indices = list(range(1, 16))
    rng = random.Random(12)
    for _ in range(150):
        A = sorted(rng.sample(indices, rng.randint(1, 4)))
        c = CycloFactorization(0, tuple((d, 1) for d in A))
        f = expand(c)
        try:
            v = n2_structural_obstruction(c)
        except InvariantViolation:
            pytest.fail(f"peeling closed without 1 for {A}")
        fail = find_failing_prime(f, 200)
        if v.status == OBSTRUCTED:
            assert not check_at_prime(f, v.witness["p"]), A
        elif v.status == SUFFICIENT:
            assert fail is None, A
        if 1 not in A:
            assert v.status == OBSTRUCTED


def test_n2_analyze():
    assert n2_analyze(P.monomial(3)).status == SUFFICIENT
    assert n2_analyze(EXAMPLE).status == SUFFICIENT
    v = n2_analyze(P([1, 0, 1]))
    assert v.status == NECESSARY_VIOLATED
    v = n2_analyze(P([-1, 1]) * P([-2, 1]))
    assert v.status == OBSTRUCTED and v.witness == {"failing_prime": 2}
    # Phi_1 Phi_4: 4 peels to 2, which is missing
    v = n2_analyze(expand(CycloFactorization(0, ((1, 1), (4, 1)))))
    assert v.status == OBSTRUCTED and v.witness == {"d": 4, "p": 2}


def test_n2_analyze_unknown_status():
    # Phi_1 Phi_2 Phi_4 peels cleanly but is outside the prime-index family.
    f = expand(CycloFactorization(0, ((1, 1), (2, 1), (4, 1))))
    v = n2_analyze(f, check_limit=300)
    assert v.status in (UNKNOWN, OBSTRUCTED)
    if v.status == OBSTRUCTED:
        assert not check_at_prime(f, v.witness["failing_prime"])


def test_radical_examples():
    assert radical_property_check(P([0, 0, 3]), 10_000).clean
    r = radical_property_check(P([1, 1]), 10)
    assert r.violation["n"] == 2
    assert r.violation["radical"] == "3" and r.violation["target"] == "5"
    assert radical_property_check(P([12]), 100).clean
    with pytest.raises(PreconditionError):
        radical_property_check(P([-1, 1]), 5)


def test_radical_against_naive():
    rng = random.Random(21)
    for _ in range(40):
        f = P([rng.randint(0, 4) for _ in range(rng.randint(1, 4))])
        if f.is_zero():
            continue
        r = radical_property_check(f, 30)
        first = None
        for n in range(31):
            v = f(n)
            if v > 1 and f(n ** radical(n)) % radical(v):
                first = n
                break
        assert (r.violation or {}).get("n") == first
