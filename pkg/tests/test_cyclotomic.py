import random

import pytest
import sympy

from cyclodiv.cyclotomic import (
    CycloFactorization,
    classify,
    classify_cyclotomic_product,
    cyclotomic,
    cyclotomic_by_division,
    cyclotomic_substitution_identity,
    expand,
    product_of_cyclotomics_equals,
    shared_prime_ratio_check,
)
from cyclodiv.errors import PreconditionError
from cyclodiv.numtheory import divisors, euler_phi
from cyclodiv.polycore import IntPoly, exact_divide, is_squarefree

P = IntPoly
X = sympy.Symbol("x")


def random_factorization(rng, max_d=30, max_e=3, max_e0=3, max_degree=60):
    while True:
        k = rng.randint(0, 5)
        ds = sorted(rng.sample(range(1, max_d + 1), k))
        c = CycloFactorization(rng.randint(0, max_e0), tuple((d, rng.randint(1, max_e)) for d in ds))
        if c.degree <= max_degree:
            return c


def test_small_cases():
    assert cyclotomic(1) == P([-1, 1])
    assert cyclotomic(2) == P([1, 1])
    assert cyclotomic(4) == P([1, 0, 1])
    assert cyclotomic(3) == P([1, 1, 1])
    assert cyclotomic(3).degree == euler_phi(3) == 2
    assert cyclotomic(6)(2) == 3
    with pytest.raises(PreconditionError):
        cyclotomic(0)


def test_against_sympy():
    for d in list(range(1, 120)) + [210, 315, 385, 1155]:
        want = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(d, X), X).all_coeffs())]
        assert list(cyclotomic(d).coeffs) == want


def test_against_division_recursion():
    for d in range(1, 80):
        assert cyclotomic_by_division(d) == cyclotomic(d)


def test_degree_and_constant_term():
    for d in range(1, 1001):
        phi = cyclotomic(d)
        assert phi.degree == euler_phi(d)
        assert phi.coeffs[0] == (-1 if d == 1 else 1)


def test_expand_examples():
    assert expand(CycloFactorization(0, ((1, 1), (2, 1), (3, 1)))) == P([-1, -1, 0, 1, 1])
    assert expand(CycloFactorization(5)) == P.monomial(5)
    M = 12
    assert expand(CycloFactorization(0, tuple((d, 1) for d in divisors(M)))) == P.monomial(M) - 1


def test_factorization_validation():
    with pytest.raises(PreconditionError):
        CycloFactorization(0, ((3, 1), (2, 1)))
    with pytest.raises(PreconditionError):
        CycloFactorization(0, ((3, 0),))
    with pytest.raises(PreconditionError):
        CycloFactorization(-1)
    assert CycloFactorization.from_pairs(1, [(3, 1), (2, 2), (3, 1)]) == CycloFactorization(1, ((2, 2), (3, 2)))


def test_classify_examples():
    assert classify_cyclotomic_product(P([-1, -1, 0, 1, 1])) == CycloFactorization(0, ((1, 1), (2, 1), (3, 1)))
    assert classify_cyclotomic_product(P.monomial(5)) == CycloFactorization(5)
    assert classify_cyclotomic_product(P([-2, 0, 1])) is None
    assert classify(P([-2, 0, 1])).residual == P([-2, 0, 1])
    with pytest.raises(PreconditionError):
        classify(P([1, 2]))


def test_classify_partial_residual():
    f = cyclotomic(5) * cyclotomic(1) ** 2 * P([-2, 0, 1])
    c = classify(f)
    assert not c.in_family
    assert c.factors == ((1, 2), (5, 1))
    assert c.residual == P([-2, 0, 1])
    # No cyclotomic with small enough degree divides what is left.
    for d in range(1, 2 * 4 + 1):
        if euler_phi(d) <= c.residual.degree:
            assert exact_divide(c.residual, cyclotomic(d)) is None


def test_round_trips():
    rng = random.Random(3)
    for _ in range(300):
        c = random_factorization(rng)
        f = expand(c)
        assert classify_cyclotomic_product(f) == c
        assert f.degree == c.degree
        assert f.is_monic()


def test_expand_of_accepted_is_identity():
    rng = random.Random(8)
    for _ in range(200):
        f = P([rng.randint(-2, 2) for _ in range(rng.randint(0, 5))] + [1])
        c = classify_cyclotomic_product(f)
        if c is not None:
            assert expand(c) == f


def test_squarefree_on_cyclotomic_products():
    rng = random.Random(4)
    for _ in range(100):
        c = random_factorization(rng, max_e0=1)
        f = expand(c)
        if f.degree < 1:
            continue
        # root multiplicities: each Phi_d has simple roots, distinct d share none
        repeated = c.e0 > 1 or any(e > 1 for _, e in c.factors)
        assert is_squarefree(f) == (not repeated)
        assert not is_squarefree(f * f)


@pytest.mark.parametrize(
    "d, p, branch, rhs",
    [
        (2, 2, "p|d", [1, 0, 1]),
        (1, 3, "p∤d", [-1, 0, 0, 1]),
        (3, 2, "p∤d", [1, 0, 1, 0, 1]),
    ],
)
def test_substitution_examples(d, p, branch, rhs):
    check = cyclotomic_substitution_identity(d, p)
    assert check.branch == branch
    assert check.holds
    assert check.rhs == P(rhs)


def test_substitution_identity_grid():
    for p in (2, 3, 5, 7, 11):
        for d in range(1, 61):
            assert cyclotomic_substitution_identity(d, p).holds


def test_shared_prime_ratio_examples():
    r = shared_prime_ratio_check(2, 6, 2)
    assert r.gcd_value == 3 and r.verified
    assert r.shared == [{"prime": 3, "ratio_is_power": True, "exponent": 1}]

    r = shared_prime_ratio_check(1, 9, 4)
    assert cyclotomic(9)(4) % 3 == 0
    assert r.shared == [{"prime": 3, "ratio_is_power": True, "exponent": 2}]

    r = shared_prime_ratio_check(1, 2, 2)
    assert r.gcd_value == 1 and r.shared == [] and r.verified

    r = shared_prime_ratio_check(6, 2, 2)
    assert r.shared == [{"prime": 3, "ratio_is_power": True, "exponent": -1}]


def test_shared_prime_ratio_grid():
    for b in range(2, 8):
        for n in range(1, 25):
            for m in range(1, 25):
                r = shared_prime_ratio_check(n, m, b)
                assert not r.budget_exhausted
                assert r.verified, (n, m, b, r.shared)


def test_product_identity():
    assert product_of_cyclotomics_equals(1)
    assert product_of_cyclotomics_equals(6)
    assert all(product_of_cyclotomics_equals(M) for M in range(1, 201))


def test_cache_is_safe_under_threads():
    from concurrent.futures import ThreadPoolExecutor

    cyclotomic.cache_clear()
    with ThreadPoolExecutor(8) as pool:
        got = list(pool.map(cyclotomic, [d % 97 + 1 for d in range(2000)]))
    assert all(g == cyclotomic_by_division(d % 97 + 1) for g, d in zip(got[:200], range(200)))
