import math
from fractions import Fraction
from itertools import combinations, permutations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from recipsum import DomainError, FinSet, ResourceLimitError, delta, nu, sigma
from recipsum.coprime import (
    check_nu_lower_bound,
    check_prime_product_nu,
    is_pairwise_coprime,
    nu_collision_scan,
    nu_histogram,
    prime_hunter,
    ranked_subsets,
    verify_theorem_1_2,
)

PRIMES_TO_23 = [2, 3, 5, 7, 11, 13, 17, 19, 23]


def subsets(X):
    X = sorted(X)
    for r in range(1, len(X) + 1):
        yield from combinations(X, r)


@pytest.mark.parametrize("X, expected", [
    ({2, 3, 5, 7}, True), ({4, 9, 25}, True), ({6, 10}, False), ({1, 6}, True), ({9}, True),
])
def test_is_pairwise_coprime(X, expected):
    assert is_pairwise_coprime(X) is expected
    assert expected == all(math.gcd(a, b) == 1 for a, b in combinations(X, 2))


def test_ranked_subsets_order():
    got = [tuple(C) for C in ranked_subsets({1, 2, 3})]
    assert got == [(1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]


def test_small_grounds():
    rep = verify_theorem_1_2({2, 3})
    assert sorted(delta(C) for C in ranked_subsets({2, 3})) == [2, 3, 6]
    assert rep.ok and rep.subsets == 3
    one = verify_theorem_1_2({1})
    assert one.ok and one.integral == [FinSet([1])]


def test_delta_collides_once_one_is_in_the_ground():
    # adding 1/1 moves only the numerator: delta(C + {1}) == delta(C)
    rep = verify_theorem_1_2({1, 2, 3, 5, 7})
    assert rep.subsets == 31
    assert len(rep.delta_collisions) == 15
    assert (FinSet([2]), FinSet([1, 2])) in rep.delta_collisions
    assert rep.sigma_collisions == []
    assert rep.integral == [FinSet([1])]


def test_full_ground_counts():
    X = [1] + PRIMES_TO_23
    rep = verify_theorem_1_2(X)
    assert rep.subsets == 1023
    assert len(rep.delta_collisions) == 511
    assert rep.sigma_collisions == []
    assert rep.integral == [FinSet([1])]
    # oracle: count delta classes directly
    dens = {}
    for C in subsets(X):
        dens.setdefault(sum(Fraction(1, x) for x in C).denominator, []).append(C)
    assert sum(len(v) - 1 for v in dens.values()) == 511


@given(st.sets(st.sampled_from([4, 9, 25, 7, 11, 13, 17, 19, 23, 29, 31]), min_size=1,
               max_size=9))
def test_injective_without_one(X):
    # a ground of primes and prime powers, never containing 1
    rep = verify_theorem_1_2(X)
    assert rep.ok
    assert not rep.delta_collisions and not rep.sigma_collisions and not rep.integral


def test_coprime_ground_refusals():
    with pytest.raises(DomainError):
        verify_theorem_1_2({6, 10})
    with pytest.raises(ResourceLimitError):
        verify_theorem_1_2(PRIMES_TO_23, subset_cap=100)


def test_nu_collisions_primes_to_13():
    scan = nu_collision_scan({2, 3, 5, 7, 11, 13}, 2)
    pairs = {(str(c.set_a), str(c.set_b), c.nu) for c in scan.collisions}
    assert ("{3,13}", "{5,11}", 16) in pairs
    assert ("{5,13}", "{7,11}", 18) in pairs
    # oracle
    naive = {}
    for C in combinations([2, 3, 5, 7, 11, 13], 2):
        naive.setdefault(sum(Fraction(1, x) for x in C).numerator, []).append(C)
    assert len(scan.collisions) == sum(math.comb(len(v), 2) for v in naive.values())
    assert scan.pool_coprime


def test_nu_collision_edge_cases():
    singles = nu_collision_scan({2, 3, 5, 7}, 1)
    assert len(singles.collisions) == 6 and {c.nu for c in singles.collisions} == {1}
    assert nu_collision_scan({2, 3, 5}, 2).collisions == []
    assert sorted(nu(C) for C in combinations([2, 3, 5], 2)) == [5, 7, 8]
    assert not nu_collision_scan({4, 6, 9}, 2).pool_coprime
    with pytest.raises(ResourceLimitError):
        nu_collision_scan(range(1, 30), 10, cap=1000)
    rec = nu_collision_scan({3, 5, 11, 13}, 2).collisions[0].record()
    assert rec == {"size": 2, "set_a": "{3,13}", "set_b": "{5,11}", "nu": "16"}


@pytest.mark.parametrize("C, nu_value, bound", [
    ({3, 13}, 16, Fraction(78, 169)), ({7}, 1, Fraction(1)), ({2, 3}, 5, Fraction(4, 3)),
])
def test_nu_lower_bound_examples(C, nu_value, bound):
    nb = check_nu_lower_bound(C)
    assert (nb.nu, nb.bound, nb.ok) == (nu_value, bound, True)


@given(st.sets(st.integers(1, 10**4), min_size=1, max_size=10))
def test_nu_lower_bound_holds(C):
    assert check_nu_lower_bound(C).ok


@given(st.lists(st.integers(1, 10**6), min_size=1, max_size=8, unique=True), st.randoms())
def test_nu_is_symmetric(xs, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    assert nu(xs) == nu(ys)


def test_nu_symmetric_exhaustive_small():
    base = [3, 5, 8, 13]
    assert len({nu(p) for p in permutations(base)}) == 1


@pytest.mark.parametrize("primes, exps, value", [
    ([2, 3], [1, 1], 5), ([2, 3], [2, 1], 7), ([7], [3], 1),
])
def test_prime_hunter_examples(primes, exps, value):
    res = prime_hunter(primes, exps)
    assert res.nu == value and res.coprime_to_all


def test_prime_hunter_errors():
    with pytest.raises(DomainError):
        prime_hunter([2, 2], [1, 1])
    with pytest.raises(DomainError):
        prime_hunter([4], [1])
    with pytest.raises(DomainError):
        prime_hunter([2, 3], [1])
    with pytest.raises(DomainError):
        prime_hunter([2], [0])


@given(st.lists(st.sampled_from(PRIMES_TO_23 + [29, 31, 37]), min_size=1, max_size=6,
                unique=True), st.data())
def test_prime_hunter_finds_only_new_primes(primes, data):
    exps = data.draw(st.lists(st.integers(1, 4), min_size=len(primes), max_size=len(primes)))
    res = prime_hunter(primes, exps)
    assert res.coprime_to_all
    assert dict(res.factorization) == sympy.factorint(res.nu)
    assert not set(res.new_primes) & set(primes)


def test_prime_product_numerators():
    rep = check_prime_product_nu(10)
    assert rep.ok and len(rep.rows) == 9
    ps = list(sympy.primerange(2, 30))
    for row in rep.rows:
        k = row["k"]
        value = sum(Fraction(1, p) for p in ps[:k]).numerator
        assert row["nu"] == value > k * math.prod(ps[:k - 1])
        assert min(sympy.primefactors(value)) > ps[k - 1]


def test_nu_histogram_totals():
    hist = nu_histogram({2, 3, 5, 7}, bins=4)
    assert sum(c for _, _, c in hist) == 15
    assert hist[0][0] == 1
