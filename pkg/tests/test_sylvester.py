import math
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from recipsum import DomainError, FinSet, delta, sigma, sylvester_powers
from recipsum.sylvester import (
    Interval,
    SylvesterPower,
    check_belbachir_khelladi,
    check_chebyshev,
    check_erdos_progressions,
    check_oblath,
    check_sylvester_theorem,
    check_theisinger_kurschak,
    check_theorem_3_6,
    erdos_niven_scan,
    erdos_progression_sum,
    integral_intervals_from,
    interval_sylvester_powers,
    is_sylvester_power,
    quadruple_scan,
    verify_delta_divisibility,
    verify_nonintegrality,
    verify_prime_theorems,
    verify_two_power_lemma,
)

from strategies import small_sets


def oracle_sylvester(X):
    """Definition, with sympy factoring: p^v exactly divides lcm(X) and
    divides exactly one element."""
    X = sorted(X)
    top = {}
    for x in X:
        for p, e in sympy.factorint(x).items():
            top[p] = max(top.get(p, 0), e)
    return {(p, v) for p, v in top.items() if sum(1 for x in X if x % p**v == 0) == 1}


def as_pairs(S):
    return {(sp.p, sp.v) for sp in S}


def test_example_interval_1000_1004_by_definition():
    S = as_pairs(sylvester_powers(FinSet.interval(1000, 1004)))
    assert S == oracle_sylvester(range(1000, 1005))
    # 3 divides only 1002 and 3 exactly divides the lcm, so 3 belongs too
    assert S == {(2, 3), (3, 1), (5, 3), (7, 1), (11, 1), (13, 1), (17, 1), (59, 1), (167, 1),
                 (251, 1)}


@pytest.mark.parametrize("X, expected", [
    ({12}, {(2, 2), (3, 1)}),
    ({4, 5, 6, 7}, {(2, 2), (3, 1), (5, 1), (7, 1)}),
    ({20, 21}, {(2, 2), (3, 1), (5, 1), (7, 1)}),
    ({5, 6, 7}, {(2, 1), (3, 1), (5, 1), (7, 1)}),
    ({14, 15}, {(2, 1), (3, 1), (5, 1), (7, 1)}),
    ({2, 3, 6}, set()),
    ({1}, set()),
])
def test_sylvester_examples(X, expected):
    assert as_pairs(sylvester_powers(X)) == expected


def test_power_formatting():
    assert str(SylvesterPower(2, 3)) == "2^3"
    assert str(SylvesterPower(7, 1)) == "7"
    assert SylvesterPower(5, 3).value == 125


@given(small_sets)
def test_sylvester_powers_match_definition(X):
    S = sylvester_powers(X)
    assert as_pairs(S) == oracle_sylvester(X)
    assert all(is_sylvester_power(sp.p, sp.v, X) for sp in S)


@given(st.integers(1, 3000), st.integers(0, 60))
def test_interval_method_matches_definition(m, length):
    n = m + length
    assert as_pairs(interval_sylvester_powers(m, n)) == oracle_sylvester(range(m, n + 1))


@given(small_sets)
def test_powers_exactly_divide_delta(X):
    rep = verify_delta_divisibility(X)
    assert rep.ok
    d = delta(X)
    for sp in sylvester_powers(X):
        assert d % sp.value == 0 and d % (sp.value * sp.p) != 0


@given(small_sets)
def test_large_exact_powers_are_sylvester(X):
    # an exact power of the lcm above the spread of X divides only one element
    X = sorted(X)
    spread = X[-1] - X[0]
    top = {}
    for x in X:
        for p, e in sympy.factorint(x).items():
            top[p] = max(top.get(p, 0), e)
    S = as_pairs(sylvester_powers(X))
    for p, v in top.items():
        if p**v > spread:
            assert (p, v) in S


def test_delta_divisibility_examples():
    rep = verify_delta_divisibility(FinSet.interval(1000, 1004))
    assert rep.ok and rep.checked == 10
    rep = verify_delta_divisibility({2, 3, 6})
    assert rep.checked == 0 and rep.witnesses["delta"] == 1
    assert verify_delta_divisibility({7}).witnesses["delta"] == 7


@given(small_sets, small_sets)
def test_distinct_intervals_spot_checks(X, Y):
    rep = check_theorem_3_6(X, Y)
    assert rep.ok
    if rep.checked:
        assert sigma(X) != sigma(Y)


def test_two_power_lemma():
    rep = verify_two_power_lemma(500)
    assert rep.ok
    assert rep.checked == 500 * 501 // 2


def test_two_power_lemma_example():
    # [5,7]: lcm 210, 2^1 exact, only 6 is even, 3 < 4
    assert sympy.multiplicity(2, sympy.ilcm(5, 6, 7)) == 1
    assert verify_two_power_lemma(7).ok


def test_integral_intervals_naive():
    for m in range(1, 40):
        naive = [n for n in range(m, 80)
                 if sum(Fraction(1, x) for x in range(m, n + 1)).denominator == 1]
        assert integral_intervals_from(m, 79) == naive


def test_theisinger_kurschak_small():
    rep = check_theisinger_kurschak(300, 300)
    assert rep.findings == [Interval(1, 1)]
    assert rep.ok
    assert sigma(FinSet.interval(2, 4)) == Fraction(13, 12)


def test_erdos_niven_small_and_naive():
    rep = erdos_niven_scan(10)
    assert rep.checked == 55 and rep.witnesses["distinct_values"] == 55 and rep.ok
    assert erdos_niven_scan(1).checked == 1
    values = {sum(Fraction(1, x) for x in range(m, n + 1))
              for m in range(1, 41) for n in range(m, 41)}
    assert len(values) == 40 * 41 // 2 == erdos_niven_scan(40).witnesses["distinct_values"]


def test_quadruples_to_25_against_brute_force():
    bound = 25
    keys = {(m, n): frozenset(oracle_sylvester(range(m, n + 1)))
            for m in range(2, bound + 1) for n in range(m + 1, bound + 1)}
    brute = sorted((m, n, m2, n2) for (m, n), (m2, n2) in combinations(sorted(keys), 2)
                   if n < m2 and keys[m, n] == keys[m2, n2])
    rep = quadruple_scan(bound)
    assert rep.findings == brute == [(4, 7, 20, 21), (5, 7, 14, 15)]
    assert rep.violations == []


def test_quadruple_bounds():
    assert quadruple_scan(4).findings == []
    with pytest.raises(DomainError):
        quadruple_scan(3)


def test_chebyshev_against_sympy():
    rep = check_chebyshev(5000)
    assert rep.ok and rep.checked == 4999
    assert rep.witnesses[2] == 3
    assert rep.witnesses[4] in {5, 7}
    for n in range(2, 200):
        assert sympy.nextprime(n) < 2 * n


def test_sylvester_theorem_against_sympy():
    rep = check_sylvester_theorem(300)
    assert rep.ok
    assert rep.skipped == [Interval(1, 1)]
    for m in range(2, 60):
        for n in range(m, 2 * m):
            lcm = math.lcm(*range(m, n + 1))
            assert max(sympy.primefactors(lcm)) > n - m
    assert {p for p in sympy.primefactors(sympy.ilcm(4, 5, 6, 7)) if p > 3} == {5, 7}


def test_prime_theorems_combined():
    rep = verify_prime_theorems(1000, 200)
    assert rep.ok
    assert rep.witnesses["chebyshev"][2] == 3


def test_progression_examples():
    assert erdos_progression_sum(2, 3, 4) == Fraction(1, 2) + Fraction(1, 5) + Fraction(1, 8) \
        + Fraction(1, 11)
    rep = check_erdos_progressions(range(1, 2), range(1, 2), range(1, 2))
    assert rep.checked == 0 and len(rep.skipped) == 1


def test_progressions_against_naive():
    rep = check_erdos_progressions(range(1, 16), range(1, 16), range(1, 16))
    assert rep.ok
    naive = sum(1 for m in range(1, 16) for d in range(1, 16) for k in range(1, 16)
                if not (m == 1 and k == 1))
    assert rep.checked == naive
    assert all(sum(Fraction(1, m + d * j) for j in range(k)).denominator > 1
               for m in range(1, 8) for d in range(1, 8) for k in range(1, 8)
               if not (m == 1 and k == 1))


def test_belbachir_khelladi_is_reproducible():
    a, b = check_belbachir_khelladi(50, seed=3), check_belbachir_khelladi(50, seed=3)
    assert a.ok and a.checked == 50
    assert a.violations == b.violations and a.skipped == b.skipped


def test_oblath_rules():
    assert check_oblath(range(1, 15), range(1, 8), rule="coprime").ok
    rep = check_oblath(range(1, 15), range(1, 8), rule="odd-at-even")
    assert rep.ok
    assert {"m": 3, "n": 3, "reason": "no even index"} in rep.skipped
    # the skipped corner really is integral: 3/3 = 1
    assert Fraction(3, 3) == 1


def test_nonintegrality_bundle():
    rep = verify_nonintegrality(m_max=10, d_max=10, k_max=10, belbachir_count=20,
                                oblath_m_max=8, oblath_len_max=5)
    assert rep.ok
    assert set(rep.witnesses) == {"erdos-progression", "belbachir-khelladi", "oblath-coprime",
                                  "oblath-odd-at-even"}
