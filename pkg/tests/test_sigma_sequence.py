from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from recipsum import DomainError, FinSet, ResourceLimitError, disjoint_subsequence
from recipsum import replaceable, run, sigma, step
from recipsum.sigma_sequence import SeqState, iter_states

from strategies import small_sets

splittable = small_sets.filter(lambda A: not (1 in A and 2 not in A))


def oracle_step(A):
    # straight from the definition, on plain sets
    A = set(A)
    x = min(y for y in A if y + 1 not in A and y * (y + 1) not in A)
    return (A - {x}) | {x + 1, x * (x + 1)}, x


def oracle_terms(seed, count):
    terms = [set(seed)]
    while len(terms) < count:
        terms.append(oracle_step(terms[-1])[0])
    return terms


@pytest.mark.parametrize("A, x", [
    ({3, 4, 5, 10, 12, 30}, 10),
    ({2}, 2),
    ({5, 6, 12, 20}, 6),
])
def test_replaceable_examples(A, x):
    assert replaceable(A) == x


@pytest.mark.parametrize("A, B", [
    ({3, 4, 5, 10, 12, 30}, {3, 4, 5, 11, 12, 30, 110}),
    ({2}, {3, 6}),
    ({3, 6}, {4, 6, 12}),
])
def test_step_examples(A, B):
    assert step(A) == FinSet(B)


def test_first_six_terms():
    trace = run({2}, 6)
    assert [set(s.elements) for s in trace.states] == [
        {2}, {3, 6}, {4, 6, 12}, {5, 6, 12, 20}, {5, 7, 12, 20, 42}, {6, 7, 12, 20, 30, 42}]
    assert trace.final == {6, 7, 12, 20, 30, 42}
    assert trace.sigma_value == Fraction(1, 2)


def test_first_index_with_min_seven():
    # the printed index is 27; the replace rule gives 42 (see the oracle)
    trace = run({2}, 60, keep_states=False)
    terms = oracle_terms({2}, 60)
    first = next(i for i, A in enumerate(terms, start=1) if min(A) == 7)
    assert first == 42
    assert trace.first_index_of_min[7] == first


def test_trace_agrees_with_oracle_for_many_seeds():
    for seed in ({2}, {3}, {2, 5}, {4, 6, 9}, {3, 5, 7}):
        trace = run(seed, 80)
        assert [set(s.elements) for s in trace.states] == oracle_terms(seed, 80)


def test_zero_and_one_steps_echo_seed():
    assert run({2}, 0).final == {2}
    assert run({2}, 1).final == {2}
    assert len(run({2}, 0).states) == 1


def test_doomed_elements_never_return():
    trace = run({2}, 300)
    assert trace.doomed
    for index, d in trace.doomed:
        assert all(d not in s.elements for s in trace.states[index:])
        later = trace.states[index]  # A_{index+1}
        assert later.min > d


def test_one_cannot_be_split():
    with pytest.raises(DomainError):
        step({1})
    with pytest.raises(DomainError):
        run({1, 3}, 5)
    assert step({1, 2}) == FinSet([1, 3, 6])  # 1 is not replaceable here


def test_step_cap_and_empty_seed():
    with pytest.raises(ResourceLimitError):
        run({2}, 10, step_cap=5)
    with pytest.raises(ResourceLimitError):
        disjoint_subsequence({2}, 10, step_cap=5)
    with pytest.raises(DomainError):
        run(set(), 3)


def test_resume_from_saved_state():
    full = run({2}, 40)
    mid = SeqState.from_record(full.states[19].record())
    resumed = run({2}, 40, start=mid)
    assert resumed.states == full.states[19:]


def test_disjoint_subsequence():
    res = disjoint_subsequence({2}, 30)
    assert res.indices == [1, 2, 5]
    assert res.secure_threshold == 42
    assert res.secured == [True, True, False]
    assert disjoint_subsequence({2}, 1).indices == [1]


def test_disjoint_subsequence_against_oracle():
    terms = oracle_terms({2}, 200)
    used, picked = set(), []
    for j, A in enumerate(terms, start=1):
        if used.isdisjoint(A):
            picked.append(j)
            used |= A
    assert disjoint_subsequence({2}, 200).indices == picked


def test_next_secure_index_needs_min_above_42():
    res = disjoint_subsequence({2}, 2000)
    assert res.indices[:3] == [1, 2, 5]
    for j in res.indices[3:]:
        assert min(oracle_terms({2}, j)[-1]) > 42 or j == res.indices[3]


@given(splittable)
def test_step_invariants(A):
    B = step(A)
    x = replaceable(A)
    assert len(B) == len(A) + 1
    assert sigma(B) == sigma(A)
    assert min(B) >= min(A)
    assert (set(B), x) == oracle_step(A)
    assert x + 1 not in A and x * (x + 1) not in A


@given(splittable, st.integers(1, 40))
def test_trace_invariants(seed, steps):
    try:
        states = [s for s, _ in zip(iter_states(seed), range(steps))]
    except DomainError:  # 1 became replaceable later on
        assert 1 in seed
        return
    for prev, cur in zip(states, states[1:]):
        assert len(cur.elements) == len(prev.elements) + 1
        assert cur.min >= prev.min
        assert (cur.min > prev.min) == prev.doomed
        assert sigma(cur.elements) == sigma(seed)
