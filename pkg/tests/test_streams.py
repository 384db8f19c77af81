import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addbasis import (INFINITE, RealizationStream, TargetFunction,
                      extremal_prefix, extremal_target, final_occurrence_rank,
                      growth_bound, is_infinite, prefix_respects_bound,
                      realization_prefix, sweep_decompose)

import oracles
from cases import F_EVEN, F_INF, F_ODD, F_ONE, F_TWO, FIXTURES
from test_targets import targets_st


def test_sweep_decompose_examples():
    assert sweep_decompose(1) == (1, 0, 0)
    assert sweep_decompose(5) == (5, 2, -2)
    assert sweep_decompose(10) == (10, 3, -3)
    with pytest.raises(ValueError):
        sweep_decompose(0)


def test_sweep_decompose_is_a_bijection():
    for m in range(1, 10_001):
        idx = sweep_decompose(m)
        assert idx.radius**2 + idx.radius + 1 + idx.offset == m
        assert abs(idx.offset) <= idx.radius


def test_sweep_first_and_last_occurrences():
    # -k first appears at position k**2 + 1, +k at position (k + 1)**2
    for k in range(51):
        assert sweep_decompose(k * k + 1)[1:] == (k, -k)
        assert sweep_decompose((k + 1) ** 2)[1:] == (k, k)


def test_prefix_examples():
    assert realization_prefix(F_ONE, 5) == [0, -1, 1, -2, 2]
    assert realization_prefix(F_ODD, 4) == [-2, 2, -3, 3]
    # the infinite count at 0 admits every sweep visit to 0
    assert realization_prefix(F_INF, 6) == [0, -1, 0, 1, -2, 0]
    assert realization_prefix(F_TWO, 10) == [0, -1, 0, 1, -2, -1, 1, 2, -3, -2]


@pytest.mark.parametrize("target", FIXTURES.values(), ids=FIXTURES.keys())
def test_prefix_matches_naive_filter(target):
    assert realization_prefix(target, 250) == oracles.stream_prefix_naive(target, 250)


@settings(max_examples=60)
@given(targets_st(), st.integers(1, 120))
def test_prefix_matches_naive_filter_generated(target, count):
    assert realization_prefix(target, count) == oracles.stream_prefix_naive(target, count)


@given(targets_st(), st.integers(1, 80))
def test_cursor_agrees_with_prefix(target, count):
    stream = RealizationStream(target)
    taken = [stream.take().value for _ in range(count)]
    assert taken == realization_prefix(target, count)


def test_stream_indices_strictly_increase():
    stream = RealizationStream(F_TWO)
    terms = [stream.take() for _ in range(200)]
    assert all(a.index < b.index for a, b in zip(terms, terms[1:]))
    assert [t.rank for t in terms] == list(range(1, 201))


@pytest.mark.parametrize("target", FIXTURES.values(), ids=FIXTURES.keys())
def test_growth_bound_holds(target):
    assert prefix_respects_bound(target, 200)


def test_growth_bound_smallest_rank():
    # rank 1 always satisfies the bound, whatever the target
    for target in FIXTURES.values():
        v = realization_prefix(target, 1)[0]
        assert abs(v) <= growth_bound(1, target.zero_count())


@pytest.mark.parametrize("target", FIXTURES.values(), ids=FIXTURES.keys())
def test_multiplicity_law(target):
    stream = RealizationStream(target)
    terms = [stream.take() for _ in range(300)]
    tally = {}
    for t in terms:
        tally[t.value] = tally.get(t.value, 0) + 1
    probe = range(-max(abs(t.value) for t in terms) - 2,
                  max(abs(t.value) for t in terms) + 3)
    for n in probe:
        needed = target.eval(n)
        got = tally.get(n, 0)
        if not is_infinite(needed):
            assert got <= needed
            rank = final_occurrence_rank(target, n)
            if rank is not None and rank <= 300:
                assert got == needed
            if got == needed and needed > 0:
                assert rank is not None and rank <= 300


def test_final_occurrence_rank_examples():
    assert final_occurrence_rank(F_ONE, 0) == 1
    assert final_occurrence_rank(F_ONE, 1) == 3
    assert final_occurrence_rank(F_INF, 0) is None
    assert final_occurrence_rank(F_ODD, 0) is None  # count zero: never emitted
    assert final_occurrence_rank(F_ODD, -2) == 1
    assert final_occurrence_rank(F_TWO, -1) == 6


def test_extremal_targets_have_requested_zeros():
    for zeros in range(6):
        assert extremal_target(zeros).zero_count() == zeros


def test_extremal_prefix_is_a_valid_realization():
    for zeros in range(6):
        target = extremal_target(zeros)
        prefix = extremal_prefix(zeros, 100)
        for v in set(prefix):
            assert target.eval(v) >= prefix.count(v)


def test_extremal_prefix_meets_bound_with_equality():
    for zeros in range(6):
        prefix = extremal_prefix(zeros, 100)
        for rank, value in enumerate(prefix, 1):
            assert abs(value) == growth_bound(rank, zeros)


def test_infinite_default_keeps_streaming():
    everything_twice_then_forever = TargetFunction.constant(INFINITE)
    assert realization_prefix(everything_twice_then_forever, 9) == \
        [0, -1, 0, 1, -2, -1, 0, 1, 2]
