import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasicross.search import (
    CountOutcome,
    SearchStatus,
    count_splittings,
    find_splitting,
)
from quasicross.splitting import MultiplierSet, interval_multipliers, verify_cover


def brute_force_count(q, residues):
    """Enumerate every candidate splitter set directly."""
    k = len(residues)
    if (q - 1) % k:
        return 0
    size = (q - 1) // k
    count = 0
    for subset in itertools.combinations(range(1, q), size):
        if verify_cover(q, residues, subset):
            count += 1
    return count


def test_find_q5():
    outcome = find_splitting(5, interval_multipliers(3, 1, 5))
    assert outcome.status is SearchStatus.FOUND
    assert outcome.splitters == (1,)


def test_find_q25():
    outcome = find_splitting(25, interval_multipliers(3, 1, 25))
    assert outcome.status is SearchStatus.FOUND
    assert verify_cover(25, interval_multipliers(3, 1, 25).residues, outcome.splitters)


def test_find_q13_exhausted():
    outcome = find_splitting(13, interval_multipliers(3, 1, 13))
    assert outcome.status is SearchStatus.EXHAUSTED
    assert outcome.splitters is None


def test_divisibility_precondition_short_circuits():
    outcome = find_splitting(12, MultiplierSet(12, (11, 1, 2, 3)))
    assert outcome.status is SearchStatus.EXHAUSTED
    assert "does not divide" in outcome.diagnostic
    counted = count_splittings(12, MultiplierSet(12, (11, 1, 2, 3)))
    assert counted == CountOutcome(0, True, 0, 0.0, counted.diagnostic)


def test_count_examples_match_brute_force():
    m5 = interval_multipliers(3, 1, 5)
    assert count_splittings(5, m5).count == 4 == brute_force_count(5, m5.residues)
    m13 = interval_multipliers(3, 1, 13)
    assert count_splittings(13, m13).count == 0 == brute_force_count(13, m13.residues)
    m11 = interval_multipliers(3, 2, 11)
    assert count_splittings(11, m11).count == 0 == brute_force_count(11, m11.residues)


def test_count_q25_matches_brute_force():
    m25 = interval_multipliers(3, 1, 25)
    counted = count_splittings(25, m25)
    assert counted.complete
    assert counted.count == brute_force_count(25, m25.residues)
    assert counted.count >= 1


def test_node_budget_reports_timeout():
    outcome = find_splitting(25, interval_multipliers(3, 1, 25), node_budget=3)
    assert outcome.status is SearchStatus.TIMED_OUT
    assert outcome.splitters is None
    assert "node budget" in outcome.diagnostic
    counted = count_splittings(29, interval_multipliers(3, 1, 29), node_budget=3)
    assert not counted.complete


def test_candidate_order_does_not_change_status():
    for k_plus, k_minus, n_max in ((3, 1, 8), (3, 2, 6)):
        for n in range(1, n_max + 1):
            q = n * (k_plus + k_minus) + 1
            m = interval_multipliers(k_plus, k_minus, q)
            asc = find_splitting(q, m, candidate_order="ascending")
            desc = find_splitting(q, m, candidate_order="descending")
            assert asc.status is desc.status, (k_plus, k_minus, n)
            asc_count = count_splittings(q, m, candidate_order="ascending")
            desc_count = count_splittings(q, m, candidate_order="descending")
            assert asc_count.count == desc_count.count


def test_found_results_verify():
    for q in (5, 6, 25):
        k_plus, k_minus = (3, 2) if q == 6 else (3, 1)
        m = interval_multipliers(k_plus, k_minus, q)
        outcome = find_splitting(q, m)
        assert outcome.status is SearchStatus.FOUND
        assert verify_cover(q, m.residues, outcome.splitters)


def test_find_agrees_with_count_at_small_scale():
    for k_plus, k_minus in ((3, 1), (3, 2)):
        step = k_plus + k_minus
        n = 1
        while n * step + 1 <= 33:
            q = n * step + 1
            m = interval_multipliers(k_plus, k_minus, q)
            found = find_splitting(q, m)
            counted = count_splittings(q, m)
            assert counted.complete
            assert (found.status is SearchStatus.FOUND) == (counted.count > 0), (k_plus, k_minus, n)
            n += 1


def test_multiplier_q_mismatch_rejected():
    with pytest.raises(ValueError, match="built for q=5"):
        find_splitting(25, interval_multipliers(3, 1, 5))
    with pytest.raises(ValueError, match="candidate_order"):
        find_splitting(5, interval_multipliers(3, 1, 5), candidate_order="shuffled")


def test_determinism():
    m = interval_multipliers(3, 1, 25)
    a = find_splitting(25, m)
    b = find_splitting(25, m)
    assert (a.status, a.splitters, a.nodes) == (b.status, b.splitters, b.nodes)


@st.composite
def cover_instances(draw):
    q = draw(st.integers(min_value=5, max_value=16))
    ks = [k for k in (2, 3, 4) if (q - 1) % k == 0]
    if not ks:
        return None
    k = draw(st.sampled_from(ks))
    residues = draw(st.sets(st.integers(min_value=1, max_value=q - 1), min_size=k, max_size=k))
    return q, tuple(sorted(residues))


@settings(deadline=None, max_examples=60)
@given(cover_instances())
def test_count_matches_brute_force_on_arbitrary_multiplier_sets(instance):
    if instance is None:
        return
    q, residues = instance
    counted = count_splittings(q, MultiplierSet(q, residues))
    assert counted.complete
    assert counted.count == brute_force_count(q, residues)
