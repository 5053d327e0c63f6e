"""Partition enumeration against an independent restricted-growth oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from levynoise import (
    all_partitions,
    count_no_singleton_partitions,
    moment_from_cumulants,
    moment_of_step_functional,
    moment_over_all_partitions,
    partitions_no_singletons,
    step_functional_cumulants,
)
from levynoise.errors import MissingCumulantError, SizeLimitError
from levynoise import StepFunction


def rgs_partitions(m):
    """Independent oracle: iterative restricted-growth-string enumeration."""
    if m == 0:
        return
    a = [0] * m
    while True:
        blocks = {}
        for i, g in enumerate(a):
            blocks.setdefault(g, []).append(i + 1)
        yield tuple(tuple(blocks[g]) for g in sorted(blocks))
        # next restricted growth string
        i = m - 1
        while i > 0:
            if a[i] <= max(a[:i]):
                a[i] += 1
                for j in range(i + 1, m):
                    a[j] = 0
                break
            i -= 1
        else:
            return


def no_singleton_count_oracle(m):
    return sum(1 for part in rgs_partitions(m) if all(len(b) >= 2 for b in part))


def test_no_singletons_m1_empty():
    assert partitions_no_singletons(1) == []


def test_no_singletons_m2():
    assert partitions_no_singletons(2) == [((1, 2),)]


def test_no_singletons_m4_explicit():
    got = set(partitions_no_singletons(4))
    assert got == {((1, 2, 3, 4),), ((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))}


@pytest.mark.parametrize("p,expected", [(2, 1), (6, 41), (8, 715)])
def test_count_matches_filter_oracle(p, expected):
    assert count_no_singleton_partitions(p) == expected == no_singleton_count_oracle(p)


def test_count_oracle_through_ten():
    for p in range(2, 11):
        assert count_no_singleton_partitions(p) == no_singleton_count_oracle(p)


def test_size_limit():
    with pytest.raises(SizeLimitError):
        partitions_no_singletons(15)
    with pytest.raises(SizeLimitError):
        count_no_singleton_partitions(15)


@given(st.integers(1, 7))
@settings(max_examples=20, deadline=None)
def test_enumeration_is_canonical_and_valid(m):
    parts = list(all_partitions(m))
    seen = set()
    for part in parts:
        flat = [e for block in part for e in block]
        assert sorted(flat) == list(range(1, m + 1))
        assert [min(b) for b in part] == sorted(min(b) for b in part)
        assert all(tuple(sorted(b)) == b for b in part)
        seen.add(part)
    assert len(seen) == len(parts)
    assert len(parts) == sum(1 for _ in rgs_partitions(m))


def test_moment_from_cumulants_examples():
    kappas = {n: 1 for n in range(2, 7)}
    assert moment_from_cumulants(kappas, 4) == 4      # kappa_4 + 3 kappa_2^2
    assert moment_from_cumulants(kappas, 3) == 1      # single admissible partition
    assert moment_from_cumulants({2: 2, 3: 0, 4: 5}, 4) == 17  # 5 + 3 * 2^2


def test_moment_missing_cumulant():
    with pytest.raises(MissingCumulantError):
        moment_from_cumulants({2: 1.0, 4: 1.0}, 4)


def test_centered_poisson_moment_identities():
    # closed-form central moments at rate lam: kappa_n = lam for all n
    for lam in (Fraction(1), Fraction(1, 2), Fraction(3)):
        kappas = {n: lam for n in range(2, 7)}
        assert moment_from_cumulants(kappas, 2) == lam
        assert moment_from_cumulants(kappas, 3) == lam
        assert moment_from_cumulants(kappas, 4) == lam + 3 * lam ** 2
        assert moment_from_cumulants(kappas, 6) == lam + 25 * lam ** 2 + 15 * lam ** 3


@given(st.integers(2, 7),
       st.lists(st.fractions(min_value=Fraction(-3), max_value=Fraction(3)),
                min_size=6, max_size=6))
@settings(max_examples=40, deadline=None)
def test_both_partition_readings_agree(m, kappa_values):
    kappas = {n: v for n, v in zip(range(2, 8), kappa_values)}
    kappas[2] = abs(kappas[2])
    assert moment_from_cumulants(kappas, m) == moment_over_all_partitions(kappas, m)


def test_odd_moments_vanish_with_odd_cumulants():
    kappas = {2: 2, 3: 0, 4: 5, 5: 0, 6: 1, 7: 0}
    for m in (3, 5, 7):
        assert moment_from_cumulants(kappas, m) == 0


def test_step_functional_cumulants_examples(unit_atom, sym_two_atom):
    phi = StepFunction.indicator(0.0, 1.0)
    kap = step_functional_cumulants(unit_atom, phi, 6)
    assert all(kap[n] == 1 for n in range(2, 7))
    kap = step_functional_cumulants(sym_two_atom, phi, 4)
    assert kap[3] == 0
    kap = step_functional_cumulants(unit_atom, StepFunction.constant_on(0.0, 3.0, 2.0), 4)
    assert (kap[2], kap[3], kap[4]) == (12, 24, 48)


def test_moment_invariant_under_step_refinement(unit_atom):
    phi = StepFunction((0.0, 1.0, 2.0), (2.0, -1.0))
    refined = phi.refined((0.25, 0.5, 1.5, 1.75))
    for p in (2, 3, 4, 6):
        assert (moment_of_step_functional(unit_atom, phi, p)
                == moment_of_step_functional(unit_atom, refined, p))
