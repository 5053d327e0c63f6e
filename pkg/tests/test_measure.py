import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from levynoise import (
    abs_moment,
    atomic_measure,
    interpolation_check,
    moment_table,
    power_law_measure,
    signed_moment,
    validate_measure,
)
from levynoise.errors import (
    AtomAtZeroError,
    InfiniteSecondMomentError,
    InfiniteTotalMassError,
    NonPositiveMassError,
)
from levynoise.measure import drift_of_centered_representation, small_jump_variance_bias


def test_validate_single_unit_atom():
    m = validate_measure([(1.0, 1.0)])
    assert m.total_mass == 1.0
    assert m.m2 == 1.0


def test_validate_rejects_atom_at_zero():
    with pytest.raises(AtomAtZeroError):
        validate_measure([(0.0, 1.0)])


def test_validate_rejects_bad_mass():
    with pytest.raises(NonPositiveMassError):
        validate_measure([(1.0, 0.0)])
    with pytest.raises(NonPositiveMassError):
        validate_measure([(1.0, -2.0)])
    with pytest.raises(InfiniteTotalMassError):
        validate_measure([(1.0, math.inf)])
    with pytest.raises(InfiniteSecondMomentError):
        validate_measure([(math.inf, 1.0)])


def test_symmetric_two_atom_m2(sym_two_atom):
    assert abs_moment(sym_two_atom, 2) == 1


@pytest.mark.parametrize("atoms,p,expected", [
    ([(1.0, 1.0)], 4, 1),
    ([(2.0, 1.0)], 3, 8),
    ([(1.0, 0.5), (-1.0, 0.5)], 2, 1),
])
def test_abs_moment_examples(atoms, p, expected):
    assert abs_moment(atomic_measure(atoms), p) == expected


@pytest.mark.parametrize("atoms,n,expected", [
    ([(1.0, 0.5), (-1.0, 0.5)], 3, 0),
    ([(1.0, 1.0)], 5, 1),
    ([(2.0, 1.0), (-1.0, 3.0)], 3, 5),   # 8 - 3, direct summation
])
def test_signed_moment_examples(atoms, n, expected):
    assert signed_moment(atomic_measure(atoms), n) == expected


def test_abs_moment_is_exact_rational(unit_atom):
    assert isinstance(abs_moment(unit_atom, 2), Fraction)
    assert abs_moment(unit_atom, 2) == Fraction(1)


def test_cached_m2_matches_moment(skew_two_atom):
    assert float(abs_moment(skew_two_atom, 2)) == skew_two_atom.m2


def test_moment_table_invariants(skew_two_atom):
    table = moment_table(skew_two_atom, 6)
    for n in range(1, 7):
        assert abs(table.signed_moments[n]) <= table.abs_moments[n]
        if n % 2 == 0:
            assert table.signed_moments[n] == table.abs_moments[n]


def test_interpolation_unit_atom_all_ones(unit_atom):
    rows = interpolation_check(unit_atom, 6)
    for row in rows:
        assert row.value == 1.0
        assert row.bound == pytest.approx(1.0, rel=1e-15)
        assert row.passed and row.equality


def test_interpolation_single_atom_equality():
    # single atom z=2: m_3 = 8 equals sqrt(m_4) * sqrt(m_2) = sqrt(16*4)
    rows = interpolation_check(atomic_measure([(2.0, 1.0)]), 4)
    r3 = [r for r in rows if r.r == 3][0]
    assert r3.value == 8.0
    assert r3.bound == pytest.approx(8.0, rel=1e-12)
    assert r3.passed and r3.equality


def test_interpolation_two_atom_strict():
    # m_3 = 14 against sqrt(41 * 5) ~ 14.3178
    rows = interpolation_check(atomic_measure([(1.0, 0.5), (3.0, 0.5)]), 4)
    r3 = [r for r in rows if r.r == 3][0]
    assert r3.value == pytest.approx(14.0)
    assert r3.bound == pytest.approx(math.sqrt(41.0 * 5.0), rel=1e-12)
    assert r3.passed and not r3.equality


@given(st.lists(st.tuples(st.floats(-4, 4).filter(lambda z: abs(z) > 1e-3),
                          st.floats(1e-3, 5.0)),
                min_size=1, max_size=5),
       st.sampled_from([4, 6, 8]))
def test_interpolation_property(atoms, p):
    rows = interpolation_check(atomic_measure(atoms), p)
    assert all(r.passed for r in rows)


@given(st.lists(st.tuples(st.floats(0.01, 4), st.floats(0.01, 5)),
                min_size=1, max_size=4),
       st.sampled_from([1, 3, 5, 7]))
def test_symmetrized_odd_moments_vanish(pos_atoms, n):
    atoms = [(z, lam) for z, lam in pos_atoms] + [(-z, lam) for z, lam in pos_atoms]
    assert signed_moment(atomic_measure(atoms), n) == 0


def test_drift_reporting():
    m = atomic_measure([(2.0, 1.0), (0.5, 3.0)])
    assert drift_of_centered_representation(m) == -2


def test_power_law_density_mode():
    m = power_law_measure(alpha=1.5, eps=0.1, z_max=5.0)
    assert not m.is_atomic
    assert m.total_mass > 0
    assert abs_moment(m, 2) == pytest.approx(m.m2)
    # truncation bias: variance carried by jumps below eps
    bias = small_jump_variance_bias(m)
    exact = 2 * (0.1 ** 1.5) / 1.5  # integral of z^2 z^-1.5 over (0, 0.1), both sides
    assert bias == pytest.approx(exact, rel=1e-8)
    rows = interpolation_check(m, 4)
    assert all(r.passed for r in rows)
