import math
from fractions import Fraction

import numpy as np
import pytest

from levynoise import (
    ClampedNoise,
    Const,
    Product,
    batch_I_K,
    catalog_process,
    eval_I_K,
    from_step,
    linear_combination,
    restrict_process,
    sample_prm,
    sample_prm_batch,
    validate_simple,
    StepFunction,
)
from levynoise.errors import (
    BreakpointOrderError,
    HorizonViolationError,
    UnboundedCoefficientError,
)
from levynoise.processes import (
    CATALOG_PROCESS_NAMES,
    DeterministicProfile,
    SlidingWindowProfile,
    abs_power_integral,
    coefficient_values,
    freeze_error_sq_deterministic,
    freeze_error_sq_sliding,
    partial_sums,
    process_from_config,
    process_to_config,
    square_integral,
)
from levynoise.rng import derive_rng

from conftest import make_realization


def test_constants_are_valid():
    proc = validate_simple((0.0, 1.0), (Const(3.0),))
    assert proc.coefficients[0].horizon == -math.inf


def test_horizon_violation_inside_own_cell():
    with pytest.raises(HorizonViolationError):
        validate_simple((0.0, 1.0), (ClampedNoise(0.0, 0.5, 10.0),))


def test_horizon_violation_second_cell():
    with pytest.raises(HorizonViolationError):
        validate_simple((0.0, 1.0, 2.0),
                        (Const(1.0), ClampedNoise(1.0, 1.5, 10.0)))


def test_horizon_violation_through_product():
    bad = Product((Const(2.0), ClampedNoise(-1.0, 0.75, 10.0)))
    with pytest.raises(HorizonViolationError):
        validate_simple((0.0, 1.0), (bad,))


def test_left_reading_coefficient_is_valid():
    proc = validate_simple((0.0, 1.0), (ClampedNoise(-1.0, 0.0, 10.0),))
    assert proc.coefficients[0].horizon == 0.0


def test_breakpoint_order():
    with pytest.raises(BreakpointOrderError):
        validate_simple((1.0, 0.0), (Const(1.0),))


def test_unbounded_coefficient():
    with pytest.raises(UnboundedCoefficientError):
        ClampedNoise(0.0, 1.0, math.inf)


def test_clamping_binds(unit_atom):
    real = make_realization(unit_atom, 2.0, [(0.5, 1.0)] )
    # L((0,1]) = 1 - 1 = 0; with 4 points it is 3
    real4 = make_realization(unit_atom, 2.0, [(0.2, 1.0), (0.4, 1.0), (0.6, 1.0), (0.8, 1.0)])
    coef = ClampedNoise(0.0, 1.0, 2.0)
    assert coef.eval(real) == 0
    assert coef.eval(real4) == 2  # clipped from 3


def test_eval_I_K_example(unit_atom):
    real = make_realization(unit_atom, 2.0, [(0.2, 1.0), (0.7, 1.0)])
    proc = from_step(StepFunction.constant_on(0.0, 1.0, 3.0))
    assert eval_I_K(real, proc, 2.0) == 3  # 3 * (2 - 1)


def test_zero_process(unit_atom):
    real = sample_prm(unit_atom, 2.0, 3)
    proc = from_step(StepFunction((0.0, 1.0), (0.0,)))
    assert eval_I_K(real, proc) == 0


def test_cell_split_invariance(unit_atom):
    # 1 on (0,1] plus 1 on (1,2] equals 1 on (0,2] pathwise
    split = from_step(StepFunction((0.0, 1.0, 2.0), (1.0, 1.0)))
    merged = from_step(StepFunction((0.0, 2.0), (1.0,)))
    for seed in range(10):
        real = sample_prm(unit_atom, 2.0, seed)
        assert eval_I_K(real, split) == eval_I_K(real, merged)


def test_exact_linearity(unit_atom):
    X = catalog_process("clamped_left")
    Y = catalog_process("two_block")
    combo = linear_combination(2.5, X, -1.5, Y)
    for seed in range(10):
        real = sample_prm(unit_atom, 2.0, seed)
        lhs = eval_I_K(real, combo)
        rhs = Fraction(5, 2) * eval_I_K(real, X) - Fraction(3, 2) * eval_I_K(real, Y)
        assert lhs == rhs


def test_exact_restriction(unit_atom):
    X = catalog_process("two_block")   # supported on (0, 2]
    cut = restrict_process(X, 1.0)
    for seed in range(10):
        real = sample_prm(unit_atom, 3.0, seed)
        assert eval_I_K(real, X, 1.0) == eval_I_K(real, cut, 3.0)


def test_square_integral_pathwise(unit_atom):
    real = make_realization(unit_atom, 2.0, [(-0.5, 1.0)])
    proc = catalog_process("clamped_left")
    y = coefficient_values(proc, real)[0]
    assert y == 1 - 1 == 0 or isinstance(y, Fraction)
    assert square_integral(proc, real) == y ** 2
    assert abs_power_integral(proc, real, 4) == abs(y) ** 4


def test_power_sum_inequality_pathwise(unit_atom):
    # sum |Y_i|^p |A_i|^{p/2} <= (sum Y_i^2 |A_i|)^{p/2} per realization
    proc = catalog_process("two_block")
    p = 4
    for seed in range(20):
        real = sample_prm(unit_atom, 2.0, seed)
        values = coefficient_values(proc, real)
        lhs = sum(abs(y) ** p * (Fraction(b) - Fraction(a)) ** (p // 2)
                  for y, (a, b) in zip(values, proc.cells))
        rhs = sum(y ** 2 * (Fraction(b) - Fraction(a))
                  for y, (a, b) in zip(values, proc.cells)) ** (p // 2)
        assert lhs <= rhs


def test_partial_sums_match_total(unit_atom):
    proc = catalog_process("two_block")
    real = sample_prm(unit_atom, 2.0, 77)
    sums = partial_sums(real, proc)
    assert sums[-1] == eval_I_K(real, proc)


def test_batch_matches_single_process_eval(unit_atom):
    proc = catalog_process("poly_block")
    batch = sample_prm_batch(unit_atom, 2.0, 40, derive_rng(9))
    vec = batch_I_K(batch, proc)
    for i in range(0, 40, 5):
        assert vec[i] == pytest.approx(float(eval_I_K(batch.realization(i), proc)), abs=1e-12)


def test_config_round_trip():
    for name in CATALOG_PROCESS_NAMES:
        proc = catalog_process(name)
        again = process_from_config(process_to_config(proc))
        assert again == proc


def test_deterministic_freeze_error_decreases():
    prof = DeterministicProfile(lambda x: np.exp(-np.asarray(x) ** 2))
    errors = []
    for ncells in (4, 8, 16, 32):
        grid = np.linspace(-2.0, 2.0, ncells + 1)
        proc = prof.freeze(grid)
        errors.append(freeze_error_sq_deterministic(prof, proc, 2.0))
    assert all(e2 < e1 for e1, e2 in zip(errors, errors[1:]))
    assert errors[-1] < errors[0] / 10


def test_aligned_simple_process_freezes_exactly():
    phi = StepFunction((0.0, 1.0, 2.0), (2.0, -1.0))
    prof = DeterministicProfile(lambda x: phi(np.asarray(x) + 1e-9))  # right limit at grid pts
    proc = prof.freeze((0.0, 1.0, 2.0))
    assert proc.as_step().values == (2.0, -1.0)


def test_sliding_freeze_error_decreases(unit_atom):
    prof = SlidingWindowProfile(width=1.0, clip=100.0)
    reals = [sample_prm(unit_atom, 3.5, s) for s in range(80)]
    means = []
    for ncells in (4, 16):
        grid = np.linspace(-2.0, 2.0, ncells + 1)
        proc = prof.freeze(grid)
        mean, se = freeze_error_sq_sliding(prof, proc, 2.0, reals)
        means.append((mean, se))
    assert means[1][0] < means[0][0]
