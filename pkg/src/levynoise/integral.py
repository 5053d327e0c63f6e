"""Seminorm estimation and moment-bound certification for the integral.

Three inequalities are certified numerically:

* the p-th moment of the smoothed noise ``L(phi)`` is at most the
  no-singleton partition count times
  ``(m_2 int phi^2)^{p/2} + m_p int |phi|^p`` -- checked exactly, the
  left side coming from the cumulant/partition oracle;
* the p-norm of the stochastic integral ``I(X)`` is at most ``C_p``
  times the seminorm ``[X]_p`` (sum of an L^p(Omega; L^2) part and an
  L^p(Omega x space) part), where
  ``C_p^p = 2 B_p C* (m_2^{p/2} v m_p)`` combines a configurable
  discrete-martingale Rosenthal constant ``B_p`` with the partition
  count ``C*`` -- checked in Monte Carlo at the configured constant;
* the variance of ``I_{K'}(X) - I_K(X)`` equals
  ``m_2 E int_{K<|x|<=K'} |X|^2`` -- the Cauchy tail computation behind
  the window limit ``K -> infinity``.

``B_p`` has no canonical numerical value (the classical inequality only
asserts existence), so integral-bound checks are consistency gates at
the configured constant, not sharpness claims.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .errors import InfinitePMomentError
from .measure import LevyMeasureModel, abs_moment
from .partitions import count_no_singleton_partitions, moment_of_step_functional
from .prm import batch_L_weighted, sample_prm_batch
from .processes import (
    SimpleProcess,
    batch_I_K,
    batch_abs_power_integral,
    batch_square_integral,
)
from .rng import derive_rng
from .stepfun import StepFunction


# ---------------------------------------------------------------------------
# seminorms [X]_{K,p} = ||X||_{L^p(Omega; L^2)} + ||X||_{L^p(Omega x space)}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeminormEstimate:
    window: float
    p: int
    l2_part: float            # (E[(int X^2)^{p/2}])^{1/p}
    lp_part: float            # (E[int |X|^p])^{1/p}
    mean_sq_pow: float        # E[(int X^2)^{p/2}]
    mean_abs_pow: float       # E[int |X|^p]
    se_sq_pow: float
    se_abs_pow: float
    n_samples: int
    exact: bool

    @property
    def value(self) -> float:
        return self.l2_part + self.lp_part

    def __post_init__(self) -> None:
        if self.l2_part < 0 or self.lp_part < 0:
            raise ValueError("seminorm parts must be nonnegative")


def estimate_seminorm(model: LevyMeasureModel, proc: SimpleProcess, p: int,
                      window: float | None = None, n_samples: int = 10_000,
                      seed: int = 0) -> SeminormEstimate:
    """Estimate ``[X]_{K,p}`` (exact for deterministic processes).

    ``window=None`` integrates over the whole support, which equals the
    whole-line seminorm because simple processes vanish outside it.  The
    space integrals are exact per realization from the step structure;
    only the expectation is Monte Carlo.
    """
    if p < 2 or p % 2:
        raise ValueError("p must be an even integer >= 2")
    K = proc.read_window() if window is None else float(window)
    if proc.is_deterministic():
        phi = proc.as_step()
        phi = phi.restricted(-K, K)
        q2 = float(phi.abs_power_integral(2))
        qp = float(phi.abs_power_integral(p))
        return SeminormEstimate(K, p, math.sqrt(q2), qp ** (1.0 / p),
                                q2 ** (p / 2), qp, 0.0, 0.0, 0, True)
    rng = derive_rng(seed, 11)
    batch = sample_prm_batch(model, proc.read_window(), n_samples, rng)
    q2 = batch_square_integral(proc, batch, K) ** (p / 2)
    qp = batch_abs_power_integral(proc, batch, p, K)
    m2p, s2p = _mean_se(q2)
    mpp, spp = _mean_se(qp)
    return SeminormEstimate(K, p, m2p ** (1.0 / p), mpp ** (1.0 / p),
                            m2p, mpp, s2p, spp, n_samples, False)


def _mean_se(samples: np.ndarray) -> tuple[float, float]:
    n = len(samples)
    return float(samples.mean()), float(samples.std(ddof=1) / math.sqrt(n))


# ---------------------------------------------------------------------------
# p-th moment bound for the smoothed noise (exact on both sides)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearMomentBound:
    p: int
    partition_count: int
    exact_moment: Fraction | float
    rhs: Fraction | float
    passed: bool

    @property
    def ratio(self) -> float:
        return float(self.exact_moment) / float(self.rhs) if self.rhs else 0.0


def check_linear_moment_bound(model: LevyMeasureModel, phi: StepFunction,
                              p: int) -> LinearMomentBound:
    """Certify ``E[L(phi)^p] <= C* ((m_2 int phi^2)^{p/2} + m_p int |phi|^p)``.

    Both sides are exact rationals for atomic models, so the comparison
    carries no rounding.
    """
    if p < 2 or p % 2:
        raise ValueError("p must be an even integer >= 2")
    mp = abs_moment(model, p)
    if not math.isfinite(float(mp)):
        raise InfinitePMomentError(f"m_{p} diverges")
    cstar = count_no_singleton_partitions(p)
    exact = moment_of_step_functional(model, phi, p)
    m2 = abs_moment(model, 2)
    i2 = phi.abs_power_integral(2)
    ip = phi.abs_power_integral(p)
    if isinstance(m2, Fraction) and isinstance(mp, Fraction):
        rhs: Fraction | float = cstar * ((m2 * i2) ** (p // 2) + mp * ip)
        passed = exact <= rhs
    else:
        rhs = cstar * ((float(m2) * float(i2)) ** (p / 2) + float(mp) * float(ip))
        passed = float(exact) <= rhs * (1 + 1e-12)
    return LinearMomentBound(p, cstar, exact, rhs, passed)


# ---------------------------------------------------------------------------
# p-norm bound for the stochastic integral
# ---------------------------------------------------------------------------

def integral_bound_constant(model: LevyMeasureModel, p: int, rosenthal_b: float,
                            convention: str = "linear") -> float:
    """The constant ``C_p`` multiplying ``[X]_p``.

    ``convention="linear"`` uses ``C_p^p = 2 B_p C* (m_2^{p/2} v m_p)``;
    ``convention="power"`` uses ``2 B_p^p C* (...)`` instead.  The two
    agree at ``B_p = 1``; which normalization the Rosenthal constant
    should enter with is ambiguous, so both are exposed and the report
    records the one used.
    """
    cstar = count_no_singleton_partitions(p)
    m2 = float(abs_moment(model, 2))
    mp = float(abs_moment(model, p))
    if convention == "linear":
        b_factor = rosenthal_b
    elif convention == "power":
        b_factor = rosenthal_b ** p
    else:
        raise ValueError("convention must be 'linear' or 'power'")
    return (2.0 * b_factor * cstar * max(m2 ** (p / 2), mp)) ** (1.0 / p)


@dataclass(frozen=True)
class IntegralMomentBound:
    p: int
    constant: float           # C_p at the configured Rosenthal constant
    convention: str
    lhs: float                # (E|I(X)|^p)^{1/p} estimate
    rhs: float                # C_p [X]_p
    se_lhs_pow: float         # SE of the p-th moment estimate
    se_rhs_pow: float         # SE of rhs^p propagated from the seminorm
    n_samples: int
    passed: bool
    seminorm: SeminormEstimate


def check_integral_moment_bound(model: LevyMeasureModel, proc: SimpleProcess,
                                p: int, rosenthal_b: float = 1.0,
                                n_samples: int = 50_000, seed: int = 0,
                                convention: str = "linear",
                                se_multiplier: float = 3.0) -> IntegralMomentBound:
    """Monte Carlo gate ``||I(X)||_p <= C_p [X]_p`` at the configured constant.

    The left side is estimated on one derived stream, the seminorm on an
    independent one; the comparison runs on the p-th power scale with
    both standard errors combined.
    """
    if p < 2 or p % 2:
        raise ValueError("p must be an even integer >= 2")
    if not math.isfinite(float(abs_moment(model, p))):
        raise InfinitePMomentError(f"m_{p} diverges")
    const = integral_bound_constant(model, p, rosenthal_b, convention)
    rng = derive_rng(seed, 12)
    batch = sample_prm_batch(model, proc.read_window(), n_samples, rng)
    ivals = batch_I_K(batch, proc)
    lhs_pow, se_lhs_pow = _mean_se(np.abs(ivals) ** p)
    semi = estimate_seminorm(model, proc, p, None, n_samples, seed)
    rhs = const * semi.value
    # d(rhs^p)/d(mean parts) via the chain rule through the 1/p roots
    if semi.exact:
        se_rhs_pow = 0.0
    else:
        outer = const ** p * p * semi.value ** (p - 1)
        d_l2 = semi.l2_part / (p * semi.mean_sq_pow) if semi.mean_sq_pow else 0.0
        d_lp = semi.lp_part / (p * semi.mean_abs_pow) if semi.mean_abs_pow else 0.0
        se_rhs_pow = outer * math.hypot(d_l2 * semi.se_sq_pow, d_lp * semi.se_abs_pow)
    margin = se_multiplier * math.hypot(se_lhs_pow, se_rhs_pow)
    passed = lhs_pow <= rhs ** p + margin
    return IntegralMomentBound(p, const, convention, lhs_pow ** (1.0 / p), rhs,
                               se_lhs_pow, se_rhs_pow, n_samples, passed, semi)


# ---------------------------------------------------------------------------
# tail convergence of the window limit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TailRow:
    k_inner: float
    k_outer: float
    var_estimate: float
    se: float
    theory: float
    z: float
    passed: bool


def tail_convergence(model: LevyMeasureModel, func, schedule, k_outer: float,
                     n_samples: int = 20_000, seed: int = 0,
                     se_multiplier: float = 3.0) -> list[TailRow]:
    """Variance of ``I_{K'}(phi) - I_K(phi)`` against ``m_2 int_tail phi^2``.

    ``func`` is a deterministic square-integrable profile (vectorized
    callable).  For each ``K`` in the schedule the difference integral
    reads only the tail region ``K < |x| <= K'``, so its samples are the
    tail-restricted compensated sums.
    """
    rng = derive_rng(seed, 13)
    batch = sample_prm_batch(model, float(k_outer), n_samples, rng)
    m2 = float(abs_moment(model, 2))
    rows = []
    for k in schedule:
        k = float(k)
        tail_f = lambda x: np.where(np.abs(x) > k, func(x), 0.0)
        f_int = _two_sided_quad(func, k, k_outer, power=1)
        diff = batch_L_weighted(batch, tail_f, f_int)
        est, se = _mean_se(diff ** 2)
        theory = m2 * _two_sided_quad(func, k, k_outer, power=2)
        z = (est - theory) / se if se > 0 else 0.0
        rows.append(TailRow(k, float(k_outer), est, se, theory, z,
                            abs(z) <= se_multiplier))
    return rows


def _two_sided_quad(func, k_inner: float, k_outer: float, power: int) -> float:
    g = lambda x: float(func(np.asarray([x]))[0]) ** power
    left, _ = integrate.quad(g, -k_outer, -k_inner, epsabs=1e-12, limit=200)
    right, _ = integrate.quad(g, k_inner, k_outer, epsabs=1e-12, limit=200)
    return left + right
