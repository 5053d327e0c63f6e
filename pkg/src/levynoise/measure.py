"""Jump-size measures with finite total mass and finite variance.

A measure lives on the punctured line (no mass at zero) and is either

* atomic: finitely many atoms ``(z_j, lam_j)`` with ``z_j != 0`` and
  ``lam_j > 0``, or
* a truncated density: a nonnegative density supported on
  ``[-z_max, -eps] + [eps, z_max]``, integrated by adaptive quadrature.

Finite total mass is required so that the driving point process can be
sampled exactly as a compound Poisson configuration.  Absolute moments
``m_p = integral |z|^p`` and signed moments ``mt_n = integral z^n`` are
cached per model; for atomic models with integer order they are exact
rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import (
    AtomAtZeroError,
    InfinitePMomentError,
    InfiniteSecondMomentError,
    InfiniteTotalMassError,
    NonPositiveMassError,
    QuadratureError,
)

QUAD_ABS_TOL = 1e-10


@dataclass(frozen=True)
class TruncatedDensity:
    """Density mode description.

    ``density`` must already vanish for ``|z| < eps`` and ``|z| > z_max``;
    ``untruncated`` optionally gives the full (pre-truncation) density so
    the small-jump variance that truncation discards can be reported.
    """

    density: Callable[[float], float]
    eps: float
    z_max: float
    untruncated: Callable[[float], float] | None = None


@dataclass(frozen=True)
class LevyMeasureModel:
    """Validated jump-size measure with cached total mass and variance.

    Construct through :func:`validate_measure` (or the convenience
    constructors), never directly: the constructors enforce the
    invariants ``z_j != 0``, ``lam_j > 0``, finite total mass and finite
    second moment.
    """

    atoms: tuple[tuple[float, float], ...] | None
    density: TruncatedDensity | None
    total_mass: float
    m2: float

    @property
    def is_atomic(self) -> bool:
        return self.atoms is not None

    def atom_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        zs = np.array([z for z, _ in self.atoms])
        lams = np.array([lam for _, lam in self.atoms])
        return zs, lams


def _quad(f: Callable[[float], float], a: float, b: float) -> float:
    val, err = integrate.quad(f, a, b, epsabs=QUAD_ABS_TOL, epsrel=1e-10, limit=200)
    if not math.isfinite(val) or err > max(QUAD_ABS_TOL * 10, 1e-6 * abs(val)):
        raise QuadratureError(f"quadrature on [{a}, {b}] did not converge (err={err})")
    return val


def _density_integral(den: TruncatedDensity, f: Callable[[float], float]) -> float:
    g = lambda z: f(z) * den.density(z)
    return _quad(g, -den.z_max, -den.eps) + _quad(g, den.eps, den.z_max)


def validate_measure(spec) -> LevyMeasureModel:
    """Check a raw measure description and return the validated model.

    ``spec`` may be a list of ``(z, lam)`` pairs, a dict with an
    ``"atoms"`` entry, a dict naming a built-in density family, a
    :class:`TruncatedDensity`, or an already validated model (returned
    unchanged).
    """
    if isinstance(spec, LevyMeasureModel):
        return spec
    if isinstance(spec, TruncatedDensity):
        return _validate_density(spec)
    if isinstance(spec, dict):
        if "atoms" in spec:
            return _validate_atoms(spec["atoms"])
        if spec.get("family") == "symmetric_power_law":
            return power_law_measure(spec["alpha"], spec["eps"], spec["z_max"],
                                     scale=spec.get("scale", 1.0))
        raise NonPositiveMassError(f"unrecognized measure description: {spec!r}")
    return _validate_atoms(spec)


def atomic_measure(pairs) -> LevyMeasureModel:
    """Validated purely atomic measure from ``(z, lam)`` pairs."""
    return _validate_atoms(pairs)


def power_law_measure(alpha: float, eps: float, z_max: float,
                      scale: float = 1.0) -> LevyMeasureModel:
    """Symmetric density ``scale * |z|^(-alpha)`` truncated to ``eps <= |z| <= z_max``."""
    if eps <= 0 or z_max <= eps:
        raise NonPositiveMassError("need 0 < eps < z_max")
    if scale <= 0:
        raise NonPositiveMassError("scale must be positive")

    def tail_density(z: float) -> float:
        az = abs(z)
        return scale * az ** (-alpha) if eps <= az <= z_max else 0.0

    def full_density(z: float) -> float:
        return scale * abs(z) ** (-alpha) if z != 0 else 0.0

    return _validate_density(TruncatedDensity(tail_density, eps, z_max, full_density))


def _validate_atoms(pairs) -> LevyMeasureModel:
    atoms = []
    for z, lam in pairs:
        z, lam = float(z), float(lam)
        if math.isnan(z) or math.isnan(lam):
            raise NonPositiveMassError("atom entries must not be NaN")
        if z == 0.0:
            raise AtomAtZeroError("jump sizes must be nonzero")
        if lam <= 0.0:
            raise NonPositiveMassError(f"atom mass must be positive, got {lam}")
        if math.isinf(lam):
            raise InfiniteTotalMassError("atom with infinite mass")
        if math.isinf(z):
            raise InfiniteSecondMomentError("atom at infinity has infinite variance")
        atoms.append((z, lam))
    if not atoms:
        raise NonPositiveMassError("measure needs at least one atom")
    total = float(sum(Fraction(lam) for _, lam in atoms))
    m2 = float(sum(Fraction(lam) * Fraction(z) ** 2 for z, lam in atoms))
    return LevyMeasureModel(tuple(atoms), None, total, m2)


def _validate_density(den: TruncatedDensity) -> LevyMeasureModel:
    if den.eps <= 0:
        raise AtomAtZeroError("density truncation level must be positive")
    if not math.isfinite(den.z_max):
        raise InfiniteTotalMassError("density support must be bounded (finite z_max)")
    total = _density_integral(den, lambda z: 1.0)
    if not math.isfinite(total) or total <= 0:
        raise InfiniteTotalMassError(f"total mass {total} is not positive and finite")
    m2 = _density_integral(den, lambda z: z * z)
    if not math.isfinite(m2):
        raise InfiniteSecondMomentError("second moment diverges")
    return LevyMeasureModel(None, den, total, m2)


# ---------------------------------------------------------------------------
# moment functionals
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def abs_moment(model: LevyMeasureModel, p) -> Fraction | float:
    """Absolute moment ``m_p = integral |z|^p`` for real ``p >= 1``.

    Exact rational for atomic models with integer ``p`` (floats are
    dyadic rationals, so atom data converts losslessly).
    """
    if p < 1:
        raise ValueError("order p must be >= 1")
    if model.is_atomic:
        if float(p).is_integer():
            q = int(p)
            return sum(Fraction(lam) * abs(Fraction(z)) ** q for z, lam in model.atoms)
        return float(sum(lam * abs(z) ** p for z, lam in model.atoms))
    val = _density_integral(model.density, lambda z: abs(z) ** p)
    if not math.isfinite(val):
        raise InfinitePMomentError(f"m_{p} diverges")
    return val


@lru_cache(maxsize=None)
def signed_moment(model: LevyMeasureModel, n: int) -> Fraction | float:
    """Signed moment ``mt_n = integral z^n`` for integer ``n >= 1``."""
    if n < 1 or not float(n).is_integer():
        raise ValueError("order n must be a positive integer")
    n = int(n)
    if model.is_atomic:
        return sum(Fraction(lam) * Fraction(z) ** n for z, lam in model.atoms)
    return _density_integral(model.density, lambda z: z ** n)


def drift_of_centered_representation(model: LevyMeasureModel) -> Fraction | float:
    """Drift ``b = -integral_{|z|>1} z`` that centers the big-jump part.

    Reported for reference only; the centered construction used by the
    sampler compensates every jump and never consumes ``b``.
    """
    if model.is_atomic:
        return -sum(Fraction(lam) * Fraction(z) for z, lam in model.atoms if abs(z) > 1)
    den = model.density
    lo = max(1.0, den.eps)
    if den.z_max <= lo:
        return 0.0
    g = lambda z: z * den.density(z)
    return -(_quad(g, -den.z_max, -lo) + _quad(g, lo, den.z_max))


def small_jump_variance_bias(model: LevyMeasureModel) -> float:
    """Variance ``integral_{0<|z|<eps} z^2`` discarded by truncation.

    Zero for atomic models; for density mode it quantifies the bias of
    simulating the truncated measure instead of the full one.  Requires
    the untruncated density to be attached.
    """
    if model.is_atomic:
        return 0.0
    den = model.density
    if den.untruncated is None:
        raise QuadratureError("no untruncated density attached; bias unknown")
    g = lambda z: z * z * den.untruncated(z)
    return _quad(g, -den.eps, 0.0) + _quad(g, 0.0, den.eps)


@dataclass(frozen=True)
class MomentTable:
    """Cached absolute and signed moments of one model up to a max order."""

    abs_moments: dict[int, Fraction | float]
    signed_moments: dict[int, Fraction | float]

    def __post_init__(self) -> None:
        for n, mt in self.signed_moments.items():
            mp = self.abs_moments[n]
            exact = isinstance(mt, Fraction) and isinstance(mp, Fraction)
            if n % 2 == 0:
                same = mt == mp if exact else math.isclose(float(mt), float(mp), rel_tol=1e-12)
                if not same:
                    raise ValueError(f"even signed moment must equal m_{n}")
            if abs(mt) > mp * (1 + 1e-12):
                raise ValueError(f"|mt_{n}| exceeds m_{n}")


def moment_table(model: LevyMeasureModel, p_max: int) -> MomentTable:
    return MomentTable(
        abs_moments={n: abs_moment(model, n) for n in range(1, p_max + 1)},
        signed_moments={n: signed_moment(model, n) for n in range(1, p_max + 1)},
    )


# ---------------------------------------------------------------------------
# interpolation inequality m_r <= m_p^theta * m_2^(1-theta)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InterpolationRow:
    r: int
    theta: float
    value: float          # m_r
    bound: float          # m_p^theta * m_2^(1-theta)
    passed: bool
    equality: bool


INTERP_REL_TOL = 1e-12


def interpolation_check(model: LevyMeasureModel, p: int) -> list[InterpolationRow]:
    """Verify ``m_r <= m_p^theta m_2^(1-theta)`` for every integer ``2 <= r <= p``.

    ``theta = (r-2)/(p-2)`` interpolates the exponent.  For atomic models
    the comparison is carried out in exact rational arithmetic by raising
    both sides to the power ``p - 2``, which also certifies exact
    equality (single-atom models achieve it at every ``r``).
    """
    if p < 2 or p % 2 != 0:
        raise ValueError("p must be an even integer >= 2")
    m2 = abs_moment(model, 2)
    mp = abs_moment(model, p)
    if not math.isfinite(float(mp)):
        raise InfinitePMomentError(f"m_{p} diverges")
    rows = []
    for r in range(2, p + 1):
        mr = abs_moment(model, r)
        theta = (r - 2) / (p - 2) if p > 2 else 1.0
        bound = float(mp) ** theta * float(m2) ** (1.0 - theta)
        if isinstance(mr, Fraction) and isinstance(mp, Fraction) and p > 2:
            # exact: compare m_r^(p-2) against m_p^(r-2) * m_2^(p-r)
            lhs = mr ** (p - 2)
            rhs = mp ** (r - 2) * m2 ** (p - r)
            passed = lhs <= rhs
            equality = lhs == rhs
        else:
            passed = float(mr) <= bound * (1.0 + INTERP_REL_TOL)
            equality = abs(float(mr) - bound) <= INTERP_REL_TOL * max(abs(bound), 1.0)
        rows.append(InterpolationRow(r, theta, float(mr), bound, passed, equality))
    return rows
