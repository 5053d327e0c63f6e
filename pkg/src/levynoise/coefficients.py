"""Closed catalog of coefficient functionals for simple processes.

A coefficient is a bounded functional of the noise configuration to the
left of a horizon.  The catalog is deliberately small and serializable:

* ``Const(c)``                       -- horizon -inf, bound |c|
* ``ClampedNoise(a, b, clip)``       -- clamp(L((a, b]), clip), horizon b
* ``Poly(arg, coeffs)``              -- polynomial of one catalog entry
* ``Product(factors)``               -- product of catalog entries
* ``Sum(terms)``                     -- finite sum of catalog entries

Horizon and bound propagate syntactically through the tree, which makes
predictability of a simple process a static check: each coefficient's
horizon must not exceed the left endpoint of its cell.  Clamping is what
keeps every noise read bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import UnboundedCoefficientError
from .prm import PointRealization, RealizationBatch, batch_L_interval, eval_L_set

DEFAULT_CLIP = 1e6

Coefficient = Union["Const", "ClampedNoise", "Poly", "Product", "Sum"]


@dataclass(frozen=True)
class Const:
    value: float

    @property
    def horizon(self) -> float:
        return -math.inf

    @property
    def bound(self) -> float:
        return abs(self.value)

    def eval(self, real: PointRealization) -> Fraction:
        return Fraction(float(self.value))

    def eval_batch(self, batch: RealizationBatch) -> np.ndarray:
        return np.full(batch.n, float(self.value))

    def read_intervals(self) -> list[tuple[float, float]]:
        return []


@dataclass(frozen=True)
class ClampedNoise:
    """``clamp(L((a, b]), clip)``: the compensated noise mass of an interval."""

    a: float
    b: float
    clip: float = DEFAULT_CLIP

    def __post_init__(self) -> None:
        if not (self.b > self.a):
            raise ValueError("need a < b")
        if not (self.clip > 0) or not math.isfinite(self.clip):
            raise UnboundedCoefficientError("clip bound must be positive and finite")

    @property
    def horizon(self) -> float:
        return self.b

    @property
    def bound(self) -> float:
        return self.clip

    def eval(self, real: PointRealization) -> Fraction:
        v = eval_L_set(real, (self.a, self.b))
        c = Fraction(float(self.clip))
        return max(-c, min(c, v))

    def eval_batch(self, batch: RealizationBatch) -> np.ndarray:
        return np.clip(batch_L_interval(batch, self.a, self.b), -self.clip, self.clip)

    def read_intervals(self) -> list[tuple[float, float]]:
        return [(self.a, self.b)]


@dataclass(frozen=True)
class Poly:
    """``c_0 + c_1 y + ... + c_d y^d`` of one catalog coefficient ``y``."""

    arg: Coefficient
    coeffs: tuple[float, ...]

    @property
    def horizon(self) -> float:
        return self.arg.horizon

    @property
    def bound(self) -> float:
        b = self.arg.bound
        return float(sum(abs(c) * b ** k for k, c in enumerate(self.coeffs)))

    def eval(self, real: PointRealization) -> Fraction:
        y = self.arg.eval(real)
        total = Fraction(0)
        power = Fraction(1)
        for c in self.coeffs:
            total += Fraction(float(c)) * power
            power *= y
        return total

    def eval_batch(self, batch: RealizationBatch) -> np.ndarray:
        y = self.arg.eval_batch(batch)
        return np.polynomial.polynomial.polyval(y, np.asarray(self.coeffs, dtype=float))

    def read_intervals(self) -> list[tuple[float, float]]:
        return self.arg.read_intervals()


@dataclass(frozen=True)
class Product:
    factors: tuple[Coefficient, ...]

    @property
    def horizon(self) -> float:
        return max(f.horizon for f in self.factors)

    @property
    def bound(self) -> float:
        return float(math.prod(f.bound for f in self.factors))

    def eval(self, real: PointRealization) -> Fraction:
        out = Fraction(1)
        for f in self.factors:
            out *= f.eval(real)
        return out

    def eval_batch(self, batch: RealizationBatch) -> np.ndarray:
        out = np.ones(batch.n)
        for f in self.factors:
            out = out * f.eval_batch(batch)
        return out

    def read_intervals(self) -> list[tuple[float, float]]:
        return [iv for f in self.factors for iv in f.read_intervals()]


@dataclass(frozen=True)
class Sum:
    terms: tuple[Coefficient, ...]

    @property
    def horizon(self) -> float:
        return max(t.horizon for t in self.terms)

    @property
    def bound(self) -> float:
        return float(sum(t.bound for t in self.terms))

    def eval(self, real: PointRealization) -> Fraction:
        out = Fraction(0)
        for t in self.terms:
            out += t.eval(real)
        return out

    def eval_batch(self, batch: RealizationBatch) -> np.ndarray:
        out = np.zeros(batch.n)
        for t in self.terms:
            out = out + t.eval_batch(batch)
        return out

    def read_intervals(self) -> list[tuple[float, float]]:
        return [iv for t in self.terms for iv in t.read_intervals()]


def scaled(coef: Coefficient, c: float) -> Coefficient:
    if isinstance(coef, Const):
        return Const(coef.value * c)
    return Product((Const(float(c)), coef))


def is_deterministic(coef: Coefficient) -> bool:
    if isinstance(coef, Const):
        return True
    if isinstance(coef, ClampedNoise):
        return False
    if isinstance(coef, Poly):
        return is_deterministic(coef.arg)
    return all(is_deterministic(c) for c in (coef.factors if isinstance(coef, Product) else coef.terms))


# ---------------------------------------------------------------------------
# serialization (config files)
# ---------------------------------------------------------------------------

def coefficient_to_config(coef: Coefficient) -> dict:
    if isinstance(coef, Const):
        return {"type": "const", "value": coef.value}
    if isinstance(coef, ClampedNoise):
        return {"type": "clamped_noise", "interval": [coef.a, coef.b], "clip": coef.clip}
    if isinstance(coef, Poly):
        return {"type": "poly", "arg": coefficient_to_config(coef.arg),
                "coeffs": list(coef.coeffs)}
    if isinstance(coef, Product):
        return {"type": "product", "factors": [coefficient_to_config(f) for f in coef.factors]}
    if isinstance(coef, Sum):
        return {"type": "sum", "terms": [coefficient_to_config(t) for t in coef.terms]}
    raise TypeError(f"not a catalog coefficient: {coef!r}")


def coefficient_from_config(cfg: dict) -> Coefficient:
    kind = cfg.get("type")
    if kind == "const":
        return Const(float(cfg["value"]))
    if kind == "clamped_noise":
        a, b = cfg["interval"]
        return ClampedNoise(float(a), float(b), float(cfg.get("clip", DEFAULT_CLIP)))
    if kind == "poly":
        return Poly(coefficient_from_config(cfg["arg"]), tuple(float(c) for c in cfg["coeffs"]))
    if kind == "product":
        return Product(tuple(coefficient_from_config(f) for f in cfg["factors"]))
    if kind == "sum":
        return Sum(tuple(coefficient_from_config(t) for t in cfg["terms"]))
    raise TypeError(f"unknown coefficient type: {kind!r}")
