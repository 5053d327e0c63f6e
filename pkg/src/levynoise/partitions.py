"""Set-partition enumeration and the cumulant-to-moment formula.

For a centered random variable the m-th moment is the sum, over all set
partitions of ``{1, ..., m}`` whose blocks all have at least two
elements, of the product of cumulants indexed by block sizes.
Partitions containing a singleton block contribute a factor ``kappa_1 = 0``
and drop out, so summing over all partitions with ``kappa_1 = 0`` gives
the same value; both routes are implemented and tested against each
other.

Enumeration is the deliberate algorithm here (no closed-form shortcut):
a restricted-growth recursion with singleton pruning, capped at size 14
to keep runtimes at desk scale.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import MissingCumulantError, SizeLimitError
from .measure import LevyMeasureModel, abs_moment, signed_moment
from .stepfun import StepFunction

MAX_PARTITION_SIZE = 14

Partition = tuple[tuple[int, ...], ...]


def _check_size(m: int) -> None:
    if m > MAX_PARTITION_SIZE:
        raise SizeLimitError(
            f"partition enumeration capped at {MAX_PARTITION_SIZE}, got {m}")
    if m < 1:
        raise SizeLimitError("need at least one element")


def _partitions(m: int, min_block: int) -> Iterator[Partition]:
    """Yield partitions of {1,..,m} whose blocks all have >= min_block elements.

    Elements are placed in increasing order, so blocks are created sorted
    by their minimum and each yielded partition is canonical.  Branches
    that cannot grow all undersized blocks to ``min_block`` with the
    elements that remain are pruned.
    """
    blocks: list[list[int]] = []

    def place(e: int) -> Iterator[Partition]:
        if e > m:
            if all(len(b) >= min_block for b in blocks):
                yield tuple(tuple(b) for b in blocks)
            return
        remaining_after = m - e
        for b in blocks:
            b.append(e)
            deficit = sum(min_block - len(x) for x in blocks if len(x) < min_block)
            if deficit <= remaining_after:
                yield from place(e + 1)
            b.pop()
        blocks.append([e])
        deficit = sum(min_block - len(x) for x in blocks if len(x) < min_block)
        if deficit <= remaining_after:
            yield from place(e + 1)
        blocks.pop()

    return place(1)


def all_partitions(m: int) -> Iterator[Partition]:
    """All set partitions of ``{1, ..., m}`` in canonical order."""
    _check_size(m)
    return _partitions(m, 1)


def partitions_no_singletons(m: int) -> list[Partition]:
    """Partitions of ``{1, ..., m}`` in which every block has size >= 2."""
    _check_size(m)
    return list(_partitions(m, 2))


def count_no_singleton_partitions(p: int) -> int:
    """Number of no-singleton partitions of a ``p``-element set.

    This count is the combinatorial constant multiplying the p-th moment
    bound of the noise: 1, 1, 4, 11, 41, 162, 715, ... for p = 2, 3, ...
    """
    if p < 2:
        raise SizeLimitError("count defined for p >= 2")
    _check_size(p)
    return sum(1 for _ in _partitions(p, 2))


def _values_exact(values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def moment_from_cumulants(kappas: Mapping[int, Fraction | float], m: int) -> Fraction | float:
    """m-th moment of a centered variable from its cumulants.

    ``kappas`` maps order ``n`` to the n-th cumulant for every
    ``2 <= n <= m``.  The sum runs over no-singleton partitions; exact
    rational inputs give an exact rational result, float inputs are
    accumulated with compensated summation.
    """
    if m < 2:
        raise ValueError("moment order must be >= 2")
    _check_size(m)
    for n in range(2, m + 1):
        if n not in kappas:
            raise MissingCumulantError(n)
    if kappas[2] < 0:
        raise ValueError("second cumulant must be nonnegative")
    exact = _values_exact([kappas[n] for n in range(2, m + 1)])
    if exact:
        total = Fraction(0)
        for part in _partitions(m, 2):
            prod = Fraction(1)
            for block in part:
                prod *= kappas[len(block)]
            total += prod
        return total
    terms = []
    for part in _partitions(m, 2):
        prod = 1.0
        for block in part:
            prod *= float(kappas[len(block)])
        terms.append(prod)
    return math.fsum(terms)


def moment_over_all_partitions(kappas: Mapping[int, Fraction | float], m: int) -> Fraction | float:
    """Same moment, summed over *all* partitions with ``kappa_1`` forced to 0.

    Cross-check for :func:`moment_from_cumulants`: singleton-containing
    partitions contribute zero, so both readings must agree.
    """
    if m < 2:
        raise ValueError("moment order must be >= 2")
    _check_size(m)
    full = dict(kappas)
    full[1] = 0
    exact = _values_exact([full[n] for n in range(1, m + 1) if n in full])
    total: Fraction | float = Fraction(0) if exact else 0.0
    terms = []
    for part in _partitions(m, 1):
        prod = Fraction(1) if exact else 1.0
        for block in part:
            n = len(block)
            if n not in full:
                raise MissingCumulantError(n)
            prod *= full[n]
        if exact:
            total += prod
        else:
            terms.append(prod)
    return total if exact else math.fsum(terms)


def step_functional_cumulants(model: LevyMeasureModel, phi: StepFunction,
                              p: int) -> dict[int, Fraction | float]:
    """Cumulants of the smoothed noise ``integral phi dL``.

    The n-th cumulant equals ``mt_n * integral phi(x)^n dx``; the step
    structure makes the space integral an exact finite sum.
    """
    if p < 2:
        raise ValueError("need p >= 2")
    out: dict[int, Fraction | float] = {}
    for n in range(2, p + 1):
        mt = signed_moment(model, n)
        integ = phi.power_integral(n)
        out[n] = mt * integ if isinstance(mt, Fraction) else float(mt) * float(integ)
    return out


def moment_of_step_functional(model: LevyMeasureModel, phi: StepFunction,
                              p: int) -> Fraction | float:
    """Exact p-th moment of ``integral phi dL`` via cumulants and partitions."""
    if not math.isfinite(float(abs_moment(model, p))):
        raise ValueError(f"m_{p} must be finite")
    return moment_from_cumulants(step_functional_cumulants(model, phi, p), p)
