"""Thresholding greedy machinery.

The greedy set of size m keeps the m largest-modulus coefficients, breaking
ties toward the smaller index; the greedy approximation projects onto it, and
the restricted truncation flattens the retained coefficients to the minimal
modulus while keeping their signs.  The estimators below report witness-backed
lower bounds for the associated operator constants; upper bounds are claimed
only where they can be certified (diagonal systems, or summed product bounds
under r-convexity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .bases import Basis, _as_index_set, coefficient_transform, coordinate_projection
from .errors import InvalidExponentError
from .estimates import BoundEstimate, RatioTracker
from .rng import CONDITIONALITY_SEARCH, QG_SEARCH, TRUNCATION_SEARCH, substream
from .sampling import COEFF_KINDS, coefficient_sample, plateau_coefficients
from .spaces import Lp, ambient_gauge, ambient_gauge_rows

__all__ = [
    "greedy_order",
    "greedy_set",
    "greedy_approximation",
    "restricted_truncation",
    "greedy_truncation",
    "quasi_greedy_constant",
    "truncation_constant",
    "conditionality_growth_profile",
    "ConditionalityRow",
]


def greedy_order(basis: Basis, f) -> np.ndarray:
    """Permutation of {0..d-1} by decreasing |coefficient|, ties by index."""
    coeffs = coefficient_transform(basis, f)
    return np.lexsort((np.arange(basis.d), -np.abs(coeffs)))


def greedy_set(basis: Basis, f, m: int) -> np.ndarray:
    """The unique greedy index set of cardinality m (ascending order)."""
    if not 0 <= m <= basis.d:
        raise ValueError(f"m must lie in [0, {basis.d}], got {m}")
    return np.sort(greedy_order(basis, f)[:m])


def greedy_approximation(basis: Basis, f, m: int) -> np.ndarray:
    """Projection of f onto its greedy set of size m."""
    return coordinate_projection(basis, greedy_set(basis, f, m), f)


def restricted_truncation(basis: Basis, f, A) -> np.ndarray:
    """Flatten the coefficients on A to min_{n in A} |x_n*(f)|, keeping signs.

    The sign of a zero coefficient counts as +1; an empty A returns 0 (empty
    sum convention).
    """
    idx = _as_index_set(A, basis.d)
    if idx.size == 0:
        return np.zeros(basis.dim)
    coeffs = coefficient_transform(basis, f)[idx]
    level = float(np.min(np.abs(coeffs)))
    signs = np.where(coeffs < 0, -1.0, 1.0)
    return level * (signs @ basis.vectors[idx])


def greedy_truncation(basis: Basis, f, m: int) -> np.ndarray:
    """Restricted truncation on the greedy set of size m."""
    return restricted_truncation(basis, f, greedy_set(basis, f, m))


# ---------------------------------------------------------------------------
# constants of the greedy and truncation operators
# ---------------------------------------------------------------------------


def _ratios_over_m(basis: Basis, coeffs: np.ndarray, truncate: bool) -> tuple[np.ndarray, np.ndarray]:
    """Gauges of G_m f (or U_m f) for m = 1..d, via vectorized prefix sums.

    Returns (order, gauges) where order is the greedy permutation.
    """
    order = np.lexsort((np.arange(basis.d), -np.abs(coeffs)))
    sorted_coeffs = coeffs[order]
    if truncate:
        signs = np.where(sorted_coeffs < 0, -1.0, 1.0)
        prefixes = np.cumsum(signs[:, None] * basis.vectors[order], axis=0)
        prefixes = np.abs(sorted_coeffs)[:, None] * prefixes
    else:
        prefixes = np.cumsum(sorted_coeffs[:, None] * basis.vectors[order], axis=0)
    return order, ambient_gauge_rows(basis.space, prefixes)


def _operator_constant(basis: Basis, budget: int, seed: int, stream: int,
                       truncate: bool) -> BoundEstimate:
    d = basis.d
    tracker = RatioTracker()
    # m = d reproduces f for the projection and gives ratio 1 after full
    # flattening of a flat vector, so a trivial witness always exists
    flat = np.ones(d)
    f = flat @ basis.vectors
    nf = ambient_gauge(basis.space, f)
    _, gauges = _ratios_over_m(basis, flat, truncate)
    m0 = int(np.argmax(gauges)) + 1
    tracker.update(float(gauges[m0 - 1]) / nf, {"coeffs": flat.tolist(), "m": m0})

    candidates: list[np.ndarray] = []
    if budget > 0:
        candidates.extend(np.eye(d))
        alt = np.ones(d)
        alt[1::2] = -1.0
        candidates.append(alt)
        for delta in (1e-3, 1e-6, 1e-9):
            for start in (0, 1):
                boosted = np.arange(start, d, 2)
                if boosted.size:
                    candidates.append(plateau_coefficients(d, boosted, delta))
        for i in range(budget):
            rng = substream(seed, stream, i)
            kind = COEFF_KINDS[i % len(COEFF_KINDS)]
            candidates.append(coefficient_sample(rng, d, kind))

    for coeffs in candidates:
        f = coeffs @ basis.vectors
        nf = ambient_gauge(basis.space, f)
        if nf <= 0:
            continue
        _, gauges = _ratios_over_m(basis, coeffs, truncate)
        m = int(np.argmax(gauges)) + 1
        tracker.update(float(gauges[m - 1]) / nf, {"coeffs": coeffs.tolist(), "m": m})

    if basis.is_diagonal():
        # projections and truncations shrink coordinate moduli pointwise
        return BoundEstimate(
            lower=min(tracker.best, 1.0),
            upper=1.0,
            witness=tracker.witness,
            upper_certified=True,
            heuristic=False,
            note="diagonal system; gauge monotone in coordinate moduli",
        )
    return BoundEstimate(
        lower=tracker.best,
        upper=math.inf,
        witness=tracker.witness,
        upper_certified=False,
        heuristic=True,
    )


def quasi_greedy_constant(basis: Basis, budget: int = 2000, seed: int = 0) -> BoundEstimate:
    """Lower bound for sup over (f, m) of ||G_m f|| / ||f||.

    With budget 0 only the trivial witness is evaluated and the bound is 1.
    """
    return _operator_constant(basis, budget, seed, QG_SEARCH, truncate=False)


def truncation_constant(basis: Basis, budget: int = 2000, seed: int = 0) -> BoundEstimate:
    """Lower bound for sup over (f, m) of ||U_m f|| / ||f||."""
    return _operator_constant(basis, budget, seed, TRUNCATION_SEARCH, truncate=True)


# ---------------------------------------------------------------------------
# conditionality growth profile
# ---------------------------------------------------------------------------


@dataclass
class ConditionalityRow:
    m: int
    lower: float
    upper: float
    upper_certified: bool
    log_normalized: float
    witness: dict[str, Any] | None


def _forward_selection(basis: Basis, coeffs: np.ndarray, f_gauge: float,
                       max_m: int, rows: list[ConditionalityRow],
                       coeff_list: list[float]) -> None:
    """Greedily grow A one index at a time, maximizing ||S_A f|| at each size."""
    scaled = coeffs[:, None] * basis.vectors
    chosen: list[int] = []
    running = np.zeros(basis.dim)
    available = set(range(basis.d))
    for m in range(1, max_m + 1):
        best_val, best_n = -math.inf, None
        for n in available:
            val = ambient_gauge(basis.space, running + scaled[n])
            if val > best_val:
                best_val, best_n = val, n
        if best_n is None:
            break
        running = running + scaled[best_n]
        chosen.append(int(best_n))
        available.discard(best_n)
        ratio = best_val / f_gauge
        row = rows[m - 1]
        if ratio > row.lower:
            row.lower = ratio
            row.witness = {"coeffs": coeff_list, "set": sorted(chosen)}


def conditionality_growth_profile(basis: Basis, max_m: int | None = None,
                                  budget: int = 400, seed: int = 0) -> list[ConditionalityRow]:
    """Per-m bounds for sup over |A| <= m of ||S_A||, with the growth diagnostic.

    Lower bounds come from witness search over (f, A); the certified upper
    bound sums the m largest products ||x_n||^r ||x_n*||^r under r-convexity.
    The last column reports lower / (1 + log m)^(1/p), a diagnostic rather than an
    asserted bound.
    """
    if not isinstance(basis.space, Lp):
        raise InvalidExponentError("conditionality profile requires an lp ambient")
    p = basis.space.p
    d = basis.d
    if max_m is None:
        max_m = d
    max_m = min(int(max_m), d)

    r = min(p, 1.0)
    if basis.is_diagonal():
        uppers = np.ones(max_m)
        certified = True
    else:
        products = np.sort(basis.vector_norms * basis.dual_norms)[::-1] ** r
        uppers = np.cumsum(products[:max_m]) ** (1.0 / r)
        certified = True

    rows = [
        ConditionalityRow(m=m, lower=0.0, upper=float(uppers[m - 1]),
                          upper_certified=certified, log_normalized=0.0, witness=None)
        for m in range(1, max_m + 1)
    ]

    candidates: list[np.ndarray] = list(np.eye(d))
    candidates.append(np.ones(d))
    for i in range(budget):
        rng = substream(seed, CONDITIONALITY_SEARCH, i)
        kind = COEFF_KINDS[i % len(COEFF_KINDS)]
        candidates.append(coefficient_sample(rng, d, kind))

    for coeffs in candidates:
        f = coeffs @ basis.vectors
        nf = ambient_gauge(basis.space, f)
        if nf <= 0:
            continue
        coeff_list = [float(c) for c in coeffs]
        _forward_selection(basis, coeffs, nf, max_m, rows, coeff_list)

    # ambient unit vectors as inputs
    for j in range(basis.dim):
        e = np.zeros(basis.dim)
        e[j] = 1.0
        nf = ambient_gauge(basis.space, e)
        coeffs = coefficient_transform(basis, e)
        coeff_list = [float(c) for c in coeffs]
        _forward_selection(basis, coeffs, nf, max_m, rows, coeff_list)

    for row in rows:
        row.lower = max(row.lower, 1.0)
        if row.upper_certified:
            row.lower = min(row.lower, row.upper)
        row.log_normalized = row.lower / (1.0 + math.log(row.m)) ** (1.0 / p)
    return rows
