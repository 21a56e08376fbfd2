"""Shared candidate generators for the budgeted witness searches."""

from __future__ import annotations

import numpy as np

COEFF_KINDS = ("gaussian", "flat_signs", "plateau", "sparse", "decay")


def coefficient_sample(rng: np.random.Generator, d: int, kind: str) -> np.ndarray:
    """Draw a coefficient array of one of the stock shapes.

    gaussian    i.i.d. normal entries
    flat_signs  +/-1 entries
    plateau     all ones with a tiny boost on a random subset; the boosted
                subset becomes the greedy set, which is how tie-adversarial
                witnesses are produced
    sparse      gaussian on a small random support
    decay       positive, sorted decreasing (greedy order = index order)
    """
    if kind == "gaussian":
        return rng.standard_normal(d)
    if kind == "flat_signs":
        return rng.choice([-1.0, 1.0], size=d)
    if kind == "plateau":
        base = np.ones(d)
        m = int(rng.integers(1, d + 1))
        boost = rng.choice(d, size=m, replace=False)
        base[boost] += 10.0 ** -rng.integers(3, 10)
        signs = rng.choice([-1.0, 1.0], size=d)
        return base * signs
    if kind == "sparse":
        support = int(rng.integers(1, max(2, d // 2)))
        coeffs = np.zeros(d)
        idx = rng.choice(d, size=support, replace=False)
        coeffs[idx] = rng.standard_normal(support)
        return coeffs
    if kind == "decay":
        return np.sort(np.abs(rng.standard_normal(d)))[::-1] + 1e-12
    raise ValueError(f"unknown coefficient sample kind {kind!r}")


def plateau_coefficients(d: int, boosted, delta: float = 1e-9) -> np.ndarray:
    """Ones with entries raised by ``delta`` on ``boosted`` (deterministic)."""
    coeffs = np.ones(d)
    coeffs[np.asarray(list(boosted), dtype=int)] += delta
    return coeffs


def structured_subsets(d: int, m: int) -> list[np.ndarray]:
    """Deterministic index sets of size m: intervals, stride-2 combs, spread."""
    out: list[np.ndarray] = []
    if m < 1 or m > d:
        return out
    out.append(np.arange(m))
    out.append(np.arange(d - m, d))
    if 2 * m <= d + 1:
        out.append(np.arange(0, 2 * m, 2))
        even = np.arange(1, 2 * m, 2)
        if even[-1] < d:
            out.append(even)
    stride = max(1, d // m)
    spread = np.arange(0, stride * m, stride)
    if spread[-1] < d:
        out.append(spread)
    return out


def random_subset(rng: np.random.Generator, d: int, m: int) -> np.ndarray:
    return np.sort(rng.choice(d, size=m, replace=False))
