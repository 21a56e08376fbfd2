"""Biorthogonal bases at finite scale.

A basis is a pair of (d x N) matrices: rows of ``vectors`` are the basis
elements x_n in ambient coordinates, rows of ``duals`` are the coordinate
arrays of the functionals x_n*, with x_n*(x_k) = delta_{nk}.  Index sets are
0-based throughout the Python API.

All sup-type constants are reported as :class:`~qgreedy.estimates.BoundEstimate`
pairs: a witness-certified lower bound plus a certified upper bound where one
is available (diagonal systems, or the p-convexity product bound).
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import (
    BasisFileError,
    CombinatorialOverflowError,
    DimensionMismatchError,
    InvalidVectorError,
    NotABasisError,
)
from .estimates import BoundEstimate, RatioTracker
from .rng import KU_SEARCH, PERTURBED_BASIS, substream
from .spaces import (
    AmbientSpace,
    BlockLpL2,
    Lp,
    LorentzSpace,
    ambient_gauge,
    as_vector,
    dual_gauge,
    p_convexity,
)

__all__ = [
    "Basis",
    "BIORTHOGONALITY_TOL",
    "coefficient_transform",
    "synthesize",
    "sign_operator",
    "coordinate_projection",
    "unconditional_constant",
    "zoo",
    "ZOO_NAMES",
    "load_basis",
    "save_basis",
    "basis_to_dict",
]

BIORTHOGONALITY_TOL = 1e-9

ZOO_NAMES = ("unit", "difference", "block_l2", "perturbed_unit", "custom_file")


@dataclass(frozen=True, eq=False)
class Basis:
    space: AmbientSpace
    vectors: np.ndarray
    duals: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        v = np.asarray(self.vectors, dtype=float)
        u = np.asarray(self.duals, dtype=float)
        if v.ndim != 2 or u.ndim != 2:
            raise NotABasisError("vectors and duals must be 2-d arrays")
        if v.shape != u.shape:
            raise NotABasisError(f"vectors shape {v.shape} != duals shape {u.shape}")
        d, n = v.shape
        if d < 1:
            raise NotABasisError("a basis needs at least one vector")
        if n != self.space.dim:
            raise DimensionMismatchError(
                f"row length {n} != ambient dimension {self.space.dim}"
            )
        if not (np.all(np.isfinite(v)) and np.all(np.isfinite(u))):
            raise NotABasisError("vectors and duals must be finite")
        gram = u @ v.T
        err = np.abs(gram - np.eye(d))
        worst = np.unravel_index(np.argmax(err), err.shape)
        if err[worst] > BIORTHOGONALITY_TOL:
            i, k = int(worst[0]), int(worst[1])
            raise NotABasisError(
                f"biorthogonality violated at (n={i}, k={k}): "
                f"|x*_{i}(x_{k}) - {1 if i == k else 0}| = {err[worst]:.3e} "
                f"exceeds {BIORTHOGONALITY_TOL:g}"
            )
        if self.labels and len(self.labels) != d:
            raise NotABasisError(f"got {len(self.labels)} labels for {d} vectors")
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "duals", u)
        object.__setattr__(self, "labels", tuple(self.labels))
        norms = np.array([ambient_gauge(self.space, row) for row in v])
        if np.any(norms <= 0):
            raise NotABasisError("basis contains a zero vector")
        object.__setattr__(self, "_vector_norms", norms)

    @property
    def d(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def vector_norms(self) -> np.ndarray:
        return self._vector_norms

    @cached_property
    def dual_norms(self) -> np.ndarray:
        return np.array([dual_gauge(self.space, row) for row in self.duals])

    @property
    def a(self) -> float:
        """Semi-normalization constant: max gauge of a basis vector."""
        return float(self.vector_norms.max())

    @property
    def b(self) -> float:
        """Semi-normalization constant: max dual gauge of a functional."""
        return float(self.dual_norms.max())

    def gauge(self, f) -> float:
        return ambient_gauge(self.space, f)

    def is_diagonal(self) -> bool:
        """True when vectors and duals are both diagonal matrices."""
        if self.d != self.dim:
            return False
        off = ~np.eye(self.d, dtype=bool)
        return not (np.any(self.vectors[off]) or np.any(self.duals[off]))


def coefficient_transform(basis: Basis, f) -> np.ndarray:
    """The coefficient array (x_n*(f))_n of ``f``."""
    f = as_vector(f, dim=basis.dim)
    return basis.duals @ f


def synthesize(basis: Basis, coeffs) -> np.ndarray:
    """The vector sum_n coeffs_n x_n."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (basis.d,):
        raise DimensionMismatchError(f"expected {basis.d} coefficients, got {coeffs.shape}")
    return coeffs @ basis.vectors


def _as_index_set(A, d: int) -> np.ndarray:
    idx = np.unique(np.asarray(list(A), dtype=int))
    if idx.size and (idx[0] < 0 or idx[-1] >= d):
        raise IndexError(f"index set must lie in [0, {d}), got extremes {idx[0]}, {idx[-1]}")
    return idx


def sign_operator(basis: Basis, gamma, f) -> np.ndarray:
    """Diagonal multiplier: sum_n gamma_n x_n*(f) x_n.

    Entries of |gamma| above 1 are accepted but flagged with a warning, since
    ratios they produce fall outside the unconditionality-constant range.
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape != (basis.d,):
        raise DimensionMismatchError(f"expected {basis.d} multipliers, got {gamma.shape}")
    if not np.all(np.isfinite(gamma)):
        raise InvalidVectorError("multiplier has non-finite entries")
    if np.max(np.abs(gamma)) > 1.0 + 1e-12:
        warnings.warn(
            "multiplier exceeds the unit cube; ratios lie outside the "
            "unconditionality-constant range",
            stacklevel=2,
        )
    coeffs = coefficient_transform(basis, f)
    return (gamma * coeffs) @ basis.vectors


def coordinate_projection(basis: Basis, A, f) -> np.ndarray:
    """Projection sum_{n in A} x_n*(f) x_n (idempotent)."""
    idx = _as_index_set(A, basis.d)
    if idx.size == 0:
        return np.zeros(basis.dim)
    coeffs = coefficient_transform(basis, f)
    return coeffs[idx] @ basis.vectors[idx]


# ---------------------------------------------------------------------------
# unconditionality constant
# ---------------------------------------------------------------------------


def _descend_multiplier(basis: Basis, coeffs: np.ndarray, start: np.ndarray,
                        max_passes: int = 4) -> tuple[np.ndarray, float]:
    """Coordinate descent of gamma over {-1, 0, 1}^d maximizing the gauge."""
    gamma = start.astype(float).copy()
    scaled = coeffs[:, None] * basis.vectors
    current = gamma @ scaled
    best = ambient_gauge(basis.space, current)
    for _ in range(max_passes):
        improved = False
        for n in range(basis.d):
            for cand in (-1.0, 0.0, 1.0):
                if cand == gamma[n]:
                    continue
                trial = current + (cand - gamma[n]) * scaled[n]
                val = ambient_gauge(basis.space, trial)
                if val > best * (1 + 1e-12):
                    current = trial
                    gamma[n] = cand
                    best = val
                    improved = True
        if not improved:
            break
    return gamma, best


def _gray_flip_positions(d: int):
    """Flip position between consecutive Gray codes g(i-1), g(i) for i >= 1."""
    for i in range(1, 1 << d):
        yield (i & -i).bit_length() - 1


def _gray_best_over_family(basis: Basis, coeffs: np.ndarray, signs: bool) -> tuple[float, np.ndarray]:
    """Exact max of ||S_gamma f|| over gamma in {0,1}^d (signs=False) or
    {-1,1}^d (signs=True), by single-flip Gray-code updates."""
    scaled = coeffs[:, None] * basis.vectors
    if signs:
        gamma = np.ones(basis.d)
        current = gamma @ scaled
    else:
        gamma = np.zeros(basis.d)
        current = np.zeros(basis.dim)
    best = ambient_gauge(basis.space, current)
    best_gamma = gamma.copy()
    for pos in _gray_flip_positions(basis.d):
        if signs:
            delta = -2.0 * gamma[pos]
        else:
            delta = 1.0 - 2.0 * gamma[pos]
        current = current + delta * scaled[pos]
        gamma[pos] += delta
        val = ambient_gauge(basis.space, current)
        if val > best:
            best = val
            best_gamma = gamma.copy()
    return best, best_gamma


def _canonical_test_vectors(basis: Basis, cap: int = 48) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    d, n = basis.d, basis.dim
    for j in range(min(n, cap)):
        e = np.zeros(n)
        e[j] = 1.0
        out.append(e)
    for i in range(min(d, cap)):
        out.append(basis.vectors[i].copy())
    out.append(synthesize(basis, np.ones(d)))
    alt = np.ones(d)
    alt[1::2] = -1.0
    out.append(synthesize(basis, alt))
    return out


def _certified_ku_upper(basis: Basis) -> tuple[float, bool, str]:
    if basis.is_diagonal():
        return 1.0, True, "diagonal system; gauge monotone in coordinate moduli"
    r = p_convexity(basis.space)
    if r is not None:
        try:
            products = basis.vector_norms * basis.dual_norms
        except NotImplementedError:
            return math.inf, False, ""
        upper = float(np.sum(products**r) ** (1.0 / r))
        return upper, True, "r-convexity product bound"
    return math.inf, False, ""


def unconditional_constant(basis: Basis, mode: str = "random", budget: int = 2000,
                           seed: int = 0) -> BoundEstimate:
    """Two-sided estimate of sup over ||gamma||_inf <= 1 of ||S_gamma||.

    The lower bound searches multipliers in {-1, 0, 1}^d: coordinate descent
    from sampled and canonical vectors in random mode, full Gray-code
    enumeration of the suppression family {0,1}^d and the sign family
    {-1,1}^d (exact over those families, for the tested vector pool) in exact
    mode.  Exact mode requires d <= 20.
    """
    if mode not in ("exact", "random"):
        raise ValueError(f"mode must be 'exact' or 'random', got {mode!r}")
    if mode == "exact" and basis.d > 20:
        raise CombinatorialOverflowError(
            "exact multiplier enumeration is capped at d = 20; use mode='random'"
        )
    tracker = RatioTracker()
    # gamma = 1 reproduces f, so the constant is always >= 1
    f0 = basis.vectors[0]
    tracker.update(1.0, {"f": f0.tolist(), "gamma": [1.0] * basis.d})

    canonical = _canonical_test_vectors(basis)
    sampled: list[np.ndarray] = []
    if mode == "random":
        for i in range(budget):
            rng = substream(seed, KU_SEARCH, i)
            coeffs = rng.standard_normal(basis.d)
            if i % 3 == 1:
                coeffs = rng.choice([-1.0, 1.0], size=basis.d)
            elif i % 3 == 2:
                keep = rng.integers(1, basis.d + 1)
                mask = np.zeros(basis.d)
                mask[rng.choice(basis.d, size=keep, replace=False)] = 1.0
                coeffs = coeffs * mask
            sampled.append(synthesize(basis, coeffs))

    # cheap scoring pass: one sign-flip multiplier per sampled vector, then
    # coordinate descent only on the most promising survivors
    scored: list[tuple[float, np.ndarray]] = []
    for f in sampled:
        nf = ambient_gauge(basis.space, f)
        if nf <= 0:
            continue
        coeffs = coefficient_transform(basis, f)
        gamma = np.where(coeffs < 0, -1.0, 1.0)
        gamma[1::2] *= -1.0
        val = ambient_gauge(basis.space, (gamma * coeffs) @ basis.vectors)
        tracker.update(val / nf, {"f": f.tolist(), "gamma": gamma.tolist()})
        scored.append((val / nf, f))
    scored.sort(key=lambda item: -item[0])
    pool = canonical + [f for _, f in scored[:8]]

    for f in pool:
        nf = ambient_gauge(basis.space, f)
        if nf <= 0:
            continue
        coeffs = coefficient_transform(basis, f)
        if mode == "exact":
            for signs in (False, True):
                val, gamma = _gray_best_over_family(basis, coeffs, signs)
                tracker.update(val / nf, {"f": f.tolist(), "gamma": gamma.tolist()})
        gamma, val = _descend_multiplier(basis, coeffs, np.ones(basis.d))
        tracker.update(val / nf, {"f": f.tolist(), "gamma": gamma.tolist()})

    upper, certified, note = _certified_ku_upper(basis)
    lower = tracker.best
    if certified:
        lower = min(lower, upper)
    return BoundEstimate(
        lower=lower,
        upper=upper,
        witness=tracker.witness,
        upper_certified=certified,
        heuristic=(mode == "random"),
        note=note or ("exact over the {0,1}^d and {-1,1}^d multiplier families" if mode == "exact" else ""),
    )


# ---------------------------------------------------------------------------
# zoo and file I/O
# ---------------------------------------------------------------------------


def _difference_matrices(d: int) -> tuple[np.ndarray, np.ndarray]:
    v = np.eye(d)
    v[np.arange(1, d), np.arange(d - 1)] = -1.0
    u = np.triu(np.ones((d, d)))
    return v, u


def zoo(name: str, *, p: float | None = None, dim: int | None = None,
        blocks=None, seed: int = 0, path=None) -> Basis:
    """Construct one of the stock bases.

    unit            identity system in l_p         (p, dim)
    difference      x_n = e_n - e_{n-1}, x_1 = e_1 (p, dim)
    block_l2        identity coordinates in the block space (p, blocks)
    perturbed_unit  identity plus seeded Gaussian noise, duals by inversion
    custom_file     load from a basis JSON file    (path)
    """
    name = str(name).lower().replace("-", "_")
    if name == "unit":
        if p is None or dim is None:
            raise ValueError("zoo('unit') needs p and dim")
        eye = np.eye(int(dim))
        return Basis(Lp(p, int(dim)), eye, eye.copy())
    if name == "difference":
        if p is None or dim is None:
            raise ValueError("zoo('difference') needs p and dim")
        v, u = _difference_matrices(int(dim))
        return Basis(Lp(p, int(dim)), v, u)
    if name == "block_l2":
        if p is None or blocks is None:
            raise ValueError("zoo('block_l2') needs p and blocks")
        space = BlockLpL2(p, tuple(int(b) for b in blocks))
        eye = np.eye(space.dim)
        return Basis(space, eye, eye.copy())
    if name == "perturbed_unit":
        if p is None or dim is None:
            raise ValueError("zoo('perturbed_unit') needs p and dim")
        d = int(dim)
        rng = substream(seed, PERTURBED_BASIS)
        v = np.eye(d) + (0.5 / d) * rng.standard_normal((d, d))
        try:
            u = np.linalg.inv(v).T
        except np.linalg.LinAlgError as exc:  # pragma: no cover - measure-zero event
            raise NotABasisError("perturbation produced a singular matrix") from exc
        return Basis(Lp(p, d), v, u)
    if name == "custom_file":
        if path is None:
            raise ValueError("zoo('custom_file') needs path")
        return load_basis(path)
    raise ValueError(f"unknown zoo basis {name!r}; choose from {ZOO_NAMES}")


def _space_from_dict(data: dict) -> AmbientSpace:
    if not isinstance(data, dict) or "kind" not in data:
        raise BasisFileError("'ambient' must be an object with a 'kind' field")
    kind = data["kind"]
    try:
        if kind == "lp":
            return Lp(float(data["p"]), int(data["dim"]))
        if kind == "block_lp_l2":
            return BlockLpL2(float(data["p"]), tuple(int(b) for b in data["blocks"]))
        if kind == "lorentz":
            return LorentzSpace(float(data["q"]), np.asarray(data["weight"], dtype=float))
    except KeyError as exc:
        raise BasisFileError(f"ambient kind {kind!r} is missing field {exc}") from exc
    raise BasisFileError(f"unknown ambient kind {kind!r}")


def _space_to_dict(space: AmbientSpace) -> dict:
    if isinstance(space, Lp):
        return {"kind": "lp", "p": space.p, "dim": space.dim}
    if isinstance(space, BlockLpL2):
        return {"kind": "block_lp_l2", "p": space.p, "blocks": list(space.blocks)}
    return {"kind": "lorentz", "q": space.q, "weight": space.weight.tolist()}


def load_basis(path) -> Basis:
    """Parse a basis JSON file; duals are inverted from square vector matrices
    when omitted."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise BasisFileError(f"cannot read basis file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise BasisFileError("basis file must contain a JSON object")
    unknown = set(data) - {"ambient", "vectors", "duals", "labels"}
    if unknown:
        raise BasisFileError(f"unknown fields in basis file: {sorted(unknown)}")
    if "ambient" not in data or "vectors" not in data:
        raise BasisFileError("basis file needs 'ambient' and 'vectors' fields")
    space = _space_from_dict(data["ambient"])
    try:
        vectors = np.asarray(data["vectors"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise BasisFileError(f"'vectors' is not a numeric matrix: {exc}") from exc
    if vectors.ndim != 2:
        raise BasisFileError("'vectors' must be a list of equal-length rows")
    if vectors.shape[1] != space.dim:
        raise BasisFileError(
            f"vector rows have length {vectors.shape[1]} but ambient dim is {space.dim}"
        )
    if "duals" in data and data["duals"] is not None:
        try:
            duals = np.asarray(data["duals"], dtype=float)
        except (TypeError, ValueError) as exc:
            raise BasisFileError(f"'duals' is not a numeric matrix: {exc}") from exc
    else:
        if vectors.shape[0] != vectors.shape[1]:
            raise BasisFileError("duals required: vector matrix is not square")
        try:
            duals = np.linalg.inv(vectors).T
        except np.linalg.LinAlgError as exc:
            raise NotABasisError("singular vector matrix; not a basis") from exc
    labels = tuple(str(x) for x in data.get("labels") or ())
    return Basis(space, vectors, duals, labels)


def basis_to_dict(basis: Basis) -> dict:
    out = {
        "ambient": _space_to_dict(basis.space),
        "vectors": basis.vectors.tolist(),
        "duals": basis.duals.tolist(),
    }
    if basis.labels:
        out["labels"] = list(basis.labels)
    return out


def save_basis(basis: Basis, path) -> None:
    Path(path).write_text(json.dumps(basis_to_dict(basis), indent=2, sort_keys=True) + "\n")
