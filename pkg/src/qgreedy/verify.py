"""Named verification suites run by the CLI and the test battery.

Each suite returns a list of named checks.  Every check either holds by a
proved inequality or pins a frozen closed form, so a failure indicates an
implementation bug rather than statistical noise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .bases import zoo
from .bootstrap import bootstrap_chain, harmonic
from .democracy import democracy_profile, sign_change_constant, succ_constant
from .rng import VERIFY_VECTORS, substream
from .strongly_absolute import (
    counting_inequality_check,
    khintchine_square_function,
    random_pair_family,
    strongly_absolute_check,
)

__all__ = ["CheckResult", "SUITES", "run_suite"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: dict[str, Any] | None = field(default=None)


def suite_lemma32(p: float | None = None, trials: int = 10_000, seed: int = 0,
                  dim: int = 16, **_: Any) -> list[CheckResult]:
    """l1-vs-max domination with A(eps) = eps^(-p/(1-p)): zero violations."""
    p_values = (p,) if p is not None else (0.3, 0.5, 0.7)
    eps_values = (0.1, 1.0, 10.0)
    results = []
    for pv in p_values:
        violations = 0
        witness = None
        for i in range(trials):
            rng = substream(seed, VERIFY_VECTORS, i)
            f = rng.standard_normal(dim) * 10.0 ** rng.integers(-3, 4)
            for eps in eps_values:
                check = strongly_absolute_check(f, pv, eps)
                if not check.holds:
                    violations += 1
                    witness = {"f": f.tolist(), "p": pv, "eps": eps,
                               "lhs": check.lhs, "rhs": check.rhs}
        results.append(CheckResult(
            name=f"coefficient-sum domination, p={pv} ({trials} vectors x {len(eps_values)} eps)",
            passed=violations == 0,
            detail=f"{violations} violations",
            witness=witness,
        ))
    return results


def suite_lemma33(trials: int = 1000, seed: int = 0, dim: int = 8, p: float = 0.5,
                  C: float = 2.0, **_: Any) -> list[CheckResult]:
    """Family-size counting inequality on random normalized families."""
    violations = 0
    witness = None
    for i in range(trials):
        rng = substream(seed, VERIFY_VECTORS, trials + i)
        size = int(rng.integers(1, dim + 1))
        family = random_pair_family(dim, size, p, seed=seed * 1_000_003 + i)
        check = counting_inequality_check(family, C)
        if not check.holds:
            violations += 1
            witness = {"size": check.size, "bound": check.bound,
                       "vectors": family.vectors.tolist(), "duals": family.duals.tolist()}
    return [CheckResult(
        name=f"family-size counting inequality ({trials} families, d<={dim}, p={p}, C={C})",
        passed=violations == 0,
        detail=f"{violations} violations",
        witness=witness,
    )]


def suite_lemma34(seed: int = 0, trials: int = 100_000, m_max: int = 12,
                  p: float = 0.5, **_: Any) -> list[CheckResult]:
    """Sign-average square function: disjoint exactness and exact-vs-MC."""
    results = []
    worst = 0.0
    for m in range(1, m_max + 1):
        cmp_exact = khintchine_square_function(np.eye(m), p, mode="exact")
        worst = max(worst, abs(cmp_exact.lhs - m), abs(cmp_exact.rhs - m))
    results.append(CheckResult(
        name=f"disjoint unit vectors give equality lhs = rhs = m (m <= {m_max})",
        passed=worst <= 1e-9,
        detail=f"worst deviation {worst:.3e}",
    ))

    rng = substream(seed, VERIFY_VECTORS, 10**6)
    size = min(m_max, 12)
    vectors = rng.standard_normal((size, 16))
    exact = khintchine_square_function(vectors, p, mode="exact")
    mc = khintchine_square_function(vectors, p, mode="mc", samples=trials, seed=seed)
    gap = abs(exact.lhs - mc.lhs)
    results.append(CheckResult(
        name=f"exact sign average vs Monte Carlo ({trials} samples) within 3 standard errors",
        passed=gap <= 3.0 * mc.stderr,
        detail=f"gap {gap:.3e} vs 3*stderr {3.0 * mc.stderr:.3e}",
    ))
    return results


def suite_bootstrap(max_m: int = 1_000_000, iters: int = 3, **_: Any) -> list[CheckResult]:
    """Closed forms of the first two stages and convergence of the third."""
    chain = bootstrap_chain(max_m, max(2, iters))
    m = np.arange(1, max_m + 1, dtype=float)
    results = []
    err1 = float(np.max(np.abs(chain.stages[1].values / np.sqrt(m) - 1.0)))
    results.append(CheckResult(
        name="first stage equals sqrt(m) (rel. 1e-12)",
        passed=err1 <= 1e-12, detail=f"max rel err {err1:.3e}"))
    h = harmonic(max_m)
    err2 = float(np.max(np.abs(chain.stages[2].values / (m / np.sqrt(h.values)) - 1.0)))
    results.append(CheckResult(
        name="second stage equals m / sqrt(H_m) (rel. 1e-12)",
        passed=err2 <= 1e-12, detail=f"max rel err {err2:.3e}"))
    if chain.iterations >= 3:
        ratio = chain.final_over_m
        nonmono = float(np.max(np.diff(ratio)))
        results.append(CheckResult(
            name="third-stage ratio is non-increasing",
            passed=nonmono <= 1e-15, detail=f"max increment {nonmono:.3e}"))
    return results


def suite_democracy_lp(p: float = 0.5, dim: int = 12, m_max: int | None = None,
                       seed: int = 0, budget: int = 500, **_: Any) -> list[CheckResult]:
    """Identity system democracy: phi values m^(1/p) exactly, slopes 1/p."""
    basis = zoo("unit", p=p, dim=dim)
    profile = democracy_profile(basis, m_max=m_max, mode="exact", budget=budget, seed=seed)
    expected = np.array([m ** (1.0 / p) for m in profile.m_values], dtype=float)
    got_u = np.array([r.phi_u_value for r in profile.rows])
    got_l = np.array([r.phi_l_value for r in profile.rows])
    err = float(max(np.max(np.abs(got_u - expected)), np.max(np.abs(got_l - expected))))
    results = [CheckResult(
        name=f"identity system: phi_u(m) = phi_l(m) = m^(1/p) for m <= {profile.rows[-1].m}",
        passed=err <= 1e-9, detail=f"max abs err {err:.3e}")]
    slope_err = max(abs(profile.slope_u - 1.0 / p), abs(profile.slope_l - 1.0 / p))
    results.append(CheckResult(
        name=f"log-log slopes equal 1/p = {1.0 / p:g} within 0.01",
        passed=slope_err <= 0.01,
        detail=f"slope_u={profile.slope_u:.4f}, slope_l={profile.slope_l:.4f}"))
    results.append(CheckResult(
        name="verdict is democratic",
        passed=profile.democratic, detail=profile.verdict))
    return results


def suite_succ(p: float = 0.5, dim: int = 8, seed: int = 0, budget: int = 300,
               **_: Any) -> list[CheckResult]:
    """Nested and same-set sign constants: exactly 1 for the identity system,
    and the adjacent-pair witness for the difference system."""
    unit = zoo("unit", p=p, dim=dim)
    succ_u = succ_constant(unit, budget=budget, seed=seed)
    change_u = sign_change_constant(unit, budget=budget, seed=seed)
    results = [
        CheckResult(
            name="identity system: nested-set sign constant equals 1",
            passed=abs(succ_u.lower - 1.0) <= 1e-9,
            detail=f"lower bound {succ_u.lower!r}"),
        CheckResult(
            name="identity system: same-set sign constant equals 1",
            passed=abs(change_u.lower - 1.0) <= 1e-9,
            detail=f"lower bound {change_u.lower!r}"),
    ]
    diff = zoo("difference", p=p, dim=dim)
    succ_d = succ_constant(diff, budget=budget, seed=seed)
    expected = 2.0 ** (1.0 / p) / 1.0  # adjacent pair: two boundary points vs one
    results.append(CheckResult(
        name=f"difference system: adjacent-pair witness gives >= {expected:g}",
        passed=succ_d.lower >= expected - 1e-9,
        detail=f"lower bound {succ_d.lower!r}",
        witness=succ_d.witness))
    return results


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "lemma32": suite_lemma32,
    "lemma33": suite_lemma33,
    "lemma34": suite_lemma34,
    "bootstrap": suite_bootstrap,
    "democracy-lp": suite_democracy_lp,
    "succ": suite_succ,
}


def run_suite(name: str, **kwargs: Any) -> list[CheckResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](**kwargs)
