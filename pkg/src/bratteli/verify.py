"""Named identity checks and the aggregate suite driven by the CLI."""

from __future__ import annotations

import time
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable

from .branching import (
    BranchingParams,
    KappaFn,
    dimension,
    kappa,
    verify_coherence,
    verify_exchangeability,
    verify_kappa_forms,
)
from .coeff import LaurentPoly, symbols
from .macdonald import Alphabet, verify_pieri
from .oracles import kostka_foulkes, kostka_number
from .partitions import addable_columns, enumerate_partitions, n_stat, syt_count
from .report import Report
from .special import (
    green_polynomial,
    jack_limit_errors,
    linear_rate_ok,
    schur_dimension,
    schur_jack_errors,
    schur_kappa,
    schur_relative_dimension_check,
)

EPSILONS = (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000))
JACK_THETAS = (Fraction(1, 2), Fraction(1), Fraction(2))
GRID_Q = (Fraction(0), Fraction(1, 3), Fraction(1, 2))
GRID_T = (Fraction(1, 3), Fraction(1, 2))
GRID_ALPHABETS = ("1/2,1/2", "2/5,3/10,1/5,1/10", "geometric:2", "geometric:3")


def default_grid() -> list[tuple[BranchingParams, Alphabet]]:
    return [
        (BranchingParams.numeric(q, t), Alphabet.parse(a))
        for q, t, a in product(GRID_Q, GRID_T, GRID_ALPHABETS)
    ]


def _merge(report: Report, sub: Report) -> bool:
    report.checked_count += sub.checked_count
    if not sub.ok:
        report.fail(**{"sub_identity": sub.identity, "sub_params": sub.params, **(sub.counterexample or {})})
    return sub.ok


def coherence_upto(n: int, params: BranchingParams, alphabet: Alphabet, kappa_fn: KappaFn = kappa) -> Report:
    """Coherence between every pair of consecutive levels up to n, with normalization."""
    report = Report("coherence", n, {**params.to_json(), "alphabet": alphabet.describe()})
    for k in range(1, n + 1):
        if not _merge(report, verify_coherence(k, params, alphabet, kappa_fn)):
            break
    return report


def exchangeability_upto(n: int, params: BranchingParams, kappa_fn: KappaFn = kappa) -> Report:
    report = Report("exchangeability", n, params.to_json())
    for k in range(n + 1):
        for lam in enumerate_partitions(k):
            if not _merge(report, verify_exchangeability(lam, params, kappa_fn)):
                return report
    return report


def green_charge(n: int) -> Report:
    """Green polynomial = p^n(lam) sum_mu f^mu K_{mu lam}(1/p), and K(1) = Kostka number, for |lam| <= n."""
    report = Report("green-charge", n, {"variable": "p"})
    for k in range(1, n + 1):
        shapes = enumerate_partitions(k)
        for lam in shapes:
            expected = LaurentPoly()
            for mu in shapes:
                kf = kostka_foulkes(mu, lam)
                if kf.evaluate(1, 1) != kostka_number(mu, lam):
                    return report.fail(shape=list(mu), content=list(lam), reason="K(1) differs from the Kostka number")
                f = syt_count(mu)
                expected = expected + LaurentPoly({(n_stat(lam) - c, 0): f * v for (_, c), v in kf.items()})
            report.checked_count += 1
            got = green_polynomial(lam)
            if got != expected:
                return report.fail(partition=list(lam), green=got.format(("p", "t")),
                                   charge_side=expected.format(("p", "t")))
    return report


def hook_dim(n: int) -> Report:
    """schur_kappa and schur_dimension agree with the general branching at q = t, formally."""
    params = BranchingParams.formal_schur()
    q = params.q
    report = Report("hook-dim", n, params.to_json())
    for k in range(n + 1):
        for lam in enumerate_partitions(k):
            report.checked_count += 1
            if schur_dimension(lam, q) != dimension(lam, params):
                return report.fail(partition=list(lam), hook=str(schur_dimension(lam, q)),
                                   paths=str(dimension(lam, params)))
            for step in addable_columns(lam):
                report.checked_count += 1
                if schur_kappa(step, q) != kappa(step, params):
                    return report.fail(parent=list(step.parent), col=step.col)
    return report


def relative_dim(n: int, q=None) -> Report:
    """The relative-dimension identity for every lam inside nu with |nu| <= n."""
    q = symbols()[0] if q is None else q
    report = Report("relative-dim", n, {"q": str(q)})
    for k in range(n + 1):
        for nu in enumerate_partitions(k):
            for m in range(k + 1):
                for lam in enumerate_partitions(m):
                    if nu.contains(lam) and not _merge(report, schur_relative_dimension_check(lam, nu, q)):
                        return report
    return report


def jack_limit(n: int, thetas: Iterable = JACK_THETAS, epsilons=EPSILONS) -> Report:
    """kappa at (q, t) = (u^d, u^c), u = 1 - eps, tends to jack_kappa at rate O(eps), for |Lam| <= n."""
    thetas = tuple(Fraction(th) for th in thetas)
    report = Report("jack-limit", n, {"theta": [str(th) for th in thetas], "eps": [str(e) for e in epsilons]})
    worst = Fraction(0)
    for k in range(n):
        for lam in enumerate_partitions(k):
            for step in addable_columns(lam):
                for th in thetas:
                    errors = jack_limit_errors(step, th, epsilons)
                    report.checked_count += 1
                    worst = max(worst, errors[-1])
                    if not linear_rate_ok(errors, epsilons):
                        return report.fail(parent=list(lam), col=step.col, theta=str(th),
                                           errors=[float(e) for e in errors])
                errors = schur_jack_errors(step, epsilons)
                report.checked_count += 1
                if not linear_rate_ok(errors, epsilons):
                    return report.fail(parent=list(lam), col=step.col, theta="schur q->1",
                                       errors=[float(e) for e in errors])
    report.details["max_error_at_smallest_eps"] = float(worst)
    return report


def kappa_forms(n: int, params: BranchingParams | None = None) -> Report:
    return verify_kappa_forms(n, params or BranchingParams.formal())


def pieri_upto(n: int, params: BranchingParams, alphabet: Alphabet) -> Report:
    return verify_pieri(n, params, alphabet)


REGISTRY: dict[str, Callable[..., Report]] = {
    "coherence": coherence_upto,
    "exchangeability": exchangeability_upto,
    "pieri": pieri_upto,
    "kappa-forms": kappa_forms,
    "green-charge": green_charge,
    "hook-dim": hook_dim,
    "relative-dim": relative_dim,
    "jack-limit": jack_limit,
}


def verify_suite(level_cap: int, grid: list[tuple[BranchingParams, Alphabet]] | None = None,
                 kappa_fn: KappaFn = kappa) -> Report:
    """Every identity up to ``level_cap`` (at most 8); ``kappa_fn`` lets tests inject a broken multiplicity."""
    if level_cap > 8:
        raise ValueError("the suite is sized for level_cap <= 8")
    grid = default_grid() if grid is None else grid
    report = Report("suite", level_cap, {"grid_size": len(grid)})
    runs: list[tuple[str, Callable[[], Report]]] = [
        ("kappa-forms", lambda: kappa_forms(level_cap)),
        ("exchangeability", lambda: exchangeability_upto(min(level_cap, 7), BranchingParams.formal(), kappa_fn)),
    ]
    for params, alphabet in grid:
        runs.append(("coherence", lambda p=params, a=alphabet: coherence_upto(level_cap, p, a, kappa_fn)))
        runs.append(("pieri", lambda p=params, a=alphabet: pieri_upto(min(level_cap, 6), p, a)))
    runs += [
        ("green-charge", lambda: green_charge(min(level_cap, 6))),
        ("hook-dim", lambda: hook_dim(level_cap)),
        ("relative-dim", lambda: relative_dim(level_cap)),
        ("jack-limit", lambda: jack_limit(min(level_cap, 6))),
    ]
    results = []
    for name, run in runs:
        start = time.perf_counter()
        sub = run()
        results.append({"identity": name, "params": sub.params, "status": sub.status,
                        "checked": sub.checked_count, "seconds": round(time.perf_counter() - start, 3)})
        if not _merge(report, sub):
            break
    report.details["runs"] = results
    return report



