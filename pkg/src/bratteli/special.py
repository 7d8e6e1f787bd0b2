"""Hall-Littlewood (q = 0), Schur (q = t) and Jack (q, t -> 1) specializations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import prod

from .branching import BranchingParams, _row_col_arms_legs, dimension, interval_dimension, kappa
from .coeff import ONE_POLY, ZERO_POLY, LaurentPoly, q_integer
from .errors import CapExceededError, DomainError
from .macdonald import Alphabet, Distribution, MacdonaldContext, measure
from .oracles import young_path_count
from .partitions import (
    DEFAULT_CAP,
    EMPTY,
    CoverStep,
    Partition,
    conjugate,
    hooks,
    n_stat,
    removable_steps,
    syt_count,
)
from .report import Report


@dataclass(frozen=True)
class HLParams:
    """Finite-field size p; corresponds to q = 0, t = 1/p."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2:
            raise DomainError(f"p must be an integer >= 2, got {self.p!r}")

    @property
    def branching(self) -> BranchingParams:
        return BranchingParams.hall_littlewood(self.p)

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet.geometric(self.p)


@dataclass(frozen=True)
class JackParams:
    theta: Fraction

    def __post_init__(self):
        theta = Fraction(self.theta)
        if theta <= 0:
            raise DomainError(f"theta must be positive, got {theta}")
        object.__setattr__(self, "theta", theta)


def _p_value(p):
    return p.p if isinstance(p, HLParams) else p


def _heights(step: CoverStep) -> tuple[int, int]:
    """(lam'_i, lam'_(i+1)) for the column i of the added cell."""
    conj = conjugate(step.parent)
    i = step.col
    return conj[i - 1] if i <= len(conj) else 0, conj[i] if i < len(conj) else 0


def hl_kappa(step: CoverStep, p):
    """p^lam'_i + ... + p^lam'_(i+1); ``p`` may be an int, HLParams or a LaurentPoly."""
    p = _p_value(p)
    top, bottom = _heights(step)
    total = p ** bottom
    for e in range(bottom + 1, top + 1):
        total = total + p ** e
    return total


_P = LaurentPoly.monomial(1, 0)


def green_polynomial(lam: Partition, cap: int = DEFAULT_CAP) -> LaurentPoly:
    """The HL dimension as a polynomial in p (stored in the first exponent slot; label it "p")."""
    lam = Partition(lam)
    if sum(lam) > cap:
        raise CapExceededError(f"|{lam}| exceeds the cap {cap}")
    return _green(lam)


@lru_cache(maxsize=None)
def _green(lam: Partition) -> LaurentPoly:
    if not lam:
        return ONE_POLY
    total = ZERO_POLY
    for step in removable_steps(lam):
        total = total + _green(step.parent) * hl_kappa(step, _P)
    return total


def jordan_measure(n: int, p, cap: int = DEFAULT_CAP) -> Distribution:
    """Law of the Jordan type of a uniform unitriangular n x n matrix over F_p."""
    hl = p if isinstance(p, HLParams) else HLParams(p)
    ctx = MacdonaldContext(hl.branching, hl.alphabet, cap=cap)
    dist = ctx.measure(n)
    dist.meta["p"] = hl.p
    return dist


# -- Schur case ---------------------------------------------------------------------------


def schur_kappa(step: CoverStep, q):
    """q^-lam'_i prod_{s in lam} [h_Lam(s)] / [h_lam(s)] with i the column of the new cell."""
    top, _ = _heights(step)
    value = q ** 0 / q ** top
    for h_in, h_out in zip(hooks(step.parent), _hooks_on(step.child, step.parent)):
        value = value * q_integer(h_out, q) / q_integer(h_in, q)
    return value


def _hooks_on(outer: Partition, inner: Partition) -> list[int]:
    """Hooks in ``outer`` of the cells of ``inner``, in the order of :func:`hooks`."""
    oc = conjugate(outer)
    return [outer[i] - j + oc[j - 1] - i for i in range(len(inner)) for j in range(1, inner[i] + 1)]


def schur_dimension(lam: Partition, q):
    """f^lam prod [h] / q^n(lam)."""
    lam = Partition(lam)
    value = syt_count(lam) * q ** 0 / q ** n_stat(lam)
    for h in hooks(lam):
        value = value * q_integer(h, q)
    return value


def _schur_params(q) -> BranchingParams:
    if isinstance(q, BranchingParams):
        return q
    if isinstance(q, (int, Fraction)):
        return BranchingParams.numeric(q, q)
    return BranchingParams.formal_schur()


def schur_relative_dimension_check(lam: Partition, nu: Partition, q) -> Report:
    """dim(lam, nu) / dim(nu) = q^n(lam) / prod [h_lam] * dim*(lam, nu) / dim*(nu)."""
    lam, nu = Partition(lam), Partition(nu)
    params = _schur_params(q)
    qv = params.q
    lhs = interval_dimension(lam, nu, params) / dimension(nu, params)
    hook_q = prod((q_integer(h, qv) for h in hooks(lam)), start=qv ** 0)
    rhs = qv ** n_stat(lam) / hook_q * young_path_count(lam, nu) / young_path_count(EMPTY, nu)
    report = Report("relative-dim", sum(nu), {"q": str(q), "lam": list(lam), "nu": list(nu)}, checked_count=1)
    if lhs != rhs:
        report.fail(lam=list(lam), nu=list(nu), lhs=str(lhs), rhs=str(rhs))
    return report


def schur_measure(n: int, x: Alphabet, points=(Fraction(1, 2), Fraction(1, 3))) -> Distribution:
    """M_n at q = t, i.e. s_lam(x) f^lam; evaluated at each interior point and asserted equal."""
    results = [measure(n, x, BranchingParams.numeric(c, c)) for c in points]
    first = results[0]
    for other in results[1:]:
        if other.entries != first.entries:
            raise AssertionError(f"Schur measure depends on the evaluation point q = t at n={n}")
    meta = {"schur": True, "alphabet": x.describe()}
    return Distribution(n, dict(first.entries), meta)


# -- Jack limit ---------------------------------------------------------------------------


def jack_kappa(step: CoverStep, theta):
    """prod_R (a_Lam + 1 + th l_Lam)/(a_lam + 1 + th l_lam) * prod_C (a_Lam + th(l_Lam + 1))/(a_lam + th(l_lam + 1))."""
    th = theta.theta if isinstance(theta, JackParams) else JackParams(theta).theta
    rows, cols = _row_col_arms_legs(step)
    value = Fraction(1)
    for a_in, l_in, a_out, l_out in rows:
        value *= Fraction(a_out + 1 + th * l_out) / (a_in + 1 + th * l_in)
    for a_in, l_in, a_out, l_out in cols:
        value *= Fraction(a_out + th * (l_out + 1)) / (a_in + th * (l_in + 1))
    return value


def jack_point(theta, eps) -> BranchingParams:
    """(q, t) = (u^d, u^c) with theta = c/d and u = 1 - eps, so that t = q^theta."""
    th = JackParams(theta).theta
    u = 1 - Fraction(eps)
    return BranchingParams.numeric(u ** th.denominator, u ** th.numerator)


def jack_limit_errors(step: CoverStep, theta, epsilons=(Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000))):
    """|kappa(step; jack_point(theta, eps)) - jack_kappa(step, theta)| for each eps (exact)."""
    target = jack_kappa(step, theta)
    return [abs(kappa(step, jack_point(theta, e)) - target) for e in epsilons]


def schur_jack_errors(step: CoverStep, epsilons=(Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000))):
    """|schur_kappa(step, 1 - eps) - jack_kappa(step, 1)| for each eps."""
    target = jack_kappa(step, 1)
    return [abs(schur_kappa(step, 1 - Fraction(e)) - target) for e in epsilons]


def linear_rate_ok(errors, epsilons, factor: int = 3) -> bool:
    """Errors are O(eps): err/eps never grows by more than ``factor`` from one eps to the next.

    Faster decay passes; it happens where the first-order term of the
    expansion cancels and the error is O(eps^2).
    """
    ratios = [Fraction(e) / Fraction(eps) for e, eps in zip(errors, epsilons)]
    return all(b <= factor * a for a, b in zip(ratios, ratios[1:]))
