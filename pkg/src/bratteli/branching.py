"""The Macdonald Bratteli diagram on partitions.

Edges are the covers of the Young lattice, weighted by a two-parameter
multiplicity function. Everything here works for numeric parameters
(``Fraction``) and for formal ones (:class:`~bratteli.coeff.RationalFunction`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .coeff import ONE, format_rational, rf_sum, symbols
from .errors import CapExceededError, DomainError, NotContainedError, PoleError
from .partitions import (
    DEFAULT_CAP,
    EMPTY,
    CoverStep,
    Partition,
    addable_columns,
    conjugate,
    n_stat,
    paths_between,
    removable_steps,
)
from .report import Report

KappaFn = Callable[[CoverStep, "BranchingParams"], object]


@dataclass(frozen=True, eq=False)
class BranchingParams:
    """Parameters (q, t). Numeric values must satisfy 0 <= q < 1 and 0 < t < 1."""

    q: object
    t: object
    symbolic: bool = False
    label: str = ""

    def __post_init__(self):
        if not self.symbolic:
            q, t = Fraction(self.q), Fraction(self.t)
            object.__setattr__(self, "q", q)
            object.__setattr__(self, "t", t)
            if not (0 <= q < 1 and 0 < t < 1):
                raise DomainError(f"need 0 <= q < 1 and 0 < t < 1, got q={q}, t={t}")

    @classmethod
    def numeric(cls, q, t) -> BranchingParams:
        return cls(q, t)

    @classmethod
    def formal(cls) -> BranchingParams:
        q, t = symbols()
        return cls(q, t, symbolic=True, label="q,t")

    @classmethod
    def formal_schur(cls) -> BranchingParams:
        """Formal parameters on the diagonal q = t."""
        q, _ = symbols()
        return cls(q, q, symbolic=True, label="q=t")

    @classmethod
    def hall_littlewood(cls, p: int) -> BranchingParams:
        return cls(0, Fraction(1, p))

    @property
    def key(self) -> tuple:
        if self.symbolic:
            return ("symbolic", self.label)
        return ("numeric", self.q, self.t)

    def __eq__(self, other):
        return isinstance(other, BranchingParams) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def one(self):
        return ONE if self.symbolic else Fraction(1)

    def total(self, values: Iterable):
        if self.symbolic:
            return rf_sum(values)
        return sum(values, Fraction(0))

    def to_json(self) -> dict[str, str]:
        if self.symbolic:
            return {"q": "q", "t": "q" if self.label == "q=t" else "t", "mode": "symbolic"}
        return {"q": format_rational(self.q), "t": format_rational(self.t)}

    def __repr__(self):
        if self.symbolic:
            return f"BranchingParams(symbolic {self.label})"
        return f"BranchingParams(q={self.q}, t={self.t})"


def _guard(step: CoverStep, params: BranchingParams, compute):
    try:
        return compute()
    except ZeroDivisionError as exc:
        if isinstance(exc, PoleError):
            raise
        raise PoleError(f"{step.parent} -> {step.child} has a pole at {params}") from exc


def _row_col_arms_legs(step: CoverStep):
    """(a_lam, l_lam, a_Lam, l_Lam) for the R cells and for the C cells of a cover step."""
    lam, Lam, j = step.parent, step.child, step.col
    lc, Lc = conjugate(lam), conjugate(Lam)
    i = Lc[j - 1]
    rows = []
    for c in range(1, lam.part(i) + 1):
        rows.append((lam[i - 1] - c, lc[c - 1] - i, Lam[i - 1] - c, Lc[c - 1] - i))
    cols = []
    for r in range(1, i):
        cols.append((lam[r - 1] - j, lc[j - 1] - r, Lam[r - 1] - j, Lc[j - 1] - r))
    return rows, cols


def kappa(step: CoverStep, params: BranchingParams):
    """Multiplicity of the edge ``step.parent -> step.child`` (arm/leg form).

    Column cells use ``t^(-l-1)``; with that exponent this form agrees
    factor by factor with :func:`kappa_second_form`.
    """
    q, t = params.q, params.t
    rows, cols = _row_col_arms_legs(step)

    def compute():
        value = params.one
        for a, l, A, L in rows:
            value *= (t ** (-L) - q ** (A + 1)) / (t ** (-l) - q ** (a + 1))
        for a, l, A, L in cols:
            value *= (q ** A - t ** (-L - 1)) / (q ** a - t ** (-l - 1))
        return value

    return _guard(step, params, compute)


def kappa_second_form(step: CoverStep, params: BranchingParams):
    """Multiplicity written with the prefactor t^-(Lam'_i - 1)."""
    q, t = params.q, params.t
    rows, cols = _row_col_arms_legs(step)
    height = conjugate(step.child)[step.col - 1]

    def compute():
        value = params.one / t ** (height - 1)
        for a, l, A, L in rows:
            value *= (1 - q ** (A + 1) * t ** L) / (1 - q ** (a + 1) * t ** l)
        for a, l, A, L in cols:
            value *= (1 - q ** A * t ** (L + 1)) / (1 - q ** a * t ** (l + 1))
        return value

    return _guard(step, params, compute)


def psi_prime(step: CoverStep, params: BranchingParams):
    """Single-box vertical Pieri coefficient psi'_{Lam/lam}."""
    q, t = params.q, params.t
    _, cols = _row_col_arms_legs(step)

    def compute():
        value = params.one
        for a, l, A, L in cols:
            value *= (1 - q ** A * t ** (L + 1)) / (1 - q ** (A + 1) * t ** L)
            value *= (1 - q ** (a + 1) * t ** l) / (1 - q ** a * t ** (l + 1))
        return value

    return _guard(step, params, compute)


def hook_product(lam: Partition, params: BranchingParams):
    """prod over cells of (1 - q^(a+1) t^l)."""
    q, t = params.q, params.t
    conj = conjugate(lam)
    value = params.one
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            value *= 1 - q ** (row - j + 1) * t ** (conj[j - 1] - i)
    return value


def exchangeability_constant(lam: Partition, params: BranchingParams):
    """(1-q)^n t^n(lam) / hook_product(lam): the common value of all path products psi'/kappa."""
    q, t = params.q, params.t
    return (1 - q) ** sum(lam) * t ** n_stat(lam) * params.one / hook_product(lam, params)


# -- dimensions -----------------------------------------------------------------


class DimensionTable:
    """Memoized path-sum dimensions dim(Lam) = sum over lam -> Lam of dim(lam) kappa(lam, Lam)."""

    def __init__(self, params: BranchingParams, kappa_fn: KappaFn = kappa, cap: int = DEFAULT_CAP):
        self.params = params
        self.kappa_fn = kappa_fn
        self.cap = cap
        self._dims = {EMPTY: params.one}
        self._kappas: dict[CoverStep, object] = {}

    def kappa(self, step: CoverStep):
        value = self._kappas.get(step)
        if value is None:
            value = self._kappas[step] = self.kappa_fn(step, self.params)
        return value

    def __call__(self, lam: Partition):
        lam = Partition(lam)
        if sum(lam) > self.cap:
            raise CapExceededError(f"|{lam}| exceeds the dimension cap {self.cap}")
        return self._dim(lam)

    def _dim(self, lam: Partition):
        value = self._dims.get(lam)
        if value is None:
            value = self.params.total(
                self._dim(step.parent) * self.kappa(step) for step in removable_steps(lam)
            )
            self._dims[lam] = value
        return value

    def clear(self) -> None:
        self._dims = {EMPTY: self.params.one}
        self._kappas.clear()


_TABLES: dict[tuple, DimensionTable] = {}


def dimension_table(params: BranchingParams, kappa_fn: KappaFn = kappa) -> DimensionTable:
    key = (params.key, kappa_fn)
    table = _TABLES.get(key)
    if table is None:
        table = _TABLES[key] = DimensionTable(params, kappa_fn)
    return table


def clear_dimension_cache() -> None:
    _TABLES.clear()


def dimension(lam: Partition, params: BranchingParams, cap: int = DEFAULT_CAP):
    if sum(lam) > cap:
        raise CapExceededError(f"|{lam}| exceeds the dimension cap {cap}")
    return dimension_table(params)(lam)


def interval_dimension(lower: Partition, upper: Partition, params: BranchingParams,
                       kappa_fn: KappaFn = kappa):
    """Weighted path count lower -> ... -> upper."""
    lower, upper = Partition(lower), Partition(upper)
    if not upper.contains(lower):
        raise NotContainedError(f"{lower} is not contained in {upper}")
    memo = {lower: params.one}

    def rec(mu):
        value = memo.get(mu)
        if value is None:
            value = params.total(
                rec(step.parent) * kappa_fn(step, params)
                for step in removable_steps(mu)
                if step.parent.contains(lower)
            )
            memo[mu] = value
        return value

    return rec(upper)


def path_weight(steps: Sequence[CoverStep], params: BranchingParams, kappa_fn: KappaFn = kappa):
    value = params.one
    for step in steps:
        value *= kappa_fn(step, params)
    return value


# -- paths ------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthPath:
    """A chain of cover steps starting at the empty partition."""

    steps: tuple[CoverStep, ...] = field(default_factory=tuple)

    def __post_init__(self):
        prev = EMPTY
        for k, step in enumerate(self.steps, start=1):
            if step.parent != prev or sum(step.child) != k:
                raise ValueError(f"step {k} does not continue the path: {step}")
            prev = step.child

    @classmethod
    def from_columns(cls, columns: Iterable[int]) -> GrowthPath:
        steps = []
        lam = EMPTY
        for col in columns:
            for step in addable_columns(lam):
                if step.col == col:
                    break
            else:
                raise ValueError(f"cannot add a cell in column {col} of {lam}")
            steps.append(step)
            lam = step.child
        return cls(tuple(steps))

    @property
    def endpoint(self) -> Partition:
        return self.steps[-1].child if self.steps else EMPTY

    @property
    def columns(self) -> list[int]:
        return [s.col for s in self.steps]

    @property
    def partitions(self) -> list[Partition]:
        return [EMPTY] + [s.child for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


# -- verifiers --------------------------------------------------------------------


def verify_exchangeability(lam: Partition, params: BranchingParams, kappa_fn: KappaFn = kappa,
                           psi_fn: KappaFn = psi_prime) -> Report:
    """Check that prod psi'/kappa along every path to ``lam`` equals the closed form."""
    lam = Partition(lam)
    report = Report("exchangeability", sum(lam), {"partition": list(lam), **params.to_json()})
    expected = exchangeability_constant(lam, params)
    ratios: dict[CoverStep, object] = {}
    for path in paths_between(EMPTY, lam):
        value = params.one
        for step in path:
            r = ratios.get(step)
            if r is None:
                r = ratios[step] = psi_fn(step, params) / kappa_fn(step, params)
            value *= r
        report.checked_count += 1
        if value != expected:
            return report.fail(path=[s.col for s in path], got=str(value), expected=str(expected))
    return report


def verify_kappa_forms(n: int, params: BranchingParams) -> Report:
    """Both printed forms of the multiplicity agree on every cover step into level <= n."""
    from .partitions import enumerate_partitions

    report = Report("kappa-forms", n, params.to_json())
    for k in range(n):
        for lam in enumerate_partitions(k):
            for step in addable_columns(lam):
                report.checked_count += 1
                a, b = kappa(step, params), kappa_second_form(step, params)
                if a != b:
                    return report.fail(parent=list(step.parent), col=step.col, first=str(a), second=str(b))
    return report


def verify_coherence(n: int, params: BranchingParams, alphabet, kappa_fn: KappaFn = kappa) -> Report:
    """M_{n-1}(lam) = sum over lam -> Lam of dim(lam) kappa(lam, Lam) M_n(Lam) / dim(Lam), for all lam |- n-1."""
    from .macdonald import MacdonaldContext

    report = Report("coherence", n, {**params.to_json(), "alphabet": alphabet.describe()})
    ctx = MacdonaldContext(params, alphabet)
    dims = DimensionTable(params, kappa_fn)
    upper = ctx.measure(n, dims=dims)
    lower = ctx.measure(n - 1, dims=dims)
    total = params.total(upper.entries.values())
    if total != 1:
        return report.fail(level=n, normalization=str(total))
    for lam, mass in lower.entries.items():
        rhs = params.total(
            dims(lam) * dims.kappa(step) * upper.entries[step.child] / dims(step.child)
            for step in addable_columns(lam)
        )
        report.checked_count += 1
        if rhs != mass:
            return report.fail(partition=list(lam), lhs=str(mass), rhs=str(rhs))
    return report
