"""Macdonald polynomials on finite and geometric alphabets, coherent measures, growth probabilities.

P_Lam(x; q, t) is evaluated with the branching rule

    P_Lam(x_1, ..., x_k) = sum over mu, Lam/mu a horizontal strip, of
                           psi_{Lam/mu} * x_k^{|Lam/mu|} * P_mu(x_1, ..., x_{k-1}).

Geometric alphabets x_i = (1 - r) r^(i-1) are infinite; for those, peeling
the first variable of (1, r, r^2, ...) and using homogeneity gives

    G(Lam) (1 - r^|Lam|) = sum over mu < Lam of psi_{Lam/mu} r^|mu| G(mu),

where G(Lam) = P_Lam(1, r, r^2, ...). When r = t the principal
specialization closed form is used directly.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .branching import BranchingParams, DimensionTable, hook_product, psi_prime
from .coeff import format_rational, parse_rational, scalar_to_json
from .errors import CapExceededError, DomainError, InvalidAlphabetError
from .report import Report
from .partitions import (
    DEFAULT_CAP,
    EMPTY,
    CoverStep,
    Partition,
    addable_columns,
    conjugate,
    enumerate_partitions,
    horizontal_strips_below,
    is_horizontal_strip,
    n_stat,
)

MAX_VARIABLES = 8


@dataclass(frozen=True)
class Alphabet:
    """A probability vector x (finite) or the geometric alphabet x_i = 1/p^(i-1) - 1/p^i."""

    kind: str
    values: tuple[Fraction, ...] = ()
    p: int | None = None

    def __post_init__(self):
        if self.kind == "finite":
            vals = tuple(Fraction(v) for v in self.values)
            object.__setattr__(self, "values", vals)
            if not vals or len(vals) > MAX_VARIABLES:
                raise InvalidAlphabetError(f"finite alphabets need 1..{MAX_VARIABLES} letters")
            if any(v < 0 for v in vals):
                raise InvalidAlphabetError(f"letters must be nonnegative: {vals}")
            if sum(vals) != 1:
                raise InvalidAlphabetError(f"letters must sum to exactly 1, got {sum(vals)}")
        elif self.kind == "geometric":
            if not isinstance(self.p, int) or self.p < 2:
                raise InvalidAlphabetError(f"geometric alphabets need an integer p >= 2, got {self.p!r}")
        else:
            raise InvalidAlphabetError(f"unknown alphabet kind {self.kind!r}")

    @classmethod
    def finite(cls, values: Iterable) -> Alphabet:
        return cls("finite", tuple(parse_rational(v) for v in values))

    @classmethod
    def geometric(cls, p: int) -> Alphabet:
        return cls("geometric", p=p)

    @classmethod
    def parse(cls, text: str) -> Alphabet:
        """``"geometric:P"`` or a comma list of rationals such as ``"1/2,1/2"``."""
        text = text.strip()
        if text.startswith("geometric:"):
            try:
                p = int(text.split(":", 1)[1])
            except ValueError:
                raise InvalidAlphabetError(f"bad geometric alphabet {text!r}") from None
            return cls.geometric(p)
        try:
            return cls.finite(part for part in text.split(",") if part.strip())
        except ValueError as exc:
            raise InvalidAlphabetError(str(exc)) from None

    @property
    def ratio(self) -> Fraction:
        return Fraction(1, self.p)

    def letter(self, i: int) -> Fraction:
        """x_i, 1-based."""
        if self.kind == "finite":
            return self.values[i - 1] if i <= len(self.values) else Fraction(0)
        r = self.ratio
        return r ** (i - 1) - r ** i

    def describe(self) -> dict[str, Any]:
        if self.kind == "finite":
            return {"kind": "finite", "values": [format_rational(v) for v in self.values]}
        return {"kind": "geometric", "p": self.p}

    def __str__(self) -> str:
        if self.kind == "finite":
            return ",".join(str(v) for v in self.values)
        return f"geometric:{self.p}"


def sort_key(lam: Partition):
    """Reverse-lexicographic enumeration order as an ascending sort key."""
    return tuple(-v for v in lam) + (0,)


@dataclass
class Distribution:
    """Exact law on partitions of n."""

    n: int
    entries: dict[Partition, Any]
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for lam in self.entries:
            if sum(lam) != self.n:
                raise ValueError(f"{lam} is not a partition of {self.n}")

    def __getitem__(self, lam) -> Any:
        return self.entries.get(Partition(lam), Fraction(0))

    def total(self):
        return sum(self.entries.values(), Fraction(0))

    def items(self) -> list[tuple[Partition, Any]]:
        return sorted(self.entries.items(), key=lambda kv: sort_key(kv[0]))

    def support(self) -> list[Partition]:
        return [lam for lam, p in self.items() if p != 0]

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"n": self.n}
        out.update(self.meta)
        out["entries"] = [{"partition": list(lam), "prob": scalar_to_json(p)} for lam, p in self.items()]
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["partition", "prob", "approx"])
        for lam, p in self.items():
            writer.writerow([" ".join(map(str, lam)), format_rational(p), f"{float(p):.6f}"])
        return buf.getvalue()


# -- evaluation --------------------------------------------------------------------------


def psi_horizontal(outer: Partition, inner: Partition, params: BranchingParams):
    """Horizontal-strip branching coefficient psi_{outer/inner}.

    Product over cells s of ``inner`` lying in a row that meets the strip
    but in a column that does not, of b_inner(s) / b_outer(s), where
    b(s) = (1 - q^a t^(l+1)) / (1 - q^(a+1) t^l).
    """
    outer, inner = Partition(outer), Partition(inner)
    if not is_horizontal_strip(outer, inner):
        raise ValueError(f"{outer}/{inner} is not a horizontal strip")
    q, t = params.q, params.t
    oc, ic = conjugate(outer), conjugate(inner)
    value = params.one
    for i in range(1, len(outer) + 1):
        if outer[i - 1] == inner.part(i):
            continue
        for j in range(1, inner.part(i) + 1):
            if oc[j - 1] != ic[j - 1]:
                continue
            a_in, l_in = inner[i - 1] - j, ic[j - 1] - i
            a_out, l_out = outer[i - 1] - j, oc[j - 1] - i
            value *= (1 - q ** a_in * t ** (l_in + 1)) / (1 - q ** (a_in + 1) * t ** l_in)
            value *= (1 - q ** (a_out + 1) * t ** l_out) / (1 - q ** a_out * t ** (l_out + 1))
    return value


def principal_specialization(lam: Partition, params: BranchingParams, n_vars: int | None = None):
    """P_lam(1, t, t^2, ...; q, t), or its truncation to ``n_vars`` variables.

    t^n(lam) prod over cells of (1 - q^(j-1) t^(n_vars - i + 1)) / (1 - q^a t^(l+1));
    the numerator factors are dropped for the infinite alphabet.
    """
    lam = Partition(lam)
    q, t = params.q, params.t
    conj = conjugate(lam)
    value = t ** n_stat(lam) * params.one
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            a, l = row - j, conj[j - 1] - i
            value /= 1 - q ** a * t ** (l + 1)
            if n_vars is not None:
                value *= 1 - q ** (j - 1) * t ** (n_vars - i + 1)
    return value


class MacdonaldContext:
    """Memoized Macdonald evaluations for one (params, alphabet) pair; single owner.

    ``alphabet`` is an :class:`Alphabet` or a raw tuple of letters; raw letters
    need not sum to 1 and are only meant for evaluating P (e.g. at (1, t, t^2)).
    """

    def __init__(self, params: BranchingParams, alphabet, cap: int = DEFAULT_CAP):
        self.params = params
        self.alphabet = alphabet
        if isinstance(alphabet, Alphabet):
            self.letters = alphabet.values if alphabet.kind == "finite" else None
        else:
            self.letters = tuple(alphabet)
        self.cap = cap
        self._psi: dict[tuple[Partition, Partition], Any] = {}
        self._finite: dict[tuple[Partition, int], Any] = {}
        self._geometric: dict[Partition, Any] = {EMPTY: params.one}
        self._P: dict[Partition, Any] = {}
        self._dims: DimensionTable | None = None

    def psi(self, outer: Partition, inner: Partition):
        key = (outer, inner)
        value = self._psi.get(key)
        if value is None:
            value = self._psi[key] = psi_horizontal(outer, inner, self.params)
        return value

    def P(self, lam: Partition):
        lam = Partition(lam)
        if sum(lam) > self.cap:
            raise CapExceededError(f"|{lam}| exceeds the cap {self.cap}")
        value = self._P.get(lam)
        if value is None:
            if self.letters is not None:
                value = self._eval_finite(lam, len(self.letters))
            else:
                r = self.alphabet.ratio
                value = (1 - r) ** sum(lam) * self._eval_geometric(lam)
            self._P[lam] = value
        return value

    def _eval_finite(self, lam: Partition, k: int):
        if len(lam) > k:
            return 0 * self.params.one
        if k == 0:
            return self.params.one
        key = (lam, k)
        value = self._finite.get(key)
        if value is None:
            x = self.letters[k - 1]
            size = sum(lam)
            terms = []
            for mu in horizontal_strips_below(lam, max_rows=k - 1):
                strip = size - sum(mu)
                if strip and not x:
                    continue
                terms.append(self.psi(lam, mu) * x ** strip * self._eval_finite(mu, k - 1))
            value = self._finite[key] = self.params.total(terms)
        return value

    def _eval_geometric(self, lam: Partition):
        value = self._geometric.get(lam)
        if value is not None:
            return value
        r = self.alphabet.ratio
        if not self.params.symbolic and r == self.params.t:
            value = principal_specialization(lam, self.params)
        else:
            size = sum(lam)
            rhs = self.params.total(
                self.psi(lam, mu) * r ** sum(mu) * self._eval_geometric(mu)
                for mu in horizontal_strips_below(lam)
                if mu != lam
            )
            value = rhs / (1 - r ** size)
        self._geometric[lam] = value
        return value

    @property
    def dims(self) -> DimensionTable:
        if self._dims is None:
            self._dims = DimensionTable(self.params, cap=self.cap)
        return self._dims

    def measure_weight(self, lam: Partition, dims: DimensionTable | None = None):
        """(1-q)^|lam| P_lam(x) t^n(lam) dim(lam) / prod (1 - q^(a+1) t^l)."""
        dims = dims or self.dims
        q, t = self.params.q, self.params.t
        return (
            (1 - q) ** sum(lam)
            * self.P(lam)
            * t ** n_stat(lam)
            * dims(lam)
            / hook_product(lam, self.params)
        )

    def measure(self, n: int, dims: DimensionTable | None = None) -> Distribution:
        if not isinstance(self.alphabet, Alphabet):
            raise InvalidAlphabetError("measures need a normalized Alphabet")
        if n > self.cap:
            raise CapExceededError(f"n={n} exceeds the cap {self.cap}")
        entries = {lam: self.measure_weight(lam, dims) for lam in enumerate_partitions(n, self.cap)}
        meta = {**self.params.to_json(), "alphabet": self.alphabet.describe()}
        return Distribution(n, entries, meta)

    def transition_probabilities(self, lam: Partition) -> dict[CoverStep, Any]:
        """Chance of lam -> Lam is P_Lam(x) psi'_{Lam/lam} / P_lam(x), in increasing column order."""
        lam = Partition(lam)
        base = self.P(lam)
        if base == 0:
            raise DomainError(f"P_{lam}(x) = 0: {lam} is unreachable for alphabet {self.alphabet}")
        return {step: self.P(step.child) * psi_prime(step, self.params) / base for step in addable_columns(lam)}


def eval_P(lam: Partition, alphabet: Alphabet | Iterable, params: BranchingParams):
    """P_lam(x; q, t). ``alphabet`` may be an :class:`Alphabet` or any finite sequence of letters."""
    return MacdonaldContext(params, alphabet).P(lam)


def measure(n: int, alphabet: Alphabet, params: BranchingParams) -> Distribution:
    """The coherent measure M_n on partitions of n."""
    return MacdonaldContext(params, alphabet).measure(n)


def transition_probabilities(lam: Partition, alphabet: Alphabet, params: BranchingParams) -> dict[CoverStep, Any]:
    return MacdonaldContext(params, alphabet).transition_probabilities(lam)


def pieri_sum(lam: Partition, ctx: MacdonaldContext):
    """sum over lam -> Lam of P_Lam psi'_{Lam/lam}; equals (sum of letters) * P_lam."""
    return ctx.params.total(ctx.P(step.child) * psi_prime(step, ctx.params) for step in addable_columns(lam))


def verify_pieri(n: int, params: BranchingParams, alphabet: Alphabet) -> Report:
    """sum_Lam P_Lam psi'_{Lam/lam} / P_lam = 1 for every lam with |lam| <= n and P_lam != 0."""
    report = Report("pieri", n, {**params.to_json(), "alphabet": alphabet.describe()})
    ctx = MacdonaldContext(params, alphabet)
    for k in range(n + 1):
        for lam in enumerate_partitions(k):
            base = ctx.P(lam)
            total = pieri_sum(lam, ctx)
            report.checked_count += 1
            if total != base:
                return report.fail(partition=list(lam), sum=str(total), P=str(base))
    return report


def verify_normalization(n: int, params: BranchingParams, alphabet: Alphabet) -> Report:
    report = Report("normalization", n, {**params.to_json(), "alphabet": alphabet.describe()})
    ctx = MacdonaldContext(params, alphabet)
    for k in range(n + 1):
        total = ctx.params.total(ctx.measure(k).entries.values())
        report.checked_count += 1
        if total != 1:
            return report.fail(level=k, total=str(total))
    return report

