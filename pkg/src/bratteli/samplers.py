"""Random growth of partitions: the generic Macdonald chain and the column sampler at q = 0.

Draws compare a 128-bit uniform integer against exact cumulative sums scaled
by 2^128, scanning addable cells in increasing column order, so a run is
bit-reproducible from its seed.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .branching import BranchingParams, GrowthPath
from .coeff import format_rational
from .errors import BratteliError, DomainError
from .macdonald import Alphabet, Distribution, MacdonaldContext, sort_key
from .partitions import EMPTY, CoverStep, Partition, addable_columns, conjugate

BITS = 128
SCALE = 1 << BITS


class LevelMismatchError(BratteliError, ValueError):
    pass


class RngStream:
    """Independent random stream derived from ``(seed, stream)``."""

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        state = np.random.SeedSequence(self.seed, spawn_key=(self.stream,)).generate_state(4, np.uint64)
        self._random = random.Random(int.from_bytes(state.tobytes(), "little"))

    def bits128(self) -> int:
        return self._random.getrandbits(BITS)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream={self.stream})"


def thresholds(weights: Sequence) -> list[int]:
    """floor(2^128 * cumulative / total) for each prefix of ``weights``."""
    weights = [Fraction(w) for w in weights]
    if any(w < 0 for w in weights):
        raise DomainError(f"negative weight in {weights}")
    total = sum(weights, Fraction(0))
    if total <= 0:
        raise DomainError("weights have zero total")
    out, acc = [], Fraction(0)
    for w in weights:
        acc += w
        out.append(acc * SCALE // total)
    out[-1] = SCALE
    return out


def select_index(weights: Sequence, rng: RngStream) -> int:
    return bisect_right(thresholds(weights), rng.bits128())


def _select(table: list[int], rng: RngStream) -> int:
    return bisect_right(table, rng.bits128())


# -- generic chain ------------------------------------------------------------------------


class GenericSampler:
    """Transition tables of the Macdonald chain for one (params, alphabet), built on demand."""

    def __init__(self, alphabet: Alphabet, params: BranchingParams):
        if params.symbolic:
            raise DomainError("sampling needs numeric q and t")
        self.alphabet = alphabet
        self.params = params
        self.ctx = MacdonaldContext(params, alphabet)
        self._tables: dict[Partition, tuple[list[CoverStep], list[int]]] = {}

    def table(self, lam: Partition) -> tuple[list[CoverStep], list[int]]:
        entry = self._tables.get(lam)
        if entry is None:
            probs = self.ctx.transition_probabilities(lam)
            steps = list(probs)
            entry = self._tables[lam] = (steps, thresholds(probs.values()))
        return entry

    def grow(self, n: int, rng: RngStream) -> GrowthPath:
        lam, steps = EMPTY, []
        for _ in range(n):
            options, table = self.table(lam)
            step = options[_select(table, rng)]
            steps.append(step)
            lam = step.child
        return GrowthPath(tuple(steps))


_SAMPLERS: dict[tuple, GenericSampler] = {}


def generic_sampler(alphabet: Alphabet, params: BranchingParams) -> GenericSampler:
    key = (params.key, alphabet)
    sampler = _SAMPLERS.get(key)
    if sampler is None:
        sampler = _SAMPLERS[key] = GenericSampler(alphabet, params)
    return sampler


def grow_generic(n: int, x: Alphabet, params: BranchingParams, rng: RngStream) -> GrowthPath:
    """One path of length n; lam -> Lam is taken with probability P_Lam psi' / P_lam."""
    return generic_sampler(x, params).grow(n, rng)


# -- column sampler at q = 0, t = 1/p -------------------------------------------------------


def _field_size(p) -> int:
    p = getattr(p, "p", p)
    if not isinstance(p, int) or p < 2:
        raise DomainError(f"p must be an integer >= 2, got {p!r}")
    return p


def bk_transition_probabilities(lam: Partition, p) -> dict[CoverStep, Fraction]:
    """Column 1 w.p. p^-lam'_1, column j > 1 w.p. p^-lam'_j - p^-lam'_(j-1)."""
    p = _field_size(p)
    lam = Partition(lam)
    conj = conjugate(lam)
    height = lambda j: conj[j - 1] if j <= len(conj) else 0  # noqa: E731
    probs = {}
    for step in addable_columns(lam):
        j = step.col
        upper = Fraction(1, p ** height(j))
        probs[step] = upper if j == 1 else upper - Fraction(1, p ** height(j - 1))
    if sum(probs.values()) != 1:
        raise AssertionError(f"column probabilities at {lam} do not sum to 1")
    return probs


def _bk_level(p: int, rng: RngStream) -> int:
    """K with P(K >= k) = p^-k: the largest k with U p^k < 2^128."""
    u = rng.bits128()
    k = 0
    while u * p ** (k + 1) < SCALE:
        k += 1
    return k


def bk_target_row(rows: Sequence[int], level: int) -> int:
    """0-based row that receives the new cell when the level draw is K = ``level``.

    The chosen column is the first one of height <= K, i.e. column lam_(K+1) + 1,
    whose new cell sits in the topmost row of length lam_(K+1).
    """
    r = min(level, len(rows))
    while 0 < r < len(rows) and rows[r - 1] == rows[r]:
        r -= 1
    return r


def _bk_rows(n: int, p: int, rng: RngStream) -> tuple[list[int], list[int]]:
    """Rows of the endpoint and the column added at each step."""
    rows: list[int] = []
    cols: list[int] = []
    for _ in range(n):
        r = bk_target_row(rows, _bk_level(p, rng))
        if r == len(rows):
            rows.append(1)
            cols.append(1)
        else:
            rows[r] += 1
            cols.append(rows[r])
    return rows, cols


def grow_bk(n: int, p, rng: RngStream) -> GrowthPath:
    p = _field_size(p)
    _, cols = _bk_rows(n, p, rng)
    return GrowthPath.from_columns(cols)


# -- runs and statistics --------------------------------------------------------------------


@dataclass
class SampleRun:
    n: int
    trials: int
    results: list
    config: dict[str, Any] = field(default_factory=dict)

    def endpoints(self) -> list[Partition]:
        return [r.endpoint if isinstance(r, GrowthPath) else r for r in self.results]

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"config": {**self.config, "n": self.n, "trials": self.trials}}
        if self.results and isinstance(self.results[0], GrowthPath):
            out["paths"] = [r.columns for r in self.results]
        else:
            out.update(empirical_distribution(self).to_json())
        return out


def sample_generic(n: int, alphabet: Alphabet, params: BranchingParams, trials: int, seed: int,
                   paths: bool = False) -> SampleRun:
    sampler = generic_sampler(alphabet, params)
    results = []
    for k in range(trials):
        path = sampler.grow(n, RngStream(seed, k))
        results.append(path if paths else path.endpoint)
    config = {"sampler": "generic", **params.to_json(), "alphabet": alphabet.describe(), "seed": seed}
    return SampleRun(n, trials, results, config)


def sample_bk(n: int, p, trials: int, seed: int, paths: bool = False) -> SampleRun:
    p = _field_size(p)
    results = []
    for k in range(trials):
        rows, cols = _bk_rows(n, p, RngStream(seed, k))
        results.append(GrowthPath.from_columns(cols) if paths else Partition._trusted(tuple(rows)))
    return SampleRun(n, trials, results, {"sampler": "bk", "p": p, "seed": seed})


def empirical_distribution(run: SampleRun) -> Distribution:
    if run.trials < 1:
        raise ValueError("need at least one trial")
    counts = Counter(run.endpoints())
    entries = {lam: Fraction(c, run.trials) for lam, c in sorted(counts.items(), key=lambda kv: sort_key(kv[0]))}
    return Distribution(run.n, entries, {"source": "sampler", **run.config, "trials": run.trials})


def tv_distance(a: Distribution, b: Distribution) -> Fraction:
    """(1/2) sum |a - b|, exactly."""
    if a.n != b.n:
        raise LevelMismatchError(f"distributions live on levels {a.n} and {b.n}")
    support = set(a.entries) | set(b.entries)
    zero = Fraction(0)
    return sum((abs(Fraction(a.entries.get(lam, zero)) - Fraction(b.entries.get(lam, zero))) for lam in support),
               zero) / 2


def asymptotic_profile(n: int, p, trials: int, seed: int, parts: int = 3) -> dict[str, Any]:
    """Sample means of lam_i / n with standard errors, next to the limits p^-(i-1) (1 - 1/p)."""
    p = _field_size(p)
    if n < 100:
        raise ValueError("the profile is only meaningful for n >= 100")
    samples = np.zeros((trials, parts))
    for k in range(trials):
        rows, _ = _bk_rows(n, p, RngStream(seed, k))
        for i, r in enumerate(rows[:parts]):
            samples[k, i] = r / n
    means = samples.mean(axis=0)
    errors = samples.std(axis=0, ddof=1) / math.sqrt(trials) if trials > 1 else np.zeros(parts)
    profile = []
    for i in range(parts):
        limit = Fraction(p - 1, p ** (i + 1))
        profile.append({
            "part": i + 1,
            "mean": float(means[i]),
            "stderr": float(errors[i]),
            "limit": format_rational(limit),
            "limit_approx": float(limit),
        })
    return {"n": n, "p": p, "trials": trials, "seed": seed, "profile": profile}
