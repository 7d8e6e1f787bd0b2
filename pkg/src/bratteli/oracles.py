"""Independent ground truth: unipotent matrices over F_p, RSK, charge, Young-lattice path counts.

None of these use the branching machinery; they are the brute-force side of
every cross-check.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .coeff import LaurentPoly
from .errors import BratteliError, NotContainedError
from .macdonald import Alphabet, Distribution
from .partitions import EMPTY, Partition, conjugate, paths_between
from .samplers import RngStream, thresholds

MAX_ENUMERATION = 10**6


class EnumerationTooLarge(BratteliError, ValueError):
    pass


class NotUnipotentError(BratteliError, ValueError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _check_prime(p: int) -> None:
    if not _is_prime(p):
        raise ValueError(f"field size must be prime, got {p}")


@dataclass(frozen=True)
class MatrixFp:
    n: int
    p: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> MatrixFp:
        rows = tuple(tuple(int(v) % p for v in row) for row in rows)
        return cls(len(rows), p, rows)

    @classmethod
    def identity(cls, n: int, p: int) -> MatrixFp:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], p)

    @classmethod
    def jordan_block(cls, n: int, p: int) -> MatrixFp:
        return cls.from_rows([[int(j == i or j == i + 1) for j in range(n)] for i in range(n)], p)

    def is_unitriangular(self) -> bool:
        return all(
            self.rows[i][j] == (1 if i == j else 0) for i in range(self.n) for j in range(i + 1)
        )

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over F_p by Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    rank, ncols = 0, len(m[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] % p), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] % p:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _matmul_mod(a, b, p):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n)] for i in range(n)]


def jordan_type(m: MatrixFp) -> Partition:
    """Jordan type of a unipotent matrix: lam'_k = rank (M-I)^(k-1) - rank (M-I)^k."""
    n, p = m.n, m.p
    nil = [[(m.rows[i][j] - (i == j)) % p for j in range(n)] for i in range(n)]
    ranks = [n]
    power = nil
    while ranks[-1] > 0:
        if len(ranks) > n:
            raise NotUnipotentError("(M - I)^n is not zero")
        ranks.append(rank_mod_p(power, p))
        power = _matmul_mod(power, nil, p)
    conj = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    return conjugate(Partition(conj))


def enumerate_unipotent(n: int, p: int) -> Iterator[MatrixFp]:
    """Every element of the unitriangular group T(n, F_p)."""
    _check_prime(p)
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if p ** len(slots) > MAX_ENUMERATION:
        raise EnumerationTooLarge(f"T({n}, F_{p}) has {p ** len(slots)} elements")
    for values in itertools.product(range(p), repeat=len(slots)):
        rows = [[int(i == j) for j in range(n)] for i in range(n)]
        for (i, j), v in zip(slots, values):
            rows[i][j] = v
        yield MatrixFp(n, p, tuple(tuple(r) for r in rows))


def random_unipotent(n: int, p: int, rng: np.random.Generator) -> MatrixFp:
    _check_prime(p)
    rows = np.eye(n, dtype=np.int64)
    iu = np.triu_indices(n, 1)
    rows[iu] = rng.integers(0, p, size=len(iu[0]))
    return MatrixFp.from_rows(rows.tolist(), p)


def random_unipotent_batch(n: int, p: int, count: int, rng: np.random.Generator) -> np.ndarray:
    _check_prime(p)
    mats = np.broadcast_to(np.eye(n, dtype=np.int64), (count, n, n)).copy()
    iu = np.triu_indices(n, 1)
    mats[:, iu[0], iu[1]] = rng.integers(0, p, size=(count, len(iu[0])))
    return mats


def _rank_batch(a: np.ndarray, p: int) -> np.ndarray:
    """Ranks over F_p of a stack of matrices (vectorized elimination)."""
    a = a % p
    count, nrows, ncols = a.shape
    inverses = np.array([0] + [pow(v, -1, p) for v in range(1, p)], dtype=np.int64)
    pivot_row = np.zeros(count, dtype=np.int64)
    row_ids = np.arange(nrows)
    for col in range(ncols):
        candidates = (a[:, :, col] != 0) & (row_ids[None, :] >= pivot_row[:, None])
        active = np.nonzero(candidates.any(axis=1))[0]
        if active.size == 0:
            continue
        pick = candidates[active].argmax(axis=1)
        target = pivot_row[active]
        picked_rows = a[active, pick].copy()
        a[active, pick] = a[active, target]
        a[active, target] = picked_rows
        pivots = a[active, target, col]
        a[active, target] = a[active, target] * inverses[pivots][:, None] % p
        below = row_ids[None, :] > target[:, None]
        factors = a[active, :, col] * below
        a[active] = (a[active] - factors[:, :, None] * a[active, target][:, None, :]) % p
        pivot_row[active] += 1
    return pivot_row


def jordan_types_batch(mats: np.ndarray, p: int) -> list[Partition]:
    count, n, _ = mats.shape
    nil = (mats - np.eye(n, dtype=np.int64)) % p
    ranks = [np.full(count, n, dtype=np.int64)]
    power = nil.copy()
    for _ in range(n):
        ranks.append(_rank_batch(power, p))
        if not ranks[-1].any():
            break
        power = np.matmul(power, nil) % p
    if ranks[-1].any():
        raise NotUnipotentError("some (M - I)^n is not zero")
    drops = np.stack([ranks[k - 1] - ranks[k] for k in range(1, len(ranks))], axis=1)
    out = []
    for row in drops.tolist():
        conj = [v for v in row if v]
        out.append(conjugate(Partition(conj)))
    return out


def jordan_distribution_exhaustive(n: int, p: int) -> Distribution:
    counts = Counter(jordan_type(m) for m in enumerate_unipotent(n, p))
    total = sum(counts.values())
    return Distribution(n, {lam: Fraction(c, total) for lam, c in counts.items()},
                        {"source": "oracle", "method": "exhaustive", "p": p})


def jordan_distribution_mc(n: int, p: int, trials: int, seed: int, batch: int = 20000) -> Distribution:
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    counts: Counter[Partition] = Counter()
    remaining = trials
    while remaining:
        size = min(batch, remaining)
        counts.update(jordan_types_batch(random_unipotent_batch(n, p, size, rng), p))
        remaining -= size
    return Distribution(n, {lam: Fraction(c, trials) for lam, c in counts.items()},
                        {"source": "oracle", "method": "monte-carlo", "p": p, "trials": trials, "seed": seed})


# -- RSK ------------------------------------------------------------------------------


def rsk_insert(word: Iterable[int]) -> list[list[int]]:
    """Insertion tableau of row-insertion RSK."""
    rows: list[list[int]] = []
    for letter in word:
        x = letter
        for row in rows:
            k = bisect_right(row, x)
            if k == len(row):
                row.append(x)
                break
            row[k], x = x, row[k]
        else:
            rows.append([x])
    return rows


def rsk_shape(word: Iterable[int]) -> Partition:
    return Partition(len(r) for r in rsk_insert(word))


def rsk_distribution_exhaustive(n: int, alphabet: Alphabet) -> Distribution:
    """Exact law of the RSK shape of an i.i.d. word with letter law x."""
    letters = [(i + 1, x) for i, x in enumerate(alphabet.values) if x]
    probs: dict[Partition, Fraction] = {}
    for word in itertools.product(letters, repeat=n):
        weight = Fraction(1)
        for _, x in word:
            weight *= x
        shape = rsk_shape(i for i, _ in word)
        probs[shape] = probs.get(shape, Fraction(0)) + weight
    return Distribution(n, probs, {"source": "oracle", "method": "rsk-exhaustive"})


def rsk_distribution(n: int, alphabet: Alphabet, trials: int, seed: int) -> Distribution:
    """Empirical law of RSK shapes of i.i.d. words; trial k uses stream (seed, k)."""
    table = thresholds(alphabet.values)
    counts: Counter[Partition] = Counter()
    for k in range(trials):
        rng = RngStream(seed, k)
        word = [bisect_right(table, rng.bits128()) + 1 for _ in range(n)]
        counts[rsk_shape(word)] += 1
    return Distribution(n, {lam: Fraction(c, trials) for lam, c in counts.items()},
                        {"source": "oracle", "method": "rsk-monte-carlo", "trials": trials, "seed": seed})


# -- tableaux, charge, Kostka-Foulkes -----------------------------------------------------


def _strips_above(lam: Partition, size: int, max_rows: int | None = None) -> Iterator[Partition]:
    """All Lam with Lam/lam a horizontal strip of ``size`` cells."""
    rows = len(lam) + 1 if max_rows is None else min(len(lam) + 1, max_rows)

    def rec(i, remaining, prefix):
        if i > rows:
            if remaining == 0:
                yield Partition(v for v in prefix if v)
            return
        cap = remaining if i == 1 else min(remaining, lam.part(i - 1) - lam.part(i))
        for add in range(cap, -1, -1):
            yield from rec(i + 1, remaining - add, prefix + [lam.part(i) + add])

    yield from rec(1, size, [])


def semistandard_tableaux(shape: Partition, content: Sequence[int] | None = None,
                          max_entry: int | None = None) -> Iterator[list[list[int]]]:
    """SSYT of ``shape`` with the given content, or with entries at most ``max_entry``."""
    shape = Partition(shape)
    if content is None:
        if max_entry is None:
            raise ValueError("give a content or a max_entry")
        sizes = None
        letters = max_entry
    else:
        sizes = list(content)
        letters = len(sizes)
        if sum(sizes) != sum(shape):
            return

    def rec(k, lam, chain):
        if k > letters:
            if lam == shape:
                yield _chain_to_tableau(chain)
            return
        options = [sizes[k - 1]] if sizes is not None else range(sum(shape) - sum(lam) + 1)
        for size in options:
            for nxt in _strips_above(lam, size):
                if shape.contains(nxt):
                    yield from rec(k + 1, nxt, chain + [nxt])

    yield from rec(1, EMPTY, [EMPTY])


def _chain_to_tableau(chain: list[Partition]) -> list[list[int]]:
    shape = chain[-1]
    rows = [[0] * r for r in shape]
    for k in range(1, len(chain)):
        prev, cur = chain[k - 1], chain[k]
        for i in range(len(cur)):
            for j in range(prev.part(i + 1), cur[i]):
                rows[i][j] = k
    return rows


def reading_word(tableau: list[list[int]]) -> list[int]:
    """Rows from bottom to top, each read left to right."""
    return [v for row in reversed(tableau) for v in row]


def charge_word(word: Sequence[int]) -> int:
    """Charge of a word with partition content, via standard subword extraction."""
    letters = list(word)
    used = [False] * len(letters)
    total = 0
    remaining = len(letters)
    while remaining:
        top = max(v for v, u in zip(letters, used) if not u)
        pos = len(letters)
        index = 0
        for r in range(1, top + 1):
            wrapped = False
            k = pos - 1
            while True:
                if k < 0:
                    k = len(letters) - 1
                    wrapped = True
                if not used[k] and letters[k] == r:
                    break
                k -= 1
            if r > 1 and wrapped:
                index += 1
            total += index
            used[k] = True
            pos = k
            remaining -= 1
    return total


def charge(tableau: list[list[int]]) -> int:
    return charge_word(reading_word(tableau))


def kostka_foulkes(shape: Partition, content: Partition) -> LaurentPoly:
    """K_{shape,content}(t) = sum over SSYT of t^charge, as a polynomial in t."""
    shape, content = Partition(shape), Partition(content)
    if sum(shape) != sum(content):
        raise ValueError(f"size mismatch: {shape} vs {content}")
    terms: dict[tuple[int, int], int] = {}
    for tab in semistandard_tableaux(shape, content):
        c = charge(tab)
        terms[(0, c)] = terms.get((0, c), 0) + 1
    return LaurentPoly(terms)


def kostka_number(shape: Partition, content: Sequence[int]) -> int:
    return sum(1 for _ in semistandard_tableaux(shape, content))


def schur_tableau_sum(shape: Partition, letters: Sequence) -> object:
    """s_shape(x_1..x_k) = sum over SSYT with entries <= k of x^T."""
    total = 0
    for tab in semistandard_tableaux(shape, max_entry=len(letters)):
        term = 1
        for row in tab:
            for v in row:
                term = term * letters[v - 1]
        total = total + term
    return total


def young_path_count(lower: Partition, upper: Partition) -> int:
    """Number of saturated chains lower -> upper, by explicit enumeration."""
    lower, upper = Partition(lower), Partition(upper)
    if not upper.contains(lower):
        raise NotContainedError(f"{lower} is not contained in {upper}")
    return sum(1 for _ in paths_between(lower, upper))
