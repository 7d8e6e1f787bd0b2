"""Exact scalars: rationals, Laurent polynomials and rational functions in (q, t).

Numeric work uses :class:`fractions.Fraction`. Symbolic work uses
:class:`RationalFunction`, which stores a value as

    coeff * q**a * t**b * prod(F**e for F, e in factors)

with every ``F`` a normalized Laurent polynomial (no monomial factor, lowest
lexicographic term has coefficient 1) and ``e`` a nonzero integer. Binomials
``1 - m`` and ``1 + m`` are split into cyclotomic pieces, which are
irreducible, so quotients of the binomial products that make up multiplicity
functions and hook products cancel exactly without a general gcd. Sums expand
only the parts that differ between the summands and then cancel whatever
denominator factors divide the result. Equality falls back to a
cross-multiplied difference whenever the factored forms differ.

Both scalar kinds support ``+ - * / **`` and ``==``, so everything above this
module is written once against the operator protocol.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping, Union

from .errors import PoleError

Exponent = tuple[int, int]


class LaurentPoly:
    """Sparse Laurent polynomial in two variables with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | None = None):
        clean = {}
        for (eq, et), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                key = (int(eq), int(et))
                clean[key] = clean.get(key, 0) + c
                if not clean[key]:
                    del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> LaurentPoly:
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c) -> LaurentPoly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, eq: int = 0, et: int = 0, coeff=1) -> LaurentPoly:
        return cls({(eq, et): coeff})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0, 0) in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0, 0), Fraction(0))

    def min_exponents(self) -> Exponent:
        return (min(e[0] for e in self._terms), min(e[1] for e in self._terms))

    def max_exponents(self) -> Exponent:
        return (max(e[0] for e in self._terms), max(e[1] for e in self._terms))

    def shift(self, dq: int, dt: int) -> LaurentPoly:
        if dq == 0 and dt == 0:
            return self
        return LaurentPoly._raw({(a + dq, b + dt): c for (a, b), c in self._terms.items()})

    def scale(self, c) -> LaurentPoly:
        c = Fraction(c)
        if not c:
            return ZERO_POLY
        return LaurentPoly._raw({e: v * c for e, v in self._terms.items()})

    @staticmethod
    def _coerce(other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Rational)):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) == 1:
            ((oq, ot), oc), = other._terms.items()
            return LaurentPoly._raw({(a + oq, b + ot): c * oc for (a, b), c in self._terms.items()})
        out: dict[Exponent, Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers are only defined for monomials")
            ((a, b), c), = self._terms.items()
            return LaurentPoly._raw({(a * k, b * k): c ** k})
        result = ONE_POLY
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def lex_min(self) -> tuple[Exponent, Fraction]:
        e = min(self._terms)
        return e, self._terms[e]

    def lex_max(self) -> tuple[Exponent, Fraction]:
        e = max(self._terms)
        return e, self._terms[e]

    def evaluate(self, q, t=1):
        """Exact value at (q, t); a negative power of a zero variable raises :class:`PoleError`."""
        q, t = Fraction(q), Fraction(t)
        total = Fraction(0)
        for (a, b), c in self._terms.items():
            if (a < 0 and q == 0) or (b < 0 and t == 0):
                raise PoleError(f"monomial q^{a} t^{b} has a pole at q={q}, t={t}")
            total += c * q ** a * t ** b
        return total

    def exact_divide(self, divisor: LaurentPoly) -> LaurentPoly | None:
        """The Laurent quotient if ``divisor`` divides ``self`` exactly, else None."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if divisor.is_monomial():
            ((a, b), c), = divisor._terms.items()
            return LaurentPoly._raw({(x - a, y - b): v / c for (x, y), v in self._terms.items()})
        fq, ft = self.min_exponents()
        gq, gt = divisor.min_exponents()
        g = divisor.shift(-gq, -gt)
        gmax_q, gmax_t = g.max_exponents()
        rem = dict(self.shift(-fq, -ft)._terms)
        if max(e[0] for e in rem) < gmax_q or max(e[1] for e in rem) < gmax_t:
            return None
        (lq, lt), lc = g.lex_max()
        g_terms = list(g._terms.items())
        quot: dict[Exponent, Fraction] = {}
        while rem:
            (a, b) = max(rem)
            c = rem[(a, b)]
            da, db = a - lq, b - lt
            if da < 0 or db < 0:
                return None
            m = c / lc
            quot[(da, db)] = m
            for (x, y), v in g_terms:
                key = (x + da, y + db)
                nv = rem.get(key, 0) - m * v
                if nv:
                    rem[key] = nv
                else:
                    rem.pop(key, None)
        return LaurentPoly._raw(quot).shift(fq - gq, ft - gt)

    def to_json(self, labels: tuple[str, ...] = ("q", "t")) -> list[dict]:
        records = []
        for (a, b), c in sorted(self._terms.items()):
            rec = {"e" + labels[0]: a}
            if len(labels) > 1:
                rec["e" + labels[1]] = b
            rec["coeff"] = format_rational(c)
            records.append(rec)
        return records

    @classmethod
    def from_json(cls, records: Iterable[Mapping], labels: tuple[str, ...] = ("q", "t")) -> LaurentPoly:
        terms = {}
        for rec in records:
            a = int(rec["e" + labels[0]])
            b = int(rec["e" + labels[1]]) if len(labels) > 1 else 0
            terms[(a, b)] = parse_rational(rec["coeff"])
        return cls(terms)

    def format(self, labels: tuple[str, str] = ("q", "t")) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (a, b), c in sorted(self._terms.items()):
            mono = []
            for name, e in ((labels[0], a), (labels[1], b)):
                if e == 1:
                    mono.append(name)
                elif e:
                    mono.append(f"{name}^{e}")
            body = "*".join(mono)
            if not body:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(body)
            elif c == -1:
                pieces.append("-" + body)
            else:
                pieces.append(f"{c}*{body}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()})"


ZERO_POLY = LaurentPoly._raw({})
ONE_POLY = LaurentPoly._raw({(0, 0): Fraction(1)})


# -- factorization helpers ---------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_coeffs(d: int) -> tuple[int, ...]:
    """Integer coefficients (constant term first) of the d-th cyclotomic polynomial."""
    num = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            num = _divide_univariate(num, list(cyclotomic_coeffs(e)))
    return tuple(num)


def _divide_univariate(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, v in enumerate(den):
            num[i + j] -= c * v
    assert not any(num), "inexact cyclotomic division"
    return out


def _normalize(p: LaurentPoly) -> tuple[Fraction, Exponent, LaurentPoly]:
    """Write p = c * monomial * F with F normalized."""
    mq, mt = p.min_exponents()
    shifted = p.shift(-mq, -mt)
    _, lead = shifted.lex_min()
    return lead, (mq, mt), shifted.scale(1 / lead)


def _univariate_in(mono: Exponent, coeffs: Iterable[int]) -> LaurentPoly:
    a, b = mono
    return LaurentPoly({(a * k, b * k): c for k, c in enumerate(coeffs) if c})


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=4096)
def _split_binomial(f: LaurentPoly) -> tuple[tuple[LaurentPoly, int], ...]:
    """Irreducible factors of a normalized binomial 1 + c*m with c = +-1."""
    ((e0, _), (e1, c)) = sorted(f.items())
    m = (e1[0] - e0[0], e1[1] - e0[1])
    g = gcd(abs(m[0]), abs(m[1]))
    mu = (m[0] // g, m[1] // g)
    if c == -1:
        orders = _divisors(g)
    elif c == 1:
        orders = [d for d in _divisors(2 * g) if g % d]
    else:
        return ((f, 1),)
    out = []
    for d in orders:
        _, _, piece = _normalize(_univariate_in(mu, cyclotomic_coeffs(d)))
        out.append((piece, 1))
    return tuple(out)


def factor_poly(p: LaurentPoly) -> tuple[Fraction, Exponent, dict[LaurentPoly, int]]:
    """p = c * q^a t^b * prod(F^e): cyclotomic split for +-1 binomials, otherwise one opaque factor."""
    c, mono, f = _normalize(p)
    if len(f) == 1:
        return c, mono, {}
    if len(f) == 2:
        factors: dict[LaurentPoly, int] = {}
        for piece, e in _split_binomial(f):
            factors[piece] = factors.get(piece, 0) + e
        return c, mono, factors
    return c, mono, {f: 1}


@lru_cache(maxsize=8192)
def _power(f: LaurentPoly, e: int) -> LaurentPoly:
    return f ** e


# -- rational functions -------------------------------------------------------

Scalar = Union[Fraction, "RationalFunction"]


class RationalFunction:
    """Exact element of Q(q, t) kept in partially factored form."""

    __slots__ = ("coeff", "mono", "factors")

    def __init__(self, coeff=0, mono: Exponent = (0, 0), factors: Mapping[LaurentPoly, int] | None = None):
        self.coeff = Fraction(coeff)
        if not self.coeff:
            self.mono = (0, 0)
            self.factors = {}
        else:
            self.mono = (int(mono[0]), int(mono[1]))
            self.factors = {f: e for f, e in (factors or {}).items() if e}

    # constructors

    @classmethod
    def gen(cls, name: str) -> RationalFunction:
        if name == "q":
            return cls(1, (1, 0))
        if name == "t":
            return cls(1, (0, 1))
        raise ValueError(f"unknown generator {name!r}")

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> RationalFunction:
        if p.is_zero():
            return cls(0)
        c, mono, factors = factor_poly(p)
        return cls(c, mono, factors)

    @classmethod
    def from_polys(cls, num: LaurentPoly, den: LaurentPoly) -> RationalFunction:
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        return cls.from_poly(num) / cls.from_poly(den)

    @staticmethod
    def _coerce(other) -> RationalFunction | None:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Rational)):
            return RationalFunction(other)
        if isinstance(other, LaurentPoly):
            return RationalFunction.from_poly(other)
        return None

    # views

    def is_zero(self) -> bool:
        return not self.coeff

    @property
    def num(self) -> LaurentPoly:
        """Expanded numerator (carries the coefficient and the positive monomial part)."""
        a, b = self.mono
        p = LaurentPoly.monomial(max(a, 0), max(b, 0), self.coeff)
        for f, e in self.factors.items():
            if e > 0:
                p = p * _power(f, e)
        return p

    @property
    def den(self) -> LaurentPoly:
        a, b = self.mono
        p = LaurentPoly.monomial(max(-a, 0), max(-b, 0))
        for f, e in self.factors.items():
            if e < 0:
                p = p * _power(f, -e)
        return p

    def as_laurent(self) -> LaurentPoly | None:
        """The value as a Laurent polynomial, or None if it is not one."""
        return self.num.exact_divide(self.den)

    # arithmetic

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.coeff, self.mono, self.factors)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeff or not other.coeff:
            return ZERO
        factors = dict(self.factors)
        for f, e in other.factors.items():
            factors[f] = factors.get(f, 0) + e
        return RationalFunction(
            self.coeff * other.coeff,
            (self.mono[0] + other.mono[0], self.mono[1] + other.mono[1]),
            factors,
        )

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if not self.coeff:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(
            1 / self.coeff, (-self.mono[0], -self.mono[1]), {f: -e for f, e in self.factors.items()}
        )

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return ONE
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(
            self.coeff ** k, (self.mono[0] * k, self.mono[1] * k), {f: e * k for f, e in self.factors.items()}
        )

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return rf_sum((self, other))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return rf_sum((self, -other))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return rf_sum((other, -self))

    def _same_form(self, other: RationalFunction) -> bool:
        return self.coeff == other.coeff and self.mono == other.mono and self.factors == other.factors

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self._same_form(other):
            return True
        return (self - other).is_zero()

    __hash__ = None

    def cross_equal(self, other) -> bool:
        """Equality by expanding num1*den2 and num2*den1."""
        other = self._coerce(other)
        return self.num * other.den == other.num * self.den

    def evaluate(self, q, t) -> Fraction:
        return evaluate(self, q, t)

    def __str__(self) -> str:
        if not self.coeff:
            return "0"
        parts = [] if self.coeff == 1 else [str(self.coeff)]
        a, b = self.mono
        if a:
            parts.append("q" if a == 1 else f"q^{a}")
        if b:
            parts.append("t" if b == 1 else f"t^{b}")
        for f, e in sorted(self.factors.items(), key=lambda fe: (len(fe[0]), sorted(fe[0].items()))):
            parts.append(f"({f})" + ("" if e == 1 else f"^{e}"))
        return "*".join(parts) or "1"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


ZERO = RationalFunction(0)
ONE = RationalFunction(1)


def rf_sum(values: Iterable[RationalFunction]) -> RationalFunction:
    """Sum of rational functions, expanding only what the summands do not share."""
    vals = [v for v in (RationalFunction._coerce(x) for x in values) if v.coeff]
    if not vals:
        return ZERO
    if len(vals) == 1:
        return vals[0]
    common_mono = (min(v.mono[0] for v in vals), min(v.mono[1] for v in vals))
    keys = set().union(*(v.factors for v in vals))
    common = {f: min(v.factors.get(f, 0) for v in vals) for f in keys}
    total = ZERO_POLY
    for v in vals:
        term = LaurentPoly.monomial(v.mono[0] - common_mono[0], v.mono[1] - common_mono[1], v.coeff)
        for f, e in v.factors.items():
            extra = e - common[f]
            if extra:
                term = term * _power(f, extra)
        for f, ce in common.items():
            if f not in v.factors and ce:
                term = term * _power(f, -ce)
        total = total + term
    if total.is_zero():
        return ZERO
    # cancel denominator factors that divide the expanded sum
    for f in sorted(common, key=len):
        while common[f] < 0:
            quotient = total.exact_divide(f)
            if quotient is None:
                break
            total = quotient
            common[f] += 1
    c, mono, factors = factor_poly(total)
    for f, e in factors.items():
        common[f] = common.get(f, 0) + e
    return RationalFunction(c, (common_mono[0] + mono[0], common_mono[1] + mono[1]), common)


def evaluate(f, q, t) -> Fraction:
    """Exact value of a scalar at (q, t); poles raise :class:`PoleError` naming the factor."""
    if isinstance(f, (int, Rational)):
        return Fraction(f)
    if isinstance(f, LaurentPoly):
        return f.evaluate(q, t)
    q, t = Fraction(q), Fraction(t)
    if not f.coeff:
        return Fraction(0)
    a, b = f.mono
    if (a < 0 and q == 0) or (b < 0 and t == 0):
        raise PoleError(f"pole of q^{a} t^{b} at q={q}, t={t}", factor=LaurentPoly.monomial(-a, -b))
    value = f.coeff * q ** a * t ** b
    zero_num = False
    for poly, e in f.factors.items():
        v = poly.evaluate(q, t)
        if not v:
            if e < 0:
                raise PoleError(f"denominator factor ({poly}) vanishes at q={q}, t={t}", factor=poly)
            zero_num = True
            continue
        value *= v ** e
    return Fraction(0) if zero_num else value


def q_integer(n: int, q):
    """[n] = 1 + q + ... + q^(n-1), the q-analog of n (valid at q = 1)."""
    if n < 1:
        raise ValueError("q-integers are defined for n >= 1")
    if isinstance(q, RationalFunction):
        return (1 - q ** n) / (1 - q)
    return sum((q ** k for k in range(1, n)), q ** 0)


def is_symbolic(x) -> bool:
    return isinstance(x, (RationalFunction, LaurentPoly))


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    """Parse ``"a/b"`` or an integer literal into an exact rational."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    if not s or any(ch in s for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


def symbols() -> tuple[RationalFunction, RationalFunction]:
    """The formal generators (q, t)."""
    return RationalFunction.gen("q"), RationalFunction.gen("t")


def scalar_to_json(x):
    if isinstance(x, RationalFunction):
        return {"num": x.num.to_json(), "den": x.den.to_json()}
    if isinstance(x, LaurentPoly):
        return x.to_json()
    return format_rational(x)
