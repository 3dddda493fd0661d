"""Truncated q-series with exact rational coefficients.

A :class:`QSeries` knows its coefficients for exponents ``0 .. precision-1``
and nothing beyond.  Every operation propagates precision pessimistically, so
an unknown coefficient can never leak into a result as a silent zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import PrecisionError, UsageError

DEFAULT_PRECISION = 5000

Rational = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


class QSeries:
    """Immutable truncated power series ``sum c_n q^n`` for ``0 <= n < precision``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self._coeffs = tuple(_as_fraction(c) for c in coeffs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "QSeries":
        # trusted constructor: coeffs already a tuple of Fractions
        obj = cls.__new__(cls)
        obj._coeffs = coeffs
        return obj

    @classmethod
    def from_integers(cls, values: Sequence[int], denominator: int = 1) -> "QSeries":
        return cls._raw(tuple(Fraction(int(v), denominator) for v in values))

    @classmethod
    def zero(cls, precision: int) -> "QSeries":
        return cls._raw((Fraction(0),) * precision)

    @classmethod
    def one(cls, precision: int) -> "QSeries":
        if precision == 0:
            return cls._raw(())
        return cls._raw((Fraction(1),) + (Fraction(0),) * (precision - 1))

    @classmethod
    def monomial(cls, exponent: int, precision: int, value=1) -> "QSeries":
        c = [Fraction(0)] * precision
        if exponent < precision:
            c[exponent] = _as_fraction(value)
        return cls._raw(tuple(c))

    @property
    def precision(self) -> int:
        return len(self._coeffs)

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def __len__(self):
        return len(self._coeffs)

    def __getitem__(self, n):
        if isinstance(n, slice):
            raise TypeError("use truncate() for slicing a QSeries")
        return coeff(self, n)

    def truncate(self, precision: int) -> "QSeries":
        if precision > self.precision:
            raise PrecisionError(
                f"cannot extend precision {self.precision} to {precision}")
        return QSeries._raw(self._coeffs[:precision])

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self._coeffs[:8])
        more = ", ..." if self.precision > 8 else ""
        return f"QSeries([{head}{more}], precision={self.precision})"

    def __add__(self, other):
        if isinstance(other, QSeries):
            return combine([(1, self), (1, other)])
        c = list(self._coeffs)
        if c:
            c[0] += _as_fraction(other)
        return QSeries._raw(tuple(c))

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw(tuple(-c for c in self._coeffs))

    def __sub__(self, other):
        if isinstance(other, QSeries):
            return combine([(1, self), (-1, other)])
        return self + (-_as_fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul(self, other)
        s = _as_fraction(other)
        return QSeries._raw(tuple(s * c for c in self._coeffs))

    __rmul__ = __mul__


def combine(terms: Sequence[tuple]) -> QSeries:
    """Exact linear combination ``sum s_i f_i``; precision is the minimum over inputs."""
    terms = list(terms)
    if not terms:
        raise UsageError("combine() needs at least one (scalar, series) pair")
    prec = min(f.precision for _, f in terms)
    out = [Fraction(0)] * prec
    for s, f in terms:
        s = _as_fraction(s)
        if s == 0:
            continue
        fc = f.coeffs
        for n in range(prec):
            c = fc[n]
            if c:
                out[n] += s * c
    return QSeries._raw(tuple(out))


def _scaled_integers(f: QSeries):
    den = lcm(*(c.denominator for c in f.coeffs)) if f.precision else 1
    return np.array([c.numerator * (den // c.denominator) for c in f.coeffs],
                    dtype=object), den


def mul(f: QSeries, g: QSeries) -> QSeries:
    """Cauchy product truncated to ``min(P_f, P_g)``.

    Both factors are scaled to integers over a common denominator; the loop
    runs over the nonzero terms of the sparser factor, which keeps products
    with theta series cheap.
    """
    prec = min(f.precision, g.precision)
    if prec == 0:
        return QSeries._raw(())
    fi, fd = _scaled_integers(f.truncate(prec))
    gi, gd = _scaled_integers(g.truncate(prec))
    f_nz = np.flatnonzero(fi != 0)
    g_nz = np.flatnonzero(gi != 0)
    if len(g_nz) > len(f_nz):
        fi, gi, f_nz, g_nz = gi, fi, g_nz, f_nz
    acc = np.zeros(prec, dtype=object)
    for j in g_nz:
        j = int(j)
        acc[j:] += gi[j] * fi[:prec - j]
    den = fd * gd
    return QSeries._raw(tuple(Fraction(int(v), den) for v in acc))


def op_U(f: QSeries, d: int) -> QSeries:
    """``f | U(d)``: coefficient n of the result is coefficient n*d of f."""
    if d < 1:
        raise UsageError(f"U(d) needs d >= 1, got {d}")
    return QSeries._raw(f.coeffs[::d][: f.precision // d])


def op_V(f: QSeries, d: int, cap: int | None = None) -> QSeries:
    """``f | V(d)``, i.e. f(q^d).  Precision becomes ``d * P`` (optionally capped)."""
    if d < 1:
        raise UsageError(f"V(d) needs d >= 1, got {d}")
    prec = d * f.precision
    if cap is not None:
        prec = min(prec, cap)
    out = [Fraction(0)] * prec
    for n, c in enumerate(f.coeffs):
        if n * d >= prec:
            break
        out[n * d] = c
    return QSeries._raw(tuple(out))


@dataclass(frozen=True)
class ResidueWeight:
    """A rational-valued function on residues modulo ``modulus``."""

    modulus: int
    values: tuple

    def __post_init__(self):
        if self.modulus < 1:
            raise UsageError(f"modulus must be positive, got {self.modulus}")
        vals = tuple(_as_fraction(v) for v in self.values)
        if len(vals) != self.modulus:
            raise UsageError(
                f"expected {self.modulus} residue values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    def __call__(self, n: int) -> Fraction:
        return self.values[n % self.modulus]

    @classmethod
    def ones(cls, modulus: int = 1) -> "ResidueWeight":
        return cls(modulus, (1,) * modulus)


def op_twist(f: QSeries, w: ResidueWeight) -> QSeries:
    m, vals = w.modulus, w.values
    return QSeries._raw(tuple(c * vals[n % m] if c else c
                              for n, c in enumerate(f.coeffs)))


def op_sieve(f: QSeries, N: int, r: int) -> QSeries:
    """``f | S_{N,r}``: keep exponents congruent to r mod N, zero the rest."""
    if N < 1:
        raise UsageError(f"sieve modulus must be positive, got {N}")
    r %= N
    zero = Fraction(0)
    return QSeries._raw(tuple(c if n % N == r else zero
                              for n, c in enumerate(f.coeffs)))


def coeff(f: QSeries, n: int) -> Fraction:
    if n < 0:
        raise UsageError(f"negative exponent {n}")
    if n >= f.precision:
        raise PrecisionError(
            f"coefficient {n} requested from a series of precision {f.precision}")
    return f.coeffs[n]


@dataclass(frozen=True)
class Mismatch:
    n: int
    lhs: Fraction
    rhs: Fraction


def equal_upto(f: QSeries, g: QSeries, bound: int, exponents=None):
    """Compare f and g on exponents ``0 .. bound-1``.

    Returns ``None`` when they agree, otherwise the least mismatching exponent
    as a :class:`Mismatch`.  ``exponents`` optionally restricts the comparison
    to an iterable of exponents below ``bound``.
    """
    if bound < 1:
        raise UsageError(f"comparison bound must be positive, got {bound}")
    if bound > f.precision or bound > g.precision:
        raise PrecisionError(
            f"bound {bound} exceeds precision ({f.precision}, {g.precision})")
    fc, gc = f.coeffs, g.coeffs
    for n in (range(bound) if exponents is None else exponents):
        if fc[n] != gc[n]:
            return Mismatch(n, fc[n], gc[n])
    return None



def format_rational(x: Fraction) -> str:
    """``num/den``, or just ``num`` for integers."""
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
