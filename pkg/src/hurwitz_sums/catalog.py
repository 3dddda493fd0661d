"""Named q-series and residue weights: H, theta, D, G, g7 and the class-sum series."""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

import numpy as np

from .class_numbers import ClassNumberTable, _require_odd_prime, is_prime, table_upto
from .errors import PrecisionError, UsageError
from .qseries import QSeries, ResidueWeight, mul, op_twist, op_U

# curve y^2 + xy = x^3 - x^2 - 2x - 1, conductor 49, CM by Q(sqrt(-7))
G7_CURVE = (1, -1, 0, -2, -1)  # a1, a2, a3, a4, a6
G7_BAD_PRIME = 7


def series_H(prec: int, table: ClassNumberTable | None = None) -> QSeries:
    """Generating function of the Hurwitz class numbers, H(0) = -1/12."""
    if table is None:
        table = table_upto(max(prec - 1, 0))
    if prec - 1 > table.max_n:
        raise PrecisionError(
            f"class-number table reaches {table.max_n}, need {prec - 1}")
    return QSeries.from_integers(table.twelve_h[:prec], 12)


def series_theta(a: int, N: int, prec: int) -> QSeries:
    """Unary theta series: sum of q^(m^2) over integers m = a (mod N)."""
    if N < 1:
        raise UsageError(f"theta modulus must be positive, got {N}")
    c = [0] * prec
    M = isqrt(prec - 1) if prec > 0 else -1
    for m in range(-M, M + 1):
        if (m - a) % N == 0:
            c[m * m] += 1
    return QSeries.from_integers(c)


@lru_cache(maxsize=8)
def _sigma_list(prec: int) -> tuple:
    s = np.zeros(prec, dtype=np.int64)
    for d in range(1, prec):
        s[d::d] += d
    return tuple(s.tolist())


def sigma(n: int) -> int:
    if n < 1:
        raise UsageError(f"sigma(n) needs n >= 1, got {n}")
    return _sigma_list(n + 1)[n]


def series_D(prec: int) -> QSeries:
    """sum_{n>=1} sigma(n) q^n."""
    return QSeries.from_integers(_sigma_list(prec))


def legendre(n: int, p: int) -> int:
    r = pow(n % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


WEIGHT_KINDS = {
    "legendre": lambda chi: chi,
    "trivial": lambda chi: chi * chi,
    "legendre*(legendre-1)": lambda chi: chi * (chi - 1),
    "legendre*(1+legendre)": lambda chi: chi * (1 + chi),
}
_KIND_ALIASES = {
    "chi": "legendre",
    "chi^2": "trivial",
    "chi(chi-1)": "legendre*(legendre-1)",
    "chi(1+chi)": "legendre*(1+legendre)",
}


def make_weight(kind: str, p: int) -> ResidueWeight:
    """Residue weight mod p built from the Legendre symbol; residue 0 always maps to 0."""
    kind = _KIND_ALIASES.get(kind, kind)
    if kind not in WEIGHT_KINDS:
        raise UsageError(f"unsupported weight kind {kind!r}")
    _require_odd_prime(p)
    fn = WEIGHT_KINDS[kind]
    return ResidueWeight(p, tuple(fn(legendre(n, p)) for n in range(p)))


def series_G(N: int, r: int, prec: int) -> QSeries:
    """Divisor-sum series G_{N,r}.

    coeff(n) = sum over factorizations n = d d' with d' > d of d * mult(d), where
    mult(d) counts the sign choices s in {+r, -r} with d = s (mod N), plus m
    when n = m^2 with m >= 1 and m = -r (mod N).
    """
    if N < 1:
        raise UsageError(f"G modulus must be positive, got {N}")
    plus, minus = r % N, (-r) % N
    c = [0] * prec
    d = 1
    while d * (d + 1) < prec:
        mult = (d % N == plus) + (d % N == minus)
        if mult:
            w = d * mult
            for n in range(d * (d + 1), prec, d):
                c[n] += w
        d += 1
    m = 1
    while m * m < prec:
        if m % N == minus:
            c[m * m] += m
        m += 1
    return QSeries.from_integers(c)


def count_points_scan(ell: int, curve=G7_CURVE) -> int:
    """#E(F_ell) by testing every affine (x, y), plus the point at infinity."""
    a1, a2, a3, a4, a6 = curve
    x = np.arange(ell, dtype=np.int64)[:, None]
    y = np.arange(ell, dtype=np.int64)[None, :]
    lhs = (y * y + a1 * x * y + a3 * y) % ell
    rhs = (((x * x % ell) * x) + a2 * x * x + a4 * x + a6) % ell
    return int(np.count_nonzero(lhs == rhs)) + 1


def ec_ap(ell: int) -> int:
    """Trace of Frobenius of the conductor-49 curve at the prime ell (0 at ell = 7)."""
    if not is_prime(ell):
        raise UsageError(f"ell={ell} is not prime")
    if ell == G7_BAD_PRIME:
        return 0
    return ell + 1 - count_points_scan(ell)


@lru_cache(maxsize=4)
def _g7_list(prec: int) -> tuple:
    a = [0] * prec
    if prec > 1:
        a[1] = 1
    spf = list(range(prec))
    for d in range(2, isqrt(max(prec - 1, 0)) + 1):
        if spf[d] == d:
            for k in range(d * d, prec, d):
                if spf[k] == k:
                    spf[k] = d
    for n in range(2, prec):
        ell = spf[n]
        m, k = n, 0
        while m % ell == 0:
            m //= ell
            k += 1
        if m > 1:
            a[n] = a[m] * a[n // m]
            continue
        # n = ell^k
        if ell == G7_BAD_PRIME:
            a[n] = 0
        elif k == 1:
            a[n] = ec_ap(ell)
        else:
            a[n] = a[ell] * a[n // ell] - ell * a[n // (ell * ell)]
    return tuple(a)


def series_g7(prec: int) -> QSeries:
    """Weight-2 newform of level 49 attached to y^2 + xy = x^3 - x^2 - 2x - 1."""
    return QSeries.from_integers(_g7_list(prec))


def series_classsum_lhs(a: int, p: int, prec: int,
                        table: ClassNumberTable | None = None) -> QSeries:
    """(H(q) theta_{a,p}) | U(4) twisted by the trivial character mod p.

    Its n-th coefficient is H_{a,p}(n) when p does not divide n and 0 otherwise.
    """
    _require_odd_prime(p)
    big = 4 * prec
    product = mul(series_H(big, table), series_theta(a, p, big))
    return op_twist(op_U(product, 4), make_weight("trivial", p))


def _build(name: str, prec: int, **params) -> QSeries:
    if name == "H":
        return series_H(prec)
    if name == "D":
        return series_D(prec)
    if name == "g7":
        return series_g7(prec)
    if name == "theta":
        return series_theta(params["a"], params["N"], prec)
    if name == "G":
        return series_G(params["N"], params["r"], prec)
    if name == "classsum":
        return series_classsum_lhs(params["a"], params["p"], prec)
    raise UsageError(f"unknown series {name!r}")


SERIES_NAMES = ("H", "D", "g7", "theta", "G", "classsum")
SERIES_PARAMS = {"H": (), "D": (), "g7": (), "theta": ("a", "N"),
                 "G": ("N", "r"), "classsum": ("a", "p")}


def build_series(name: str, prec: int, **params) -> QSeries:
    """Look up a catalog series by name; used by the command-line dump."""
    need = SERIES_PARAMS.get(name)
    if need is None:
        raise UsageError(f"unknown series {name!r}; choose from {', '.join(SERIES_NAMES)}")
    missing = [k for k in need if params.get(k) is None]
    if missing:
        raise UsageError(f"series {name} needs {', '.join('--' + k for k in missing)}")
    if prec < 1:
        raise UsageError(f"precision must be positive, got {prec}")
    return _build(name, prec, **params)


def series_to_rows(f: QSeries):
    """(exponent, numerator, denominator) triples, for CSV export."""
    return [(n, c.numerator, c.denominator) for n, c in enumerate(f.coeffs)]

