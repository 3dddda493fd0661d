"""Both sides of the weight-2 class-number identities, compared coefficientwise.

Full identities (``p3``, ``p5_a0``, ``p5_a1``, ``p7_a0``) are certified once
they agree up to the valence-formula bound.  Restricted ``p=7`` identities only
hold on certain residue classes of exponents; they are checked to an extended
bound and reported as ``extended-verified``, never ``certified``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .catalog import (make_weight, series_classsum_lhs, series_D, series_G,
                      series_g7, series_H, series_theta)
from .class_numbers import _require_odd_prime, class_sum, table_upto
from .errors import UsageError
from .qseries import (Mismatch, QSeries, combine, equal_upto, format_rational,
                      mul, op_sieve, op_twist, op_U)

DEFAULT_EXTENDED_BOUND = 2000

# (a, residues r) pairs on which the a != 0, p = 7 identities are stated
P7_RESTRICTED = {1: (1, 3, 6), 2: (3, 5), 3: (5, 6)}


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    bound_used: int
    certified: bool
    first_mismatch: Mismatch | None
    coefficients_checked: int
    status: str

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None

    def to_dict(self) -> dict:
        mm = None
        if self.first_mismatch is not None:
            mm = {"n": self.first_mismatch.n,
                  "lhs": format_rational(self.first_mismatch.lhs),
                  "rhs": format_rational(self.first_mismatch.rhs)}
        return {"identity_id": self.identity_id,
                "bound_used": self.bound_used,
                "certified": self.certified,
                "first_mismatch": mm,
                "coefficients_checked": self.coefficients_checked,
                "status": self.status}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def sturm_bound(p: int, a_is_zero: bool = False) -> int:
    """Number of leading coefficients that pin down the identity for (p, a).

    ``ceil(p (p^2 - 1) / 6)`` in general and ``ceil(p (p + 1) / 6)`` when a = 0
    and the form lives on Gamma_0(p^2).
    """
    _require_odd_prime(p)
    num = p * (p + 1) if a_is_zero else p * (p * p - 1)
    return -(-num // 6)


def _classsum_unsieved(a: int, p: int, prec: int) -> QSeries:
    big = 4 * prec
    return op_U(mul(series_H(big), series_theta(a, p, big)), 4)


def theorem_lhs(a: int, p: int, prec: int) -> QSeries:
    """Class-sum series plus the G-correction over residues b with b != +-a (mod p).

    Each correction averages G_{p,a+b} and G_{p,-a-b}.  Their divisor parts agree, so
    the average only changes the square term, and after sieving only b = 0 is affected.
    This keeps the series invariant under a -> -a.
    """
    _require_odd_prime(p)
    terms = [(1, series_classsum_lhs(a, p, prec))]
    half = Fraction(1, 2)
    for b in range(p):
        if (b - a) % p == 0 or (b + a) % p == 0:
            continue
        s = a * a - b * b
        terms.append((half, op_sieve(series_G(p, a + b, prec), p, s)))
        terms.append((half, op_sieve(series_G(p, -a - b, prec), p, s)))
    return combine(terms)


def _tw(f: QSeries, kind: str, p: int) -> QSeries:
    return op_twist(f, make_weight(kind, p))


def _rhs_p3(prec):
    D = series_D(prec)
    return combine([
        (-2, op_sieve(series_G(3, 1, prec), 3, 2)),
        (1, _tw(D, "trivial", 3)),
        (Fraction(-1, 4), _tw(D, "legendre*(1+legendre)", 3)),
    ])


def _rhs_p5_a0(prec):
    D = series_D(prec)
    return combine([
        (Fraction(1, 2), _tw(D, "trivial", 5)),
        (Fraction(-1, 12), _tw(D, "legendre*(legendre-1)", 5)),
        (-2, op_sieve(series_G(5, 1, prec), 5, 4)),
        (-2, op_sieve(series_G(5, 2, prec), 5, 1)),
    ])


def _rhs_p5_a1(prec):
    D = series_D(prec)
    G1, G2, G3 = (series_G(5, r, prec) for r in (1, 2, 3))
    at3 = combine([(Fraction(1, 6), D), (-1, G1), (-1, G2)])
    at4 = combine([(Fraction(1, 12), D), (Fraction(-1, 2), G2), (Fraction(-1, 2), G3)])
    return combine([
        (Fraction(1, 3), _tw(D, "trivial", 5)),
        (1, op_sieve(at3, 5, 3)),
        (1, op_sieve(at4, 5, 4)),
    ])


def _rhs_p7_a0(prec):
    D = series_D(prec)
    return combine([
        (Fraction(1, 4), _tw(D, "trivial", 7)),
        (Fraction(1, 24), _tw(D, "legendre*(legendre-1)", 7)),
        (-2, op_sieve(series_G(7, 2, prec), 7, 3)),
        (-2, op_sieve(series_G(7, 4, prec), 7, -2)),
        (-2, op_sieve(series_G(7, 1, prec), 7, -1)),
        (Fraction(1, 4), series_g7(prec)),
    ])


def _rhs_p7_restricted(a, r, prec):
    D = series_D(prec)
    terms = [(Fraction(1, 4), D)]
    if a == 1 and r == 1:
        terms += [(Fraction(1, 12), D), (-1, series_G(7, 2, prec)),
                  (-1, series_G(7, 3, prec))]
    return op_sieve(combine(terms), 7, r)


FULL_IDENTITIES = {
    # id: (p, a, rhs builder)
    "p3": (3, 0, _rhs_p3),
    "p5_a0": (5, 0, _rhs_p5_a0),
    "p5_a1": (5, 1, _rhs_p5_a1),
    "p7_a0": (7, 0, _rhs_p7_a0),
}

_RESTRICTED_RE = re.compile(r"^p7_a(\d+)_r(\d+)$")


def restricted_ids() -> list[str]:
    return [f"p7_a{a}_r{r}" for a, rs in P7_RESTRICTED.items() for r in rs]


def identity_ids() -> list[str]:
    return list(FULL_IDENTITIES) + restricted_ids()


def _parse_restricted(identity_id: str):
    m = _RESTRICTED_RE.match(identity_id)
    if not m:
        return None
    a, r = int(m.group(1)), int(m.group(2))
    if r not in P7_RESTRICTED.get(a, ()):
        raise UsageError(f"no restricted p=7 identity for a={a}, r={r}")
    return a, r


def rhs_catalog(identity_id: str, prec: int) -> QSeries:
    """Right-hand side of the named identity to precision ``prec``."""
    if identity_id in FULL_IDENTITIES:
        return FULL_IDENTITIES[identity_id][2](prec)
    parsed = _parse_restricted(identity_id)
    if parsed is None:
        raise UsageError(f"unknown identity {identity_id!r}")
    return _rhs_p7_restricted(*parsed, prec)


def lhs_catalog(identity_id: str, prec: int) -> QSeries:
    """Class-number side of the named identity."""
    if identity_id in FULL_IDENTITIES:
        p, a, _ = FULL_IDENTITIES[identity_id]
        return series_classsum_lhs(a, p, prec)
    parsed = _parse_restricted(identity_id)
    if parsed is None:
        raise UsageError(f"unknown identity {identity_id!r}")
    a, r = parsed
    return op_sieve(_classsum_unsieved(a, 7, prec), 7, r)


def default_bound(identity_id: str) -> int:
    if identity_id in FULL_IDENTITIES:
        p, a, _ = FULL_IDENTITIES[identity_id]
        # the generic Gamma_0(p^2) cap Gamma_1(p) bound also covers a = 0
        return sturm_bound(p, a_is_zero=False)
    if _parse_restricted(identity_id) is None:
        raise UsageError(f"unknown identity {identity_id!r}")
    return DEFAULT_EXTENDED_BOUND


def compare(identity_id: str, lhs: QSeries, rhs: QSeries, bound: int) -> IdentityReport:
    """Compare two already-built sides and classify the outcome."""
    if bound < 1:
        raise UsageError(f"bound must be positive, got {bound}")
    parsed = None if identity_id in FULL_IDENTITIES else _parse_restricted(identity_id)
    if parsed is None and identity_id not in FULL_IDENTITIES:
        raise UsageError(f"unknown identity {identity_id!r}")
    if parsed is not None:
        r = parsed[1]
        exps = range(r % 7, bound, 7)
    else:
        exps = range(bound)
    mm = equal_upto(lhs, rhs, bound, exponents=exps)
    if mm is not None:
        status, certified = "failed", False
    elif parsed is not None:
        status, certified = "extended-verified", False
    elif bound >= default_bound(identity_id):
        status, certified = "certified", True
    else:
        # agreement below the certification bound proves nothing
        status, certified = "partial", False
    return IdentityReport(identity_id, bound, certified, mm, len(exps), status)


def verify_identity(identity_id: str, bound: int | None = None) -> IdentityReport:
    """Build both sides of ``identity_id`` and compare them below ``bound``.

    Without ``bound`` a full identity is checked to its certification bound
    and a restricted one to :data:`DEFAULT_EXTENDED_BOUND`.
    """
    if bound is None:
        bound = default_bound(identity_id)
    elif identity_id not in FULL_IDENTITIES and _parse_restricted(identity_id) is None:
        raise UsageError(f"unknown identity {identity_id!r}")
    if bound < 1:
        raise UsageError(f"bound must be positive, got {bound}")
    table_upto(4 * bound)
    return compare(identity_id, lhs_catalog(identity_id, bound),
                   rhs_catalog(identity_id, bound), bound)


def verify_known_dmz(prec: int) -> IdentityReport:
    """(H theta_{0,1}) | U(4) against 2 D - G_{1,0} - 1/12 on exponents below ``prec``."""
    if prec < 1:
        raise UsageError(f"precision must be positive, got {prec}")
    lhs = _classsum_unsieved(0, 1, prec)
    rhs = combine([(2, series_D(prec)), (-1, series_G(1, 0, prec))]) - Fraction(1, 12)
    mm = equal_upto(lhs, rhs, prec)
    status = "failed" if mm else "verified"
    return IdentityReport("dmz", prec, mm is None, mm, prec, status)


def verify_classsums_consistency(a: int, p: int, prec: int) -> IdentityReport:
    """Operator route to H_{a,p}(n) against the direct sum over m, for n < prec."""
    _require_odd_prime(p)
    series = series_classsum_lhs(a, p, prec)
    table = table_upto(4 * prec)
    direct = QSeries([0] + [0 if n % p == 0 else class_sum(a, p, n, table)
                            for n in range(1, prec)])
    mm = equal_upto(series, direct, prec)
    status = "failed" if mm else "verified"
    return IdentityReport(f"classsums_a{a}_p{p}", prec, mm is None, mm, prec, status)
