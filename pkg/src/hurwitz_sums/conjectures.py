"""Affine prime formulas H_{a,p}(l) = c1*l + c2, checked exactly against class sums."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .class_numbers import class_sum, is_prime, primes_upto, table_upto
from .errors import UsageError
from .qseries import format_rational

F = Fraction

# (p, a residues, l residues mod p, c1, c2); a residues come in +-a pairs
FORMULA_ROWS = (
    (3, (0,), (1,), F(1, 2), F(1, 2)),
    (3, (0,), (2,), F(1), F(-1)),

    (5, (0,), (1,), F(1, 2), F(1, 2)),
    (5, (0,), (2, 3), F(1, 3), F(1, 3)),
    (5, (0,), (4,), F(1, 2), F(-3, 2)),
    (5, (1, 4), (1, 2), F(1, 3), F(1, 3)),
    (5, (1, 4), (3,), F(1, 2), F(-1, 2)),
    (5, (1, 4), (4,), F(5, 12), F(5, 12)),
    (5, (2, 3), (1,), F(5, 12), F(-7, 12)),
    (5, (2, 3), (2,), F(1, 2), F(-1, 2)),
    (5, (2, 3), (3, 4), F(1, 3), F(1, 3)),

    (7, (1, 6), (1,), F(1, 3), F(1, 3)),
    (7, (1, 6), (3, 6), F(1, 4), F(1, 4)),
    (7, (2, 5), (3, 5), F(1, 4), F(1, 4)),
    (7, (3, 4), (5, 6), F(1, 4), F(1, 4)),
)

SUPPORTED_PRIMES = (3, 5, 7)


def formula(a: int, p: int, L: int):
    """``(c1, c2)`` for the residue pair, or None if no formula is recorded."""
    if p not in SUPPORTED_PRIMES:
        raise UsageError(f"formulas are recorded only for p in {SUPPORTED_PRIMES}")
    a, L = a % p, L % p
    for rp, ares, lres, c1, c2 in FORMULA_ROWS:
        if rp == p and a in ares and L in lres:
            return c1, c2
    return None


def conjecture_value(a: int, p: int, ell: int):
    """Predicted ``H_{a,p}(ell)`` for a prime ``ell`` not divisible by p, or None."""
    if not is_prime(ell):
        raise UsageError(f"ell={ell} is not prime")
    if ell == p:
        raise UsageError(f"ell must differ from p={p}")
    row = formula(a, p, ell)
    if row is None:
        return None
    c1, c2 = row
    return c1 * ell + c2


@dataclass
class ConjectureReport:
    p: int
    a_class: int
    L_class: int
    primes_checked: int = 0
    failures: list = field(default_factory=list)  # (ell, expected, got)
    skipped: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"p": self.p, "a_class": self.a_class, "L_class": self.L_class,
                "primes_checked": self.primes_checked, "skipped": self.skipped,
                "failures": [{"ell": ell, "expected": format_rational(e),
                              "got": format_rational(g)}
                             for ell, e, g in self.failures]}


def check_conjectures(p: int, max_prime: int) -> list[ConjectureReport]:
    """One report per (a mod p, l mod p) pair, in ascending order of a then L.

    Pairs without a recorded formula come back with ``skipped=True``.
    """
    if p not in SUPPORTED_PRIMES:
        raise UsageError(f"formulas are recorded only for p in {SUPPORTED_PRIMES}")
    if max_prime < 2:
        raise UsageError(f"max_prime must be at least 2, got {max_prime}")
    table = table_upto(4 * max_prime)
    primes = [ell for ell in primes_upto(max_prime) if ell != p]
    reports = []
    for a in range(p):
        for L in range(1, p):
            rep = ConjectureReport(p, a, L)
            row = formula(a, p, L)
            if row is None:
                rep.skipped = True
                reports.append(rep)
                continue
            c1, c2 = row
            for ell in primes:
                if ell % p != L:
                    continue
                got = class_sum(a, p, ell, table)
                expected = c1 * ell + c2
                rep.primes_checked += 1
                if got != expected:
                    rep.failures.append((ell, expected, got))
            reports.append(rep)
    return reports


@dataclass(frozen=True)
class ScanResult:
    a: int
    p: int
    L: int
    c1: Fraction
    c2: Fraction
    affine: bool
    samples: int
    counterexample: tuple | None  # (ell, predicted, got)

    def to_dict(self) -> dict:
        ce = None
        if self.counterexample is not None:
            ell, e, g = self.counterexample
            ce = {"ell": ell, "predicted": format_rational(e), "got": format_rational(g)}
        return {"a": self.a, "p": self.p, "L": self.L,
                "c1": format_rational(self.c1), "c2": format_rational(self.c2),
                "affine": self.affine, "samples": self.samples, "counterexample": ce}


def empirical_scan(a: int, p: int, L: int, max_prime: int) -> ScanResult:
    """Fit c1*l + c2 through the first two primes l = L (mod p), then test the rest.

    Exploratory only: nothing is asserted about pairs without a recorded formula.
    """
    if p % 2 == 0 or not is_prime(p):
        raise UsageError(f"p={p} is not an odd prime")
    if L % p == 0:
        raise UsageError("L must be a unit mod p")
    primes = [ell for ell in primes_upto(max_prime) if ell % p == L % p]
    if len(primes) < 3:
        raise UsageError(
            f"need at least 3 primes = {L} (mod {p}) below {max_prime}, found {len(primes)}")
    table = table_upto(4 * max_prime)
    values = [class_sum(a, p, ell, table) for ell in primes]
    (l1, h1), (l2, h2) = zip(primes[:2], values[:2])
    c1 = (h2 - h1) / (l2 - l1)
    c2 = h1 - c1 * l1
    for ell, h in zip(primes[2:], values[2:]):
        if c1 * ell + c2 != h:
            return ScanResult(a, p, L % p, c1, c2, False, len(primes), (ell, c1 * ell + c2, h))
    return ScanResult(a, p, L % p, c1, c2, True, len(primes), None)


def reports_to_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports])
