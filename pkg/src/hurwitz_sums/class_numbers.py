"""Hurwitz class numbers by counting reduced binary quadratic forms.

Two independent routes are provided.  :func:`hurwitz` enumerates the reduced
forms of one discriminant; :func:`build_table` sweeps every reduced form
``(a, b, c)`` with ``4ac - b^2 <= N`` at once and accumulates ``12 H(n)`` as
integers.  The module keeps one shared table that grows on demand.
"""

from __future__ import annotations

import os
import tempfile
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from pathlib import Path

import numpy as np

from .errors import PrecisionError, TableFormatError, UsageError

TABLE_MAGIC = "HURWITZ-12H"
TABLE_VERSION = "v1"


@dataclass(frozen=True)
class ReducedForm:
    a: int
    b: int
    c: int
    multiplicity: int
    weight: Fraction

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def contribution(self) -> Fraction:
        return self.multiplicity * self.weight


def _form(a: int, b: int, c: int) -> ReducedForm:
    if a == b == c:
        weight = Fraction(1, 3)
    elif b == 0 and a == c:
        weight = Fraction(1, 2)
    else:
        weight = Fraction(1)
    multiplicity = 2 if 0 < b < a < c else 1
    return ReducedForm(a, b, c, multiplicity, weight)


def reduced_forms(n: int) -> list[ReducedForm]:
    """Reduced forms ``0 <= b <= a <= c`` of discriminant ``-n``, b then a ascending.

    A form with ``0 < b < a < c`` stands for the pair ``(a, +-b, c)`` and has
    multiplicity 2.
    """
    if n < 1 or n % 4 in (1, 2):
        raise UsageError(f"no positive definite forms of discriminant -{n}")
    forms = []
    b = n % 2
    while 3 * b * b <= n:
        k = (n + b * b) // 4
        for a in range(max(b, 1), isqrt(k) + 1):
            if k % a == 0:
                forms.append(_form(a, b, k // a))
        b += 2
    return forms


def hurwitz(n: int) -> Fraction:
    """H(n) from a fresh form enumeration (no table involved)."""
    if n < 0:
        raise UsageError(f"H(n) is undefined for negative n={n}")
    if n == 0:
        return Fraction(-1, 12)
    if n % 4 in (1, 2):
        return Fraction(0)
    return sum((f.contribution for f in reduced_forms(n)), Fraction(0))


class ClassNumberTable:
    """Values ``12 H(n)`` for ``0 <= n <= max_n``, stored as Python ints."""

    __slots__ = ("_twelve_h",)

    def __init__(self, twelve_h):
        vals = tuple(int(v) for v in twelve_h)
        if not vals:
            raise UsageError("a class-number table needs at least the entry n=0")
        self._twelve_h = vals

    @property
    def max_n(self) -> int:
        return len(self._twelve_h) - 1

    @property
    def twelve_h(self) -> tuple:
        return self._twelve_h

    def twelve(self, n: int) -> int:
        if n < 0:
            raise UsageError(f"H(n) is undefined for negative n={n}")
        if n > self.max_n:
            raise PrecisionError(f"H({n}) requested from a table with max_n={self.max_n}")
        return self._twelve_h[n]

    def h(self, n: int) -> Fraction:
        return Fraction(self.twelve(n), 12)

    def __eq__(self, other):
        if not isinstance(other, ClassNumberTable):
            return NotImplemented
        return self._twelve_h == other._twelve_h

    def __hash__(self):
        return hash(self._twelve_h)

    def __repr__(self):
        return f"ClassNumberTable(max_n={self.max_n})"


def build_table(N: int) -> ClassNumberTable:
    """Sweep all reduced forms with ``4ac - b^2 <= N`` and accumulate 12 H(n)."""
    if N < 0:
        raise UsageError(f"table bound must be non-negative, got {N}")
    acc = np.zeros(N + 1, dtype=np.int64)
    acc[0] = -1
    b = 0
    while 3 * b * b <= N:
        a = max(b, 1)
        while 4 * a * a - b * b <= N:
            start = 4 * a * a - b * b
            step = 4 * a
            # c == a
            if b == 0:
                acc[start] += 6
            elif b == a:
                acc[start] += 4
            else:
                acc[start] += 12
            # c > a
            acc[start + step::step] += 12 if b in (0, a) else 24
            a += 1
        b += 1
    return ClassNumberTable(acc.tolist())


def save_table(table: ClassNumberTable, path) -> None:
    """Write the table atomically: temp file in the same directory, then rename."""
    path = Path(path)
    body = [f"{TABLE_MAGIC} {TABLE_VERSION} max={table.max_n}"]
    body.extend(str(v) for v in table.twelve_h)
    data = "\n".join(body) + "\n"
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_table(path) -> ClassNumberTable:
    with open(path, "r", encoding="ascii", newline="") as fh:
        text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TableFormatError("empty file", line=1)
    header = lines[0].split(" ")
    if len(header) != 3 or header[0] != TABLE_MAGIC or header[1] != TABLE_VERSION:
        raise TableFormatError(f"bad header {lines[0]!r}", line=1)
    if not header[2].startswith("max="):
        raise TableFormatError(f"bad header {lines[0]!r}", line=1)
    try:
        max_n = int(header[2][4:])
    except ValueError:
        raise TableFormatError(f"bad max field {header[2]!r}", line=1) from None
    values = []
    for i, raw in enumerate(lines[1:], start=2):
        if raw != raw.strip() or not raw:
            raise TableFormatError(f"malformed entry {raw!r}", line=i)
        try:
            values.append(int(raw))
        except ValueError:
            raise TableFormatError(f"non-integer entry {raw!r}", line=i) from None
    if len(values) != max_n + 1:
        raise TableFormatError(
            f"expected {max_n + 1} entries, found {len(values)}", line=len(lines) + 1)
    return ClassNumberTable(values)


def table_io(table, path, direction: str):
    """``direction`` is ``"save"`` or ``"load"``."""
    if direction == "save":
        save_table(table, path)
        return True
    if direction == "load":
        return load_table(path)
    raise UsageError(f"unknown direction {direction!r}")


_lock = threading.Lock()
_shared: ClassNumberTable | None = None


def table_upto(n: int) -> ClassNumberTable:
    """Shared table covering at least ``0..n``; rebuilt (doubling) when too short."""
    global _shared
    with _lock:
        if _shared is None or _shared.max_n < n:
            target = max(n, 2 * _shared.max_n if _shared is not None else 0, 1024)
            _shared = build_table(target)
        return _shared


def install_table(table: ClassNumberTable) -> None:
    """Make ``table`` the shared table unless a longer one is already present."""
    global _shared
    with _lock:
        if _shared is None or _shared.max_n < table.max_n:
            _shared = table


def shared_table() -> ClassNumberTable | None:
    return _shared


def reset_shared_table() -> None:
    global _shared
    with _lock:
        _shared = None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for d in range(2, isqrt(n) + 1):
        if sieve[d]:
            sieve[d * d::d] = False
    return np.flatnonzero(sieve).tolist()


def _require_odd_prime(p: int, name: str = "p") -> None:
    if p % 2 == 0 or not is_prime(p):
        raise UsageError(f"{name}={p} is not an odd prime")


def class_sum(a: int, p: int, n: int, table: ClassNumberTable | None = None) -> Fraction:
    """``H_{a,p}(n)``: sum of ``H(4n - m^2)`` over all m with ``m = a (mod p)``, ``m^2 <= 4n``.

    The boundary ``m^2 = 4n`` is included and contributes ``H(0) = -1/12``.
    """
    _require_odd_prime(p)
    if n < 1:
        raise UsageError(f"n must be positive, got {n}")
    if table is None:
        table = table_upto(4 * n)
    tw = table.twelve
    M = isqrt(4 * n)
    m = -M + (a + M) % p
    total = 0
    while m <= M:
        total += tw(4 * n - m * m)
        m += p
    return Fraction(total, 12)


def eichler_check(ell: int, table: ClassNumberTable | None = None) -> Fraction:
    """``sum_{|m| < 2 sqrt(ell)} H(4 ell - m^2)``, which equals ``2 ell`` for odd primes."""
    _require_odd_prime(ell, "ell")
    if table is None:
        table = table_upto(4 * ell)
    M = isqrt(4 * ell)
    if M * M == 4 * ell:
        M -= 1
    return Fraction(sum(table.twelve(4 * ell - m * m) for m in range(-M, M + 1)), 12)
