import random
from fractions import Fraction

import pytest

from hurwitz_sums.class_numbers import (ClassNumberTable, build_table, class_sum, eichler_check,
                                        hurwitz, load_table, reduced_forms, save_table,
                                        table_io, table_upto)
from hurwitz_sums.errors import PrecisionError, TableFormatError, UsageError

import oracles


def _abc(forms):
    return [(f.a, f.b, f.c, f.multiplicity, f.weight) for f in forms]


def test_reduced_forms_small():
    assert _abc(reduced_forms(3)) == [(1, 1, 1, 1, Fraction(1, 3))]
    assert _abc(reduced_forms(4)) == [(1, 0, 1, 1, Fraction(1, 2))]
    assert _abc(reduced_forms(23)) == [(1, 1, 6, 1, 1), (2, 1, 3, 2, 1)]
    assert sum(f.multiplicity for f in reduced_forms(23)) == 3


def test_reduced_forms_invariants():
    for n in range(3, 600):
        if n % 4 in (1, 2):
            continue
        for f in reduced_forms(n):
            assert 0 <= f.b <= f.a <= f.c
            assert f.discriminant == -n


@pytest.mark.parametrize("n", [1, 2, 5, 6, 0, -4])
def test_reduced_forms_empty_domain(n):
    with pytest.raises(UsageError):
        reduced_forms(n)


@pytest.mark.parametrize("n,value", [
    (0, Fraction(-1, 12)), (3, Fraction(1, 3)), (4, Fraction(1, 2)), (7, 1), (8, 1),
    (11, 1), (12, Fraction(4, 3)), (15, 2), (16, Fraction(3, 2)), (20, 2), (23, 3),
    (5, 0), (6, 0),
])
def test_hurwitz_values(n, value):
    assert hurwitz(n) == value
    assert oracles.hurwitz_reduced(n) == value


def test_hurwitz_negative():
    with pytest.raises(UsageError):
        hurwitz(-3)


def test_hurwitz_matches_reduced_scan():
    for n in range(0, 1500):
        assert hurwitz(n) == oracles.hurwitz_reduced(n), n


def test_three_squares_relation():
    # r3(n) = 12 (H(4n) - 2 H(n)), checked by brute-force lattice counting
    for n in range(1, 160):
        assert oracles.r3(n) == 12 * (hurwitz(4 * n) - 2 * hurwitz(n)), n


def test_build_table_examples():
    assert build_table(4).twelve_h == (-1, 0, 0, 4, 6)
    assert build_table(0).twelve_h == (-1,)
    t = build_table(400)
    assert all(t.twelve_h[n] == 0 for n in range(401) if n % 4 in (1, 2))


def test_table_matches_enumeration():
    t = build_table(6000)
    for n in range(6001):
        assert t.h(n) == hurwitz(n), n


def test_table_cache_coherence():
    t = table_upto(100000)
    rng = random.Random(20261018)
    for n in rng.sample(range(100001), 1000):
        assert t.h(n) == hurwitz(n)


def test_table_bounds():
    t = build_table(10)
    with pytest.raises(PrecisionError):
        t.twelve(11)


def test_table_roundtrip(tmp_path):
    t = build_table(100)
    path = tmp_path / "h.txt"
    save_table(t, path)
    assert load_table(path) == t
    assert table_io(None, path, "load") == t
    text = path.read_bytes()
    assert text.startswith(b"HURWITZ-12H v1 max=100\n-1\n0\n0\n4\n6\n")
    assert b"\r" not in text and text.endswith(b"\n")


def test_table_bad_magic(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("HURWITZ-13H v1 max=1\n-1\n0\n")
    with pytest.raises(TableFormatError) as err:
        load_table(path)
    assert err.value.line == 1


def test_table_non_integer(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("HURWITZ-12H v1 max=3\n-1\n0\nx\n4\n")
    with pytest.raises(TableFormatError) as err:
        load_table(path)
    assert err.value.line == 4


def test_table_truncated(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("HURWITZ-12H v1 max=5\n-1\n0\n0\n")
    with pytest.raises(TableFormatError):
        load_table(path)


def test_table_trailing_whitespace(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("HURWITZ-12H v1 max=1\n-1 \n0\n")
    with pytest.raises(TableFormatError) as err:
        load_table(path)
    assert err.value.line == 2


def test_class_sum_examples():
    assert class_sum(0, 3, 7) == 4
    assert class_sum(0, 5, 19) == 8
    assert class_sum(1, 5, 3) == 1
    # m = 1 and m = -4 both contribute; the second is the H(0) boundary term
    assert class_sum(1, 5, 4) == Fraction(23, 12)


def test_class_sum_against_naive():
    for p in (3, 5, 7):
        for a in range(-p, p + 1):
            for n in range(1, 40):
                assert class_sum(a, p, n) == oracles.class_sum_naive(a, p, n, hurwitz)


@pytest.mark.parametrize("p", [2, 9, 1, 15])
def test_class_sum_rejects_non_odd_prime(p):
    with pytest.raises(UsageError):
        class_sum(0, p, 5)


def test_eichler_examples():
    assert eichler_check(3) == 6
    assert hurwitz(12) + 2 * hurwitz(11) + 2 * hurwitz(8) + 2 * hurwitz(3) == 6
    assert eichler_check(5) == 10
    assert eichler_check(13) == 26
    with pytest.raises(UsageError):
        eichler_check(9)


def test_table_rejects_empty():
    with pytest.raises(UsageError):
        ClassNumberTable([])


def test_class_sum_symmetry_and_aggregation():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 2000)
        p = rng.choice([3, 5, 7, 11, 13])
        a = rng.randrange(p)
        assert class_sum(a, p, n) == class_sum(-a, p, n) == class_sum(a + p, p, n)
        total = sum(class_sum(b, p, n) for b in range(p))
        # sum over all m of H(4n - m^2) against 2 sigma(n) minus the small-divisor term
        lam = sum(min(d, n // d) for d in range(1, n + 1) if n % d == 0)
        assert total == 2 * oracles.sigma(n) - lam
