from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz_sums.catalog import make_weight, series_D, series_G, series_H, series_theta
from hurwitz_sums.errors import PrecisionError, UsageError
from hurwitz_sums.qseries import (QSeries, ResidueWeight, coeff, combine, equal_upto,
                                  format_rational, mul, op_sieve, op_twist, op_U, op_V)

import oracles

small_fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
series_st = st.lists(small_fracs, min_size=1, max_size=40).map(QSeries)


def test_combine_identity_and_symmetry():
    f = QSeries([1, 2, 3, 4])
    g = QSeries([5, 6])
    assert combine([(1, f), (0, g)]) == f.truncate(2)
    D = series_D(30)
    assert combine([(Fraction(1, 2), D), (Fraction(1, 2), D)]) == D


def test_combine_dmz_constant():
    s = combine([(2, series_D(10)), (-1, series_G(1, 0, 10))]) - Fraction(1, 12)
    assert s[0] == Fraction(-1, 12)
    # H(4) + 2H(3) + 2H(0) = 1
    assert s[1] == 1


def test_combine_empty():
    with pytest.raises(UsageError):
        combine([])


def test_mul_examples():
    f = QSeries([3, 1, 4, 1, 5])
    assert mul(f, QSeries.one(5)) == f
    assert mul(QSeries([1, 1, 0]), QSeries([1, 1, 0])) == QSeries([1, 2, 1])
    prod = mul(series_H(17), series_theta(0, 1, 17))
    assert prod[16] == 10


def test_mul_truncates_to_min():
    assert mul(QSeries([1, 1, 1, 1]), QSeries([1, 1])).precision == 2


def test_U_examples():
    f = QSeries([0, 1, 0, 0, 2, 0, 0, 0, 3])
    assert op_U(f, 1) == f
    # precision 9 // 4 = 2, the q^2 coefficient needs exponent 8 which is known
    assert op_U(QSeries([0, 1, 0, 0, 2, 0, 0, 0, 3, 0, 0, 0]), 4) == QSeries([0, 2, 3])
    g = op_U(mul(series_H(20), series_theta(0, 1, 20)), 4)
    assert g[4] == 10


def test_V_examples():
    assert op_V(QSeries([1, 1]), 2) == QSeries([1, 0, 1, 0])
    f = QSeries([1, 2, 3])
    assert op_U(op_V(f, 3), 3) == f
    assert op_V(op_U(series_D(60), 5), 5)[10] == 18
    assert op_V(f, 5, cap=7).precision == 7


def test_twist_examples():
    D = series_D(20)
    assert op_twist(D, ResidueWeight.ones(1)) == D
    assert op_twist(D, make_weight("legendre", 3))[2] == -3
    assert op_twist(D, make_weight("trivial", 5))[10] == 0


def test_sieve_examples():
    D = series_D(20)
    assert op_sieve(D, 3, 2)[2] == 3
    assert op_sieve(D, 3, 2)[4] == 0
    G = op_sieve(series_G(5, 1, 20), 5, 4)
    assert G[16] == 0
    assert G[4] == 1
    assert op_sieve(D, 3, -1) == op_sieve(D, 3, 2)


def test_coeff_examples_and_errors():
    assert coeff(series_H(10), 0) == Fraction(-1, 12)
    assert coeff(series_theta(0, 1, 5), 1) == 2
    assert coeff(series_H(10), 5) == 0
    with pytest.raises(PrecisionError):
        coeff(QSeries([1, 2]), 2)
    with pytest.raises(PrecisionError):
        QSeries([1])[7]


def test_equal_upto():
    D = series_D(12)
    assert equal_upto(D, D, 12) is None
    bumped = D + QSeries.monomial(7, 12)
    mm = equal_upto(D, bumped, 10)
    assert (mm.n, mm.lhs, mm.rhs) == (7, 8, 9)
    with pytest.raises(PrecisionError):
        equal_upto(D, D.truncate(5), 6)


def test_residue_weight_validation():
    with pytest.raises(UsageError):
        ResidueWeight(3, (1, 2))
    w = ResidueWeight(4, (0, 1, 0, -1))
    assert w(7) == -1


def test_format_rational():
    assert format_rational(Fraction(4, 3)) == "4/3"
    assert format_rational(Fraction(-6, 3)) == "-2"


# --- properties ---------------------------------------------------------

@settings(max_examples=200)
@given(series_st, st.integers(1, 6))
def test_U_after_V_is_identity(f, d):
    assert op_U(op_V(f, d), d) == f


@settings(max_examples=200)
@given(series_st, st.sampled_from([3, 5, 7, 11]))
def test_trivial_twist_is_one_minus_UV(f, p):
    via_twist = op_twist(f, make_weight("trivial", p))
    via_uv = combine([(1, f), (-1, op_V(op_U(f, p), p))])
    P = min(via_twist.precision, via_uv.precision)
    assert via_twist.truncate(P) == via_uv.truncate(P)


@settings(max_examples=200)
@given(series_st, st.integers(1, 9))
def test_sieve_partition(f, N):
    assert combine([(1, op_sieve(f, N, r)) for r in range(N)]) == f


@settings(max_examples=200)
@given(series_st, series_st, st.integers(1, 5), st.integers(1, 7), st.integers(-10, 10))
def test_ops_match_naive(f, g, d, N, r):
    fc, gc = list(f.coeffs), list(g.coeffs)
    assert list(mul(f, g).coeffs) == oracles.mul_naive(fc, gc)
    assert list(op_U(f, d).coeffs) == oracles.U_naive(fc, d)
    assert list(op_V(f, d).coeffs) == oracles.V_naive(fc, d)
    assert list(op_sieve(f, N, r).coeffs) == oracles.sieve_naive(fc, N, r)
    vals = [Fraction(r * k, N) for k in range(N)]
    assert list(op_twist(f, ResidueWeight(N, vals)).coeffs) == oracles.twist_naive(fc, vals)


@settings(max_examples=100)
@given(series_st)
def test_twist_by_ones_is_identity(f):
    assert op_twist(f, ResidueWeight.ones(4)) == f
