from fractions import Fraction

import pytest

from scaleshift.series import (
    BivariateSeries,
    NonIntegralCoefficientError,
    RationalFunction,
    TruncatedSeries,
    poly_mul,
    poly_sub,
)


def S(*coeffs, order=None):
    return TruncatedSeries(list(coeffs), order)


def test_add_and_mul_basics():
    one_plus = S(1, 1, order=4)
    one_minus = S(1, -1, order=4)
    assert (one_plus * one_minus) == S(1, 0, -1, order=4)
    g = S(0, 1, 1, order=4)
    assert (g * g) == S(0, 0, 1, 2, 1, order=4)


def test_expanded_rational_plus_zero():
    c = RationalFunction([1, -1], [1, -2]).expand(8)
    assert (c + TruncatedSeries.zero(8)).integer_coeffs() == (1, 1, 2, 4, 8, 16, 32, 64, 128)


def test_scalar_arithmetic():
    g = S(0, 1, order=3)
    assert (1 - g) == S(1, -1, order=3)
    assert (2 * g) == S(0, 2, order=3)
    assert (g * Fraction(1, 2)) == S(0, Fraction(1, 2), order=3)


def test_mismatched_orders_rejected():
    with pytest.raises(ValueError):
        S(1, order=3) + S(1, order=4)
    with pytest.raises(ValueError):
        S(1, order=3) * S(1, order=4)


def test_quasi_inverse_fibonacci():
    g = S(0, 1, 1, order=8)
    assert g.quasi_inverse().integer_coeffs() == (1, 1, 2, 3, 5, 8, 13, 21, 34)


def test_quasi_inverse_of_zero():
    assert TruncatedSeries.zero(5).quasi_inverse() == TruncatedSeries.one(5)


def test_quasi_inverse_geometric_tail():
    # g = z^2/(1-z); 1/(1-g) = (1-z)/(1-z-z^2)
    g = RationalFunction([0, 0, 1], [1, -1]).expand(6)
    assert g.quasi_inverse().integer_coeffs() == (1, 0, 1, 1, 2, 3, 5)


def test_quasi_inverse_rejects_constant_term():
    with pytest.raises(ValueError):
        S(1, 1, order=3).quasi_inverse()


def test_quasi_inverse_defining_identity():
    for coeffs in [(0, 1, 1), (0, 2, 0, 3), (0, 0, 1, 0, 1, 1)]:
        g = TruncatedSeries(list(coeffs), 12)
        assert g.quasi_inverse() * (1 - g) == TruncatedSeries.one(12)


def test_log_quasi_inverse_of_z():
    log = S(0, 1, order=6).log_quasi_inverse()
    assert log.coeffs == tuple(Fraction(1, n) if n else Fraction(0) for n in range(7))


def test_log_quasi_inverse_of_2z():
    log = S(0, 2, order=6).log_quasi_inverse()
    assert log.coeffs[1:] == tuple(Fraction(2**n, n) for n in range(1, 7))


def test_log_quasi_inverse_matches_power_sum():
    # independent route: sum g^i / i by repeated multiplication
    for coeffs in [(0, 1, 1), (0, 1, 0, 2), (0, 0, 3, 1)]:
        g = TruncatedSeries(list(coeffs), 10)
        total = TruncatedSeries.zero(10)
        power = TruncatedSeries.one(10)
        for i in range(1, 11):
            power = power * g
            total = total + power * Fraction(1, i)
        assert g.log_quasi_inverse() == total


def test_exp_log_round_trip():
    for coeffs in [(0, 1, 1), (0, 1), (0, 2, 0, 0, 1), (0, 0, 1, 1, 1)]:
        g = TruncatedSeries(list(coeffs), 12)
        assert g.log_quasi_inverse().exp() == g.quasi_inverse()


def test_derivative_of_log_identity():
    for coeffs in [(0, 1, 1), (0, 3, 0, 1)]:
        g = TruncatedSeries(list(coeffs), 10)
        lhs = g.log_quasi_inverse().derivative()
        rhs = (g.derivative() * g.quasi_inverse().truncate(9)).truncate(9)
        assert lhs == rhs


def test_substitute_power():
    f = S(0, 1, 1, order=6)
    assert f.substitute_power(2) == S(0, 0, 1, 0, 1, order=6)
    assert TruncatedSeries.one(6).substitute_power(5) == TruncatedSeries.one(6)
    geo = S(0, 1, order=7).quasi_inverse()
    assert geo.substitute_power(3).integer_coeffs() == (1, 0, 0, 1, 0, 0, 1, 0)
    with pytest.raises(ValueError):
        f.substitute_power(0)


def test_expand_examples():
    assert RationalFunction([1, -1], [1, -2]).expand(5).integer_coeffs() == (1, 1, 2, 4, 8, 16)
    assert RationalFunction([1], [1, -1, -1]).expand(5).integer_coeffs() == (1, 1, 2, 3, 5, 8)
    assert RationalFunction([0, 1, -1], [1, -1, -1]).expand(6).integer_coeffs() == (
        0, 1, 0, 1, 1, 2, 3,
    )


def test_expand_rejects_bad_denominator():
    with pytest.raises(ValueError):
        RationalFunction([1], [0, 1])
    with pytest.raises(ValueError):
        RationalFunction([1], [])


def test_integral_view():
    assert S(1, 2, 3).integer_coeffs() == (1, 2, 3)
    bad = S(1, Fraction(1, 2))
    assert not bad.is_integral()
    with pytest.raises(NonIntegralCoefficientError):
        bad.integer_coeffs()


def test_json_round_trip_shapes():
    f = S(1, 0, 7, order=3)
    assert f.to_json() == {"order": 3, "coeffs": ["1", "0", "7", "0"]}
    g = S(0, Fraction(1, 3), order=1)
    assert g.to_debug_json() == {"order": 1, "coeffs": ["0", "1/3"]}
    with pytest.raises(NonIntegralCoefficientError):
        g.to_json()


def test_poly_helpers():
    assert poly_sub([1, 0, 0], [1, -1, -1]) == (0, 1, 1)
    assert poly_mul([1, 1], [1, -1]) == (1, 0, -1)
    assert poly_mul([], [1, 2]) == ()


# -- bivariate -------------------------------------------------------------


def u_marked_parts(parts, order):
    """Bivariate series u * sum_{k in parts} z^k."""
    total = BivariateSeries.zero(order)
    for k in parts:
        total = total + BivariateSeries.term(1, k, 1, order)
    return total


def test_bivariate_triangular_shape_enforced():
    with pytest.raises(ValueError):
        BivariateSeries.term(1, 1, 2, 4)
    with pytest.raises(ValueError):
        BivariateSeries([[0], [0, 0, 0]], 4)


def test_bivariate_compositions_by_length():
    # 1/(1 - u(z + z^2)): compositions of n with parts in {1,2}, u marks length
    comp = u_marked_parts({1, 2}, 6).quasi_inverse()
    assert comp.coefficient(0, 0) == 1
    # n = 4: (1,1,1,1); (1,1,2) x3 orderings; (2,2)
    assert [comp.coefficient(4, m) for m in range(5)] == [0, 0, 1, 3, 1]
    assert comp.at_u1().integer_coeffs() == (1, 1, 2, 3, 5, 8, 13)


def test_bivariate_partial_u_trivial():
    f = BivariateSeries.zero(4)
    for n in range(1, 5):
        f = f + BivariateSeries.term(1, n, 1, 4)
    assert f.partial_u_at_1() == TruncatedSeries([0, 1, 1, 1, 1], 4)
    assert BivariateSeries.zero(4).partial_u_at_1() == TruncatedSeries.zero(4)


def test_bivariate_partial_u_tail_class():
    # a(z,u) = u z (1-z) / (1 - z - u z^2); d/du at u=1 gives z + 2z^3 + 2z^4 + 5z^5 + 8z^6
    order = 6
    uz = BivariateSeries.term(1, 1, 1, order)
    uz2 = BivariateSeries.term(1, 2, 1, order)
    z = BivariateSeries.term(1, 1, 0, order)
    a = (uz - uz * z) * (z + uz2).quasi_inverse()
    assert a.partial_u_at_1().integer_coeffs() == (0, 1, 0, 2, 2, 5, 8)


def test_bivariate_length_weighted_matches_partial():
    comp = u_marked_parts({1, 3}, 8).quasi_inverse()
    weighted = comp.length_weighted()
    assert weighted.at_u1() == comp.partial_u_at_1()
    for n in range(9):
        for m in range(n + 1):
            assert weighted.coefficient(n, m) == m * comp.coefficient(n, m)


def test_bivariate_u1_commutes_with_operations():
    f = u_marked_parts({1, 2}, 8)
    g = u_marked_parts({2, 3}, 8)
    assert (f + g).at_u1() == f.at_u1() + g.at_u1()
    assert (f * g).at_u1() == f.at_u1() * g.at_u1()
    assert f.quasi_inverse().at_u1() == f.at_u1().quasi_inverse()


def test_bivariate_mul_commutes_and_associates():
    a = u_marked_parts({1}, 6)
    b = u_marked_parts({2, 3}, 6)
    c = BivariateSeries.term(2, 1, 0, 6) + BivariateSeries.one(6)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


def test_bivariate_integer_rows_and_json():
    f = BivariateSeries.term(3, 2, 1, 2)
    assert f.integer_rows() == ((0,), (0, 0), (0, 3, 0))
    assert f.to_json() == {"order": 2, "rows": [["0"], ["0", "0"], ["0", "3", "0"]]}
    bad = BivariateSeries.term(Fraction(1, 2), 1, 1, 1)
    with pytest.raises(NonIntegralCoefficientError):
        bad.integer_rows()
