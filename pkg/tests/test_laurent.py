"""
Tests for Laurent polynomials
"""
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from errors import ContractViolationError, ParameterError
from laurent import LaurentPolynomial, ONE, V, V_INV, ZERO

polynomials = st.dictionaries(
    st.integers(min_value=-4, max_value=4),
    st.integers(min_value=-5, max_value=5),
    max_size=4,
).map(LaurentPolynomial)


class TestLaurentPolynomial:
    def test_normal_form(self):
        """Test descending exponents in the printed normal form"""
        p = LaurentPolynomial({0: 1, 4: 1, 2: 2})
        assert str(p) == "v^4+2v^2+1"
        assert str(LaurentPolynomial({-1: -1, 1: 1})) == "v-v^-1"
        assert str(ZERO) == "0"

    def test_parse_normal_form(self):
        """Test parsing the printed normal form"""
        assert LaurentPolynomial.parse("v^4+2v^2+1") == LaurentPolynomial({4: 1, 2: 2, 0: 1})
        assert LaurentPolynomial.parse("-v^-2+3") == LaurentPolynomial({-2: -1, 0: 3})
        assert LaurentPolynomial.parse("0") == ZERO

    def test_parse_rejects_garbage(self):
        """Test that malformed text raises ParameterError"""
        with pytest.raises(ParameterError):
            LaurentPolynomial.parse("v^x")

    def test_zero_coefficients_trimmed(self):
        """Test that zero coefficients never survive"""
        p = LaurentPolynomial({1: 1}) - V
        assert p.is_zero()
        assert p == ZERO

    def test_degree_of_zero_raises(self):
        """Test that the zero polynomial has no degree"""
        with pytest.raises(ParameterError):
            ZERO.degree()

    def test_bar_involution(self):
        """Test v -> v^-1"""
        assert V.bar() == V_INV
        assert (V + V_INV).is_bar_invariant()

    def test_exact_division(self):
        """Test exact division by a balanced Poincare polynomial"""
        pi = V_INV + V
        assert (pi * pi).exact_div(pi) == pi
        assert (V ** 2 - V_INV ** 2).exact_div(V - V_INV) == V + V_INV

    def test_inexact_division_raises(self):
        """Test ContractViolationError on a remainder"""
        with pytest.raises(ContractViolationError):
            (V + ONE).exact_div(V + V_INV)

    def test_division_by_zero(self):
        """Test ZeroDivisionError on the zero divisor"""
        with pytest.raises(ZeroDivisionError):
            V.exact_div(ZERO)

    def test_negative_power_of_unit(self):
        """Test negative powers of unit monomials"""
        assert V ** -2 == LaurentPolynomial({-2: 1})
        with pytest.raises(ParameterError):
            (V + ONE) ** -1

    def test_json_round_trip(self):
        """Test JSON encoding keeps big coefficients exact"""
        p = LaurentPolynomial({3: 10 ** 30, -1: -7})
        assert LaurentPolynomial.from_json(p.to_json()) == p

    def test_int_coercion(self):
        """Test mixing with integers"""
        assert V + 1 == LaurentPolynomial({1: 1, 0: 1})
        assert 2 * V == LaurentPolynomial({1: 2})
        assert ONE == 1


class TestLaurentRingAxioms:
    @given(polynomials, polynomials, polynomials)
    @hyp_settings(max_examples=50, deadline=None)
    def test_distributive(self, a, b, c):
        """Test a(b + c) = ab + ac"""
        assert a * (b + c) == a * b + a * c

    @given(polynomials, polynomials)
    @hyp_settings(max_examples=50, deadline=None)
    def test_commutative(self, a, b):
        """Test ab = ba"""
        assert a * b == b * a

    @given(polynomials, polynomials)
    @hyp_settings(max_examples=50, deadline=None)
    def test_bar_is_ring_map(self, a, b):
        """Test bar(ab) = bar(a) bar(b)"""
        assert (a * b).bar() == a.bar() * b.bar()

    @given(polynomials, polynomials)
    @hyp_settings(max_examples=50, deadline=None)
    def test_division_undoes_multiplication(self, a, b):
        """Test (ab) / b = a for b nonzero"""
        if b.is_zero():
            return
        assert (a * b).exact_div(b) == a

    @given(polynomials)
    @hyp_settings(max_examples=50, deadline=None)
    def test_parse_inverts_str(self, a):
        """Test that the normal form parses back"""
        assert LaurentPolynomial.parse(str(a)) == a
