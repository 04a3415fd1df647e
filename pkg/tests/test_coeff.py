"""Exact scalar layer: field arithmetic, truncated series, Laurent series."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopf_forge.coeff import (DeformationSeries, FE_ONE, FieldElem, LaurentSeries,
                              NonInvertible, NonzeroConstantTerm, PoleDetected,
                              ZeroDivisor, rat)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
field_elems = st.builds(lambda a, b: FieldElem(rat(a.numerator, a.denominator),
                                               rat(b.numerator, b.denominator)),
                        rationals, rationals)


def ds(coeffs, param="z", order=None):
    order = order if order is not None else len(coeffs) - 1
    return DeformationSeries.from_coeffs([FieldElem(rat(c) if not isinstance(c, tuple)
                                                    else rat(*c)) for c in coeffs],
                                         param, order)


# -- independent oracle: naive series arithmetic over Fraction -----------------

def brute_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= order:
                out[i + j] += x * y
    return out


def brute_exp(coeffs, order):
    acc = [Fraction(1)] + [Fraction(0)] * order
    term = list(acc)
    for k in range(1, order + 1):
        term = brute_mul(term, coeffs, order)
        term = [c / k for c in term]
        acc = [x + y for x, y in zip(acc, term)]
    return acc


class TestFieldElem:
    def test_inverse_via_conjugate(self):
        x = FieldElem(rat(3, 2), rat(-1, 3))
        assert x * x.inverse() == FE_ONE

    def test_zero_has_no_inverse(self):
        with pytest.raises(NonInvertible):
            FieldElem(0, 0).inverse()

    def test_sqrt2_squares_to_two(self):
        assert FieldElem(0, 1) * FieldElem(0, 1) == FieldElem(2)

    @given(field_elems, field_elems, field_elems)
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x
        assert x * y == y * x

    @given(field_elems)
    @settings(max_examples=40, deadline=None)
    def test_inverse_round_trip(self, x):
        if not x.is_zero():
            assert x * x.inverse() == FE_ONE

    def test_serialization_quad(self):
        x = FieldElem(rat(3, 4), rat(-5, 7))
        assert FieldElem.from_quad(x.as_quad()) == x


class TestSeriesExp:
    def test_exp_2z(self):
        s = ds([0, 2], order=2)
        assert s.exp() == ds([1, 2, 2], order=2)

    def test_exp_zero_is_one(self):
        s = DeformationSeries.zero("z", 3)
        assert s.exp() == DeformationSeries.one("z", 3)

    def test_exp_z_plus_z2(self):
        # derived: brute-force expansion of sum (z+z^2)^k / k!
        expected = brute_exp([Fraction(0), Fraction(1), Fraction(1), Fraction(0)], 3)
        got = ds([0, 1, 1, 0], order=3).exp()
        assert [c.a for c in got.coeffs] == [rat(e.numerator, e.denominator)
                                             for e in expected]
        assert got == ds([1, 1, (3, 2), (7, 6)], order=3)

    def test_exp_requires_zero_constant_term(self):
        with pytest.raises(NonzeroConstantTerm):
            ds([1, 1], order=1).exp()

    @given(st.lists(rationals, min_size=1, max_size=4))
    @settings(max_examples=40, deadline=None)
    def test_exp_additivity(self, tail):
        # exp(a) * exp(b) = exp(a+b) for commuting scalar series
        order = 4
        a = ds([0] + [(c.numerator, c.denominator) for c in tail], order=order)
        b = ds([0, 1, 0, (1, 2)], order=order)
        assert a.exp() * b.exp() == (a + b).exp()


class TestSeriesInverse:
    def test_geometric(self):
        assert ds([1, -1, 0, 0]).inverse() == ds([1, 1, 1, 1])

    def test_one(self):
        one = DeformationSeries.one("z", 2)
        assert one.inverse() == one

    def test_solves_convolution(self):
        s = ds([1, 2, 2])
        inv = s.inverse()
        assert inv == ds([1, -2, 2])
        assert s * inv == DeformationSeries.one("z", 2)

    def test_zero_constant_term_rejected(self):
        with pytest.raises(NonInvertible):
            ds([0, 1]).inverse()

    @given(st.lists(rationals, min_size=2, max_size=5))
    @settings(max_examples=40, deadline=None)
    def test_random_inverses(self, coeffs):
        if coeffs[0] == 0:
            coeffs[0] = Fraction(1)
        s = ds([(c.numerator, c.denominator) for c in coeffs])
        assert s * s.inverse() == DeformationSeries.one("z", s.order)


class TestLaurent:
    def ls(self, terms, order):
        return LaurentSeries.from_terms(
            {k: FieldElem(rat(v) if not isinstance(v, tuple) else rat(*v))
             for k, v in terms.items()}, "w", order)

    def test_divide_multiplies_back(self):
        a = self.ls({1: 1}, 3)
        b = self.ls({1: 2, 2: -2}, 3)
        q = a.divide(b)
        assert q.min_deg == 0
        assert [c.a for c in q.coeffs] == [rat(1, 2)] * 3
        back = q * b
        assert all(back.coefficient(k) == a.coefficient(k)
                   for k in range(1, back.order + 1))

    def test_one_over_w(self):
        q = self.ls({0: 1}, 2).divide(self.ls({1: 1}, 2))
        assert q.min_deg == -1
        assert q.coefficient(-1) == FE_ONE
        assert not q.is_regular()
        with pytest.raises(PoleDetected):
            q.to_series(1)

    def test_cancellation(self):
        q = self.ls({1: 1, 2: 1}, 3).divide(self.ls({1: 1}, 3))
        assert q.min_deg == 0
        assert q.coefficient(0) == FE_ONE and q.coefficient(1) == FE_ONE

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisor):
            self.ls({0: 1}, 2).divide(self.ls({}, 2))

    def test_regularity_after_exact_cancellation(self):
        # leading coefficients that cancel exactly leave a regular series
        s = self.ls({-1: 1, 0: 2}, 2) + self.ls({-1: -1}, 2)
        assert s.is_regular()


def test_sympy_oracle_agreement():
    sympy = pytest.importorskip("sympy")
    z = sympy.Symbol("z")
    expr = sympy.exp(z + z ** 2).series(z, 0, 4).removeO()
    want = [expr.coeff(z, k) for k in range(4)]
    got = ds([0, 1, 1, 0], order=3).exp()
    assert all(sympy.Rational(int(c.a.numerator), int(c.a.denominator)) == w
               for c, w in zip(got.coeffs, want))
