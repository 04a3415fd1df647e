"""Commutative polynomial toolbox: gcd, Groebner closure, rational functions."""

import random

import pytest

from hopf_forge.coeff import FE_ONE, FieldElem, rat
from hopf_forge.ratfunc import (PolyRing, Polynomial, RationalFunction, groebner,
                                poly_gcd, reduce_poly)

R3 = PolyRing(("x", "y", "z"))


def rand_poly(rng, ring=R3, max_terms=4, max_deg=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in ring.vars)
        terms[e] = FieldElem(rat(rng.randint(-5, 5), rng.randint(1, 3)))
    return Polynomial(ring, terms)


def to_sympy(p, xs):
    import sympy
    out = 0
    for e, c in p.terms.items():
        t = sympy.Rational(int(c.a.numerator), int(c.a.denominator))
        for s, k in zip(xs, e):
            if k:
                t *= s ** k
        out += t
    return sympy.expand(out)


class TestPolynomial:
    def test_arithmetic(self):
        x, y = R3.var("x"), R3.var("y")
        p = (x + y) * (x - y)
        assert p == x * x - y * y

    def test_leading_grlex(self):
        x, y, z = (R3.var(v) for v in "xyz")
        p = x * y + z * z * z
        assert p.leading()[0] == (0, 0, 3)

    def test_derivative(self):
        x, y = R3.var("x"), R3.var("y")
        p = x * x * y + y
        assert p.derivative("x") == x * y * 2

    def test_exact_gcd_of_products(self):
        x, y = R3.var("x"), R3.var("y")
        g = x + y
        a = g * (x - y)
        b = g * (x * x + 1)
        assert poly_gcd(a, b) == g

    def test_monomial_fast_path(self):
        x, y = R3.var("x"), R3.var("y")
        a = x * x * y * 3
        b = x * y * y + x * x * y
        assert poly_gcd(a, b) == x * y

    def test_gcd_vs_sympy(self):
        sympy = pytest.importorskip("sympy")
        xs = sympy.symbols("x y z")
        rng = random.Random(7)
        for _ in range(15):
            g = rand_poly(rng, max_terms=2, max_deg=1)
            a = rand_poly(rng, max_terms=3, max_deg=2) * g
            b = rand_poly(rng, max_terms=3, max_deg=2) * g
            mine = poly_gcd(a, b)
            theirs = sympy.gcd(to_sympy(a, xs), to_sympy(b, xs))
            # both are defined up to scalars; compare monic-normalized quotients
            q = sympy.simplify(to_sympy(mine, xs) / theirs)
            assert q.is_constant(), (mine, theirs)


class TestGroebner:
    def test_reduction_detects_membership(self):
        x, y = R3.var("x"), R3.var("y")
        basis = groebner([x * x - 1, y - x])
        assert reduce_poly(y * y - 1, basis).is_zero()
        assert not reduce_poly(x + 1, basis).is_zero()

    def test_matches_sympy_on_lorentz_ideal(self):
        sympy = pytest.importorskip("sympy")
        from hopf_forge.repfrt import orthogonality_groebner, orthogonality_quadrics
        gb = orthogonality_groebner()
        names = [f"L{m}{n}" for m in range(3) for n in range(3)]
        xs = sympy.symbols(names + ["a_plus", "a_1", "a_minus"])
        gens = [to_sympy(q, xs) for q in orthogonality_quadrics()]
        G = sympy.groebner(gens, *xs[:9], order="grlex")
        assert all(G.reduce(to_sympy(p, xs))[1] == 0 for p in gb)
        mine = [to_sympy(p, xs) for p in gb]
        for g in G.exprs:
            _, r = sympy.reduced(g, mine, *xs[:9], order="grlex")
            assert sympy.expand(r) == 0

    def test_transposed_orthogonality_lies_in_ideal(self):
        # L eta L^T = eta forces L^T eta L = eta as well
        from hopf_forge.repfrt import RING12, lvar, ideal_reduce, ETA
        for mu in range(3):
            for rho in range(mu, 3):
                q = RING12.constant(FieldElem(-ETA[mu] if mu == rho else 0))
                for nu in range(3):
                    q = q + lvar(nu, mu) * lvar(nu, rho) * FieldElem(ETA[nu])
                assert ideal_reduce(q).is_zero()


class TestRationalFunction:
    def test_canonical_monic_denominator(self):
        x = R3.var("x")
        f = RationalFunction(R3.one(), x * 2)
        assert f.den == x
        assert f.num == R3.one() * FieldElem(rat(1, 2))

    def test_reduction(self):
        x, y = R3.var("x"), R3.var("y")
        f = RationalFunction((x + y) * x, x * x)
        assert f == RationalFunction(x + y, x)

    def test_arithmetic_and_inverse(self):
        x, y = R3.var("x"), R3.var("y")
        f = RationalFunction(x, y)
        g = RationalFunction(y, x)
        assert f * g == RationalFunction.from_poly(R3.one())
        assert f + g == RationalFunction(x * x + y * y, x * y)
        assert f + f == RationalFunction(x * 2, y)

    def test_derivative_quotient_rule(self):
        x, y = R3.var("x"), R3.var("y")
        f = RationalFunction(y, x)
        assert f.derivative("x") == RationalFunction(-y, x * x)

    def test_denominator_never_zero(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(R3.one(), R3.zero())
