"""Exact scalar arithmetic.

Everything downstream is built on three layers of exact coefficients:

* :class:`FieldElem` -- the quadratic field Q(sqrt 2), stored as a pair of
  rationals.  The contraction of so(2,2) onto the null-plane algebra
  introduces 1/sqrt(2) scale factors, so plain rationals are not enough.
* :class:`DeformationSeries` -- power series in a named formal parameter,
  truncated at a fixed order.  All identities the engine checks are verified
  order by order in this parameter.
* :class:`LaurentSeries` -- series with finitely many negative powers.  Only
  used internally (contraction bookkeeping and the momentum-space Hamiltonian
  construction); user-facing values must pass the regularity predicate.

Rationals are gmpy2 ``mpq`` when available (much faster), with a
``fractions.Fraction`` fallback so the package stays importable anywhere.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _Q


def rat(num, den=1):
    """Exact rational number."""
    return _Q(num, den)


_R0 = rat(0)
_R1 = rat(1)


class CoeffError(ArithmeticError):
    pass


class NonzeroConstantTerm(CoeffError):
    """exp() of a series whose constant term is not zero."""


class NonInvertible(CoeffError):
    """Inverse of a series whose constant term is not invertible."""


class ZeroDivisor(CoeffError):
    """Division by a series that is zero to the tracked order."""


class PoleDetected(CoeffError):
    """A value that must be regular has a pole (negative-degree term)."""


class FieldElem:
    """Element a + b*sqrt(2) of Q(sqrt 2) with exact rational components."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _Q(a)
        self.b = _Q(b)

    def is_zero(self):
        return not self.a and not self.b

    def is_rational(self):
        return not self.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, type(_R0))):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _fe(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _fe(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _fe(other.a - self.a, other.b - self.b)

    def __neg__(self):
        return _fe(-self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            a1, b1, a2, b2 = self.a, self.b, other.a, other.b
            if not b1 and not b2:
                return _fe(a1 * a2, _R0)
            return _fe(a1 * a2 + 2 * b1 * b2, a1 * b2 + b1 * a2)
        if isinstance(other, (int, type(_R0))):
            return _fe(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        # (a + b*sqrt2)(a - b*sqrt2) = a^2 - 2 b^2, nonzero for any nonzero
        # element since sqrt2 is irrational.
        n = self.a * self.a - 2 * self.b * self.b
        if not n:
            raise NonInvertible("zero element of Q(sqrt2)")
        return _fe(self.a / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, FieldElem):
            return self * other.inverse()
        if isinstance(other, (int, type(_R0))):
            if not other:
                raise ZeroDivisionError
            return _fe(self.a / other, self.b / other)
        return NotImplemented

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = FE_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return _fe(self.a, -self.b)

    def __repr__(self):
        return f"FieldElem({self.a!s}, {self.b!s})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        sq = "sqrt2" if self.b == 1 else ("-sqrt2" if self.b == -1 else f"{self.b}*sqrt2")
        if not self.a:
            return sq
        return f"{self.a}+{sq}" if self.b > 0 else f"{self.a}{sq}"

    def as_quad(self):
        """[a_num, a_den, b_num, b_den] for serialization."""
        return [int(self.a.numerator), int(self.a.denominator),
                int(self.b.numerator), int(self.b.denominator)]

    @classmethod
    def from_quad(cls, quad):
        an, ad, bn, bd = quad
        return cls(rat(an, ad), rat(bn, bd))


def _fe(a, b):
    e = FieldElem.__new__(FieldElem)
    e.a = a
    e.b = b
    return e


def _coerce(x):
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, (int, type(_R0))):
        return _fe(_Q(x), _R0)
    return None


FE_ZERO = FieldElem(0)
FE_ONE = FieldElem(1)
FE_SQRT2 = FieldElem(0, 1)


class Domain:
    """Coefficient domain of a series: its zero and one elements."""

    __slots__ = ("zero", "one", "name")

    def __init__(self, zero, one, name):
        self.zero = zero
        self.one = one
        self.name = name

    def __repr__(self):
        return f"Domain({self.name})"


FIELD = Domain(FE_ZERO, FE_ONE, "Q(sqrt2)")


class DeformationSeries:
    """Power series in one named parameter, truncated beyond a fixed order.

    Coefficients live in a declared domain (Q(sqrt2) by default); anything
    with ring operations, ``is_zero`` and ``inverse`` works, which is how the
    differential-representation module runs the same series over rational
    functions.
    """

    __slots__ = ("param", "order", "coeffs", "domain", "_val")

    def __init__(self, param, order, coeffs, domain=FIELD):
        if order < 0:
            raise ValueError("series order must be >= 0")
        coeffs = tuple(coeffs)
        if len(coeffs) != order + 1:
            raise ValueError("need exactly order+1 coefficients")
        self.param = param
        self.order = order
        self.coeffs = coeffs
        self.domain = domain
        v = order + 1
        for i, c in enumerate(coeffs):
            if not c.is_zero():
                v = i
                break
        self._val = v

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, param, order, domain=FIELD):
        return cls(param, order, (domain.zero,) * (order + 1), domain)

    @classmethod
    def one(cls, param, order, domain=FIELD):
        return cls.constant(domain.one, param, order, domain)

    @classmethod
    def constant(cls, value, param, order, domain=FIELD):
        return cls(param, order, (value,) + (domain.zero,) * order, domain)

    @classmethod
    def monomial(cls, value, degree, param, order, domain=FIELD):
        """value * param**degree, or zero if the degree exceeds the order."""
        if degree > order:
            return cls.zero(param, order, domain)
        c = [domain.zero] * (order + 1)
        c[degree] = value
        return cls(param, order, c, domain)

    @classmethod
    def from_coeffs(cls, coeffs, param, order, domain=FIELD):
        """Series from a (possibly short or long) coefficient list."""
        c = list(coeffs)[: order + 1]
        c += [domain.zero] * (order + 1 - len(c))
        return cls(param, order, c, domain)

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return self._val > self.order

    def val(self):
        """Valuation: degree of the lowest nonzero coefficient (order+1 if zero)."""
        return self._val

    def constant_term(self):
        return self.coeffs[0]

    def coefficient(self, k):
        return self.coeffs[k] if 0 <= k <= self.order else self.domain.zero

    def __eq__(self, other):
        if not isinstance(other, DeformationSeries):
            return NotImplemented
        return (self.param == other.param and self.order == other.order
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.param, self.order, self.coeffs))

    def __repr__(self):
        return f"DeformationSeries({self.param!r}, {self.order}, {list(map(str, self.coeffs))})"

    # -- ring operations ---------------------------------------------------

    def _check(self, other):
        if self.param != other.param or self.order != other.order:
            raise ValueError(
                f"series mismatch: {self.param}^{self.order} vs {other.param}^{other.order}")

    def __add__(self, other):
        if isinstance(other, DeformationSeries):
            self._check(other)
            return DeformationSeries(
                self.param, self.order,
                tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.domain)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, DeformationSeries):
            self._check(other)
            return DeformationSeries(
                self.param, self.order,
                tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.domain)
        return NotImplemented

    def __neg__(self):
        return DeformationSeries(self.param, self.order,
                                 tuple(-a for a in self.coeffs), self.domain)

    def __mul__(self, other):
        if isinstance(other, DeformationSeries):
            self._check(other)
            n = self.order
            if self._val + other._val > n:
                return DeformationSeries.zero(self.param, n, self.domain)
            out = [self.domain.zero] * (n + 1)
            for i in range(self._val, n + 1 - other._val):
                a = self.coeffs[i]
                if a.is_zero():
                    continue
                for j in range(other._val, n + 1 - i):
                    b = other.coeffs[j]
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
            return DeformationSeries(self.param, n, out, self.domain)
        if hasattr(other, "algebra"):
            # algebra elements own the product (scalars act on them, not here)
            return NotImplemented
        # scalar from the coefficient domain (or int)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        return DeformationSeries(self.param, self.order,
                                 tuple(a * c for a in self.coeffs), self.domain)

    def __truediv__(self, k):
        if isinstance(k, int):
            return DeformationSeries(self.param, self.order,
                                     tuple(a / k for a in self.coeffs), self.domain)
        return NotImplemented

    def shifted(self, k):
        """Multiply by param**k; for k < 0 the valuation must allow it."""
        if k == 0:
            return self
        n = self.order
        if k > 0:
            out = [self.domain.zero] * min(k, n + 1) + list(self.coeffs[: n + 1 - k])
        else:
            if self._val < -k:
                raise ZeroDivisor(f"valuation {self._val} too small to divide by {self.param}^{-k}")
            out = list(self.coeffs[-k:]) + [self.domain.zero] * (-k)
        return DeformationSeries(self.param, n, out, self.domain)

    def exp(self):
        """Series exponential; requires zero constant term."""
        if not self.coeffs[0].is_zero():
            raise NonzeroConstantTerm("exp of a series with nonzero constant term")
        out = DeformationSeries.one(self.param, self.order, self.domain)
        term = out
        for k in range(1, self.order + 1):
            term = (term * self) / k
            if term.is_zero():
                break
            out = out + term
        return out

    def inverse(self):
        """Multiplicative inverse; constant term must be invertible."""
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise NonInvertible("series with zero constant term")
        r0 = c0.inverse()
        out = [r0] + [self.domain.zero] * self.order
        for n in range(1, self.order + 1):
            acc = self.domain.zero
            for k in range(1, n + 1):
                ck = self.coeffs[k]
                if not ck.is_zero():
                    acc = acc + ck * out[n - k]
            out[n] = -(r0 * acc)
        return DeformationSeries(self.param, self.order, out, self.domain)

    def truncate0(self):
        """Keep only the constant term (the classical limit of a coefficient)."""
        return DeformationSeries.constant(self.coeffs[0], self.param, self.order, self.domain)

    def map_coeffs(self, f, domain=None):
        return DeformationSeries(self.param, self.order,
                                 tuple(f(c) for c in self.coeffs), domain or self.domain)


class LaurentSeries:
    """Series with a (possibly negative) minimum degree and a tracked top order.

    ``coeffs[i]`` is the coefficient of ``param**(min_deg + i)``; degrees above
    ``order`` are unknown, degrees below ``min_deg`` are exactly zero.  The
    representation is kept normalized: no leading or trailing stored zeros.
    """

    __slots__ = ("param", "min_deg", "coeffs", "order", "domain")

    def __init__(self, param, min_deg, coeffs, order, domain=FIELD):
        coeffs = list(coeffs)
        while coeffs and coeffs[0].is_zero():
            coeffs.pop(0)
            min_deg += 1
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if min_deg + len(coeffs) - 1 > order:
            raise ValueError("coefficients extend beyond the tracked order")
        if not coeffs:
            min_deg = 0
        self.param = param
        self.min_deg = min_deg
        self.coeffs = tuple(coeffs)
        self.order = order
        self.domain = domain

    @classmethod
    def from_terms(cls, terms, param, order, domain=FIELD):
        """Laurent series from a {degree: coefficient} mapping (exact data)."""
        if not terms:
            return cls(param, 0, (), order, domain)
        lo = min(terms)
        hi = max(terms)
        if hi > order:
            raise ValueError("term degree beyond tracked order")
        c = [domain.zero] * (hi - lo + 1)
        for d, v in terms.items():
            c[d - lo] = v
        return cls(param, lo, c, order, domain)

    @classmethod
    def from_series(cls, s):
        return cls(s.param, 0, s.coeffs, s.order, s.domain)

    def is_zero(self):
        return not self.coeffs

    def valuation(self):
        return self.min_deg if self.coeffs else None

    def is_regular(self):
        return self.min_deg >= 0 or not self.coeffs

    def coefficient(self, d):
        i = d - self.min_deg
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.domain.zero

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.param == other.param and self.min_deg == other.min_deg
                and self.coeffs == other.coeffs and self.order == other.order)

    def __repr__(self):
        return (f"LaurentSeries({self.param!r}, min_deg={self.min_deg}, "
                f"{list(map(str, self.coeffs))}, order={self.order})")

    def _check(self, other):
        if self.param != other.param:
            raise ValueError("parameter mismatch")

    def __add__(self, other):
        self._check(other)
        order = min(self.order, other.order)
        lo = min(self.min_deg if self.coeffs else order,
                 other.min_deg if other.coeffs else order)
        out = [self.domain.zero] * (order - lo + 1)
        for i, c in enumerate(self.coeffs):
            d = self.min_deg + i
            if d <= order:
                out[d - lo] = out[d - lo] + c
        for i, c in enumerate(other.coeffs):
            d = other.min_deg + i
            if d <= order:
                out[d - lo] = out[d - lo] + c
        return LaurentSeries(self.param, lo, out, order, self.domain)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentSeries(self.param, self.min_deg,
                             tuple(-c for c in self.coeffs), self.order, self.domain)

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            self._check(other)
            if self.is_zero() or other.is_zero():
                return LaurentSeries(self.param, 0, (), min(self.order, other.order), self.domain)
            # the unknown tail of one factor meets the lowest degree of the other
            order = min(self.order + other.min_deg, other.order + self.min_deg)
            lo = self.min_deg + other.min_deg
            out = [self.domain.zero] * (order - lo + 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    d = lo + i + j
                    if d > order:
                        break
                    if not b.is_zero():
                        out[d - lo] = out[d - lo] + a * b
            return LaurentSeries(self.param, lo, out, order, self.domain)
        return LaurentSeries(self.param, self.min_deg,
                             tuple(c * other for c in self.coeffs), self.order, self.domain)

    __rmul__ = __mul__

    def shifted(self, k):
        return LaurentSeries(self.param, self.min_deg + k, self.coeffs,
                             self.order + k, self.domain)

    def divide(self, other):
        """self / other to the honestly-tracked order.

        The divisor must be nonzero to its tracked order; the result has
        ``min_deg = self.valuation - other.valuation``.
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDivisor("division by a series that is zero to tracked order")
        vb = other.min_deg
        unit = other.shifted(-vb)          # valuation 0, invertible constant term
        rel = unit.order                    # relative precision of the unit part
        inv0 = unit.coeffs[0].inverse()
        inv = [inv0] + [self.domain.zero] * rel
        for n in range(1, rel + 1):
            acc = self.domain.zero
            for k in range(1, n + 1):
                ck = unit.coefficient(k)
                if not ck.is_zero():
                    acc = acc + ck * inv[n - k]
            inv[n] = -(inv0 * acc)
        unit_inv = LaurentSeries(self.param, 0, inv, rel, self.domain)
        return self.shifted(-vb) * unit_inv

    def to_series(self, order):
        """Convert to a DeformationSeries; raises PoleDetected if irregular."""
        if not self.is_regular():
            raise PoleDetected(f"pole of degree {self.min_deg} in {self.param}")
        if order > self.order:
            raise ValueError("requested order exceeds tracked precision")
        return DeformationSeries(
            self.param, order,
            [self.coefficient(d) for d in range(order + 1)], self.domain)
