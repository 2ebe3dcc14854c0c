"""
Exact arithmetic in cyclotomic fields Q(zeta_L).

An element of Q(zeta_L) is stored in the power basis 1, z, ..., z^(phi(L)-1)
and always kept reduced modulo the cyclotomic polynomial Phi_L, so equality
is coefficient comparison. Polynomial products and remainders are delegated
to FLINT's rational polynomials; the cyclotomic polynomials themselves are
computed here by exact integer division.

Elements that are known to be r * zeta^e (r rational) carry that fact as a
hint, which makes their inverses and mutual products cheap. Words in the
generators of a canonical representation with rational or root-of-unity c
stay in this form, so the matrix code rarely needs a genuine field inversion.
"""
from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from flint import fmpq, fmpq_poly

from .errors import DivisionByZero, IncompatibleOrders, OrderMismatch
from .numtheory import euler_phi, factorize

Scalar = int | Fraction


# -- cyclotomic polynomials ---------------------------------------------------


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    """Quotient of integer polynomials (ascending coefficients), den monic.

    Raises ArithmeticError if the division leaves a remainder.
    """
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        quot[i - dn] = c
        for j, d in enumerate(den):
            if d:
                num[i - dn + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return quot


def _substitute_power(coeffs: list[int], k: int) -> list[int]:
    """f(x) -> f(x^k)."""
    out = [0] * ((len(coeffs) - 1) * k + 1)
    out[::k] = coeffs
    return out


@dataclass(frozen=True)
class CycPoly:
    """The L-th cyclotomic polynomial, integer coefficients in ascending degree."""

    order: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            mag = str(abs(c)) if (abs(c) != 1 or i == 0) else ""
            sign = "-" if c < 0 else "+"
            terms.append((sign, mag + mono))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> CycPoly:
    """Phi_L by iterated exact division.

    Phi_1 = x - 1. For the squarefree kernel n*p (p prime, p not dividing n),
    Phi_{np}(x) = Phi_n(x^p) / Phi_n(x), an exact division; finally
    Phi_L(x) = Phi_rad(L)(x^(L/rad(L))).
    """
    if L < 1:
        raise ValueError(f"cyclotomic order must be positive, got {L}")
    if L == 1:
        return CycPoly(1, (-1, 1))
    primes = factorize(L).primes
    rad = math.prod(primes)
    if rad != L:
        base = cyclotomic_polynomial(rad).coeffs
        return CycPoly(L, tuple(_substitute_power(list(base), L // rad)))
    n = L // primes[-1]
    prev = list(cyclotomic_polynomial(n).coeffs)
    coeffs = _exact_divide(_substitute_power(prev, primes[-1]), prev)
    return CycPoly(L, tuple(coeffs))


@functools.lru_cache(maxsize=None)
def _modulus(L: int) -> fmpq_poly:
    return fmpq_poly(list(cyclotomic_polynomial(L).coeffs))


def _fmpq(x: Scalar) -> fmpq:
    if isinstance(x, int):
        return fmpq(x)
    return fmpq(x.numerator, x.denominator)


def _fraction(x: fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def _as_rational(x) -> Fraction | None:
    if isinstance(x, _RationalABC) and not isinstance(x, bool):
        return Fraction(x)
    return None


# -- field elements -----------------------------------------------------------


class CycNum:
    """An exact element of Q(zeta_L).

    >>> z = zeta(3, 1)
    >>> z + z * z
    CycNum(3, [-1, 0])
    """

    __slots__ = ("order", "_poly", "_unit")

    def __init__(self, order: int, coeffs=()):
        if order < 1:
            raise ValueError(f"cyclotomic order must be positive, got {order}")
        self.order = order
        poly = fmpq_poly([_fmpq(Fraction(c)) for c in coeffs])
        if poly.degree() >= euler_phi(order):
            poly = poly % _modulus(order)
        self._poly = poly
        self._unit = None

    @classmethod
    def _wrap(cls, order: int, poly: fmpq_poly, unit=None) -> CycNum:
        obj = cls.__new__(cls)
        obj.order = order
        obj._poly = poly
        obj._unit = unit
        return obj

    @classmethod
    def rational(cls, value: Scalar, order: int = 1) -> CycNum:
        value = Fraction(value)
        unit = (0, value) if value else None
        return cls._wrap(order, fmpq_poly([_fmpq(value)]), unit)

    # structure

    @property
    def degree(self) -> int:
        """Dimension phi(L) of the field over Q."""
        return euler_phi(self.order)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        vals = [_fraction(c) for c in self._poly.coeffs()]
        return tuple(vals + [Fraction(0)] * (self.degree - len(vals)))

    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def __bool__(self) -> bool:
        return not self._poly.is_zero()

    def is_rational(self) -> bool:
        return self._poly.degree() <= 0

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return _fraction(self._poly.coeffs()[0]) if self else Fraction(0)

    def unit_form(self) -> tuple[int, Fraction] | None:
        """(e, r) with self == r * zeta_L^e when known cheaply, else None."""
        if self._unit is not None:
            return self._unit
        if self.is_rational() and self:
            return (0, self.rational_value())
        cs = self._poly.coeffs()
        if cs and all(c == 0 for c in cs[:-1]):
            return (len(cs) - 1, _fraction(cs[-1]))
        return None

    # comparisons

    def __eq__(self, other) -> bool:
        if isinstance(other, CycNum):
            return self.order == other.order and self._poly == other._poly
        r = _as_rational(other)
        if r is None:
            return NotImplemented
        return self._poly == fmpq_poly([_fmpq(r)])

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.rational_value())
        return hash((self.order, tuple(self.coeffs)))

    # arithmetic

    def _coerce(self, other) -> CycNum | None:
        if isinstance(other, CycNum):
            if other.order != self.order:
                raise OrderMismatch(
                    f"cannot combine Q(zeta_{self.order}) with Q(zeta_{other.order})"
                )
            return other
        r = _as_rational(other)
        if r is None:
            return None
        return CycNum.rational(r, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycNum._wrap(self.order, self._poly + other._poly)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycNum._wrap(self.order, self._poly - other._poly)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        unit = self._unit
        if unit is not None:
            unit = (unit[0], -unit[1])
        return CycNum._wrap(self.order, -self._poly, unit)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self or not other:
            return CycNum._wrap(self.order, fmpq_poly([]))
        u, v = self._unit, other._unit
        if u is not None and v is not None:
            return zeta(self.order, u[0] + v[0]).scale(u[1] * v[1])
        if u is not None and u[0] == 0:
            return other.scale(u[1])
        if v is not None and v[0] == 0:
            return self.scale(v[1])
        prod = self._poly * other._poly
        if prod.degree() >= self.degree:
            prod = prod % _modulus(self.order)
        return CycNum._wrap(self.order, prod)

    __rmul__ = __mul__

    def scale(self, r: Scalar) -> CycNum:
        """Multiply by a rational number."""
        r = Fraction(r)
        if r == 0:
            return CycNum._wrap(self.order, fmpq_poly([]))
        unit = self._unit
        if unit is not None:
            unit = (unit[0], unit[1] * r)
        return CycNum._wrap(self.order, self._poly * _fmpq(r), unit)

    def inverse(self) -> CycNum:
        if not self:
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        u = self.unit_form()
        if u is not None:
            return zeta(self.order, -u[0]).scale(1 / u[1])
        g, s, _ = self._poly.xgcd(_modulus(self.order))
        # Phi_L is irreducible, so the gcd is a nonzero constant.
        inv = s / g.coeffs()[0] if g.degree() == 0 else None
        if inv is None:
            raise ArithmeticError("cyclotomic modulus is not irreducible")
        return CycNum._wrap(self.order, inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> CycNum:
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inverse(), -k
        u = base.unit_form()
        if u is not None:
            return zeta(self.order, u[0] * k).scale(u[1] ** k)
        out = CycNum.rational(1, self.order)
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # embeddings

    def change_order(self, M: int) -> CycNum:
        return change_order(self, M)

    def to_complex(self) -> complex:
        return to_complex(self)

    def __complex__(self) -> complex:
        return to_complex(self)

    def __repr__(self) -> str:
        return f"CycNum({self.order}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else f"z{self.order}" if i == 1 else f"z{self.order}^{i}"
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            elif mono:
                terms.append(f"({c})*{mono}" if c.denominator != 1 or c < 0 else f"{c}*{mono}")
            else:
                terms.append(str(c))
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


@functools.lru_cache(maxsize=65536)
def _zeta_poly(L: int, e: int) -> fmpq_poly:
    mono = fmpq_poly([0] * e + [1])
    if e >= euler_phi(L):
        mono = mono % _modulus(L)
    return mono


def zeta(L: int, t: int = 1) -> CycNum:
    """zeta_L^t in canonical form; zeta(L, 0) is 1."""
    if L < 1:
        raise ValueError(f"cyclotomic order must be positive, got {L}")
    e = t % L
    return CycNum._wrap(L, _zeta_poly(L, e), (e, Fraction(1)))


def rational(value: Scalar, order: int = 1) -> CycNum:
    return CycNum.rational(value, order)


def add(x: CycNum, y: CycNum) -> CycNum:
    return x + y


def sub(x: CycNum, y: CycNum) -> CycNum:
    return x - y


def mul(x: CycNum, y: CycNum) -> CycNum:
    return x * y


def neg(x: CycNum) -> CycNum:
    return -x


def inverse(x: CycNum) -> CycNum:
    return x.inverse()


def change_order(x: CycNum, M: int) -> CycNum:
    """Re-express x in Q(zeta_M) through zeta_L -> zeta_M^(M/L)."""
    L = x.order
    if M < 1 or M % L:
        raise IncompatibleOrders(f"Q(zeta_{L}) does not embed in Q(zeta_{M})")
    if M == L:
        return x
    k = M // L
    unit = x._unit
    if unit is not None:
        return zeta(M, unit[0] * k).scale(unit[1])
    cs = x._poly.coeffs()
    spread = [fmpq(0)] * ((len(cs) - 1) * k + 1) if cs else []
    spread[::k] = cs
    poly = fmpq_poly(spread)
    if poly.degree() >= euler_phi(M):
        poly = poly % _modulus(M)
    return CycNum._wrap(M, poly)


def common_order(*xs: CycNum) -> int:
    return math.lcm(*(x.order for x in xs))


def lift_common(*xs: CycNum) -> tuple[CycNum, ...]:
    """Lift every operand to Q(zeta_M) with M the lcm of their orders."""
    M = common_order(*xs)
    return tuple(change_order(x, M) for x in xs)


def to_complex(x: CycNum) -> complex:
    """Principal embedding zeta_L -> exp(2 pi i / L)."""
    L = x.order
    re, im = [], []
    for j, c in enumerate(x._poly.coeffs()):
        if c == 0:
            continue
        w = cmath.exp(2j * math.pi * j / L)
        f = float(_fraction(c))
        re.append(f * w.real)
        im.append(f * w.imag)
    return complex(math.fsum(re), math.fsum(im))
