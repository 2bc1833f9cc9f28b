"""Truncated p-adic integers: residues modulo p**W with valuation tracking.

Everything approximate in the pipeline lives here. A context fixes the prime
and the working exponent ``W``; elements are residues in ``[0, p**W)``.
The valuation of the zero residue is not infinite but :data:`TOP`, meaning
"at least W": downstream code has to branch on precision exhaustion
explicitly instead of concluding that something vanishes identically.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from sympy import isprime

from .errors import DenominatorNotUnit, InvalidInput, NotAUnit, NotDivisible


@functools.total_ordering
class _Top:
    """Valuation of a residue that is zero to working precision.

    Compares greater than every integer, so ``min`` over a mix of integer
    valuations and ``TOP`` behaves as expected.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("holozeros.TOP")

    def __repr__(self):
        return "TOP"

    def __reduce__(self):
        return (_Top, ())


TOP = _Top()


def vp(x, p: int):
    """Exact p-adic valuation of a nonzero integer or rational (``TOP`` for 0)."""
    x = Fraction(x)
    if x == 0:
        return TOP
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def vp_factorial(k: int, p: int) -> int:
    """Legendre's formula: (k - digit_sum_p(k)) / (p - 1)."""
    s, n = 0, k
    while n:
        s += n % p
        n //= p
    return (k - s) // (p - 1)


@dataclass(frozen=True)
class PadicContext:
    """A prime ``p >= 5`` and working exponent ``W >= 2``; modulus is ``p**W``."""

    p: int
    W: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 5 or not isprime(self.p):
            raise InvalidInput(f"p must be a prime >= 5, got {self.p!r}")
        if not isinstance(self.W, int) or self.W < 2:
            raise InvalidInput(f"working exponent must be >= 2, got {self.W!r}")

    @functools.cached_property
    def modulus(self) -> int:
        return self.p ** self.W

    def __call__(self, x) -> "PadicInt":
        """Embed an int, Fraction or PadicInt into this context."""
        if isinstance(x, PadicInt):
            if x.ctx != self:
                raise InvalidInput("mixing elements of different p-adic contexts")
            return x
        if isinstance(x, int):
            return PadicInt(x % self.modulus, self)
        if isinstance(x, Rational):
            return from_rational(x.numerator, x.denominator, self)
        raise TypeError(f"cannot embed {type(x).__name__} into Z_p")

    def residue(self, x) -> int:
        """Reduce an int or p-integral rational to a bare residue."""
        if isinstance(x, int):
            return x % self.modulus
        return self(x).residue

    def val(self, r: int):
        """Valuation of a bare residue (``TOP`` if it is 0 mod p**W)."""
        r %= self.modulus
        if r == 0:
            return TOP
        v, p = 0, self.p
        while r % p == 0:
            r //= p
            v += 1
        return v


@dataclass(frozen=True)
class PadicInt:
    """An element of Z/p^W Z; arithmetic is exact modulo p**W."""

    residue: int
    ctx: PadicContext

    def __post_init__(self):
        if not 0 <= self.residue < self.ctx.modulus:
            raise InvalidInput("residue out of range; build PadicInt through its context")

    def _coerce(self, other) -> int | None:
        if isinstance(other, PadicInt):
            if other.ctx != self.ctx:
                raise InvalidInput("mixing elements of different p-adic contexts")
            return other.residue
        if isinstance(other, (int, Fraction)):
            return self.ctx.residue(other)
        return None

    def _new(self, r: int) -> "PadicInt":
        return PadicInt(r % self.ctx.modulus, self.ctx)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._new(self.residue + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._new(self.residue - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._new(o - self.residue)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._new(self.residue * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.residue)

    def __eq__(self, other):
        if isinstance(other, PadicInt):
            return self.ctx == other.ctx and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.ctx.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.ctx))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"PadicInt({self.residue} mod {self.ctx.p}^{self.ctx.W})"

    def val(self):
        return val(self)

    def is_unit(self) -> bool:
        return self.residue % self.ctx.p != 0


def from_rational(num: int, den: int, ctx: PadicContext) -> PadicInt:
    """Image of ``num/den`` in Z/p^W; the denominator must be prime to p."""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den % ctx.p == 0:
        raise DenominatorNotUnit(f"{ctx.p} divides the denominator {den}")
    m = ctx.modulus
    return PadicInt(num * pow(den, -1, m) % m, ctx)


def val(x: PadicInt):
    """Largest e <= W with p**e dividing the residue, ``TOP`` for zero."""
    return x.ctx.val(x.residue)


def unit_inverse(x: PadicInt) -> PadicInt:
    if x.residue % x.ctx.p == 0:
        raise NotAUnit(f"{x!r} has positive valuation")
    m = x.ctx.modulus
    return PadicInt(pow(x.residue, -1, m), x.ctx)


def exact_div_pow(x: PadicInt, e: int) -> PadicInt:
    """Divide by ``p**e``; the result is only meaningful modulo ``p**(W-e)``."""
    ctx = x.ctx
    if not 0 < e < ctx.W:
        raise InvalidInput(f"exponent must satisfy 0 < e < W, got {e}")
    if val(x) < e:
        raise NotDivisible(f"{x!r} is not divisible by {ctx.p}^{e}")
    return PadicInt(x.residue // ctx.p ** e, ctx)
