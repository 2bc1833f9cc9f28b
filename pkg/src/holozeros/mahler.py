"""Polynomials over truncated Z_p in the Mahler basis C(z, k).

A polynomial maps Z_p into itself exactly when its coefficients in the
binomial basis are p-adic integers, so this basis is where integrality is
structural. The coefficient of C(z, k) is the k-th forward difference at 0,
and value tables at 0..n and coefficient lists up to degree n are related by
a unimodular integer transform; several routines below exploit that.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidInput
from .padic import PadicContext, PadicInt


def binom(n: int, k: int) -> int:
    """Generalized binomial n(n-1)...(n-k+1)/k!, exact for negative n too."""
    if k < 0:
        return 0
    c = 1
    for i in range(k):
        c = c * (n - i) // (i + 1)
    return c


def forward_differences(values: Sequence[int], modulus: int, count: int | None = None) -> list[int]:
    """Mahler coefficients Delta^k f(0), k < count, from the table f(0), f(1), ..."""
    row = [v % modulus for v in values]
    count = len(row) if count is None else min(count, len(row))
    out = []
    for _ in range(count):
        out.append(row[0])
        row = [(b - a) % modulus for a, b in zip(row, row[1:])]
    return out


def mahler_values(coeffs: Sequence[int], npoints: int, modulus: int, start: int = 0) -> list[int]:
    """Values of sum_k coeffs[k] C(n, k) at n = start, ..., start + npoints - 1."""
    out = []
    for n in range(start, start + npoints):
        acc, c = 0, 1
        for k, a in enumerate(coeffs):
            if k:
                c = c * (n - k + 1) // k
                if c == 0 and n >= 0:
                    break
            acc += a * c
        out.append(acc % modulus)
    return out


def _strip(residues: Iterable[int], modulus: int) -> tuple[int, ...]:
    r = [x % modulus for x in residues]
    while r and r[-1] == 0:
        r.pop()
    return tuple(r)


@dataclass(frozen=True)
class MahlerPoly:
    """``sum_k residues[k] * C(z, k)`` with residues taken mod p**W.

    The empty tuple is the zero polynomial; trailing zero residues are
    stripped on construction so ``degree`` is well defined.
    """

    residues: tuple[int, ...]
    ctx: PadicContext

    def __post_init__(self):
        object.__setattr__(self, "residues", _strip(self.residues, self.ctx.modulus))

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, c, ctx: PadicContext) -> "MahlerPoly":
        return cls((ctx.residue(c),), ctx)

    @classmethod
    def from_values(cls, values: Sequence[int], ctx: PadicContext) -> "MahlerPoly":
        """Interpolate the table f(0), ..., f(n) by a polynomial of degree <= n."""
        return cls(tuple(forward_differences(values, ctx.modulus)), ctx)

    @classmethod
    def from_monomial(cls, coeffs: Sequence, ctx: PadicContext) -> "MahlerPoly":
        return from_monomial(coeffs, ctx)

    # -- accessors ---------------------------------------------------------

    @property
    def coeffs(self) -> list[PadicInt]:
        return [PadicInt(r, self.ctx) for r in self.residues]

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.residues) - 1

    def is_zero(self) -> bool:
        return not self.residues

    def __getitem__(self, k: int) -> int:
        return self.residues[k] if 0 <= k < len(self.residues) else 0

    def __call__(self, n: int) -> PadicInt:
        return eval_int(self, n)

    def values(self, npoints: int, start: int = 0) -> list[int]:
        return mahler_values(self.residues, npoints, self.ctx.modulus, start)

    # -- ring structure ----------------------------------------------------

    def _check(self, other: "MahlerPoly"):
        if other.ctx != self.ctx:
            raise InvalidInput("mixing polynomials over different contexts")

    def __add__(self, other: "MahlerPoly") -> "MahlerPoly":
        self._check(other)
        n = max(len(self.residues), len(other.residues))
        return MahlerPoly(tuple(self[k] + other[k] for k in range(n)), self.ctx)

    def __sub__(self, other: "MahlerPoly") -> "MahlerPoly":
        self._check(other)
        n = max(len(self.residues), len(other.residues))
        return MahlerPoly(tuple(self[k] - other[k] for k in range(n)), self.ctx)

    def __neg__(self) -> "MahlerPoly":
        return MahlerPoly(tuple(-a for a in self.residues), self.ctx)

    def scale(self, c) -> "MahlerPoly":
        c = self.ctx.residue(c.residue if isinstance(c, PadicInt) else c)
        return MahlerPoly(tuple(c * a for a in self.residues), self.ctx)

    def __mul__(self, other: "MahlerPoly") -> "MahlerPoly":
        return mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, MahlerPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.residues == other.residues

    def __hash__(self):
        return hash((self.residues, self.ctx))

    def __repr__(self):
        return f"MahlerPoly({list(self.residues)} mod {self.ctx.p}^{self.ctx.W})"


def from_monomial(coeffs: Sequence, ctx: PadicContext) -> MahlerPoly:
    """Convert ascending monomial coefficients (ints, rationals or PadicInts)."""
    c = [ctx(x).residue for x in coeffs]
    m = ctx.modulus
    vals = []
    for n in range(len(c)):
        acc = 0
        for a in reversed(c):
            acc = (acc * n + a) % m
        vals.append(acc)
    return MahlerPoly.from_values(vals, ctx)


def eval_int(M: MahlerPoly, n: int) -> PadicInt:
    return PadicInt(mahler_values(M.residues, 1, M.ctx.modulus, start=n)[0], M.ctx)


def shift_arg(M: MahlerPoly) -> MahlerPoly:
    """M(z + 1), using C(z+1, k) = C(z, k) + C(z, k-1)."""
    r = M.residues
    return MahlerPoly(tuple(r[k] + (r[k + 1] if k + 1 < len(r) else 0) for k in range(len(r))), M.ctx)


def mul(M1: MahlerPoly, M2: MahlerPoly) -> MahlerPoly:
    """Product via pointwise multiplication of value tables at 0..deg1+deg2."""
    M1._check(M2)
    if M1.is_zero() or M2.is_zero():
        return MahlerPoly((), M1.ctx)
    n = M1.degree + M2.degree + 1
    m = M1.ctx.modulus
    vals = [a * b % m for a, b in zip(M1.values(n), M2.values(n))]
    return MahlerPoly.from_values(vals, M1.ctx)


def antidifference_neg(Q: MahlerPoly) -> MahlerPoly:
    """H with H(0) = 0 and H(z+1) - H(z) = -Q(z), namely -sum_k a_k C(z, k+1)."""
    if Q.is_zero():
        return Q
    return MahlerPoly((0,) + tuple(-a for a in Q.residues), Q.ctx)


def truncate_deg(M: MahlerPoly, N: int) -> tuple[MahlerPoly, bool]:
    """Split off coefficients above N; the flag says whether they are all in pZ_p."""
    if N < 0:
        raise InvalidInput("truncation degree must be >= 0")
    p = M.ctx.p
    low = MahlerPoly(M.residues[: N + 1], M.ctx)
    high_ok = all(a % p == 0 for a in M.residues[N + 1:])
    return low, high_ok
