"""Companion matrices, the pigeonhole period b and per-class matrices A(z).

With state vectors ``[f(n), ..., f(n+d-1)]`` the recurrence becomes
``state(n) = B(n) state(n-1)``. Reducing mod p, B(n) only depends on n mod p,
so the products over consecutive blocks of p indices are all the same matrix
C; the first repetition among the powers of C gives b = p (m1 - m0), and
every residue class c mod b then carries a matrix A(z) in M_d(Z_p[pz]) that
is the identity mod p.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    DenominatorNotUnit,
    InvalidInput,
    InvariantViolation,
    NotAdmissible,
    PeriodCapExceeded,
    SingularReduction,
)
from .mahler import MahlerPoly, forward_differences
from .padic import PadicContext, PadicInt
from .primes import check_prime
from .recurrence import NormalizedSpec, poly_eval, poly_taylor_shift

DEFAULT_PERIOD_CAP = 10**6

Matrix = tuple[tuple[int, ...], ...]


# -- small dense linear algebra over Z/mZ and Q --------------------------------

def mat_mul(X: Matrix, Y: Matrix, m: int) -> Matrix:
    cols = list(zip(*Y))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) % m for col in cols) for row in X)


def mat_vec(X: Matrix, v: Sequence[int], m: int) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, v)) % m for row in X)


def identity(d: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def det_fraction(rows: Sequence[Sequence]) -> Fraction:
    """Determinant over Q by Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def det_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    a = [[x % p for x in row] for row in rows]
    n = len(a)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col] % p
        inv = pow(a[col][col], -1, p)
        for r in range(col + 1, n):
            f = a[r][col] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def _poly_mul_trunc(a: Sequence[int], b: Sequence[int], n: int, m: int) -> list[int]:
    out = [0] * min(n, len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x == 0 or i >= n:
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] += x * b[j]
    return [x % m for x in out]


def _poly_add(a: list[int], b: list[int], m: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % m
    return out


# -- the companion system ------------------------------------------------------

@dataclass(frozen=True)
class CompanionSystem:
    """B(z) (entries in the Mahler basis), v0 = [f(0), ..., f(d-1)], and the context.

    Integer evaluations ``B(n) mod p**W`` and prefix products
    ``B(n)...B(1)`` (extended to negative n through B^{-1}) are cached.
    """

    d: int
    B: tuple[tuple[MahlerPoly, ...], ...]
    v0: tuple[PadicInt, ...]
    ctx: PadicContext
    spec: NormalizedSpec = field(repr=False)
    bottom_monomial: tuple[tuple[int, ...], ...] = field(repr=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def v0_residues(self) -> tuple[int, ...]:
        return tuple(x.residue for x in self.v0)

    def bottom_row_at(self, n: int) -> tuple[int, ...]:
        m = self.ctx.modulus
        out = []
        for coeffs in self.bottom_monomial:
            acc = 0
            for a in reversed(coeffs):
                acc = (acc * n + a) % m
            out.append(acc)
        return tuple(out)

    def matrix_at(self, n: int) -> Matrix:
        """B(n) mod p**W."""
        d = self.d
        rows = [tuple(int(j == i + 1) for j in range(d)) for i in range(d - 1)]
        rows.append(self.bottom_row_at(n))
        return tuple(rows)

    def inverse_at(self, n: int) -> Matrix:
        """B(n)^{-1} mod p**W; needs the corner entry to be a unit."""
        m = self.ctx.modulus
        row = self.bottom_row_at(n)
        try:
            inv = pow(row[0], -1, m)
        except ValueError:
            raise SingularReduction(f"B({n}) is not invertible over Z_p") from None
        d = self.d
        first = tuple(-x * inv % m for x in row[1:]) + (inv,)
        rest = [tuple(int(j == i - 1) for j in range(d)) for i in range(1, d)]
        return (first, *rest)

    def prefix(self, k: int) -> tuple[Matrix, Matrix]:
        """(P(k), P(k)^{-1}) where P(0) = I and P(k) = B(k) P(k-1) for every integer k."""
        c = self._cache
        if "fwd" not in c:
            I = identity(self.d)
            c.update(fwd={0: I}, inv={0: I}, hi=0, lo=0)
        fwd, inv = c["fwd"], c["inv"]
        m = self.ctx.modulus
        while c["hi"] < k:
            j = c["hi"] + 1
            fwd[j] = mat_mul(self.matrix_at(j), fwd[j - 1], m)
            inv[j] = mat_mul(inv[j - 1], self.inverse_at(j), m)
            c["hi"] = j
        while c["lo"] > k:
            j = c["lo"]
            fwd[j - 1] = mat_mul(self.inverse_at(j), fwd[j], m)
            inv[j - 1] = mat_mul(inv[j], self.matrix_at(j), m)
            c["lo"] = j - 1
        return fwd[k], inv[k]

    def block(self, hi: int, lo: int) -> Matrix:
        """B(hi) B(hi-1) ... B(lo+1) for hi >= lo (identity when equal)."""
        if hi < lo:
            raise ValueError("block needs hi >= lo")
        if hi - lo <= 2:
            m = self.ctx.modulus
            X = identity(self.d)
            for i in range(lo + 1, hi + 1):
                X = mat_mul(self.matrix_at(i), X, m)
            return X
        return mat_mul(self.prefix(hi)[0], self.prefix(lo)[1], self.ctx.modulus)

    def _mono_factor(self, s: int, b: int) -> list[list[list[int]]]:
        """B(s + bz) in the monomial basis, truncated below degree W."""
        ctx = self.ctx
        d = self.d
        rows = [[[1] if j == i + 1 else [] for j in range(d)] for i in range(d - 1)]
        rows.append([_substitute(coeffs, s, b, ctx.W, ctx.modulus) for coeffs in self.bottom_monomial])
        return rows

    def _mono_inverse(self, s: int, b: int) -> list[list[list[int]]] | None:
        """B(s + bz)^{-1}, a polynomial matrix when the corner entry is constant."""
        m, d = self.ctx.modulus, self.d
        bottom = self._mono_factor(s, b)[-1]
        if len(bottom[0]) != 1:
            return None
        inv = pow(bottom[0][0], -1, m)
        first = [[-x * inv % m for x in P] for P in bottom[1:]] + [[inv]]
        first = [_strip_mono(P) for P in first]
        rest = [[[1] if j == i - 1 else [] for j in range(d)] for i in range(1, d)]
        return [first] + rest

    def monomial_block(self, c: int, b: int) -> list[list[list[int]]]:
        """B(c+bz) B(c+bz-1) ... B(c+bz-b+1) in the monomial basis, mod p**W,
        truncated below degree W.

        When the trailing coefficient is constant, consecutive classes are
        chained through A_c = B(c+bz) A_{c-1} B(c-b+bz)^{-1}, so a sweep over
        all classes costs O(b) factor products instead of O(b^2).
        """
        W, m = self.ctx.W, self.ctx.modulus
        prev = self._cache.get(("mono", b))
        if prev is not None and prev[0] == c - 1:
            inv = self._mono_inverse(c - b, b)
            if inv is not None:
                X = _pmat_mul(_pmat_mul(self._mono_factor(c, b), prev[1], W, m), inv, W, m)
                self._cache[("mono", b)] = (c, X)
                return X
        d = self.d
        X = [[[1] if i == j else [] for j in range(d)] for i in range(d)]
        for i in range(b - 1, -1, -1):
            X = _pmat_mul(self._mono_factor(c - i, b), X, W, m)
        self._cache[("mono", b)] = (c, X)
        return X


def _strip_mono(P: list[int]) -> list[int]:
    P = list(P)
    while P and P[-1] == 0:
        P.pop()
    return P


def _pmat_mul(X, Y, n: int, m: int):
    """Product of polynomial matrices, coefficients mod m, truncated below degree n."""
    d = len(X)
    out = []
    for i in range(d):
        row = []
        for k in range(len(Y[0])):
            acc: list[int] = []
            for j in range(d):
                if X[i][j] and Y[j][k]:
                    acc = _poly_add(acc, _poly_mul_trunc(X[i][j], Y[j][k], n, m), m)
            row.append(_strip_mono(acc))
        out.append(row)
    return out


def _substitute(coeffs: Sequence[int], s: int, b: int, n: int, m: int) -> list[int]:
    """Monomial coefficients of Q(s + b z) mod m, truncated below degree n."""
    L = len(coeffs)
    out = []
    bk = 1
    for k in range(min(L, n)):
        acc = sum(coeffs[j] * comb(j, k) * pow(s, j - k, m) for j in range(k, L))
        out.append(acc * bk % m)
        bk = bk * b % m
    while out and out[-1] == 0:
        out.pop()
    return out


def build_companion(spec: NormalizedSpec, ctx: PadicContext) -> CompanionSystem:
    """Companion matrix of the normalized recurrence over Z/p^W."""
    rep = check_prime(spec, ctx.p)
    if not rep.admissible:
        raise NotAdmissible(f"p = {ctx.p} is not admissible: {rep.rejected_reasons}")
    d = spec.order
    exact_bottom = [poly_taylor_shift(spec.coefficients[d - 1 - j], d - 1) for j in range(d)]
    try:
        bottom = tuple(tuple(ctx(a).residue for a in P) for P in exact_bottom)
        v0 = tuple(ctx(x) for x in spec.initial)
    except DenominatorNotUnit as exc:
        raise NotAdmissible(str(exc)) from None
    B = tuple(
        tuple(MahlerPoly.constant(int(j == i + 1), ctx) for j in range(d)) for i in range(d - 1)
    ) + (tuple(MahlerPoly.from_monomial(list(P), ctx) for P in bottom),)
    sys = CompanionSystem(d=d, B=B, v0=v0, ctx=ctx, spec=spec, bottom_monomial=bottom)
    _check_determinant(sys, exact_bottom)
    return sys


def _check_determinant(sys: CompanionSystem, exact_bottom) -> None:
    d = sys.d
    sign = (-1) ** (d + 1)
    trailing = sys.spec.trailing
    for n in range(d + 1):
        rows = [[int(j == i + 1) for j in range(d)] for i in range(d - 1)]
        rows.append([poly_eval(P, n) for P in exact_bottom])
        det = det_fraction(rows)
        expected = sign * poly_eval(trailing, n - 1 + d)
        if det != expected:
            raise InvariantViolation(f"det B({n}) = {det}, expected {expected}")
        if det == 0 or det.numerator % sys.ctx.p == 0:
            raise InvariantViolation(f"det B({n}) = {det} is not a p-adic unit")


def state_at(sys: CompanionSystem, n: int) -> tuple[PadicInt, ...]:
    """[f(n), ..., f(n+d-1)] mod p**W (normalized indexing)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    P, _ = sys.prefix(n)
    return tuple(PadicInt(r, sys.ctx) for r in mat_vec(P, sys.v0_residues, sys.ctx.modulus))


# -- the period ------------------------------------------------------------------

class Period(NamedTuple):
    m0: int
    m1: int
    b: int


def reduction_mod_p(sys: CompanionSystem, n: int) -> np.ndarray:
    """phi(B(n)) as an int64 array."""
    p = sys.ctx.p
    return np.array([[x % p for x in row] for row in sys.matrix_at(n)], dtype=np.int64)


def find_period(sys: CompanionSystem, cap: int = DEFAULT_PERIOD_CAP) -> Period:
    """First collision Pi_{m0} = Pi_{m1} among Pi_n = phi(B(pn) ... B(1))."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    p, d = sys.ctx.p, sys.d
    factors = []
    for i in range(1, p + 1):
        F = reduction_mod_p(sys, i)
        if det_mod_p(F.tolist(), p) == 0:
            raise SingularReduction(f"B({i}) is singular mod {p}")
        factors.append(F)
    # B(i) mod p depends only on i mod p, so every block of p factors is the same
    block = np.eye(d, dtype=np.int64)
    for F in factors:
        block = (F @ block) % p
    Pi = np.eye(d, dtype=np.int64)
    seen = {Pi.tobytes(): 0}
    for n in range(1, cap + 1):
        Pi = (block @ Pi) % p
        key = Pi.tobytes()
        if key in seen:
            m0 = seen[key]
            return Period(m0, n, p * (n - m0))
        seen[key] = n
    raise PeriodCapExceeded(f"no repetition among the first {cap} block products")


# -- residue classes ---------------------------------------------------------------

@dataclass(frozen=True)
class ClassSystem:
    """A(z) = B(c+bz) ... B(c+bz-b+1) and v = B(c) ... B(1) v0 for one class."""

    c: int
    b: int
    A: tuple[tuple[MahlerPoly, ...], ...]
    v: tuple[PadicInt, ...]
    system: CompanionSystem = field(repr=False)

    @property
    def ctx(self) -> PadicContext:
        return self.system.ctx

    @property
    def d(self) -> int:
        return self.system.d

    def matrix_at(self, n: int) -> Matrix:
        """A(n) mod p**W, straight from the prefix products."""
        c, b = self.c, self.b
        return self.system.block(c + b * n, c + b * n - b)


def class_system(sys: CompanionSystem, c: int, b: int) -> ClassSystem:
    ctx = sys.ctx
    p, W, m, d = ctx.p, ctx.W, ctx.modulus, sys.d
    if b <= 0 or b % p:
        raise InvalidInput(f"modulus b = {b} must be a positive multiple of p = {p}")
    if not 0 <= c < b:
        raise InvalidInput(f"residue c = {c} outside 0..{b - 1}")
    cs = ClassSystem(c=c, b=b, A=(), v=(), system=sys)
    # values A(0..W) determine the Mahler expansion: coefficients of C(z, k) with
    # k >= W vanish mod p**W for entries in Z_p[pz]
    vals = [cs.matrix_at(n) for n in range(W + 1)]
    A = []
    for i in range(d):
        row = []
        for j in range(d):
            coeffs = forward_differences([V[i][j] for V in vals], m)
            if coeffs[W]:
                raise InvariantViolation(f"A[{i}][{j}] has Mahler degree >= W")
            row.append(MahlerPoly(tuple(coeffs), ctx))
        A.append(tuple(row))
    A = tuple(A)
    if any((vals[0][i][j] - int(i == j)) % p for i in range(d) for j in range(d)):
        raise InvariantViolation(f"A(0) is not the identity mod p for class {c}")
    mono = sys.monomial_block(c, b)
    for i in range(d):
        for j in range(d):
            for k, a in enumerate(mono[i][j]):
                if a % p ** min(k, W):
                    raise InvariantViolation(
                        f"A[{i}][{j}] has z^{k} coefficient not divisible by p^{k}: not in Z_p[pz]"
                    )
            if MahlerPoly.from_monomial(mono[i][j], ctx) != A[i][j]:
                raise InvariantViolation(f"A[{i}][{j}]: monomial and value routes disagree")
    v = state_at(sys, c)
    return ClassSystem(c=c, b=b, A=A, v=v, system=sys)
