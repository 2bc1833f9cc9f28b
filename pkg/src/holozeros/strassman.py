"""Zero counting for rigid series given by truncated Mahler data.

A series sum_k beta_k C(z, k) with val(beta_k) growing faster than
val(k!) converges on Z_p as a power series sum_j a_j z^j. We convert the
known head to power coefficients with Stirling numbers of the first kind,
bound the contribution of the unknown tail by ``tau``, and read off the
Strassman index: if the smallest valuation v* among a_0..a_K is below both
tau and the precision of the head, the series has at most N zeros in Z_p,
N being the largest index attaining v*.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import PrecisionExhausted
from .mahler import MahlerPoly
from .padic import TOP, PadicContext, vp_factorial

_STIRLING: list[list[int]] = [[1]]


def stirling1(k: int) -> list[int]:
    """Row k of the signed Stirling numbers of the first kind, s(k, 0..k)."""
    while len(_STIRLING) <= k:
        n = len(_STIRLING) - 1
        prev = _STIRLING[-1]
        row = [0] * (n + 2)
        for j in range(n + 2):
            left = prev[j - 1] if j >= 1 else 0
            here = prev[j] if j <= n else 0
            row[j] = left - n * here
        _STIRLING.append(row)
    return _STIRLING[k]


def tail_tau(K: int, p: int, offset: int = 0) -> int:
    """min over k > K of ceil((k + offset)/2) - v_p(k!).

    The lower bound (k + offset)/2 - (k - 1)/(p - 1) is increasing in k for
    p >= 5, so the scan stops once it reaches the running minimum.
    """
    if p < 5:
        raise ValueError("the tail bound needs p >= 5")
    best = None
    k = K + 1
    while True:
        lb = Fraction(k + offset, 2) - Fraction(k - 1, p - 1)
        if best is not None and lb >= best:
            return best
        t = (k + offset + 1) // 2 - vp_factorial(k, p)
        if best is None or t < best:
            best = t
        k += 1


@dataclass(frozen=True)
class RigidSeries:
    """Mahler head beta_0..beta_K, trusted modulo p**precision_exp.

    Beyond K the coefficients obey val(beta_k) >= ceil((k + tail_offset)/2).
    ``exact`` marks a polynomial: the tail is zero and tau is TOP.
    """

    beta: tuple[int, ...]
    ctx: PadicContext
    precision_exp: int
    tail_offset: int = 0
    exact: bool = False

    @property
    def K(self) -> int:
        return len(self.beta) - 1

    @classmethod
    def from_arc(cls, arc) -> "RigidSeries":
        return cls(tuple(arc.beta), arc.ctx, arc.precision_exp)

    @classmethod
    def from_poly(cls, P: MahlerPoly) -> "RigidSeries":
        beta = P.residues or (0,)
        return cls(tuple(beta), P.ctx, P.ctx.W, exact=True)


class PowerCoefficients(NamedTuple):
    vals: list
    tau: object
    precision: int


def to_power_coeffs(s: RigidSeries) -> PowerCoefficients:
    """Valuations of a_0..a_K (TOP when below the certain precision), tau, precision."""
    p = s.ctx.p
    K = s.K
    vK = vp_factorial(K, p)
    P = min(s.precision_exp, s.ctx.W)
    precision = P - vK
    if precision <= 0:
        raise PrecisionExhausted(f"v_p({K}!) = {vK} uses up all {P} digits of the Mahler head")
    q = p**P
    # K!/k! for k = K..0
    ratio = [1] * (K + 1)
    for k in range(K - 1, -1, -1):
        ratio[k] = ratio[k + 1] * (k + 1)
    vals = []
    for j in range(K + 1):
        acc = 0
        for k in range(j, K + 1):
            if s.beta[k]:
                acc += s.beta[k] * stirling1(k)[j] * ratio[k]
        acc %= q
        if acc == 0:
            vals.append(TOP)
            continue
        v = 0
        while acc % p == 0:
            acc //= p
            v += 1
        vals.append(v - vK if v - vK < precision else TOP)
    tau = TOP if s.exact else tail_tau(K, p, s.tail_offset)
    return PowerCoefficients(vals, tau, precision)


class Status(str, Enum):
    BOUNDED = "BOUNDED"
    VANISHING_TO_PRECISION = "VANISHING_TO_PRECISION"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class StrassmanResult:
    status: Status
    bound: int | None
    min_val: object
    tau: object

    def to_json(self) -> dict:
        enc = lambda v: None if v is TOP else v  # noqa: E731
        return {"status": self.status.value, "bound": self.bound, "min_val": enc(self.min_val), "tau": enc(self.tau)}


def strassman_bound(vals: Sequence, tau, precision=None) -> StrassmanResult:
    """Strassman index from coefficient valuations; TOP entries are unknown or zero."""
    finite = [(j, v) for j, v in enumerate(vals) if v is not TOP]
    limit = tau if precision is None else min(tau, precision)
    if finite:
        vstar = min(v for _, v in finite)
        if vstar < limit:
            N = max(j for j, v in finite if v == vstar)
            return StrassmanResult(Status.BOUNDED, N, vstar, tau)
        return StrassmanResult(Status.INCONCLUSIVE, None, vstar, tau)
    if precision is None or tau >= precision:
        return StrassmanResult(Status.VANISHING_TO_PRECISION, None, TOP, tau)
    return StrassmanResult(Status.INCONCLUSIVE, None, TOP, tau)


def analyze_series(s: RigidSeries) -> StrassmanResult:
    pc = to_power_coeffs(s)
    return strassman_bound(pc.vals, pc.tau, pc.precision)
