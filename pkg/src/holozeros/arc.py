"""Successive approximation of analytic arcs through a class system.

Given A(z) in M_d(Z_p[pz]) with A(0) = I mod p and a start vector v, we build
polynomials G_{i,m} = v_i + sum_{k<=m} p^k H_{i,k}(z) whose defect

    D_i = G_{i,m}(z+1) - sum_j a_ij(z) G_{j,m}(z)

lies in p^{m+1} MP_p[z]. Dividing the defect by p^{m+1}, dropping everything
above Mahler degree 2m+1 (those coefficients are multiples of p) and
telescoping gives the next correction H_{i,m+1} of degree <= 2m+2.

Why 2m+1: call sum_k a_k C(z, k) balanced when val(a_k) >= k/2 for all k.
Balanced polynomials form a ring; G is balanced, and both the difference
G(z+1) - G(z) and (A(z+1) - I) G(z) satisfy the strict bound
val(a_k) >= (k+1)/2. So the part of the defect at level p^{m+1} has degree
at most 2m+1. The sharper bound (degree 2m, corrections of degree 2m+1)
needs A(z) - A(0) in p^2 Z_p[z], which fails for classes b = p(m1-m0)
whenever some P_i is non-constant; the degree-one term of A(z) is then of
exact order p.

Each Q_i is cut at its last unit coefficient rather than at the worst case,
so corrections stay as small as the data allow; for constant coefficients
this keeps deg H_{i,m} <= 2m - 1 and val(beta_k) >= ceil((k+1)/2).

The recursion runs on value tables: products are pointwise there, the shift
z -> z+1 is an index shift, and Mahler coefficients are forward differences.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .companion import ClassSystem
from .errors import (
    DefectNotDivisible,
    DegreeHypothesisViolated,
    InvariantViolation,
    PrecisionExhausted,
    TmStructureViolated,
)
from .mahler import MahlerPoly, antidifference_neg, forward_differences, mahler_values, truncate_deg
from .padic import PadicContext, PadicInt


def tail_exponent(k: int) -> int:
    """ceil(k/2): guaranteed valuation of the k-th arc coefficient."""
    return (k + 1) // 2


def degree_bound(m: int) -> int:
    """Largest Mahler degree of the m-th correction H_{i,m}."""
    return 2 * m


@dataclass(frozen=True)
class ArcSeries:
    """Mahler coefficients beta_0..beta_K of one arc component.

    ``beta[0]`` is v_i itself. Coefficients are trusted modulo
    ``p**precision_exp``; beyond index K the tail obeys the valuation law
    val(beta_k) >= ceil(k/2).
    """

    index: int
    beta: tuple[int, ...]
    M: int
    ctx: PadicContext

    @property
    def K(self) -> int:
        return len(self.beta) - 1

    @property
    def precision_exp(self) -> int:
        return self.M + 1

    @property
    def coeffs(self) -> list[PadicInt]:
        return [PadicInt(b, self.ctx) for b in self.beta]

    def as_poly(self) -> MahlerPoly:
        return MahlerPoly(self.beta, self.ctx)

    def vanishes_to_precision(self) -> bool:
        q = self.ctx.p ** self.precision_exp
        return all(b % q == 0 for b in self.beta)


@dataclass
class LiftState:
    m: int
    G: list[MahlerPoly]
    H_degrees: list[list[int]] = field(default_factory=list)
    ctx: PadicContext | None = None


def eval_arc(s: ArcSeries, n: int) -> PadicInt:
    return PadicInt(mahler_values(s.beta, 1, s.ctx.modulus, start=n)[0], s.ctx)


def essential_degree(q: MahlerPoly) -> int:
    """Index of the last coefficient of q that is a p-adic unit (0 if there is none)."""
    p = q.ctx.p
    for k in range(q.degree, 0, -1):
        if q[k] % p:
            return k
    return 0


def solve_difference_system(Q: Sequence[MahlerPoly], N: int) -> list[MahlerPoly]:
    """H_i with H_i(0) = 0, deg H_i <= N+1 and H_i(z+1) - H_i(z) = -(Q_i mod degree > N)."""
    out = []
    for i, q in enumerate(Q):
        low, ok = truncate_deg(q, N)
        if not ok:
            raise DegreeHypothesisViolated(
                f"component {i}: a unit Mahler coefficient sits above degree {N}"
            )
        out.append(antidifference_neg(low))
    return out


def run_lift(cls: ClassSystem, M: int) -> LiftState:
    """M rounds of the approximation scheme, every invariant checked as it goes."""
    ctx = cls.ctx
    p, W, mod, d = ctx.p, ctx.W, ctx.modulus, cls.d
    if M < 0:
        raise ValueError("M must be >= 0")
    if M + 2 > W:
        raise PrecisionExhausted(f"{M} lifting rounds need W >= {M + 2}, have W = {W}")
    adeg = max(a.degree for row in cls.A for a in row)
    npts = max(adeg, 0) + 2 * M + 2
    # the recursion is driven by A(z+1): the class states satisfy w_{n+1} = A(n+1) w_n
    Avals = [cls.matrix_at(n + 1) for n in range(npts)]
    v = [x.residue for x in cls.v]
    Gvals = [[vi] * (npts + 1) for vi in v]
    Gco = [[vi] for vi in v]
    state = LiftState(m=0, G=[], ctx=ctx)

    def defect(i: int) -> list[int]:
        Gi = Gvals[i]
        out = []
        for n in range(npts):
            row = Avals[n][i]
            acc = Gi[n + 1]
            for j in range(d):
                acc -= row[j] * Gvals[j][n]
            out.append(acc % mod)
        return out

    for m in range(M + 1):
        pe = p ** (m + 1)
        Q = []
        for i in range(d):
            D = defect(i)
            if any(x % pe for x in D):
                raise DefectNotDivisible(f"class {cls.c}, round {m}: defect of component {i} not in p^{m + 1} MP")
            # Q is only determined modulo p^(W-m-1)
            coeffs = forward_differences([x // pe for x in D], mod // pe)
            if any(coeffs[max(adeg, 0) + degree_bound(m) + 1:]):
                raise InvariantViolation(f"class {cls.c}, round {m}: defect degree exceeds the a priori bound")
            Q.append(MahlerPoly(tuple(coeffs), ctx))
        if m == M:
            break
        cut = degree_bound(m + 1) - 1
        try:
            solve_difference_system(Q, cut)
        except DegreeHypothesisViolated as exc:
            raise TmStructureViolated(f"class {cls.c}, round {m}: {exc}") from None
        # within the bound, cut each Q_i at its last unit coefficient
        H = [antidifference_neg(truncate_deg(q, min(cut, essential_degree(q)))[0]) for q in Q]
        degs = []
        for i, h in enumerate(H):
            if h[0] != 0:
                raise InvariantViolation(f"class {cls.c}: H_{i},{m + 1}(0) != 0")
            if h.degree > degree_bound(m + 1):
                raise InvariantViolation(f"class {cls.c}: deg H_{i},{m + 1} = {h.degree} > {degree_bound(m + 1)}")
            degs.append(h.degree)
            hv = h.values(npts + 1)
            Gi = Gvals[i]
            for n in range(npts + 1):
                Gi[n] = (Gi[n] + pe * hv[n]) % mod
            gc = Gco[i]
            gc.extend([0] * (len(h.residues) - len(gc)))
            for k, a in enumerate(h.residues):
                gc[k] = (gc[k] + pe * a) % mod
        state.H_degrees.append(degs)
        state.m = m + 1
    state.G = [MahlerPoly(tuple(g), ctx) for g in Gco]
    return state


def lift(cls: ClassSystem, M: int) -> list[ArcSeries]:
    """Arc coefficients for every component, truncated at K = 2M."""
    state = run_lift(cls, M)
    ctx = cls.ctx
    K = degree_bound(M)
    arcs = []
    for i, G in enumerate(state.G):
        beta = tuple(G[k] for k in range(K + 1))
        for k in range(1, K + 1):
            if ctx.val(beta[k]) < tail_exponent(k):
                raise InvariantViolation(f"class {cls.c}, component {i}: beta_{k} breaks the tail law")
        if beta[0] != cls.v[i].residue:
            raise InvariantViolation(f"class {cls.c}, component {i}: arc does not start at v_{i}")
        arcs.append(ArcSeries(index=i, beta=beta, M=M, ctx=ctx))
    return arcs
