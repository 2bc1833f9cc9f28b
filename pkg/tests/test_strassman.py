import math
import random

import pytest

from holozeros.errors import PrecisionExhausted
from holozeros.mahler import from_monomial
from holozeros.padic import TOP, PadicContext, vp_factorial
from holozeros.strassman import (
    RigidSeries,
    Status,
    analyze_series,
    stirling1,
    strassman_bound,
    tail_tau,
    to_power_coeffs,
)

C = PadicContext(5, 12)


def test_stirling_rows():
    for k in range(1, 25):
        row = stirling1(k)
        assert sum(abs(x) for x in row) == math.factorial(k)
        if k >= 2:
            assert sum(row) == 0
        nxt = stirling1(k + 1)
        for j in range(1, k + 2):
            assert nxt[j] == (row[j - 1] if j - 1 <= k else 0) - k * (row[j] if j <= k else 0)
    assert stirling1(3) == [0, 2, -3, 1]


def test_power_coefficient_examples():
    pc = to_power_coeffs(RigidSeries((7,), C, 12))
    assert pc.vals == [0]
    pc = to_power_coeffs(RigidSeries((0, 1), C, 12, exact=True))
    assert pc.vals == [TOP, 0]
    pc = to_power_coeffs(RigidSeries((0, 5, 25), C, 12, exact=True))
    assert pc.vals == [TOP, 1, 2]


def test_tau_is_the_brute_force_minimum():
    for p in (5, 7, 13):
        for K in range(0, 60, 7):
            brute = min((k + 1) // 2 - vp_factorial(k, p) for k in range(K + 1, 4000))
            assert tail_tau(K, p) == brute
            assert tail_tau(K, p, offset=1) == min((k + 2) // 2 - vp_factorial(k, p) for k in range(K + 1, 4000))


def test_tau_is_monotone():
    for p in (5, 7):
        taus = [tail_tau(K, p) for K in range(200)]
        assert taus == sorted(taus)


def test_bound_examples():
    r = strassman_bound([1, 0, 2], 3)
    assert (r.status, r.bound, r.min_val) == (Status.BOUNDED, 1, 0)
    assert strassman_bound([TOP, TOP], 5, precision=5).status is Status.VANISHING_TO_PRECISION
    assert strassman_bound([2, 2], 2).status is Status.INCONCLUSIVE
    assert strassman_bound([TOP, TOP], 3, precision=5).status is Status.INCONCLUSIVE
    # a valuation at or above the head precision is not trusted
    assert strassman_bound([4], 9, precision=4).status is Status.INCONCLUSIVE


def test_precision_exhaustion():
    with pytest.raises(PrecisionExhausted):
        to_power_coeffs(RigidSeries(tuple([1] * 30), PadicContext(5, 6), 6))


def roots_poly(roots, unit=1):
    coeffs = [unit]
    for r in roots:
        coeffs = [a * -r + (coeffs[i - 1] if i else 0) for i, a in enumerate(coeffs + [0])]
    return coeffs


def test_polynomial_with_known_roots():
    # (z - 1)(z - 2) = z^2 - 3z + 2
    P = from_monomial([2, -3, 1], C)
    r = analyze_series(RigidSeries.from_poly(P))
    assert r.status is Status.BOUNDED and r.bound == 2


def test_random_polynomials_never_undercount():
    rng = random.Random(7)
    for _ in range(50):
        roots = [rng.randint(-30, 30) for _ in range(rng.randint(0, 5))]
        unit = rng.choice([1, 2, 3, 4, 6])
        P = from_monomial(roots_poly(roots, unit), C)
        r = analyze_series(RigidSeries.from_poly(P))
        assert r.status is Status.BOUNDED
        assert r.bound >= len(set(roots))
