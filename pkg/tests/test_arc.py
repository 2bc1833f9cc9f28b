from fractions import Fraction

import pytest

from holozeros.arc import degree_bound, eval_arc, lift, run_lift, solve_difference_system, tail_exponent
from holozeros.companion import build_companion, class_system, find_period
from holozeros.errors import DegreeHypothesisViolated, PrecisionExhausted
from holozeros.fixtures import CORPUS, fixture
from holozeros.mahler import MahlerPoly
from holozeros.padic import PadicContext, vp
from holozeros.recurrence import RecurrenceSpec, validate


def setup(name, M, p=5):
    norm = validate(fixture(name), extension_mode=name == "extension")
    sys = build_companion(norm, PadicContext(p, M + 2))
    return norm, sys, find_period(sys).b


def residue(x: Fraction, m: int) -> int:
    return x.numerator * pow(x.denominator, -1, m) % m


def test_solve_difference_system_examples():
    C = PadicContext(5, 5)
    (H,) = solve_difference_system([MahlerPoly((1,), C)], 0)
    assert H == MahlerPoly((0, -1), C)
    (H,) = solve_difference_system([MahlerPoly((0, 1, 0, 5), C)], 1)
    assert H == MahlerPoly((0, 0, -1), C)
    with pytest.raises(DegreeHypothesisViolated):
        solve_difference_system([MahlerPoly((0, 0, 1), C)], 1)


def test_identity_system_gives_constant_arcs():
    norm = validate(RecurrenceSpec.make([["1"]], ["7"]))
    sys = build_companion(norm, PadicContext(5, 10))
    b = find_period(sys).b
    assert b == 5
    (arc,) = lift(class_system(sys, 3, b), 8)
    assert arc.beta[0] == 7 and not any(arc.beta[1:])
    assert eval_arc(arc, 12).residue == 7


def test_fibonacci_class_zero():
    M = 6
    _, sys, b = setup("fibonacci", M)
    arcs = lift(class_system(sys, 0, b), M)
    F = [0, 1]
    while len(F) <= 20 * 10:
        F.append(F[-1] + F[-2])
    q = 5 ** (M + 1)
    assert eval_arc(arcs[0], 1).residue % q == 6765
    assert eval_arc(arcs[0], 0).residue == arcs[0].beta[0] == 0
    for n in range(11):
        assert eval_arc(arcs[0], n).residue % q == F[20 * n] % q


def test_interleaved_zero_class_vanishes():
    M = 8
    norm, sys, b = setup("interleaved", M)
    # normalized index 1 is original index 2
    arcs = lift(class_system(sys, 1, b), M)
    assert arcs[0].vanishes_to_precision()
    assert not arcs[1].vanishes_to_precision()


def test_precision_guard():
    _, sys, b = setup("fibonacci", 4)
    with pytest.raises(PrecisionExhausted):
        lift(class_system(sys, 0, b), 5)


@pytest.mark.parametrize("name", CORPUS + ("extension",))
def test_corrected_degree_and_tail_laws(name):
    M = 8
    _, sys, b = setup(name, M)
    for c in range(b):
        cls = class_system(sys, c, b)
        state = run_lift(cls, M)
        for m, degs in enumerate(state.H_degrees, start=1):
            assert all(d <= degree_bound(m) for d in degs)
        for arc in lift(cls, M):
            assert arc.K == 2 * M
            for k in range(1, arc.K + 1):
                assert arc.ctx.val(arc.beta[k]) >= tail_exponent(k)


def exact_class_mahler(norm, c, b, count):
    """Exact Mahler coefficients of n -> f(c + bn), straight from the oracle."""
    vals = norm.values(c + b * (count - 1))
    row = [vals[c + b * n] for n in range(count)]
    out = []
    for _ in range(count):
        out.append(row[0])
        row = [y - x for x, y in zip(row, row[1:])]
    return out


@pytest.mark.parametrize("name", ("fibonacci", "interleaved", "extension"))
def test_exact_coefficients_obey_the_half_law(name):
    norm, sys, b = setup(name, 4)
    for c in range(0, b, 3):
        for k, a in enumerate(exact_class_mahler(norm, c, b, 9)):
            if k and a:
                assert vp(a, 5) >= (k + 1) // 2


def test_the_stricter_law_fails_on_the_oracle():
    # val(beta_k) >= ceil((k+1)/2) is false for polynomial coefficients:
    # the second coefficient of n -> f(2 + 80n) has valuation exactly 1
    norm, _, b = setup("interleaved", 4)
    assert b == 80
    coeffs = exact_class_mahler(norm, 2, b, 4)
    assert vp(coeffs[2], 5) == 1 < 2


@pytest.mark.parametrize("name", CORPUS)
def test_shared_coefficients_agree_across_precisions(name):
    _, lo, b = setup(name, 8)
    _, hi, _ = setup(name, 16)
    q = 5**9
    for c in range(0, b, 3):
        a8 = lift(class_system(lo, c, b), 8)
        a16 = lift(class_system(hi, c, b), 16)
        for x, y in zip(a8, a16):
            assert [v % q for v in x.beta] == [v % q for v in y.beta[: x.K + 1]]


def test_interpolation_of_later_components(interleaved):
    M = 10
    norm, sys, b = setup("interleaved", M)
    vals = norm.values(b * 8 + 5)
    q = 5 ** (M + 1)
    for c in (0, 3, 41):
        arcs = lift(class_system(sys, c, b), M)
        for i, arc in enumerate(arcs):
            for n in range(8):
                assert eval_arc(arc, n).residue % q == residue(vals[c + b * n + i], q)
