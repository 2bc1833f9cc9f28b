"""Randomized identities, 1000 cases each."""
from fractions import Fraction

from hypothesis import HealthCheck, given, settings, strategies as st

from holozeros.mahler import MahlerPoly, antidifference_neg, eval_int, from_monomial, mul, shift_arg
from holozeros.padic import PadicContext
from holozeros.recurrence import RecurrenceSpec, eval_at_negative, eval_upto, validate, zeros_upto

C = PadicContext(7, 5)
MOD = C.modulus
THOUSAND = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])

coeff_lists = st.lists(st.integers(-10**6, 10**6), max_size=7)
mahler = coeff_lists.map(lambda c: MahlerPoly(tuple(c), C))
points = st.integers(-10, 10)


@THOUSAND
@given(coeff_lists, points)
def test_monomial_round_trip(c, n):
    assert eval_int(from_monomial(c, C), n).residue == sum(a * n**k for k, a in enumerate(c)) % MOD


@THOUSAND
@given(coeff_lists)
def test_value_table_inversion(c):
    P = from_monomial(c, C)
    vals = [sum(a * n**k for k, a in enumerate(c)) % MOD for n in range(len(c) + 1)]
    assert P.values(len(vals)) == vals
    assert MahlerPoly.from_values(vals, C) == P


@THOUSAND
@given(mahler, points)
def test_shift(M, n):
    assert eval_int(shift_arg(M), n) == eval_int(M, n + 1)


@THOUSAND
@given(mahler, mahler, points)
def test_product(A, B, n):
    assert eval_int(mul(A, B), n) == eval_int(A, n) * eval_int(B, n)


@THOUSAND
@given(mahler)
def test_antidifference(Q):
    H = antidifference_neg(Q)
    assert (shift_arg(H) - H + Q).is_zero()
    assert eval_int(H, 0) == 0


small = st.integers(-3, 3)


@st.composite
def recurrences(draw):
    d = draw(st.integers(1, 3))
    P = [draw(st.lists(small, max_size=3)) for _ in range(d - 1)]
    P.append([draw(small.filter(bool))])
    init = draw(st.lists(small, min_size=d, max_size=d))
    return RecurrenceSpec.make(P, init)


@THOUSAND
@given(recurrences(), st.integers(1, 8))
def test_backward_then_forward(spec, depth):
    norm = validate(spec)
    d = norm.order
    back = {k: eval_at_negative(norm, k) for k in range(-depth, 0)}
    window = {k: back[k] for k in range(-depth, min(-depth + d, 0))}
    window.update({k: x for k, x in enumerate(norm.initial) if k < -depth + d})
    P = norm.coefficients
    for n in range(-depth + d, d):
        window[n] = sum(
            (sum(a * Fraction(n) ** j for j, a in enumerate(P[i - 1])) * window[n - i] for i in range(1, d + 1)),
            Fraction(0),
        )
    assert [window[k] for k in range(d)] == list(norm.initial)


def direct_values(spec: RecurrenceSpec, N: int) -> list[Fraction]:
    """Iterate the recurrence as written, no index shift."""
    f = list(spec.initial)
    for n in range(len(f), N + 1):
        f.append(sum(
            (sum(a * n**j for j, a in enumerate(P)) * f[n - i] for i, P in enumerate(spec.coefficients, start=1)),
            Fraction(0),
        ))
    return f[: N + 1]


@THOUSAND
@given(recurrences(), st.lists(small, max_size=4))
def test_normalization_soundness(spec, extra):
    shifted = RecurrenceSpec(spec.order, spec.coefficients, tuple(map(Fraction, extra)) + spec.initial,
                             spec.offset + len(extra))
    norm = validate(shifted)
    N = 25
    direct = direct_values(shifted, N)
    assert eval_upto(shifted, N) == direct
    tail = norm.values(N - norm.shift)
    assert zeros_upto(shifted, N) == norm.prefix_zeros + [k + norm.shift for k, x in enumerate(tail) if x == 0]
    assert zeros_upto(shifted, N) == [n for n, x in enumerate(direct) if x == 0]
