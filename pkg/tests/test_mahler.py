from math import comb

from holozeros.mahler import (
    MahlerPoly,
    antidifference_neg,
    binom,
    eval_int,
    forward_differences,
    from_monomial,
    mul,
    shift_arg,
    truncate_deg,
)
from holozeros.padic import PadicContext

C = PadicContext(5, 6)


def mp(*r):
    return MahlerPoly(tuple(r), C)


def monomial_value(coeffs, n, m):
    return sum(a * n**k for k, a in enumerate(coeffs)) % m


def test_from_monomial_examples():
    assert from_monomial([0, 0, 1], C).residues == (0, 1, 2)
    for n in range(3):
        assert eval_int(mp(0, 1, 2), n) == n * n
    assert from_monomial([7], C).residues == (7,)
    assert from_monomial([], C).is_zero()
    assert from_monomial([0, 0, 0], C).degree == -1


def test_eval_int_examples():
    assert eval_int(mp(0, 1, 2), 3).residue == 9
    assert eval_int(mp(7), 123).residue == 7
    assert eval_int(mp(0, 1), -2).residue == C.modulus - 2


def test_generalized_binomial():
    assert binom(-2, 3) == -4
    assert binom(5, 2) == comb(5, 2)
    assert binom(3, 5) == 0


def test_shift_arg_examples():
    assert shift_arg(mp(0, 0, 1)) == mp(0, 1, 1)
    assert shift_arg(mp(4)) == mp(4)
    assert shift_arg(mp(0, 1)) == mp(1, 1)


def test_mul_examples():
    z = mp(0, 1)
    assert mul(z, z) == mp(0, 1, 2)
    M = mp(3, 1, 4, 1)
    assert mul(M, mp(1)) == M
    assert mul(M, mp()).is_zero()


def test_antidifference_examples():
    H = antidifference_neg(mp(1))
    assert H.residues == (0, C.modulus - 1)
    assert antidifference_neg(mp()).is_zero()
    H = antidifference_neg(mp(0, 1))
    assert H == mp(0, 0, -1)
    for n in range(4):
        assert (eval_int(H, n + 1) - eval_int(H, n)).residue == (-n) % C.modulus


def test_truncate_examples():
    assert truncate_deg(mp(1, 5, 10), 0) == (mp(1), True)
    assert truncate_deg(mp(1, 2), 0) == (mp(1), False)
    M = mp(2, 3, 4)
    assert truncate_deg(M, M.degree) == (M, True)


def test_forward_differences_are_inverse_to_values():
    vals = [3, 1, 4, 1, 5, 9, 2, 6]
    coeffs = forward_differences(vals, C.modulus)
    assert MahlerPoly(tuple(coeffs), C).values(len(vals)) == vals
