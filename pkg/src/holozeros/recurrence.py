"""Polynomial-linear recurrences over Q and the exact rational oracle.

A :class:`RecurrenceSpec` encodes

    P_0(n) f(n) = P_1(n) f(n-1) + ... + P_d(n) f(n-d)    for n >= offset,

together with the initial segment f(0), ..., f(offset-1). ``P_0`` defaults to
the constant 1 and must be a nonzero constant; a polynomial multiplying f(n)
itself (central binomial coefficients are the standard example) is rejected.
:func:`validate` shifts the indexing so the recurrence holds from n = d on.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from os import PathLike
from typing import Sequence

from .errors import (
    BadInitialLength,
    ExtensionModeUnsupported,
    NotMonicForm,
    RecurrenceError,
    TrailingNotConstant,
    TrailingZero,
)

Poly = tuple[Fraction, ...]

_RATIONAL = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rational(s) -> Fraction:
    """Parse ``"a"`` or ``"a/b"``; ints are accepted as-is, floats never."""
    if isinstance(s, bool):
        raise RecurrenceError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, Fraction):
        return s
    if not isinstance(s, str):
        raise RecurrenceError(f"rationals must be given as strings, got {s!r}")
    m = _RATIONAL.match(s.strip())
    if not m:
        raise RecurrenceError(f"malformed rational {s!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise RecurrenceError(f"zero denominator in {s!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def strip_poly(coeffs: Sequence) -> Poly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_eval(P: Poly, x) -> Fraction:
    acc = Fraction(0)
    for a in reversed(P):
        acc = acc * x + a
    return acc


def poly_taylor_shift(P: Poly, s: int) -> Poly:
    """Coefficients of P(z + s)."""
    n = len(P)
    return strip_poly(
        sum(P[j] * comb(j, k) * s ** (j - k) for j in range(k, n)) for k in range(n)
    )


@dataclass(frozen=True)
class RecurrenceSpec:
    order: int
    coefficients: tuple[Poly, ...]
    initial: tuple[Fraction, ...]
    offset: int
    leading: Poly = (Fraction(1),)

    @classmethod
    def make(cls, coefficients, initial, offset: int | None = None, leading=(1,)) -> "RecurrenceSpec":
        """Convenience constructor from nested lists of ints/strings/Fractions."""
        coeffs = tuple(strip_poly(parse_rational(a) for a in P) for P in coefficients)
        init = tuple(parse_rational(a) for a in initial)
        return cls(
            order=len(coeffs),
            coefficients=coeffs,
            initial=init,
            offset=len(init) if offset is None else offset,
            leading=strip_poly(parse_rational(a) for a in leading),
        )

    @classmethod
    def from_json(cls, data) -> "RecurrenceSpec":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        try:
            order = data["order"]
            coeffs = data["coefficients"]
            initial = data["initial"]
        except (KeyError, TypeError) as exc:
            raise RecurrenceError(f"recurrence file is missing field {exc}") from None
        unknown = set(data) - {"order", "offset", "coefficients", "initial", "leading"}
        if unknown:
            raise RecurrenceError(f"unknown fields in recurrence file: {sorted(unknown)}")
        if not isinstance(order, int) or order < 1:
            raise RecurrenceError("order must be a positive integer")
        if len(coeffs) != order:
            raise RecurrenceError(f"order is {order} but {len(coeffs)} coefficient polynomials given")
        spec = cls.make(coeffs, initial, data.get("offset", order), data.get("leading", ["1"]))
        return spec

    def to_json(self) -> dict:
        out = {
            "order": self.order,
            "offset": self.offset,
            "coefficients": [[format_rational(a) for a in P] for P in self.coefficients],
            "initial": [format_rational(a) for a in self.initial],
        }
        if self.leading != (Fraction(1),):
            out["leading"] = [format_rational(a) for a in self.leading]
        return out


def load_recurrence(path: str | PathLike) -> RecurrenceSpec:
    with open(path, encoding="utf-8") as fh:
        return RecurrenceSpec.from_json(json.load(fh))


@dataclass(frozen=True)
class NormalizedSpec:
    """Recurrence valid for every n >= order; indices shifted by ``shift``.

    ``initial`` holds f(shift), ..., f(shift+order-1) and ``prefix`` the
    original values f(0), ..., f(shift-1) that the recurrence does not govern.
    """

    order: int
    coefficients: tuple[Poly, ...]
    initial: tuple[Fraction, ...]
    shift: int = 0
    prefix: tuple[Fraction, ...] = ()
    extension_mode: bool = False
    _table: list = field(default_factory=list, compare=False, repr=False, hash=False)

    @property
    def prefix_zeros(self) -> list[int]:
        return [i for i, x in enumerate(self.prefix) if x == 0]

    @property
    def trailing(self) -> Poly:
        return self.coefficients[-1]

    def values(self, N: int) -> list[Fraction]:
        """f(shift), ..., f(shift+N): the normalized sequence, exact."""
        t = self._table
        if not t:
            t.extend(self.initial)
        d = self.order
        P = self.coefficients
        nonzero = [(i + 1, Pi) for i, Pi in enumerate(P) if Pi]
        while len(t) <= N:
            n = len(t)
            acc = Fraction(0)
            for i, Pi in nonzero:
                prev = t[n - i]
                if prev:
                    acc += poly_eval(Pi, n) * prev
            t.append(acc)
        return t[: N + 1] if N + 1 < len(t) else list(t)

    def to_spec(self) -> RecurrenceSpec:
        return RecurrenceSpec(self.order, self.coefficients, self.initial, self.order)


def validate(spec: RecurrenceSpec, extension_mode: bool = False) -> NormalizedSpec:
    """Check the hypotheses and shift indices so the recurrence starts at n = d."""
    d = spec.order
    if d < 1 or len(spec.coefficients) != d:
        raise RecurrenceError(f"order {d} does not match {len(spec.coefficients)} coefficient polynomials")
    lead = strip_poly(spec.leading)
    if len(lead) != 1:
        raise NotMonicForm(
            "unsupported recurrence form: the coefficient of f(n) must be a nonzero constant; "
            "a polynomial multiplying f(n) itself (as in (n+1) f(n+1) = 2(2n+1) f(n)) "
            "admits no p-adic analytic-arc decomposition of this kind"
        )
    if len(spec.initial) != spec.offset:
        raise BadInitialLength(f"offset is {spec.offset} but {len(spec.initial)} initial values given")
    if spec.offset < d:
        raise BadInitialLength(f"offset {spec.offset} is smaller than the order {d}")
    coeffs = tuple(strip_poly(a / lead[0] for a in P) for P in spec.coefficients)
    if not coeffs[-1]:
        smaller = max((i + 1 for i, P in enumerate(coeffs) if P), default=0)
        raise TrailingZero(
            f"P_{d} is the zero polynomial; the recurrence has effective order {smaller}, "
            f"restate it with order={smaller}" if smaller else "all coefficient polynomials are zero"
        )
    if len(coeffs[-1]) > 1 and not extension_mode:
        raise TrailingNotConstant(f"P_{d} must be a nonzero constant (or enable extension mode)")
    s = spec.offset - d
    shifted = tuple(poly_taylor_shift(P, s) for P in coeffs) if s else coeffs
    return NormalizedSpec(
        order=d,
        coefficients=shifted,
        initial=tuple(spec.initial[s:]),
        shift=s,
        prefix=tuple(spec.initial[:s]),
        extension_mode=extension_mode,
    )


def _as_normalized(spec) -> NormalizedSpec:
    return spec if isinstance(spec, NormalizedSpec) else validate(spec)


def eval_upto(spec, N: int) -> list[Fraction]:
    """f(0), ..., f(N) in the original indexing."""
    norm = _as_normalized(spec)
    if N < 0:
        raise ValueError("N must be >= 0")
    s = norm.shift
    if N < s:
        return list(norm.prefix[: N + 1])
    return list(norm.prefix) + norm.values(N - s)


def zeros_upto(spec, N: int) -> list[int]:
    """Indices n <= N with f(n) = 0 exactly, original indexing."""
    return [n for n, x in enumerate(eval_upto(spec, N)) if x == 0]


def eval_at_negative(spec, n: int) -> Fraction:
    """Value at a negative index of the unique backward extension.

    Indices are those of the normalized sequence, which agree with the
    original ones whenever ``offset == order``.
    """
    norm = _as_normalized(spec)
    if n >= 0:
        raise ValueError("n must be negative")
    d = norm.order
    P = norm.coefficients
    window = {k: v for k, v in enumerate(norm.values(d - 1))}
    for k in range(-1, n - 1, -1):
        top = k + d
        lead = poly_eval(P[-1], top)
        if lead == 0:
            raise ExtensionModeUnsupported(f"P_{d}({top}) = 0; the sequence cannot be run backwards past {k + 1}")
        rest = sum((poly_eval(P[i - 1], top) * window[top - i] for i in range(1, d)), Fraction(0))
        window[k] = (window[top] - rest) / lead
    return window[n]
