"""Choice of primes at which all recurrence data are p-adic units.

Over Q the embedding question is trivial and what remains is a finite
divisibility check, so the search is a deterministic scan over primes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import nextprime

from .errors import NoAdmissiblePrime
from .recurrence import NormalizedSpec, poly_eval

DEFAULT_SEARCH_CAP = 10_000


@dataclass
class AdmissibilityReport:
    prime: int
    unit_set_ok: bool
    leading_no_roots_ok: bool = True
    rejected_reasons: list[tuple[Fraction, str]] = field(default_factory=list)

    @property
    def admissible(self) -> bool:
        return self.unit_set_ok and self.leading_no_roots_ok


def gather_S(spec: NormalizedSpec) -> set[Fraction]:
    """Nonzero initial values f(0..d-1) and nonzero coefficients of P_1..P_d."""
    S = {x for x in spec.initial if x != 0}
    for P in spec.coefficients:
        S.update(a for a in P if a != 0)
    return S


def check_prime(spec: NormalizedSpec, p: int, extension_mode: bool | None = None) -> AdmissibilityReport:
    if extension_mode is None:
        extension_mode = spec.extension_mode
    report = AdmissibilityReport(prime=p, unit_set_ok=True)
    for x in sorted(gather_S(spec)):
        if x.numerator % p == 0:
            report.unit_set_ok = False
            report.rejected_reasons.append((x, "numerator divisible by p"))
        elif x.denominator % p == 0:
            report.unit_set_ok = False
            report.rejected_reasons.append((x, "denominator divisible by p"))
    if extension_mode and report.unit_set_ok:
        trailing = spec.trailing
        for r in range(p):
            v = poly_eval(trailing, r)
            if v.numerator % p == 0:
                report.leading_no_roots_ok = False
                report.rejected_reasons.append((Fraction(r), "root of the trailing polynomial mod p"))
                break
    return report


def admissible_primes(
    spec: NormalizedSpec,
    count: int,
    min_p: int = 5,
    extension_mode: bool | None = None,
    search_cap: int = DEFAULT_SEARCH_CAP,
) -> list[int]:
    """The ``count`` smallest admissible primes ``>= min_p``, increasing.

    Raises NoAdmissiblePrime once candidates exceed ``search_cap``; without
    extension mode this can only happen for an absurdly small cap.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    found = []
    p = nextprime(max(min_p, 5) - 1)
    while len(found) < count:
        if p > search_cap:
            raise NoAdmissiblePrime(
                f"found {len(found)} of {count} admissible primes below the search cap {search_cap}"
            )
        if check_prime(spec, p, extension_mode).admissible:
            found.append(p)
        p = nextprime(p)
    return found
