"""Zero sets of recurrences as progressions plus a finite exceptional set.

The pipeline: pick an admissible prime, build the companion system, find a
modulus b for which every class matrix is the identity mod p, lift an
analytic arc through each residue class c mod b and count its zeros with
Strassman. Classes whose arc vanishes (to precision, and exactly on the
oracle up to the horizon) become progressions b*N + c; all other zeros are
finite in number and listed individually.
"""
from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from .arc import lift
from .companion import DEFAULT_PERIOD_CAP, build_companion, class_system, find_period
from .errors import InternalSoundness, InvalidInput
from .padic import PadicContext
from .primes import admissible_primes
from .recurrence import NormalizedSpec, RecurrenceSpec, validate, zeros_upto
from .strassman import RigidSeries, Status, StrassmanResult, analyze_series


@dataclass(frozen=True)
class AnalysisOptions:
    prime: int | None = None
    M: int = 16
    M_cap: int = 64
    horizon: int = 2000
    period_cap: int = DEFAULT_PERIOD_CAP
    extension_mode: bool = False

    def __post_init__(self):
        if self.M < 1 or self.M_cap < self.M:
            raise InvalidInput(f"need 1 <= M <= M_cap, got M = {self.M}, M_cap = {self.M_cap}")
        if self.horizon < 0:
            raise InvalidInput("horizon must be >= 0")
        if self.period_cap < 1:
            raise InvalidInput("period cap must be >= 1")

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "M": self.M,
            "M_cap": self.M_cap,
            "horizon": self.horizon,
            "period_cap": self.period_cap,
            "extension_mode": self.extension_mode,
        }


class ClassStatus(str, Enum):
    ALL_ZERO = "ALL_ZERO"
    COMPLETE = "COMPLETE"
    BOUNDED_PARTIAL = "BOUNDED_PARTIAL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class ClassReport:
    """One residue class c mod b of the normalized sequence.

    ``zeros`` are oracle-exact zeros of the class up to the horizon, in the
    original indexing. ``M`` is the lift depth that produced ``strassman``.
    """

    c: int
    status: ClassStatus
    zeros: tuple[int, ...]
    strassman: StrassmanResult
    M: int

    def to_json(self) -> dict:
        s = self.strassman.to_json()
        return {
            "c": self.c,
            "status": self.status.value,
            "strassman_status": s["status"],
            "strassman_bound": s["bound"],
            "zeros": list(self.zeros),
            "min_val": s["min_val"],
            "tau": s["tau"],
            "precision_exp": self.M + 1,
        }


@dataclass(frozen=True)
class Progression:
    """{n >= start : n = residue mod modulus}; ``start`` is the least member."""

    modulus: int
    residue: int
    start: int

    def __contains__(self, n: int) -> bool:
        return n >= self.start and (n - self.residue) % self.modulus == 0

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "residue": self.residue, "start": self.start}


@dataclass(frozen=True)
class ZeroSetReport:
    prime: int
    b: int
    M: int
    horizon: int
    shift: int
    classes: tuple[ClassReport, ...]
    progressions: tuple[Progression, ...]
    exceptional: tuple[int, ...]
    options: AnalysisOptions
    certified_upto: int | None = None

    @property
    def fully_certified(self) -> bool:
        return all(c.status in (ClassStatus.COMPLETE, ClassStatus.ALL_ZERO) for c in self.classes)

    def summary(self) -> dict:
        counts = {s.value: 0 for s in ClassStatus}
        for c in self.classes:
            counts[c.status.value] += 1
        return counts

    def contains(self, n: int) -> bool:
        return n in self.exceptional or any(n in pr for pr in self.progressions)

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "modulus_b": self.b,
            "precision_exp": self.M + 1,
            "horizon": self.horizon,
            "shift": self.shift,
            "classes": [c.to_json() for c in self.classes],
            "decomposition": {
                "progressions": [pr.to_json() for pr in self.progressions],
                "exceptional": list(self.exceptional),
            },
            "certified_equal_to_oracle_upto": self.certified_upto,
            "summary": self.summary(),
            "options": self.options.to_json(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)


_NULLABLE_INT = {"type": ["integer", "null"]}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "prime", "modulus_b", "precision_exp", "horizon", "classes",
        "decomposition", "certified_equal_to_oracle_upto",
    ],
    "properties": {
        "prime": {"type": "integer", "minimum": 5},
        "modulus_b": {"type": "integer", "minimum": 1},
        "precision_exp": {"type": "integer", "minimum": 2},
        "horizon": {"type": "integer", "minimum": 0},
        "shift": {"type": "integer", "minimum": 0},
        "classes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["c", "status", "strassman_bound", "zeros", "min_val", "tau"],
                "properties": {
                    "c": {"type": "integer", "minimum": 0},
                    "status": {"enum": [s.value for s in ClassStatus]},
                    "strassman_status": {"enum": [s.value for s in Status]},
                    "strassman_bound": _NULLABLE_INT,
                    "zeros": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "min_val": _NULLABLE_INT,
                    "tau": _NULLABLE_INT,
                    "precision_exp": {"type": "integer"},
                },
            },
        },
        "decomposition": {
            "type": "object",
            "required": ["progressions", "exceptional"],
            "properties": {
                "progressions": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["modulus", "residue"],
                        "properties": {
                            "modulus": {"type": "integer", "minimum": 1},
                            "residue": {"type": "integer", "minimum": 0},
                            "start": {"type": "integer", "minimum": 0},
                        },
                    },
                },
                "exceptional": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            },
        },
        "certified_equal_to_oracle_upto": _NULLABLE_INT,
    },
}


# -- progressions -----------------------------------------------------------------

def _divisors(b: int) -> list[int]:
    return [m for m in range(1, b + 1) if b % m == 0]


def merge_progressions(classes, b: int, exact_limit: int = 24) -> list[tuple[int, int]]:
    """Fewest progressions (m, r), m | b, whose union mod b is exactly ``classes``.

    Overlaps are allowed. Candidates are the maximal progressions contained
    in the set; an exhaustive cover search is used when there are at most
    ``exact_limit`` of them, a greedy cover otherwise. Output is sorted.
    """
    S = set(classes)
    if any(not 0 <= c < b for c in S):
        raise InvalidInput(f"residues must lie in 0..{b - 1}")
    if not S:
        return []
    cand = []
    for m in _divisors(b):
        for r in range(m):
            members = frozenset(range(r, b, m))
            if members <= S:
                cand.append(((m, r), members))
    maximal = [
        (key, mem) for key, mem in cand
        if not any(mem < other for _, other in cand)
    ]
    maximal.sort(key=lambda t: t[0])
    if len(maximal) <= exact_limit:
        for k in range(1, len(maximal) + 1):
            for combo in itertools.combinations(maximal, k):
                if frozenset().union(*(mem for _, mem in combo)) == S:
                    return sorted(key for key, _ in combo)
    chosen, covered = [], set()
    while covered != S:
        key, mem = max(maximal, key=lambda t: (len(t[1] - covered), -t[0][0], -t[0][1]))
        chosen.append(key)
        covered |= mem
    return sorted(chosen)


def _to_original(m: int, r: int, shift: int) -> Progression:
    return Progression(modulus=m, residue=(r + shift) % m, start=r + shift)


def _absorb(progressions, exceptional: set[int]):
    """Pull prefix zeros that continue a progression backwards into it."""
    out = []
    for pr in progressions:
        start = pr.start
        while start - pr.modulus in exceptional:
            start -= pr.modulus
            exceptional.discard(start)
        out.append(replace(pr, start=start))
    return tuple(out), exceptional


# -- the pipeline --------------------------------------------------------------------

class _Contexts:
    """Companion systems at the working precisions used by escalation."""

    def __init__(self, spec: NormalizedSpec, p: int, b: int):
        self.spec, self.p, self.b = spec, p, b
        self._sys = {}

    def system(self, M: int):
        if M not in self._sys:
            self._sys[M] = build_companion(self.spec, PadicContext(self.p, M + 2))
        return self._sys[M]


def _class_zeros(values: list[Fraction], c: int, b: int) -> list[int]:
    return [n for n in range(c, len(values), b) if values[n] == 0]


def _classify(ctxs: _Contexts, c: int, values: list[Fraction], opts: AnalysisOptions):
    b = ctxs.b
    zeros = _class_zeros(values, c, b)
    members = range(c, len(values), b)
    M = opts.M
    while True:
        cls = class_system(ctxs.system(M), c, b)
        arcs = lift(cls, M)
        res = analyze_series(RigidSeries.from_arc(arcs[0]))
        if res.status is Status.BOUNDED:
            if len(zeros) > res.bound:
                raise InternalSoundness(
                    f"class {c}: {len(zeros)} exact zeros exceed the Strassman bound {res.bound}"
                )
            status = ClassStatus.COMPLETE if len(zeros) == res.bound else ClassStatus.BOUNDED_PARTIAL
            return status, zeros, res, M
        if res.status is Status.VANISHING_TO_PRECISION and len(zeros) == len(members):
            return ClassStatus.ALL_ZERO, zeros, res, M
        if 2 * M > opts.M_cap:
            return ClassStatus.INCONCLUSIVE, zeros, res, M
        M *= 2


def choose_prime(spec: NormalizedSpec, opts: AnalysisOptions) -> int:
    if opts.prime is not None:
        return opts.prime
    return admissible_primes(spec, 1, extension_mode=opts.extension_mode)[0]


def analyze(spec: RecurrenceSpec | NormalizedSpec, opts: AnalysisOptions | None = None) -> ZeroSetReport:
    opts = opts or AnalysisOptions()
    norm = spec if isinstance(spec, NormalizedSpec) else validate(spec, opts.extension_mode)
    p = choose_prime(norm, opts)
    base = build_companion(norm, PadicContext(p, opts.M + 2))
    b = find_period(base, opts.period_cap).b
    H, s = opts.horizon, norm.shift
    if H < b + s:
        warnings.warn(f"horizon {H} does not reach one full period (b = {b})", stacklevel=2)
    values = norm.values(H - s) if H >= s else []
    ctxs = _Contexts(norm, p, b)
    ctxs._sys[opts.M] = base
    reports = []
    for c in range(b):
        status, zeros, res, M = _classify(ctxs, c, values, opts)
        reports.append(ClassReport(c, status, tuple(n + s for n in zeros), res, M))
    X = [r.c for r in reports if r.status is ClassStatus.ALL_ZERO]
    progressions = tuple(_to_original(m, r, s) for m, r in merge_progressions(X, b))
    exceptional = set(norm.prefix_zeros)
    for r in reports:
        if r.status is not ClassStatus.ALL_ZERO:
            exceptional.update(r.zeros)
    progressions, exceptional = _absorb(progressions, exceptional)
    report = ZeroSetReport(
        prime=p, b=b, M=opts.M, horizon=H, shift=s, classes=tuple(reports),
        progressions=progressions, exceptional=tuple(sorted(exceptional)), options=opts,
    )
    ok, bad = verify_report(report, norm, H)
    if not ok:
        raise InternalSoundness(f"decomposition disagrees with the oracle at {bad[:5]}")
    return replace(report, certified_upto=H)


# -- verification ---------------------------------------------------------------------

def _decomposition(report) -> tuple[list[Progression], set[int]]:
    data = report.to_json() if hasattr(report, "to_json") else report
    dec = data["decomposition"]
    progs = [
        Progression(pr["modulus"], pr["residue"] % pr["modulus"], pr.get("start", pr["residue"]))
        for pr in dec["progressions"]
    ]
    return progs, set(dec["exceptional"])


def verify_report(report, spec, N: int) -> tuple[bool, list[dict]]:
    """Compare the reported zero set with the oracle for every n <= N.

    ``report`` may be a :class:`ZeroSetReport` or its JSON dict; ``spec`` a
    raw or normalized recurrence. Discrepancies list n, the reported
    membership and the oracle's verdict.
    """
    progs, exc = _decomposition(report)
    zeros = set(zeros_upto(spec, N))
    bad = []
    for n in range(N + 1):
        claimed = n in exc or any(n in pr for pr in progs)
        actual = n in zeros
        if claimed != actual:
            bad.append({"n": n, "reported": claimed, "oracle": actual})
    return not bad, bad


def second_prime_check(spec, report: ZeroSetReport, opts: AnalysisOptions | None = None) -> dict:
    """Rerun at the next admissible prime and compare decompositions up to the horizon."""
    opts = opts or report.options
    norm = spec if isinstance(spec, NormalizedSpec) else validate(spec, opts.extension_mode)
    q = admissible_primes(norm, 1, min_p=report.prime + 1, extension_mode=opts.extension_mode)[0]
    other = analyze(norm, replace(opts, prime=q))
    H = min(report.horizon, other.horizon)
    diff = [n for n in range(H + 1) if report.contains(n) != other.contains(n)]
    return {
        "prime": q,
        "modulus_b": other.b,
        "agree": not diff,
        "differences": diff,
        "summary": other.summary(),
    }

