"""Certified zero sets of polynomial-linear recurrences via p-adic analytic arcs."""
from .arc import ArcSeries, eval_arc, lift
from .companion import CompanionSystem, ClassSystem, build_companion, class_system, find_period
from .errors import *  # noqa: F401,F403
from .fixtures import FIXTURES, fixture
from .mahler import MahlerPoly
from .padic import TOP, PadicContext, PadicInt
from .primes import admissible_primes, check_prime
from .recurrence import RecurrenceSpec, eval_at_negative, eval_upto, load_recurrence, validate, zeros_upto
from .strassman import RigidSeries, StrassmanResult, strassman_bound, to_power_coeffs
from .zeroset import AnalysisOptions, ZeroSetReport, analyze, merge_progressions, verify_report

__version__ = "0.1.0"
