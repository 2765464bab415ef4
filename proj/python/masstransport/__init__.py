"""Python front end for the masstransport C++ core.

Exact results come back as fractions.Fraction; Monte Carlo results as dicts
with mean, std_error, trials, ci_low and ci_high.
"""

from fractions import Fraction

from . import _core
from ._core import (
    Error,
    Process,
    estimate_a_epsilon,
    mass_received_at_zero,
    mass_row,
    mc_identity,
    mc_maximal_ergodic,
    mc_survival,
    run_cli,
    sample_window,
    survival_tail_bound,
    total_sent,
)

__all__ = [
    "Error",
    "Process",
    "estimate_a_epsilon",
    "exact_identity",
    "exact_maximal_ergodic",
    "exact_mean",
    "exact_survival",
    "mass_received_at_zero",
    "mass_row",
    "mc_identity",
    "mc_maximal_ergodic",
    "mc_survival",
    "run_cli",
    "sample_window",
    "survival_tail_bound",
    "total_sent",
]


def exact_identity(process, n):
    lhs, rhs = _core.exact_identity(process, n)
    return Fraction(lhs), Fraction(rhs)


def exact_maximal_ergodic(process, horizon):
    return Fraction(_core.exact_maximal_ergodic(process, horizon))


def exact_survival(process, horizon):
    return Fraction(_core.exact_survival(process, horizon))


def exact_mean(process):
    value = process.exact_mean
    return None if value is None else Fraction(value)
