"""Python front end for the supnorm C++ core.

Matrix entries may be ints, "a/b" strings or fractions.Fraction. Scalar
rational results come back as Fraction; structured results are plain dicts
in the same JSON schema the command-line tool writes.
"""

from fractions import Fraction

from . import _supnorm
from ._supnorm import (
    SCHEMA,
    ConsistencyError,
    DomainError,
    ResourceError,
    chain,
    count,
    exchange,
    good_primes,
    is_q_good,
    residue_system,
    smith_normal_form,
    verify,
)

__all__ = [
    "SCHEMA",
    "ConsistencyError",
    "DomainError",
    "ResourceError",
    "chain",
    "convexity_exponent",
    "count",
    "delta",
    "determinantal_divisors",
    "exchange",
    "good_primes",
    "is_q_good",
    "laplace_eigenvalue",
    "residue_system",
    "smith_normal_form",
    "verify",
]


def determinantal_divisors(matrix):
    return [int(d) for d in _supnorm.determinantal_divisors(matrix)]


def laplace_eigenvalue(mu):
    return Fraction(_supnorm.laplace_eigenvalue(mu))


def convexity_exponent(n):
    return Fraction(_supnorm.convexity_exponent(n))


def delta(n, c9=None):
    """Delta at minimal legal parameters; rational fields converted to Fraction."""
    d = _supnorm.delta(n, c9)
    for key in ("delta", "delta_F", "eta", "e_min", "e_max", "M"):
        d[key] = Fraction(d[key])
    return d
