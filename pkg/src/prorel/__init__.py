"""Finite-quotient verification of relation obstructions for maximal pro-p Galois groups.

Modules: ``arith`` (valuations, p-adic log/exp), ``words`` (relation words),
``groups`` (finite-group engine and filtrations), ``metacyclic`` (the groups
``G(a,m)``), ``unipotent`` (the witness group in ``U_n(Z/p)``), ``dpoly`` (the
``D_i`` polynomials and ``Z[C_p]``), ``obstruction`` (theorem checkers) and
``cli``.
"""
from .errors import (DomainError, HypothesisViolation, InvalidParameter, MembershipError, ParseError,
                     ResourceLimitError)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "HypothesisViolation",
    "InvalidParameter",
    "MembershipError",
    "ParseError",
    "ResourceLimitError",
]
