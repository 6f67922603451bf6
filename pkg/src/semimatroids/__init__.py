"""Exact polynomial invariants of finite semimatroids.

Subsets of the ground set are bitmask ints (bit i = i-th element in the
ground order); polynomials have integer coefficients and are compared
term by term.
"""

from .core import (AxiomError, AxiomViolation, DomainError, InputError, Semimatroid,
                   SemimatroidError, bases, check_axioms, circuits, classify_element, closure,
                   find_violations, flats)
from .identities import IDENTITIES, IdentityReport, check_all, run_identity
from .ingest import (Arrangement, Hyperplane, RandomSpec, from_arrangement, from_document,
                     from_explicit, from_matroid_rank, load, random_instance, to_explicit)
from .invariants import (INVARIANTS, Route, activities, characteristic, dichromatic,
                         interval_decomposition, polynomial, rank_generating, size_corank,
                         subset_corank, tutte, z_multivariate)
from .minors import contract, delete, restrict

__all__ = [
    "AxiomError", "AxiomViolation", "DomainError", "InputError", "Semimatroid",
    "SemimatroidError", "bases", "check_axioms", "circuits", "classify_element", "closure",
    "find_violations", "flats", "IDENTITIES", "IdentityReport", "check_all", "run_identity",
    "Arrangement", "Hyperplane", "RandomSpec", "from_arrangement", "from_document",
    "from_explicit", "from_matroid_rank", "load", "random_instance", "to_explicit",
    "INVARIANTS", "Route", "activities", "characteristic", "dichromatic",
    "interval_decomposition", "polynomial", "rank_generating", "size_corank", "subset_corank",
    "tutte", "z_multivariate", "contract", "delete", "restrict",
]
