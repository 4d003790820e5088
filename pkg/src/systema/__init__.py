"""Exact arithmetic for triples and systems.

Carriers with a tangible subset, a negation map and a surpassing
relation; linear algebra with the signed permutation determinant;
polynomials as functions; Puiseux series, valuations and tropicalization.
"""

from .core import (AxiomReport, Flags, System, audit_axioms, characteristic,
                   check_reversibility, height_of, height_two_profile,
                   is_meta_tangible, is_minus_bipotent, negation_kind,
                   tangible_sum_trichotomy)
from .instances import (find_isomorphism, isomorphic_finite, make_boolean,
                        make_finite_chain, make_fuzzy_negation,
                        make_max_plus, make_min_plus, resolve, supertropicalize,
                        symmetrize)

__version__ = "0.1.0"
