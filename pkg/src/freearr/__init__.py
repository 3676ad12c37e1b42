"""Freeness of hyperplane arrangements over QQ and prime fields."""

from .polyring import GF, QQ, ZZ, PolyRing, Polynomial, TermOrder
from .arrangement import (Arrangement, Derivation, FreenessReport, apply_derivation, arrangement_over_prime,
                          defining_polynomial, derivation_module, euler_derivation, is_free, jacobian_ideal,
                          new_arrangement, non_good_primes, reduce_arrangement, saito_check)
from .lattice import (CharPoly, char_poly, characteristic_polynomial, count_complement_points,
                      intersection_lattice, terao_factorization_check, yoshinaga_3d, yoshinaga_ld)
from .transfer import applications_check, classify_primes, transfer_down, transfer_up
from .catalog import builtin

__version__ = "0.1.0"
