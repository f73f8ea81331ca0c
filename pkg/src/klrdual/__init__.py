"""Graded modules over quiver Hecke algebras, R-matrices, duality data and
the functor F = Delta (x)_{R^D} (-), in exact arithmetic."""
from .affinization import (Affinization, HypothesisError, check_affinization, intertwiner_failures,
                           rmatrix_normalized,
                           rmatrix_pair, rmatrix_raw, symmetric_affinization)
from .cartan import CartanDatum, KLRParams, QPolynomialSet, SkewForm
from .duality import (DualityDatum, apply_functor, build_delta, check_axioms,
                      datum_from_affinizations, derive_cartan, functor_of_product)
from .fields import QQ, PrimeField, field_from_spec
from .modules import (GradedHom, GradedModule, check_relations, convolve, is_isomorphic, is_simple,
                      q_character)
from .poly import Poly

__version__ = "0.1.0"
