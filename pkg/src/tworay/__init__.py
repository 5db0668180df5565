"""Defining systems, their bound quiver algebras, and the exact verification
of the string/band classification of their modules."""

__version__ = "0.1.0"

from .defining_system import (AdmissibleVertex, DefiningSystem, validate,
                              from_json, admissible_vertices, extend,
                              reduce_to_fundamental)
from .field import PrimeField, RationalField
from .quiver import Quiver, Relation, build_quiver, build_relations
from .strings import EMPTY, StringWord, WordCalculus
from .string_modules import (Representation, StringModules, check_relations,
                             dim_vector, zero_representation)
from .algebra import AlgebraBasis, algebra_basis
from .homlab import (ArVerifier, IndecVerdict, SesCandidate, ar_translate,
                     hom_basis, is_indecomposable, is_isomorphic, is_split,
                     realize_ses, verify_ar_list)
from .vsc import (AdmissiblePoset, SubspaceTriple, VscModel, build_model,
                  hom_pattern_of_functor, match_model,
                  subspace_objects_family, subspace_objects_single,
                  subspace_rows_family, subspace_rows_single, zero_bar)


def verify_defining_system(raw, bound, field=None, lam_sample=(2, 3, 5),
                           jobs=1):
    """One-call verification: build everything for a system and run the
    almost-split-sequence checks at the given dimension bound."""
    ds = validate(raw)
    quiver = build_quiver(ds)
    relations = build_relations(ds, quiver)
    algebra = AlgebraBasis(quiver, relations, field)
    modules = StringModules(WordCalculus(quiver), algebra.field)
    return ArVerifier(modules, algebra, lam_sample).verify(bound, jobs=jobs)

__all__ = [
    "AdmissibleVertex", "DefiningSystem", "validate", "from_json",
    "admissible_vertices", "extend", "reduce_to_fundamental",
    "PrimeField", "RationalField",
    "Quiver", "Relation", "build_quiver", "build_relations",
    "EMPTY", "StringWord", "WordCalculus",
    "Representation", "StringModules", "check_relations", "dim_vector",
    "zero_representation",
    "AlgebraBasis", "algebra_basis",
    "ArVerifier", "IndecVerdict", "SesCandidate", "ar_translate", "hom_basis",
    "is_indecomposable", "is_isomorphic", "is_split", "realize_ses",
    "verify_ar_list",
    "AdmissiblePoset", "SubspaceTriple", "VscModel", "build_model",
    "hom_pattern_of_functor", "match_model", "subspace_objects_family",
    "subspace_objects_single", "subspace_rows_family",
    "subspace_rows_single", "zero_bar", "verify_defining_system",
]
