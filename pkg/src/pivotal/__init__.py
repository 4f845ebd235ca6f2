"""Pivotal decompositions of finite-domain functions.

Function tables with cofactors and sections, finite distributive lattices,
decomposability checking and synthesis, multilinear and min-term extensions,
the sixteen section-characterized Boolean classes, and reduced ordered
decision diagrams.  All arithmetic is exact.
"""

from .classes import (CLASS_NAMES, SignedTable, VSet, boolean_delta,
                      boolean_partial, class_for_vset, gamma_membership,
                      minimal_um_class, um_algebra, um_closed_form,
                      um_membership, vset, vset_for_class)
from .decompose import (CofactorRelation, Conflict, DecompositionReport,
                        DomainCoverageError, ExtensionalPivotal,
                        PivotalFamilyError, PivotalFunction, builtin_pivotal,
                        check_componentwise, check_decomposition,
                        cofactor_relation, monotone_restrict,
                        synthesize_componentwise, synthesize_pivotal)
from .diagrams import (Diagram, DiagramError, build, dd_evaluate,
                       format_diagram, node_count, parse_diagram)
from .expressions import ExpressionError, parse_ast, parse_expression, to_string
from .extensions import (LovaszForm, MleIdentityReport, MultilinearForm,
                         OrientationWitness, binary_lovasz_pivotals,
                         check_mle_identity, lovasz_evaluate, lovasz_table,
                         mle_evaluate, mle_partial, mobius, monotone_witness,
                         oriented_table, sop_form, zeta_values)
from .lattices import (FiniteLattice, LatticeError, LatticePolynomial,
                       QlpReport, RangeConditionError, chain_lattice,
                       is_lattice_polynomial, is_sugeno, lp_evaluate,
                       lp_table, median, median_in, qlp_check,
                       validate_lattice)
from .tables import (BOOL, RATIONAL, ArityError, ArityLimitError,
                     EquivalenceWitness, FunctionTable, Sort, SortError,
                     canonical_form, chain_sort, cofactor,
                     essential_arguments, grid_sort, is_equivalent,
                     lattice_sort, max_arity, reduced, remap, section,
                     substitute)

__version__ = "0.1.0"
