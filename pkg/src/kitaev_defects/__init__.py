"""Exact-arithmetic engine for Hopf-algebraic lattice models with defects.

Everything is computed over the rationals with zero tolerance: finite
groups and their group algebras, Hopf algebra structure constants,
two-sided comodule (edge) algebras, symmetric separability idempotents,
crossed products and vertex algebras, oriented surfaces as rotation
systems, the lattice state space with its commuting projector family, and
exact ground-space dimensions.  The :mod:`kitaev_defects.cli` module
drives all of it from JSON model documents.
"""

from .comodule import (
    BicomoduleAlgebraData,
    opposite_bicomodule,
    regular_bicomodule,
    trivial_bicomodule,
    twisted_subgroup_algebra,
    validate_bicomodule,
)
from .crossed import (
    CrossedProductAlgebra,
    balancing_algebra,
    check_idempotents_commute,
    crossed_product,
    drinfeld_double,
    left_comodule_from_bicomodule,
)
from .documents import (
    ModelDocument,
    document_from_dict,
    load_document,
    validate_document,
)
from .errors import InputError, KitaevError, MathViolation
from .groups import (
    GroupTable,
    cyclic_group,
    cyclic_product,
    group_from_table,
    product_group,
    symmetric_group,
)
from .hopf import (
    AlgebraData,
    HopfAlgebraData,
    dual_hopf,
    group_algebra,
    haar_integral,
    validate_algebra,
    validate_hopf,
)
from .lattice import (
    OperatorSet,
    StateSpace,
    build_operator_set,
    build_state_space,
    ground_space_dimension,
    hamiltonian,
    verify_operator_set,
    vertex_algebra,
)
from .balancing import (
    balancing_from_module,
    family_from_module,
    module_from_balancing,
    verify_equivalence,
    verify_gluing_equivalence,
)
from .rationals import Q, Rational, rational_from_str, rational_to_str
from .reporting import CheckReport, CheckResult
from .separability import symmetric_separability_idempotent
from .surface import (
    CellDecomposition,
    LabeledSurface,
    VertexLabelSpec,
    build_cells,
    regularity_check,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraData",
    "BicomoduleAlgebraData",
    "CellDecomposition",
    "CheckReport",
    "CheckResult",
    "CrossedProductAlgebra",
    "GroupTable",
    "HopfAlgebraData",
    "InputError",
    "KitaevError",
    "LabeledSurface",
    "MathViolation",
    "ModelDocument",
    "OperatorSet",
    "Q",
    "Rational",
    "StateSpace",
    "VertexLabelSpec",
    "balancing_algebra",
    "balancing_from_module",
    "build_cells",
    "build_operator_set",
    "build_state_space",
    "check_idempotents_commute",
    "crossed_product",
    "cyclic_group",
    "cyclic_product",
    "document_from_dict",
    "drinfeld_double",
    "dual_hopf",
    "family_from_module",
    "ground_space_dimension",
    "group_algebra",
    "group_from_table",
    "haar_integral",
    "hamiltonian",
    "left_comodule_from_bicomodule",
    "load_document",
    "module_from_balancing",
    "opposite_bicomodule",
    "product_group",
    "rational_from_str",
    "rational_to_str",
    "regular_bicomodule",
    "regularity_check",
    "symmetric_group",
    "symmetric_separability_idempotent",
    "trivial_bicomodule",
    "twisted_subgroup_algebra",
    "validate_algebra",
    "validate_bicomodule",
    "validate_document",
    "validate_hopf",
    "verify_equivalence",
    "verify_gluing_equivalence",
    "verify_operator_set",
    "vertex_algebra",
]
