"""rackkit: exact-arithmetic computer algebra for rack bialgebras.

Structures are given by structure constants over the rationals (dual
numbers for first-order deformations).  The package verifies the
defining axioms, builds degree-truncated universal enveloping algebras,
checks Yetter-Drinfel'd rack and linear-map bialgebra-object structures,
and computes the deformation cohomology complex of cocommutative rack
bialgebras.
"""

from .coalgebra import (
    FinCoalgebra,
    check_coassociative,
    check_cocommutative,
    check_counit,
    counitise,
    group_like_basis_check,
    iterated_coproduct,
    primitives,
    reduce,
    tensor_coproduct,
)
from .cohomology import (
    Cochain,
    betti,
    check_embedding_chain_map,
    coderivation_space,
    d_squared_zero,
    deformation_complex_report,
    differential,
    embed_leibniz,
    first_order_deformation_check,
    loday_complex,
    mu_n,
    special_cocycle_report,
)
from .enveloping import (
    TruncatedEnveloping,
    action_on_C,
    build_enveloping,
    check_coideal,
    generator_instances,
    hilbert_series,
    universal_morphism,
)
from .errors import RackkitError, ResourceLimitError, StructureError, TruncationOverflow
from .fileio import dumps, parse_leibniz, parse_structure, serialize_structure
from .hopf import (
    FilteredBialgebra,
    adjoint_action,
    check_filtered_bialgebra,
    cyclic_group_algebra,
    group_algebra,
    polynomial_hopf,
    polynomial_hopf_k3,
    rack_from_hopf,
    symmetric_group_algebra,
)
from .rack import (
    BUILTIN_NAMES,
    CheckResult,
    LeibnizAlgebra,
    RackBialgebra,
    braid_relation_holds,
    braiding,
    builtin_example,
    builtin_nc5,
    check_leibniz,
    check_rack_bialgebra,
    from_leibniz,
    from_pointed_rack,
    nc5_cocommutative_degeneration,
    report_ok,
    trivial_rack,
)
from .scalars import DualScalar, Scalar, format_scalar, parse_scalar
from .ydrack import (
    Tetramodule,
    YDRackStructure,
    canonical_coaction,
    canonical_yd,
    check_yd_rack,
    lm_bialgebra_object,
    yd_nc5_over_k3,
    yd_over_group,
    yd_over_polynomial,
)

__version__ = "0.1.0"
