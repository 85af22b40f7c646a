"""Exact-arithmetic homotopy fiber sequences for chain complexes over Z.

The package decides, with integer arithmetic only, whether commutative
squares of bounded complexes of finitely generated free Z-modules are
homotopy fiber squares, builds Puppe towers and fibration towers extending a
chain map, and mechanically verifies the induced long exact sequences in
homology.  Everything reduces to Smith normal form over Z.
"""

from .abgrp import (
    ExactnessVerdict,
    FgAbelianGroup,
    Subquotient,
    SubquotientHom,
    induced,
    invariants,
    is_exact_at,
    is_isomorphic,
)
from .chain import (
    NONNEGATIVE,
    UNBOUNDED,
    ChainComplex,
    ChainMap,
    as_nonnegative,
    as_unbounded,
    compose,
    direct_sum,
    disk,
    homology,
    homology_group,
    identity_map,
    induced_on_homology,
    is_quasi_iso,
    mapping_cone,
    reduce_mod_p,
    shift,
    shift_map,
    sphere,
    zero_complex,
    zero_map,
)
from .errors import FibseqError
from .exactlin import (
    IntMatrix,
    SnfDecomposition,
    kernel_basis,
    member_of_span,
    snf,
    solve,
)
from .homset import LesReport, hom_set, les_of_fiber_sequence, les_of_map, verify
from .modelcat import (
    CommSquare,
    ModelSquareWitness,
    factor_we_fib,
    is_acyclic,
    is_fibration,
    is_homotopy_fiber_sequence,
    is_model_square,
    path_object,
    pullback,
    universal_map,
)
from .monoidal import (
    adjunction_check,
    chain_map_group,
    compare_kernels,
    compare_path_functors,
    cone_unit,
    hom_homotopy_kernel,
    hom_loop_space,
    hom_path_space,
    internal_hom,
    tensor,
    tensor_map,
)
from .puppe import (
    FiberTriple,
    LongFiberSequence,
    based_path_space,
    compare_extensions,
    connecting_map,
    extend_by_fibrations,
    homotopy_kernel,
    loop_fiber_triple,
    loop_space,
    loop_space_map,
    puppe_sequence,
    truncated_loop_space,
    truncated_loop_space_map,
    truncated_path_space,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
