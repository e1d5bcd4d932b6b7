"""Homological calculator for finite-dimensional quiver algebras and their
triangular gluings: exact linear algebra, quiver representations, Ext
groups, Krull-Schmidt decomposition, cotorsion pairs with special
approximations, and Gorenstein-injective classes over comma constructions."""

from .exactla import GF2, QQ, ExactMatrix, Field, kernel_basis, rank, rref, solve
from .quiver import Arrow, Path, Quiver, QuiverAlgebra, build_algebra, make_path, standard_module, trivial_path
from .rep import Rep, RepMor, direct_sum, hom_basis, hom_dim, image, is_iso, kernel, cokernel, zero_rep
from .decomp import ObjectClass, Universe, decompose, enumerate_universe, is_gentle, is_indecomposable
from .homalg import (
    ext1_middle_terms,
    ext1_space,
    ext_dim,
    homological_dimension,
    injective_envelope,
    is_injective,
    is_projective,
    projective_cover,
    projective_resolution,
)
from .comma import (
    CommaObject,
    TriangularSetup,
    build_setup,
    closure_h,
    from_triplet,
    functor_T,
    functor_h,
    functor_q,
    h_as_lambda,
    in_class_D,
    is_X_exact,
    to_triplet,
)
from .cotorsion import (
    SetupUniverses,
    check_lifting,
    cotorsion_report,
    extension_closed,
    is_cotorsion_pair,
    is_frobenius_hull,
    is_hereditary,
    left_perp,
    right_perp,
    smd,
    special_precover,
    special_preenvelope,
)
from .gorenstein import (
    PeriodicComplex,
    check_cocompatible,
    gorenstein_injectives,
    verify_gi_transfer,
)

__version__ = "0.1.0"
