"""Exact Lie-algebra structure, ad-invariant Lorentz forms, and curvature and
holonomy of reductive homogeneous Lorentzian models.

The core is exact over the rationals: structure constants, brackets, Killing
forms, Sylvester inertia, curvature contractions and the direct-sum
classifier all run tolerance-free.  Floating point enters only where square
roots are genuinely required (spectral decompositions, orthonormal
constructions), with documented tolerances.
"""

from .algebra_zoo import (
    CatalogSpec,
    ClassificationResult,
    abelian,
    aff,
    canonical_lambda,
    catalog,
    classify_decomposition,
    heisenberg,
    heisenberg_decompose,
    radical,
    sl2,
    so3,
    twisted_heisenberg,
    twisted_iso_test,
)
from .forms import (
    Signature,
    TwistedLorentzParams,
    ad_invariance_residual,
    condition_star_check,
    lightcone_determined,
    make_twisted_lorentz,
    normalize_twisted_lorentz,
    recognize_twisted_structure,
    recover_twisted_parameters,
    signature,
    symplectic_orthogonal_basis,
)
from .homogeneous import (
    CurvatureReport,
    ReductiveSpace,
    biinvariant_space,
    curvature_diag,
    curvature_operator,
    curvature_report,
    curvature_tensor,
    einstein_ratio,
    holonomy_algebra,
    holonomy_biinvariant,
    nabla_at_base,
    reductive_space,
    ricci_tensor,
    scalar_curvature,
    sectional_curvature,
    u_map,
)
from .lie_core import (
    AlgebraElement,
    LieAlgebra,
    StructureReport,
    Subspace,
    SymBilinearForm,
    ad_matrix,
    bracket,
    center,
    direct_sum,
    generated_invariant_subspace,
    jacobi_residual,
    killing_form,
    structure_report,
    transport_structure,
)
from .spectral import (
    JordanTriple,
    SpectralKind,
    jordan_complete,
    precompact_criterion,
    spectral_class,
)
from .twisted_model import (
    TiltSpec,
    TwistedProductModel,
    build_model,
    curvature_R,
    holonomy_special,
    is_special,
    ricci_isotropy_check,
    ricci_specialized,
    scal_specialized,
    u_decomposition,
    v_map,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
