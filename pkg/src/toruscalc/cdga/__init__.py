from .core import (
    CDGA,
    GradedComplex,
    IdealBasis,
    Morphism,
    augmented_product,
    check_axioms,
    cohomology,
    ideal_closure,
    is_quasi_iso,
    kernel_subalgebra,
    kernel_subcomplex,
    quotient_cdga,
    tensor_cdga,
)
from .models import (
    SphereSumModels,
    boundary_model,
    build_J,
    build_models,
    complement_model,
    dbar_and_eta,
    eprime_model,
    exterior_torus_model,
    map_pi_xi,
    model_A,
    phi,
    phi_prime,
    pullback_kernel,
)

__all__ = [
    "CDGA",
    "GradedComplex",
    "IdealBasis",
    "Morphism",
    "SphereSumModels",
    "augmented_product",
    "boundary_model",
    "build_J",
    "build_models",
    "check_axioms",
    "cohomology",
    "complement_model",
    "dbar_and_eta",
    "eprime_model",
    "exterior_torus_model",
    "map_pi_xi",
    "phi",
    "phi_prime",
    "pullback_kernel",
    "ideal_closure",
    "is_quasi_iso",
    "kernel_subalgebra",
    "kernel_subcomplex",
    "model_A",
    "quotient_cdga",
    "tensor_cdga",
]
