"""Restricted root systems, Gamma-product invariants, and Weyl-chamber
quadrature for testing projective flatness of quantization on compact
symmetric spaces."""

from .rootsys import (
    RootSystem,
    SphericalWeight,
    as_vector,
    build_root_system,
    dimension,
    dominant_weights,
    fundamental_spherical_weights,
    indivisible_positive,
    is_reduced,
    rescale,
    rho,
    rho_pairing_identity,
    spherical_weight,
)
from .hcfun import (
    QInvarianceReport,
    c_function,
    c_function_duplicated,
    classify_group_manifold,
    f_factor,
    g_product_probe,
    group_c_closed_form,
    log_gamma,
    log_q_of_weight,
    predicted_constants,
    q_invariance_test,
    q_of_weight,
)
from .asymquad import (
    AsymptoticReport,
    QuadratureConfig,
    b_delta_rank1,
    chamber_weight,
    gaussian_cone_moment,
    hypergeometric_poly,
    leading_infinity,
    log_I_mu,
    q_tau,
    second_order_term,
    spherical_rank1,
    verify_tau_infinity,
    verify_tau_zero,
    watson_expand,
)
from .cli import (
    Catalog,
    CatalogError,
    SpaceDescriptor,
    default_catalog,
    emit,
    load_catalog,
    run_asym,
    run_flatness,
)

__version__ = "0.1.0"
