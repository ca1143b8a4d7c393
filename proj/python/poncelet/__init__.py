from ._poncelet import (
    PonceletError,
    cayley_condition,
    closure_errors,
    discriminant,
    fiber,
    gamma,
    gradient_fd_error,
    gradients,
    is_transverse,
    isotropy_order,
    j_from_lambda,
    j_from_pair,
    moduli_point,
    normal_form,
    psi_quadric_residual,
    sample_cayley,
    sigma,
    sqrt_series,
)

__all__ = [
    "PonceletError",
    "cayley_condition",
    "closure_errors",
    "discriminant",
    "fiber",
    "gamma",
    "gradient_fd_error",
    "gradients",
    "is_transverse",
    "isotropy_order",
    "j_from_lambda",
    "j_from_pair",
    "moduli_point",
    "normal_form",
    "psi_quadric_residual",
    "sample_cayley",
    "sigma",
    "sqrt_series",
]
