"""Character expansions of the Stein-Sahi kernels on U(n).

Closed-form coefficients, positivity classification, blow-up limits at
integer points, and the quadrature oracles used to check them.
"""
from ._backend import USE_NUMBA, backend_name
from .gamma import (
    PoleError,
    SignedLogValue,
    pochhammer,
    pole_leading_coefficient,
    reciprocal_gamma,
    signed_log_gamma,
)
from .kernel import (
    CoefficientTable,
    HarmonicVector,
    KernelParams,
    PositivityClass,
    PrefactorPoleError,
    berezin_wallach,
    classify_positivity,
    coefficient,
    hermitian_form,
    kernel_pointwise,
    l2_diagonal_check,
    sobolev_norm,
)
from .schur import EigenAngles, character, weyl_denominator
from .signatures import (
    Signature,
    UnipotentClass,
    classify_unipotent,
    dimension,
    dual,
    enumerate_signatures,
    make_signature,
    omega_support,
    shift_all,
)

__version__ = "0.1.0"
