"""Lorentz-covariant harmonic oscillators, form factors and the O(3,2) algebra."""

from .specfun import gauss_hermite, hermite, phi
from .oscillator import (
    Rapidity,
    boost_coords,
    expansion_coefficients,
    momentum_wavefn_via_fourier,
    psi,
    uncertainty_products,
)
from .formfactor import eta_of_q2, f_three_quark, g_by_quadrature, g_closed_form
from .fockalg import build_generators, squeeze_vacuum, verify_algebra
from .desitter import build_matrix_generators, contract, translate, verify_matrix_algebra

__version__ = "0.1.0"
