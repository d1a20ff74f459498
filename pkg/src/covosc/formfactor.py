"""Proton form factor from the overlap of two squeezed ground states.

Momentum transfer is measured in units of the proton mass ``M``; lengths in
the oscillator scale, which is taken to be ``1/M``.  With ``M = 1`` this is
the plain dimensionless convention of the closed forms below.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .oscillator import Rapidity, _eta
from .specfun import QuadratureError, gauss_hermite


def _check_q2(q_squared, proton_mass=1.0):
    if q_squared < 0:
        raise ValueError(f"q_squared must be >= 0, got {q_squared}")
    if proton_mass <= 0:
        raise ValueError(f"proton_mass must be > 0, got {proton_mass}")


@dataclass(frozen=True)
class Kinematics:
    """Breit-frame kinematics: ``Q^2 = 4 P^2`` and ``tanh^2(eta) = Q^2/(Q^2 + 4M^2)``."""

    q_squared: float
    proton_mass: float = 1.0

    def __post_init__(self):
        _check_q2(self.q_squared, self.proton_mass)

    @property
    def tanh_squared(self):
        return self.q_squared / (self.q_squared + 4 * self.proton_mass**2)

    @property
    def momentum(self):
        return 0.5 * math.sqrt(self.q_squared)

    @property
    def rapidity(self):
        return Rapidity(math.atanh(math.sqrt(self.tanh_squared)))


def eta_of_q2(q_squared, proton_mass=1.0):
    return Kinematics(q_squared, proton_mass).rapidity


def overlap_product(eta, z, t):
    """psi_{-eta}^dagger psi_eta = exp(-cosh(2 eta)(z^2 + t^2)) / pi."""
    c = math.cosh(2 * _eta(eta))
    z = np.asarray(z, dtype=float)
    t = np.asarray(t, dtype=float)
    return (np.exp(-c * (z * z + t * t)) / math.pi)[()]


def g_closed_form(q_squared, proton_mass=1.0):
    _check_q2(q_squared, proton_mass)
    m2 = proton_mass**2
    return (2 * m2 / (q_squared + 2 * m2)) * math.exp(-q_squared / (2 * (q_squared + 2 * m2)))


def _g_quad(q_squared, proton_mass, nodes):
    kin = Kinematics(q_squared, proton_mass)
    c = math.cosh(2 * float(kin.rapidity))
    k = 2 * kin.momentum / proton_mass
    rule = gauss_hermite(nodes)
    # z = u / sqrt(c) maps exp(-c z^2) onto the rule's weight
    z = rule.nodes / math.sqrt(c)
    pref = 1.0 / (math.sqrt(math.pi * c) * math.sqrt(c))
    re = pref * np.dot(rule.weights, np.cos(k * z))
    im = -pref * np.dot(rule.weights, np.sin(k * z))
    return re, im


def g_by_quadrature(q_squared, proton_mass=1.0, nodes=128, return_imag=False):
    """Two-quark form factor from the 1D overlap integral over z.

    The complex kernel ``exp(-2iPz)`` is split into cosine and sine parts;
    the sine part must vanish (|Im| < 1e-12) or :class:`QuadratureError`
    is raised, as it is when doubling ``nodes`` moves the result by > 1e-9.
    """
    if nodes < 32:
        raise ValueError("nodes must be >= 32")
    re, im = _g_quad(q_squared, proton_mass, nodes)
    if abs(im) >= 1e-12:
        raise QuadratureError(f"imaginary part {im:.3g} does not vanish")
    re2, _ = _g_quad(q_squared, proton_mass, min(2 * nodes, 600))
    if abs(re2 - re) > 1e-9:
        raise QuadratureError(f"node doubling changed g by {abs(re2 - re):.3g}")
    if return_imag:
        return float(re), float(im)
    return float(re)


def f_three_quark(q_squared, proton_mass=1.0):
    _check_q2(q_squared, proton_mass)
    m2 = proton_mass**2
    return (2 * m2 / (q_squared + 2 * m2)) ** 2 * math.exp(-q_squared / (q_squared + 2 * m2))


def g_nonrelativistic(q_squared):
    """Form factor with the squeeze ignored: exp(-Q^2/4), an exponential cutoff."""
    _check_q2(q_squared)
    return math.exp(-q_squared / 4)


def g_asymptote(proton_mass=1.0):
    """Limit of Q^2 g(Q^2) as Q^2 -> infinity."""
    return 2 * proton_mass**2 * math.exp(-0.5)


def f_asymptote(proton_mass=1.0):
    """Limit of Q^4 F(Q^2) as Q^2 -> infinity."""
    return (2 * proton_mass**2) ** 2 * math.exp(-1.0)


def time_dilation_ratio(eta):
    """Ratio of interquark interaction time to parton passage time, exp(-2 eta)."""
    return math.exp(-2 * _eta(eta))


def eta_for_time_ratio(ratio):
    if not 0 < ratio <= 1:
        raise ValueError("ratio must lie in (0, 1]")
    return Rapidity(-0.5 * math.log(ratio))


VARIANTS = {
    "two-quark-g": lambda q2, m: g_closed_form(q2, m),
    "three-quark-F": lambda q2, m: f_three_quark(q2, m),
    "nonrelativistic": lambda q2, m: g_nonrelativistic(q2 / m**2),
}


@dataclass
class FormFactorCurve:
    variant: str
    samples: list = field(default_factory=list)

    @classmethod
    def sample(cls, variant, q2_values, proton_mass=1.0):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        fn = VARIANTS[variant]
        return cls(variant, [(float(q2), fn(float(q2), proton_mass)) for q2 in q2_values])

    def values(self):
        return np.array([v for _, v in self.samples])
