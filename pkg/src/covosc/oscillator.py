"""Covariant harmonic oscillator in the longitudinal (z, t) plane.

Boosts act as squeezes of the light-cone coordinates; the boosted ground
state is an ellipse in (z, t) whose two-mode expansion coefficients are
``tanh(eta)**n / cosh(eta)``.  Transverse x, y coordinates are dropped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import (
    DEFAULT_NODES,
    QuadratureError,
    gauss_hermite,
    hermite_functions,
    phi,
)

SQRT2 = math.sqrt(2.0)
INV_SQRT_PI = 1.0 / math.sqrt(math.pi)


@dataclass(frozen=True)
class Rapidity:
    """Boost parameter; the velocity is ``tanh(eta)``."""

    eta: float

    def velocity(self):
        return math.tanh(self.eta)

    def __float__(self):
        return float(self.eta)


def _eta(eta):
    return float(eta.eta) if isinstance(eta, Rapidity) else float(eta)


@dataclass(frozen=True)
class LightConePoint:
    z_plus: float
    z_minus: float

    @classmethod
    def from_zt(cls, z, t):
        return cls((z + t) / SQRT2, (z - t) / SQRT2)

    def to_zt(self):
        return (self.z_plus + self.z_minus) / SQRT2, (self.z_plus - self.z_minus) / SQRT2

    @property
    def product(self):
        return self.z_plus * self.z_minus


def boost_coords(z, t, eta):
    """Boost (z, t) along z: ``(z cosh - t sinh, t cosh - z sinh)``.

    In light-cone form ``z + t`` shrinks by ``exp(-eta)`` and ``z - t`` grows
    by ``exp(eta)``.
    """
    eta = _eta(eta)
    ch, sh = math.cosh(eta), math.sinh(eta)
    z = np.asarray(z, dtype=float)
    t = np.asarray(t, dtype=float)
    return (z * ch - t * sh)[()], (t * ch - z * sh)[()]


def psi(n, eta, z, t):
    """Normalized boosted oscillator state with ``n`` longitudinal quanta.

    The boost has unit Jacobian, so ``phi_n(z') phi_0(t')`` evaluated at the
    boosted coordinates is already unit-normalized; for ``n = 0`` this is the
    squeezed Gaussian ``pi**-0.5 exp(-[e^{-2eta}(z+t)^2 + e^{2eta}(z-t)^2]/4)``.
    """
    zb, tb = boost_coords(z, t, eta)
    return (phi(n, zb) * phi(0, tb))[()]


def psi_ground_closed_form(eta, z, t):
    eta = _eta(eta)
    z = np.asarray(z, dtype=float)
    t = np.asarray(t, dtype=float)
    arg = math.exp(-2 * eta) * (z + t) ** 2 + math.exp(2 * eta) * (z - t) ** 2
    return (INV_SQRT_PI * np.exp(-0.25 * arg))[()]


@dataclass(frozen=True)
class ClosedFormWaveFn:
    n: int
    eta: Rapidity

    def evaluate(self, z, t):
        return psi(self.n, self.eta, z, t)

    __call__ = evaluate


@dataclass(frozen=True)
class MomentumWaveFn:
    """Momentum-energy ground state, q_+/- = (q0 +/- qz)/sqrt(2)."""

    eta: Rapidity

    def evaluate(self, q_z, q_0):
        eta = _eta(self.eta)
        q_z = np.asarray(q_z, dtype=float)
        q_0 = np.asarray(q_0, dtype=float)
        qp = (q_0 + q_z) / SQRT2
        qm = (q_0 - q_z) / SQRT2
        arg = math.exp(-2 * eta) * qp**2 + math.exp(2 * eta) * qm**2
        return (INV_SQRT_PI * np.exp(-0.5 * arg))[()]

    __call__ = evaluate


def lightcone_integrate(f, eta, count=DEFAULT_NODES, scale=1.0):
    """Integrate ``f(z, t)`` over the plane with a squeeze-adapted Gauss-Hermite grid.

    Nodes sit at ``z_+ = scale e^{eta} u``, ``z_- = scale e^{-eta} w`` so the
    rule's Gaussian weight follows the ellipse of a state boosted by ``eta``.
    ``f`` must carry its own Gaussian decay; the rule divides it back out.
    """
    eta = _eta(eta)
    rule = gauss_hermite(count)
    u = rule.nodes[:, None]
    w = rule.nodes[None, :]
    zp = scale * math.exp(eta) * u
    zm = scale * math.exp(-eta) * w
    z = (zp + zm) / SQRT2
    t = (zp - zm) / SQRT2
    sw = rule.scaled_weights[:, None] * rule.scaled_weights[None, :]
    return scale * scale * np.sum(sw * f(z, t))


def norm_squared(n, eta, count=DEFAULT_NODES):
    return float(lightcone_integrate(lambda z, t: psi(n, eta, z, t) ** 2, eta, count))


def expansion_coefficients(eta, max_n):
    """Coefficients ``tanh(eta)**n / cosh(eta)`` of the diagonal two-mode series."""
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    eta = _eta(eta)
    n = np.arange(max_n + 1)
    return np.tanh(eta) ** n / math.cosh(eta)


def expansion_sum(eta, max_n, z, t):
    z = np.asarray(z, dtype=float)
    t = np.asarray(t, dtype=float)
    coeffs = expansion_coefficients(eta, max_n)
    fz = hermite_functions(max_n, z)
    ft = hermite_functions(max_n, t)
    return np.tensordot(coeffs, fz * ft, axes=1)


# Cramer's bound: |phi_n(x)| <= CRAMER * pi**-0.25 for every n and x
CRAMER = 1.086435


def expansion_tail_bound(eta, max_n):
    """Upper bound on the pointwise error of the series truncated after ``max_n``.

    Summing the geometric tail with Cramer's bound gives
    ``CRAMER**2 pi**-0.5 e^{|eta|} tanh(|eta|)**(max_n + 1)``.
    """
    eta = abs(_eta(eta))
    return CRAMER**2 * INV_SQRT_PI * math.exp(eta) * math.tanh(eta) ** (max_n + 1)


def verify_expansion(eta, max_n, grid):
    """Largest pointwise gap between the boosted ground state and its truncated series."""
    pts = np.asarray(grid, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise ValueError("grid must be non-empty")
    z, t = pts[:, 0], pts[:, 1]
    exact = psi(0, eta, z, t)
    return float(np.max(np.abs(exact - expansion_sum(eta, max_n, z, t))))


def _fourier_at(eta, q_z, q_0, count):
    # kernel exp(i[q_z z - q_0 t]) = exp(i[q_+ z_- + q_- z_+]) with q_+/- = (q_z +/- q_0)/sqrt(2)
    qp = (q_z + q_0) / SQRT2
    qm = (q_z - q_0) / SQRT2

    def integrand(z, t):
        zp = (z + t) / SQRT2
        zm = (z - t) / SQRT2
        return psi(0, eta, z, t) * np.exp(1j * (qp * zm + qm * zp))

    # psi itself (not |psi|^2) decays like the rule's weight at scale sqrt(2)
    return lightcone_integrate(integrand, eta, count, scale=SQRT2) / (2 * math.pi)


def fourier_transform(eta, q_z, q_0, count=64, max_count=512, tol=1e-6):
    """Complex 2D Fourier integral of psi_0 with symmetric 1/(2 pi) prefactor.

    The node count doubles until two successive results agree to 1e-13.
    Raises :class:`QuadratureError` if at ``max_count`` the last doubling
    still moved the result by more than ``tol``.
    """
    prev = _fourier_at(eta, q_z, q_0, count)
    diff = math.inf
    while count < max_count:
        count = min(2 * count, max_count)
        cur = _fourier_at(eta, q_z, q_0, count)
        diff, prev = abs(cur - prev), cur
        if diff <= 1e-13:
            return complex(prev)
    if diff > tol:
        raise QuadratureError(f"Fourier integral not converged: last doubling moved it by {diff:.3g}")
    return complex(prev)


def momentum_wavefn_via_fourier(eta, q_z, q_0, **kwargs):
    """Real part of :func:`fourier_transform`; the imaginary part vanishes by parity."""
    return fourier_transform(eta, q_z, q_0, **kwargs).real


@dataclass(frozen=True)
class UncertaintyReport:
    eta: float
    mean_zplus_sq: float
    mean_zminus_sq: float
    mean_qplus_sq: float
    mean_qminus_sq: float

    @property
    def products(self):
        return (self.mean_zplus_sq * self.mean_qminus_sq,
                self.mean_zminus_sq * self.mean_qplus_sq)


def uncertainty_products(eta, count=DEFAULT_NODES):
    """Light-cone second moments of |psi_eta|^2 and of its momentum-space partner."""
    eta = _eta(eta)

    def density(z, t):
        return psi(0, eta, z, t) ** 2

    norm = lightcone_integrate(density, eta, count)
    zp2 = lightcone_integrate(lambda z, t: density(z, t) * ((z + t) / SQRT2) ** 2, eta, count) / norm
    zm2 = lightcone_integrate(lambda z, t: density(z, t) * ((z - t) / SQRT2) ** 2, eta, count) / norm

    mom = MomentumWaveFn(Rapidity(eta))

    # (q_z, q_0) plays the role of (z, t); the momentum ellipse is stretched along q_0 + q_z.
    def mdensity(qz, q0):
        return mom(qz, q0) ** 2

    mnorm = lightcone_integrate(mdensity, eta, count)
    qp2 = lightcone_integrate(lambda qz, q0: mdensity(qz, q0) * ((q0 + qz) / SQRT2) ** 2, eta, count) / mnorm
    qm2 = lightcone_integrate(lambda qz, q0: mdensity(qz, q0) * ((q0 - qz) / SQRT2) ** 2, eta, count) / mnorm
    return UncertaintyReport(eta, float(zp2), float(zm2), float(qp2), float(qm2))


def invariant_operator(values, h):
    """Apply ``(-d2/dz2 + d2/dt2 + z^2 - t^2)/2`` with the 2D five-point stencil.

    ``values`` is sampled on a square grid indexed ``[z, t]`` with spacing ``h``;
    returns the interior block (edges dropped).
    """
    c = values[1:-1, 1:-1]
    d2z = (values[2:, 1:-1] - 2 * c + values[:-2, 1:-1]) / (h * h)
    d2t = (values[1:-1, 2:] - 2 * c + values[1:-1, :-2]) / (h * h)
    return 0.5 * (-d2z + d2t), c


def eigenvalue_residual(n, eta, grid_spacing, extent=6.0, return_eigenvalue=False):
    """Max |O psi - n psi| on the interior of a grid over |z|, |t| <= extent.

    ``O`` is the boost-invariant oscillator operator; the error is O(h^2).
    With ``return_eigenvalue`` also returns the Rayleigh quotient estimate.
    """
    if not 0 < grid_spacing <= 0.1:
        raise ValueError("grid_spacing must lie in (0, 0.1]")
    m = int(round(extent / grid_spacing))
    axis = np.arange(-m, m + 1) * grid_spacing
    z, t = np.meshgrid(axis, axis, indexing="ij")
    values = psi(n, eta, z, t)
    kinetic, centre = invariant_operator(values, grid_spacing)
    zi, ti = z[1:-1, 1:-1], t[1:-1, 1:-1]
    op = kinetic + 0.5 * (zi**2 - ti**2) * centre
    residual = float(np.max(np.abs(op - n * centre)))
    if return_eigenvalue:
        return residual, float(np.sum(centre * op) / np.sum(centre * centre))
    return residual
