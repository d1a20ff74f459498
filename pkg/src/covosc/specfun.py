"""Hermite polynomials, oscillator eigenfunctions and Gauss-Hermite rules.

Physicists' convention throughout: ``H_n`` has leading coefficient ``2**n`` and
``phi_n`` is normalized to one on the real line.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

MAX_DEGREE = 2000
MAX_NODES = 600
DEFAULT_NODES = 128


class InvalidDegreeError(ValueError):
    """Raised for negative degrees or degrees above ``MAX_DEGREE``."""


class QuadratureError(RuntimeError):
    """Raised when a quadrature rule or integral fails to converge."""


def _check_degree(n):
    if int(n) != n or n < 0:
        raise InvalidDegreeError(f"degree must be a non-negative integer, got {n!r}")
    if n > MAX_DEGREE:
        raise InvalidDegreeError(f"degree {n} exceeds MAX_DEGREE={MAX_DEGREE}")
    return int(n)


def hermite(n, x):
    """Physicists' Hermite polynomial H_n(x) by the three-term recurrence.

    Parameters
    ----------
    n : int
        polynomial degree, ``n >= 0``
    x : float or numpy.ndarray
        point(s) to evaluate at

    Returns
    -------
    float or numpy.ndarray
        H_n(x), same shape as ``x``
    """
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev[()]
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h[()]


def hermite_coefficients(n):
    """Monomial coefficients of H_n, lowest power first (explicit sum formula)."""
    n = _check_degree(n)
    coeffs = [0] * (n + 1)
    for m in range(n // 2 + 1):
        p = n - 2 * m
        coeffs[p] = (-1) ** m * math.factorial(n) * 2**p // (math.factorial(m) * math.factorial(p))
    return coeffs


def log_norm(n):
    """log of (sqrt(pi) 2^n n!)^(-1/2), via log-gamma so large n cannot overflow."""
    n = _check_degree(n)
    return -0.5 * (0.5 * math.log(math.pi) + n * math.log(2.0) + math.lgamma(n + 1))


def hermite_functions(n_max, x):
    """All normalized oscillator functions phi_0..phi_{n_max} at ``x``.

    Uses the recurrence of the normalized functions, which never forms a
    factorial or an unscaled H_n and so stays finite for large degrees.
    Returns an array of shape ``(n_max + 1,) + x.shape``.
    """
    n_max = _check_degree(n_max)
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = np.pi**-0.25 * np.exp(-0.5 * x * x)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(1, n_max):
        out[k + 1] = math.sqrt(2.0 / (k + 1)) * x * out[k] - math.sqrt(k / (k + 1)) * out[k - 1]
    return out


def phi(n, x):
    """Normalized 1D oscillator eigenfunction (pi^(1/2) 2^n n!)^(-1/2) H_n(x) e^(-x^2/2)."""
    n = _check_degree(n)
    return hermite_functions(n, x)[n][()]


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite rule for the weight exp(-x^2).

    ``scaled_weights`` are ``weights * exp(nodes**2)``; use them to integrate a
    function that already contains its own Gaussian factor.
    """

    nodes: np.ndarray
    weights: np.ndarray
    scaled_weights: np.ndarray

    @property
    def count(self):
        return len(self.nodes)

    def integrate(self, f):
        """Integral of f(x) exp(-x^2) over the real line."""
        return np.dot(self.weights, f(self.nodes))


_RULE_CACHE: dict[int, QuadratureRule] = {}


def _psi_pair(n, x):
    # normalized phi_n and phi_{n-1} at x
    p_prev = np.pi**-0.25 * np.exp(-0.5 * x * x)
    p = math.sqrt(2.0) * x * p_prev
    for k in range(1, n):
        p_prev, p = p, math.sqrt(2.0 / (k + 1)) * x * p - math.sqrt(k / (k + 1)) * p_prev
    return p, p_prev


def gauss_hermite(count=DEFAULT_NODES):
    """Nodes and weights of the ``count``-point Gauss-Hermite rule.

    Golub-Welsch eigenvalues seed a Newton polish on the normalized
    Hermite functions; raises :class:`QuadratureError` if any node fails to
    settle to 1e-14.
    """
    if int(count) != count or count < 1:
        raise ValueError(f"count must be a positive integer, got {count!r}")
    if count > MAX_NODES:
        raise ValueError(f"count {count} exceeds MAX_NODES={MAX_NODES}")
    count = int(count)
    if count in _RULE_CACHE:
        return _RULE_CACHE[count]
    if count == 1:
        rule = QuadratureRule(np.zeros(1), np.array([math.sqrt(math.pi)]), np.array([math.sqrt(math.pi)]))
        _RULE_CACHE[1] = rule
        return rule

    off = np.sqrt(np.arange(1, count) / 2.0)
    x = eigh_tridiagonal(np.zeros(count), off, eigvals_only=True)
    # exact symmetry: polish the non-negative half and mirror
    half = x[count // 2:].copy()
    if count % 2:
        half[0] = 0.0
    converged = np.zeros(half.shape, dtype=bool)
    for _ in range(50):
        p, p_prev = _psi_pair(count, half)
        step = p / (math.sqrt(2.0 * count) * p_prev)
        half = half - step
        converged = np.abs(step) <= 1e-14 * np.maximum(1.0, np.abs(half))
        if converged.all():
            break
    if not converged.all():
        raise QuadratureError(f"Gauss-Hermite root polish did not converge for count={count}")
    if count % 2:
        half[0] = 0.0
        nodes = np.concatenate([-half[:0:-1], half])
    else:
        nodes = np.concatenate([-half[::-1], half])

    _, p_prev = _psi_pair(count, nodes)
    # 1 / (n phi_{n-1}(x)^2) is the weight times exp(x^2)
    scaled = 1.0 / (count * p_prev * p_prev)
    weights = scaled * np.exp(-nodes * nodes)
    rule = QuadratureRule(nodes, weights, scaled)
    _RULE_CACHE[count] = rule
    return rule
