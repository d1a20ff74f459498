"""Two-mode truncated Fock space and Dirac's ten quadratic generators.

Basis ordering: ``|n1, n2>`` sits at index ``n1 * (N + 1) + n2`` where ``N``
is the per-mode photon cutoff.  Commutators of quadratic forms are exact
only away from the cutoff, so algebra checks are restricted to the safe
subspace ``n1 + n2 <= N - 2``.

Sign convention: with the generators exactly as Dirac printed them, the
nine brackets that produce or involve ``S0`` come out with the opposite
sign from the O(3,2) table that the 5x5 matrices obey.  Reversing the three
``K_i`` (an automorphism of the Lorentz subalgebra) closes the algebra while
keeping ``S0 = (N1 + N2 + 1)/2`` positive and ``Q3`` the squeeze generator.
``convention="closed"`` (default) applies that reversal; ``"printed"``
reproduces the literal formulas.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

from .algebra import DEFAULT_TOLERANCE, LABELS, check_structure
from .oscillator import _eta, expansion_coefficients

MAX_TRUNCATION = 64
SQUEEZE_TOLERANCE = 1e-8
CONVENTIONS = ("closed", "printed")


class TruncationError(ValueError):
    """Raised when the Fock cutoff is out of range or too small for the task."""


@dataclass(frozen=True)
class FockOperator:
    matrix: np.ndarray
    truncation: int
    label: str = ""

    @property
    def dim(self):
        return (self.truncation + 1) ** 2

    def __matmul__(self, other):
        if isinstance(other, FockOperator):
            return self.matrix @ other.matrix
        return self.matrix @ other


def basis_index(n1, n2, truncation):
    return n1 * (truncation + 1) + n2


def basis_vector(n1, n2, truncation):
    v = np.zeros((truncation + 1) ** 2, dtype=complex)
    v[basis_index(n1, n2, truncation)] = 1.0
    return v


def occupation_numbers(truncation):
    n = np.arange(truncation + 1)
    n1, n2 = np.meshgrid(n, n, indexing="ij")
    return n1.ravel(), n2.ravel()


def safe_indices(truncation):
    n1, n2 = occupation_numbers(truncation)
    return np.flatnonzero(n1 + n2 <= truncation - 2)


def _check_truncation(truncation, minimum=1):
    if int(truncation) != truncation or truncation < minimum:
        raise TruncationError(f"truncation must be an integer >= {minimum}, got {truncation!r}")
    if truncation > MAX_TRUNCATION:
        raise TruncationError(f"truncation {truncation} exceeds MAX_TRUNCATION={MAX_TRUNCATION}")
    return int(truncation)


def _sparse_modes(truncation):
    d = truncation + 1
    a = sp.diags(np.sqrt(np.arange(1, d, dtype=float)), 1, format="csr")
    eye = sp.identity(d, format="csr")
    a1 = sp.kron(a, eye, format="csr")
    a2 = sp.kron(eye, a, format="csr")
    return a1, a1.T.tocsr(), a2, a2.T.tocsr()


def build_mode_operators(truncation):
    """Dense ``(a1, a1^dagger, a2, a2^dagger)`` with sqrt(n) ladder elements."""
    truncation = _check_truncation(truncation)
    names = ("a1", "a1+", "a2", "a2+")
    return tuple(FockOperator(m.toarray().astype(complex), truncation, name)
                 for m, name in zip(_sparse_modes(truncation), names))


def _generator_forms(truncation, convention):
    a1, c1, a2, c2 = _sparse_modes(truncation)
    k = -1.0 if convention == "closed" else 1.0
    return {
        "J1": 0.5 * (c1 @ a2 + c2 @ a1),
        "J2": (1 / 2j) * (c1 @ a2 - c2 @ a1),
        "J3": 0.5 * (c1 @ a1 - c2 @ a2),
        "K1": k * -0.25 * (c1 @ c1 + a1 @ a1 - c2 @ c2 - a2 @ a2),
        "K2": k * 0.25j * (c1 @ c1 - a1 @ a1 + c2 @ c2 - a2 @ a2),
        "K3": k * 0.5 * (c1 @ c2 + a1 @ a2),
        "Q1": -0.25j * (c1 @ c1 - a1 @ a1 - c2 @ c2 + a2 @ a2),
        "Q2": -0.25 * (c1 @ c1 + a1 @ a1 + c2 @ c2 + a2 @ a2),
        "Q3": 0.5j * (c1 @ c2 - a1 @ a2),
        "S0": 0.5 * (c1 @ a1 + a2 @ c2),
    }


@dataclass(frozen=True)
class GeneratorSet:
    operators: dict
    truncation: int
    convention: str = "closed"

    def __getitem__(self, label):
        return self.operators[label]

    def matrices(self):
        return {label: op.matrix for label, op in self.operators.items()}

    @property
    def safe(self):
        return safe_indices(self.truncation)


def build_generators(truncation, convention="closed"):
    """The ten O(3,2) generators as dense Fock-space matrices."""
    truncation = _check_truncation(truncation, minimum=4)
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    forms = _generator_forms(truncation, convention)
    ops = {label: FockOperator(forms[label].toarray().astype(complex), truncation, label)
           for label in LABELS}
    return GeneratorSet(ops, truncation, convention)


def verify_algebra(gens, tolerance=DEFAULT_TOLERANCE, subset=None):
    """Check all 45 commutators against the O(3,2) table on the safe subspace."""
    if gens.truncation < 4:
        raise TruncationError("algebra verification needs truncation >= 4")
    return check_structure(gens.matrices(), tolerance, restrict=gens.safe, subset=subset)


def hermiticity_deviation(gens):
    """Per-label max |G - G^dagger| on the safe subspace."""
    idx = np.ix_(gens.safe, gens.safe)
    return {label: float(np.max(np.abs(op.matrix[idx] - op.matrix.conj().T[idx])))
            for label, op in gens.operators.items()}


def ladder_commutator_deviation(truncation):
    """Max deviation of [a_i, a_j^dagger] from delta_ij on the rows where it is exact."""
    a1, c1, a2, c2 = build_mode_operators(truncation)
    n1, n2 = occupation_numbers(truncation)
    modes = ((a1, c1, n1), (a2, c2, n2))
    eye = np.eye(a1.dim)
    worst = 0.0
    for i, (a, _, n_i) in enumerate(modes):
        for j, (_, c, _) in enumerate(modes):
            diff = a.matrix @ c.matrix - c.matrix @ a.matrix
            if i == j:
                diff = diff - eye
                rows = np.flatnonzero(n_i <= truncation - 1)
            else:
                rows = np.arange(a1.dim)
            worst = max(worst, float(np.max(np.abs(diff[np.ix_(rows, rows)]))))
    return worst


def squeeze_vacuum(eta, truncation, tolerance=SQUEEZE_TOLERANCE):
    """Two-mode squeezed vacuum ``exp(-2i eta Q3)|0,0>`` in the truncated space.

    Raises :class:`TruncationError` when the exact state puts more than
    ``tolerance`` probability on ``n > truncation`` (``tanh(eta)**(2N+2)``),
    or when the computed norm drifts from one by more than ``tolerance``.
    """
    eta = _eta(eta)
    truncation = _check_truncation(truncation)
    tail = math.tanh(abs(eta)) ** (2 * (truncation + 1))
    if tail > tolerance:
        raise TruncationError(
            f"truncation {truncation} too small for eta={eta}: tail probability {tail:.3g}")
    q3 = _generator_forms(truncation, "printed")["Q3"]
    state = expm_multiply((-2j * eta) * q3.tocsc(), basis_vector(0, 0, truncation))
    norm_dev = abs(np.linalg.norm(state) - 1.0)
    if norm_dev > tolerance:
        raise TruncationError(f"squeezed state norm deviates from 1 by {norm_dev:.3g}")
    return state


def diagonal_amplitudes(state, truncation, max_n=None):
    """Components of ``state`` on ``|n, n>`` for n = 0..max_n."""
    max_n = truncation if max_n is None else max_n
    return np.array([state[basis_index(n, n, truncation)] for n in range(max_n + 1)])


def off_diagonal_weight(state, truncation):
    n1, n2 = occupation_numbers(truncation)
    return float(np.max(np.abs(state[n1 != n2]), initial=0.0))


def squeeze_crosscheck(eta, truncation, max_n):
    """Max |<n,n|exp(-2i eta Q3)|0,0> - tanh^n/cosh| for n <= max_n."""
    state = squeeze_vacuum(eta, truncation)
    amps = diagonal_amplitudes(state, truncation, max_n)
    return float(np.max(np.abs(amps - expansion_coefficients(eta, max_n))))
