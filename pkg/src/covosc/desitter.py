"""5x5 matrix generators of O(3,2) and their contraction to the Poincare group.

Rows and columns are ordered (x, y, z, t, s).  Under ``C = diag(1/e, 1/e,
1/e, 1/e, e)`` the rotation and boost generators are fixed, while the four
generators touching ``s`` pick up entries scaling as ``e**-2`` and ``e**2``.
Keeping only the leading (most divergent) term and rescaling it back turns
them into the translation generators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .algebra import DEFAULT_TOLERANCE, LABELS, check_structure, extract_structure

X, Y, Z, T, S = range(5)
AXES = "xyzts"
# exponent of epsilon on each diagonal entry of C
_C_POWERS = np.array([-1, -1, -1, -1, 1])

_ENTRIES = {
    "J1": {(Y, Z): -1j, (Z, Y): 1j},
    "J2": {(X, Z): 1j, (Z, X): -1j},
    "J3": {(X, Y): -1j, (Y, X): 1j},
    "K1": {(X, T): 1j, (T, X): 1j},
    "K2": {(Y, T): 1j, (T, Y): 1j},
    "K3": {(Z, T): 1j, (T, Z): 1j},
    "Q1": {(X, S): 1j, (S, X): 1j},
    "Q2": {(Y, S): 1j, (S, Y): 1j},
    "Q3": {(Z, S): 1j, (S, Z): 1j},
    "S0": {(T, S): -1j, (S, T): 1j},
}

_TRANSLATIONS = {
    "P1": {(X, S): 1j},
    "P2": {(Y, S): 1j},
    "P3": {(Z, S): 1j},
    "P0": {(T, S): -1j},
}

CONTRACTS_TO = {"Q1": "P1", "Q2": "P2", "Q3": "P3", "S0": "P0"}


class InvalidCarrierError(ValueError):
    """Raised when a translation is applied to a five-vector with s != 1."""


def _matrix(entries):
    m = np.zeros((5, 5), dtype=complex)
    for (r, c), v in entries.items():
        m[r, c] = v
    return m


@dataclass(frozen=True)
class MatrixGenerator:
    label: str
    matrix: np.ndarray


@dataclass(frozen=True)
class TranslationGenerator:
    label: str
    matrix: np.ndarray


@dataclass(frozen=True)
class FiveVector:
    x: float
    y: float
    z: float
    t: float
    s: float

    def as_array(self):
        return np.array([self.x, self.y, self.z, self.t, self.s], dtype=float)

    @classmethod
    def from_array(cls, values):
        return cls(*(float(v) for v in np.real_if_close(values)))

    def interval(self):
        """x^2 + y^2 + z^2 - t^2 - s^2."""
        return self.x**2 + self.y**2 + self.z**2 - self.t**2 - self.s**2


def build_matrix_generators():
    return {label: MatrixGenerator(label, _matrix(_ENTRIES[label])) for label in LABELS}


def translation_generators():
    return {label: TranslationGenerator(label, _matrix(e)) for label, e in _TRANSLATIONS.items()}


def _matrices():
    return {label: g.matrix for label, g in build_matrix_generators().items()}


def verify_matrix_algebra(tolerance=1e-14):
    return check_structure(_matrices(), tolerance)


def representation_equivalence(fock):
    """Largest gap between structure constants read off the Fock and 5x5 commutators."""
    f5 = extract_structure(_matrices())
    ff = extract_structure(fock.matrices(), restrict=fock.safe)
    return float(np.max(np.abs(f5 - ff)))


@dataclass(frozen=True)
class ContractionParameter:
    epsilon: float

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be > 0")

    @property
    def matrix(self):
        return np.diag(float(self.epsilon) ** _C_POWERS.astype(float))

    @property
    def inverse(self):
        return np.diag(float(self.epsilon) ** (-_C_POWERS).astype(float))


def _as_matrix(generator):
    if isinstance(generator, (MatrixGenerator, TranslationGenerator)):
        return generator.matrix
    if isinstance(generator, str):
        return build_matrix_generators()[generator].matrix
    return np.asarray(generator)


def contract(generator, epsilon):
    """``C G C^-1`` at finite epsilon; entry (i, j) scales as ``epsilon**(p_i - p_j)``."""
    g = _as_matrix(generator)
    eps = ContractionParameter(epsilon).epsilon
    # elementwise scaling with integer powers keeps the unscaled entries bit-exact
    return g * float(eps) ** (_C_POWERS[:, None] - _C_POWERS[None, :]).astype(float)


def entry_powers(generator):
    """Power of epsilon carried by each nonzero entry of ``C G C^-1``."""
    g = _as_matrix(generator)
    powers = _C_POWERS[:, None] - _C_POWERS[None, :]
    return {(int(r), int(c)): int(powers[r, c]) for r, c in zip(*np.nonzero(g))}


def contraction_limit(generator):
    """Symbolic epsilon -> 0 limit of the contracted generator.

    Entries carrying a positive power of epsilon are dropped; the remaining
    leading entries are rescaled by the inverse of their common divergent power.
    """
    g = _as_matrix(generator)
    powers = entry_powers(g)
    lead = min(powers.values())
    out = np.zeros_like(g)
    for (r, c), p in powers.items():
        if p == lead:
            out[r, c] = g[r, c]
    return out


def vanishing_entries(generator):
    """Entries of ``C G C^-1`` that vanish in the limit, as (row, col)."""
    powers = entry_powers(generator)
    return sorted(rc for rc, p in powers.items() if p > 0)


def contraction_slope(generator, epsilons=(1e-1, 1e-2, 1e-3, 1e-4)):
    """Least-squares log-log slope of the vanishing entries of ``C G C^-1`` against epsilon.

    Returns ``None`` for generators with no vanishing entry (J and K).
    """
    entries = vanishing_entries(generator)
    if not entries:
        return None
    logs_e = np.log10(np.asarray(epsilons, dtype=float))
    slopes = []
    for r, c in entries:
        vals = [abs(contract(generator, e)[r, c]) for e in epsilons]
        slopes.append(np.polyfit(logs_e, np.log10(vals), 1)[0])
    return float(np.mean(slopes)) if len(slopes) > 1 else float(slopes[0])


def translation_matrix(a, b, c, d):
    """``exp(-i[a P_x + b P_y + c P_z + d P_t])`` with ``P_t = -P0``.

    The P's are nilpotent and commute, so the series stops after the linear
    term: identity plus (a, b, c, d) in the fifth column.
    """
    p = translation_generators()
    gen = a * p["P1"].matrix + b * p["P2"].matrix + c * p["P3"].matrix - d * p["P0"].matrix
    return np.eye(5, dtype=complex) - 1j * gen


def translate(a, b, c, d, v):
    if v.s != 1:
        raise InvalidCarrierError(f"translations act on five-vectors with s = 1, got s = {v.s}")
    return FiveVector.from_array(translation_matrix(a, b, c, d) @ v.as_array())


def poincare_matrices():
    """J, K and the four contracted translation generators."""
    gens = build_matrix_generators()
    out = {label: gens[label].matrix for label in ("J1", "J2", "J3", "K1", "K2", "K3")}
    out.update({label: g.matrix for label, g in translation_generators().items()})
    return out


def poincare_structure():
    """Nonzero brackets among {J, K, P} computed from the matrices.

    Returns ``{(a, b): {label: coeff}}`` for ordered label pairs where at
    least one generator is a translation.
    """
    mats = poincare_matrices()
    labels = list(mats)
    basis = np.stack([mats[k].ravel() for k in labels], axis=1)
    out = {}
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            if not (a.startswith("P") or b.startswith("P")):
                continue
            rhs = (mats[a] @ mats[b] - mats[b] @ mats[a]).ravel()
            coeffs, *_ = np.linalg.lstsq(basis, rhs, rcond=None)
            out[(a, b)] = {labels[k]: complex(np.round(v, 12)) for k, v in enumerate(coeffs)
                           if abs(v) > 1e-12}
    return out


def exponentiate(label, angle):
    """``exp(-i angle G)`` for one of the ten generators."""
    return expm(-1j * angle * build_matrix_generators()[label].matrix)


def apply(matrix, v):
    return FiveVector.from_array(matrix @ v.as_array())
