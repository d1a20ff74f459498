"""O(3,2) structure constants shared by the Fock and 5x5 representations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

LABELS = ("J1", "J2", "J3", "K1", "K2", "K3", "Q1", "Q2", "Q3", "S0")
DEFAULT_TOLERANCE = 1e-10


def _levi_civita(i, j, k):
    return (i - j) * (j - k) * (k - i) / 2


def _add(table, a, b, coeffs):
    coeffs = {k: v for k, v in coeffs.items() if v != 0}
    table[(a, b)] = coeffs
    table[(b, a)] = {k: -v for k, v in coeffs.items()}


def structure_table():
    """Expected ``[A, B]`` as ``{label: coefficient}`` for every ordered pair.

    [J,J]=iJ, [J,K]=iK, [K,K]=-iJ, [J,Q]=iQ, [Q,Q]=-iJ (all with eps_ijk),
    [K_i,Q_j]=-i delta_ij S0, [J,S0]=0, [K_i,S0]=-iQ_i, [Q_i,S0]=iK_i.
    """
    table = {}
    for i, j in itertools.product(range(3), repeat=2):
        for a, b, c, sign in (("J", "J", "J", 1j), ("J", "K", "K", 1j), ("K", "K", "J", -1j),
                              ("J", "Q", "Q", 1j), ("Q", "Q", "J", -1j)):
            coeffs = {f"{c}{k + 1}": sign * _levi_civita(i, j, k) for k in range(3)}
            _add(table, f"{a}{i + 1}", f"{b}{j + 1}", coeffs)
        _add(table, f"K{i + 1}", f"Q{j + 1}", {"S0": -1j} if i == j else {})
    for i in range(3):
        _add(table, f"J{i + 1}", "S0", {})
        _add(table, f"K{i + 1}", "S0", {f"Q{i + 1}": -1j})
        _add(table, f"Q{i + 1}", "S0", {f"K{i + 1}": 1j})
    return table


def pairs():
    """The 45 unordered generator pairs in label order."""
    return list(itertools.combinations(LABELS, 2))


def format_combination(coeffs):
    if not coeffs:
        return "0"
    parts = []
    for label, c in coeffs.items():
        c = complex(c)
        if c.real == 0 and abs(c.imag) == 1:
            parts.append(("+" if c.imag > 0 else "-") + "i" + label)
        else:
            parts.append(f"{c:+}*{label}")
    return " ".join(parts)


@dataclass(frozen=True)
class CommutatorReport:
    pair: tuple
    expected: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self):
        return self.max_deviation <= self.tolerance

    def to_dict(self):
        return {
            "pair": list(self.pair),
            "expected": self.expected,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def commutator(a, b):
    return a @ b - b @ a


def check_structure(matrices, tolerance=DEFAULT_TOLERANCE, restrict=None, subset=None):
    """Compare ``[A, B]`` with the structure table for every pair.

    ``matrices`` maps labels to square arrays.  ``restrict`` is an index array
    selecting the rows and columns on which the comparison is made.
    """
    table = structure_table()
    labels = subset or LABELS
    reports = []
    for a, b in itertools.combinations(labels, 2):
        expected = table[(a, b)]
        diff = commutator(matrices[a], matrices[b])
        for label, c in expected.items():
            diff = diff - c * matrices[label]
        if restrict is not None:
            diff = diff[np.ix_(restrict, restrict)]
        dev = float(np.max(np.abs(diff))) if diff.size else 0.0
        reports.append(CommutatorReport((a, b), format_combination(expected), dev, tolerance))
    return reports


def extract_structure(matrices, restrict=None):
    """Least-squares structure constants f[a, b, c] with [G_a, G_b] = sum_c f G_c."""
    def vec(m):
        if restrict is not None:
            m = m[np.ix_(restrict, restrict)]
        return m.ravel()

    basis = np.stack([vec(matrices[label]) for label in LABELS], axis=1)
    n = len(LABELS)
    f = np.zeros((n, n, n), dtype=complex)
    for ia, ib in itertools.combinations(range(n), 2):
        rhs = vec(commutator(matrices[LABELS[ia]], matrices[LABELS[ib]]))
        coeffs, *_ = np.linalg.lstsq(basis, rhs, rcond=None)
        f[ia, ib] = coeffs
        f[ib, ia] = -coeffs
    return f


def table_tensor():
    n = len(LABELS)
    f = np.zeros((n, n, n), dtype=complex)
    for (a, b), coeffs in structure_table().items():
        for c, v in coeffs.items():
            f[LABELS.index(a), LABELS.index(b), LABELS.index(c)] = v
    return f
