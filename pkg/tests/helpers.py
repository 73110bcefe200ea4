"""Shared construction utilities and independent oracles for the test suite.

Oracles here are deliberately written from scratch (entrywise tables,
brute-force grids) so they share no code path with the implementations they
check.
"""

import numpy as np

from muellercert import PAULI_BASIS, mueller_from_jones


def random_jones(rng, scale=1.0):
    return scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))


def random_unit_det_jones(rng):
    """Random element of the unit-determinant 2x2 complex matrices."""
    while True:
        j = random_jones(rng)
        det = np.linalg.det(j)
        if abs(det) > 1e-3:
            return j / np.sqrt(det)


def random_lorentz(rng):
    """Random proper orthochronous Lorentz matrix (via a unit-det Jones map)."""
    return mueller_from_jones(random_unit_det_jones(rng))


def random_psd_h(rng, scale=1.0):
    b = scale * (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    return b.conj().T @ b


def rotation_jones(axis, angle):
    """Unit-determinant Jones matrix of a Poincare rotation about a Pauli axis."""
    return np.cos(angle / 2) * np.eye(2) - 1j * np.sin(angle / 2) * PAULI_BASIS[axis]


def boost_jones(axis, rapidity):
    """Unit-determinant hermitian Jones matrix of a pure boost (diattenuator)."""
    return np.cosh(rapidity / 2) * np.eye(2) + np.sinh(rapidity / 2) * PAULI_BASIS[axis]


def explicit_h_table(m):
    """Entrywise table for the associated hermitian matrix (independent of
    the basis-expansion implementation)."""
    M = np.asarray(m, dtype=float)
    H = np.empty((4, 4), dtype=complex)
    H[0, 0] = M[0, 0] + M[1, 1] + M[0, 1] + M[1, 0]
    H[0, 1] = M[0, 2] + M[1, 2] + 1j * (M[0, 3] + M[1, 3])
    H[0, 2] = M[2, 0] + M[2, 1] - 1j * (M[3, 0] + M[3, 1])
    H[0, 3] = M[2, 2] + M[3, 3] + 1j * (M[2, 3] - M[3, 2])
    H[1, 1] = M[0, 0] - M[1, 1] - M[0, 1] + M[1, 0]
    H[1, 2] = M[2, 2] - M[3, 3] - 1j * (M[2, 3] + M[3, 2])
    H[1, 3] = M[2, 0] - M[2, 1] - 1j * (M[3, 0] - M[3, 1])
    H[2, 2] = M[0, 0] - M[1, 1] + M[0, 1] - M[1, 0]
    H[2, 3] = M[0, 2] - M[1, 2] + 1j * (M[0, 3] - M[1, 3])
    H[3, 3] = M[0, 0] + M[1, 1] - M[0, 1] - M[1, 0]
    for i in range(4):
        for j in range(i):
            H[i, j] = np.conj(H[j, i])
    return 0.5 * H


def fibonacci_sphere(n):
    """n near-uniform points on the unit sphere (spiral lattice), shape (n, 3)."""
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    radius = np.sqrt(np.clip(1.0 - z**2, 0.0, None))
    theta = np.pi * (3.0 - np.sqrt(5.0)) * i
    return np.stack([radius * np.cos(theta), radius * np.sin(theta), z], axis=1)


def grid_quadratic_min(a, b, points):
    """Brute-force minimum of s^T a s + 2 b^T s over given unit vectors."""
    values = np.einsum("ni,ij,nj->n", points, a, points) + 2.0 * points @ b
    k = int(np.argmin(values))
    return float(values[k]), points[k]


def type2_canonical(d0, d1, d2, d3):
    """The non-diagonalizable canonical form with M01 fixed by the diagonal."""
    m = np.diag([d0, d1, d2, d3]).astype(float)
    m[0, 1] = d0 - d1
    return m


def pin_map(d0=1.0):
    m = np.zeros((4, 4))
    m[0, 0] = m[1, 0] = d0
    return m


def polarizer_map(d0=1.0):
    m = np.zeros((4, 4))
    m[0, 0] = m[0, 1] = m[1, 0] = m[1, 1] = d0
    return m


def align_phase(candidate, reference):
    """Rotate candidate's global phase to best match reference."""
    inner = np.vdot(candidate.reshape(-1), reference.reshape(-1))
    if abs(inner) == 0.0:
        return candidate
    return candidate * (inner / abs(inner))
