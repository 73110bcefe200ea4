"""Classification of cone-preserving matrices into their canonical families.

Under two-sided multiplication by proper orthochronous Lorentz matrices,
every cone-preserving real 4x4 matrix lands in exactly one of four orbits:

* Type I: diagonal canonical form diag(d0, d1, d2, d3) with
  d0 >= d1 >= d2 >= |d3|;
* Type II: the non-diagonalizable form with the single off-diagonal entry
  M01 = d0 - d1, with d0 > d1 > 0 and sqrt(d0 d1) >= d2 >= |d3|;
* Polarizer: rank one, fixed output polarization, intensity depending on
  the input state;
* Pin map: rank one, fixed output polarization and input-independent
  intensity.

The family is read off the Lorentz normal matrix N = G M^T G M: Type I has a
diagonalizable N with real nonnegative spectrum (the squared canonical
parameters), Type II a defective N, and the two rank-one families N = 0.
Jordan structure is discontinuous, so gray-zone inputs are reported as
Indeterminate rather than guessed.

Closed-form physicality tests for the diagonal and Type II canonical forms
are provided as simple inequalities on the canonical parameters, equivalent
to positive semidefiniteness of the associated hermitian matrix.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .conetest import certify_cone
from .core import DEFAULT_TOL, LORENTZ_METRIC, as_mueller_matrix


class DegenerateSpectrumError(ValueError):
    """Raised by the Type-I factorization when eigenvalues of the Lorentz
    normal matrix are too close to separate eigenvectors reliably."""


class NotTypeIError(ValueError):
    """Raised by the Type-I factorization when the input does not admit a
    diagonal canonical form (or is singular)."""


class Family(enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    POLARIZER = "Polarizer"
    PIN_MAP = "PinMap"
    NOT_PRE_MUELLER = "NotPreMueller"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class CanonicalClass:
    """Family verdict with canonical parameters and factors when determined.

    ``d`` is None when the parameters are not determined by the orbit (the
    rank-one families carry no invariant scale) or cannot be extracted.
    When factors are present they satisfy L^T G L = G with positive corner
    and unit determinant, and l_left @ diag(d) @ l_right reproduces the
    input.
    """

    family: Family
    d: np.ndarray | None = None
    l_left: np.ndarray | None = None
    l_right: np.ndarray | None = None
    diagnostics: str | None = None


#: The four inequalities, in fixed order, that make a diagonal canonical
#: form physical.  Item k is violated exactly when type1_margins(d)[k] < 0.
TYPE1_CONSTRAINT_FORMS = (
    "-d1 - d2 - d3 <= d0",
    "-d1 + d2 + d3 <= d0",
    "d1 + d2 - d3 <= d0",
    "d1 - d2 + d3 <= d0",
)


def n_matrix(m) -> np.ndarray:
    """Lorentz normal matrix N = G M^T G M."""
    mat = as_mueller_matrix(m)
    g = LORENTZ_METRIC
    return g @ mat.T @ g @ mat


def type1_margins(d) -> np.ndarray:
    """Slack of each physicality inequality for a diagonal canonical form.

    Accepts a 4-vector or a stack of shape (..., 4); returns the matching
    stack of 4 slacks, ordered as TYPE1_CONSTRAINT_FORMS.  All slacks are
    nonnegative exactly when diag(d) is a physical Mueller matrix.
    """
    arr = np.asarray(d, dtype=float)
    if arr.shape[-1] != 4:
        raise ValueError("expected canonical parameters of shape (..., 4)")
    d0, d1, d2, d3 = (arr[..., k] for k in range(4))
    return np.stack(
        [d0 + d1 + d2 + d3, d0 + d1 - d2 - d3, d0 - d1 - d2 + d3, d0 - d1 + d2 - d3],
        axis=-1,
    )


def type1_constraints(d, tol: float = 0.0):
    """True when every diagonal-form physicality inequality holds within tol.

    Vectorized like :func:`type1_margins`; returns a bool (or bool array).
    """
    result = type1_margins(d).min(axis=-1) >= -tol
    return bool(result) if result.ndim == 0 else result


def type2_constraints(d, tol: float = DEFAULT_TOL) -> bool:
    """Physicality test for the Type-II canonical form.

    On the Type-II domain d0 > d1 > 0 the canonical form is physical iff
    d3 == d2 (within tol) and d2^2 <= d0 d1 (within tol); the equality is
    the constraint that appears only when spatially entangled inputs are
    considered.
    """
    arr = np.asarray(d, dtype=float)
    if arr.shape != (4,):
        raise ValueError("expected 4 canonical parameters")
    d0, d1, d2, d3 = arr
    return bool(abs(d3 - d2) <= tol and d2**2 <= d0 * d1 + tol)


def h_eigs_diagonal(d) -> np.ndarray:
    """Eigenvalues of the associated hermitian matrix of diag(d), closed form.

    The hermitian matrix splits into two 2x2 blocks; the four eigenvalues
    are (d0 + d1 +/- (d2 + d3)) / 2 and (d0 - d1 +/- (d2 - d3)) / 2,
    returned sorted descending (on the last axis for stacked input).
    """
    arr = np.asarray(d, dtype=float)
    if arr.shape[-1] != 4:
        raise ValueError("expected canonical parameters of shape (..., 4)")
    d0, d1, d2, d3 = (arr[..., k] for k in range(4))
    eigs = np.stack(
        [
            0.5 * (d0 + d1 + (d2 + d3)),
            0.5 * (d0 + d1 - (d2 + d3)),
            0.5 * (d0 - d1 + (d2 - d3)),
            0.5 * (d0 - d1 - (d2 - d3)),
        ],
        axis=-1,
    )
    return np.sort(eigs, axis=-1)[..., ::-1]


def type1_factor(m, tol: float = DEFAULT_TOL):
    """Factor a nonsingular Type-I matrix as l_left @ diag(d) @ l_right.

    The Lorentz normal matrix is self-adjoint in the Lorentz metric, so for
    distinct eigenvalues its eigenvectors are automatically G-orthogonal:
    normalized to one timelike (future-pointing) and three spacelike unit
    vectors with overall determinant one they assemble into the inverse of
    a proper orthochronous l_right, and l_left follows by division.  The
    canonical parameters are the signed square roots of the eigenvalues,
    the last one carrying the sign of det(m).

    Raises DegenerateSpectrumError when eigenvalue gaps fall below tol
    (callers should fall back to classification only) and NotTypeIError
    when the spectrum or eigenvector causality types rule the family out,
    or when the input is singular.
    """
    mat = as_mueller_matrix(m)
    g = LORENTZ_METRIC
    nmat = n_matrix(mat)
    scale = max(float(np.linalg.norm(nmat, 2)), 1e-300)

    lam, vecs = np.linalg.eig(nmat)
    if np.iscomplexobj(lam):
        if float(np.abs(lam.imag).max()) > tol * scale:
            raise NotTypeIError("Lorentz normal matrix has complex spectrum")
        lam, vecs = lam.real, vecs.real
    order = np.argsort(-lam)
    lam = lam[order]
    vecs = vecs[:, order]

    if lam[-1] < -tol * scale:
        raise NotTypeIError("Lorentz normal matrix has a negative eigenvalue")
    if lam[-1] <= tol * scale:
        raise NotTypeIError("factorization requires a nonsingular input")
    if np.min(lam[:-1] - lam[1:]) < tol * scale:
        raise DegenerateSpectrumError(
            "eigenvalues of the Lorentz normal matrix are not distinct within tol"
        )

    quad = np.einsum("ia,ij,ja->a", vecs, g, vecs)
    if quad[0] <= 0.0:
        raise NotTypeIError("top eigenvector is not timelike")
    if np.any(quad[1:] >= 0.0):
        raise NotTypeIError("subdominant eigenvector is not spacelike")

    basis = vecs / np.sqrt(np.abs(quad))
    if basis[0, 0] < 0.0:
        basis[:, 0] = -basis[:, 0]
    for k in range(1, 4):
        if basis[np.argmax(np.abs(basis[:, k])), k] < 0.0:
            basis[:, k] = -basis[:, k]
    if np.linalg.det(basis) < 0.0:
        basis[:, 3] = -basis[:, 3]

    ortho_err = float(np.abs(basis.T @ g @ basis - g).max())
    if ortho_err > 1e-6:
        raise NotTypeIError(
            f"eigenbasis fails Lorentz orthonormality by {ortho_err:.3g}"
        )

    d = np.sqrt(np.clip(lam, 0.0, None))
    if np.linalg.det(mat) < 0.0:
        d[3] = -d[3]

    l_right = g @ basis.T @ g
    l_left = mat @ basis @ np.diag(1.0 / d)
    if l_left[0, 0] <= 0.0 or float(np.abs(l_left.T @ g @ l_left - g).max()) > 1e-6:
        raise NotTypeIError("left factor is not proper orthochronous Lorentz")
    return l_left, d, l_right


def _matches_type2_pattern(mat: np.ndarray, atol: float) -> bool:
    off = mat.copy()
    np.fill_diagonal(off, 0.0)
    off[0, 1] = 0.0
    if float(np.abs(off).max()) > atol:
        return False
    return abs(mat[0, 1] - (mat[0, 0] - mat[1, 1])) <= atol


def _classify_rank_one(unit, cluster_tol):
    """Sort a cone-preserving matrix with vanishing Lorentz normal matrix
    into the Polarizer / Pin-map families via its rank-one factors."""
    g = LORENTZ_METRIC
    u_all, s_all, vt_all = np.linalg.svd(unit)
    if s_all[1] > cluster_tol:
        return CanonicalClass(
            Family.INDETERMINATE,
            diagnostics="vanishing Lorentz normal matrix but rank above one",
        )
    u = u_all[:, 0]
    v = vt_all[0]
    if u[0] < 0.0:
        u, v = -u, -v
    if u[0] <= cluster_tol:
        return CanonicalClass(
            Family.INDETERMINATE,
            diagnostics="rank-one output direction is not future-pointing",
        )
    if abs(float(u @ g @ u)) > cluster_tol:
        return CanonicalClass(
            Family.INDETERMINATE,
            diagnostics="rank-one output direction is not lightlike",
        )
    if v[0] <= cluster_tol:
        return CanonicalClass(
            Family.INDETERMINATE,
            diagnostics="rank-one input weight vector is not future-pointing",
        )
    vgv = float(v @ g @ v)
    note = "canonical scale d0 is not a double-coset invariant"
    if abs(vgv) <= cluster_tol:
        return CanonicalClass(Family.POLARIZER, diagnostics=note)
    if vgv > 0.0:
        return CanonicalClass(Family.PIN_MAP, diagnostics=note)
    return CanonicalClass(
        Family.INDETERMINATE,
        diagnostics="rank-one input weight vector is spacelike",
    )


def classify(m, tol: float = DEFAULT_TOL) -> CanonicalClass:
    """Assign a real 4x4 matrix to its canonical family.

    Cone preservation is certified first; everything else is read off the
    Lorentz normal matrix computed from the input normalized to unit
    largest singular value.  Eigenvalues are clustered at sqrt(tol); a
    cluster whose geometric multiplicity (rank test at tol) matches its
    size is diagonalizable (Type I), one with a genuine null direction but
    missing loose-rank dimensions is defective (Type II), and anything in
    between comes back as Indeterminate with diagnostics, never as a
    guess.
    """
    mat = as_mueller_matrix(m)
    cone = certify_cone(mat, tol)
    if not cone.is_pre_mueller:
        return CanonicalClass(
            Family.NOT_PRE_MUELLER,
            diagnostics="does not map the Stokes cone into itself",
        )
    sigma = float(np.linalg.norm(mat, 2))
    if sigma == 0.0:
        return CanonicalClass(Family.INDETERMINATE, diagnostics="zero matrix")

    unit = mat / sigma
    nmat = n_matrix(unit)
    nnorm = float(np.linalg.norm(nmat, 2))

    if nnorm <= tol:
        return _classify_rank_one(unit, float(np.sqrt(tol)))

    # All spectral thresholds are relative to the normal matrix's own scale
    # (for strongly boosted inputs its spectrum sits far below the unit
    # spectral norm of the input).
    cluster_tol = float(np.sqrt(tol)) * nnorm
    geo_tol = tol * nnorm

    lam, vecs = np.linalg.eig(nmat)
    if np.iscomplexobj(lam):
        if float(np.abs(lam.imag).max()) > cluster_tol:
            return CanonicalClass(
                Family.INDETERMINATE,
                diagnostics="Lorentz normal matrix has complex spectrum",
            )
        lam, vecs = lam.real, vecs.real
    order = np.argsort(-lam)
    lam = lam[order]
    vecs = vecs[:, order]
    if lam[-1] < -cluster_tol:
        return CanonicalClass(
            Family.INDETERMINATE,
            diagnostics="Lorentz normal matrix has a negative eigenvalue",
        )
    lam = np.clip(lam, 0.0, None)

    # Cluster eigenvalues, then compare geometric and algebraic multiplicity.
    clusters = []
    start = 0
    for k in range(1, 4):
        if lam[k - 1] - lam[k] > cluster_tol:
            clusters.append((start, k))
            start = k
    clusters.append((start, 4))

    # A genuine Jordan block leaves a machine-precision null direction of
    # (N - lambda I) next to an O(1) coupling; a nearly tied diagonalizable
    # pair leaves neither.  Clusters with only gray-band singular values are
    # reported as Indeterminate instead of being forced into a family.
    defective = False
    ambiguous = None
    for lo, hi in clusters:
        size = hi - lo
        if size == 1:
            continue
        center = float(lam[lo:hi].mean())
        svals = np.linalg.svd(nmat - center * np.eye(4), compute_uv=False)
        strict = int(np.count_nonzero(svals <= geo_tol))
        loose = int(np.count_nonzero(svals <= cluster_tol))
        if strict >= size:
            continue
        if strict >= 1 and loose < size:
            defective = True
            break
        ambiguous = center

    if ambiguous is not None and not defective:
        return CanonicalClass(
            Family.INDETERMINATE,
            diagnostics=(
                "eigenvalue cluster near "
                f"{ambiguous:.6g} (input normalized): cannot separate "
                "defective from nearly degenerate diagonalizable structure"
            ),
        )
    if defective:
        d = (
            np.diag(mat).copy()
            if _matches_type2_pattern(unit, float(np.sqrt(tol)))
            else None
        )
        return CanonicalClass(Family.TYPE_II, d=d)

    # Type I: diagonalizable, nonnegative real spectrum.
    if clusters[0][1] - clusters[0][0] == 1:
        top = vecs[:, 0]
        if float(top @ LORENTZ_METRIC @ top) <= 0.0:
            return CanonicalClass(
                Family.INDETERMINATE,
                diagnostics="dominant eigenvector is not timelike",
            )
    d = sigma * np.sqrt(lam)
    det = float(np.linalg.det(unit))
    if abs(det) <= tol:
        d[3] = 0.0
    elif det < 0.0:
        d[3] = -d[3]

    l_left = l_right = None
    try:
        l_left, d_factor, l_right = type1_factor(mat, tol)
        d = d_factor
    except (DegenerateSpectrumError, NotTypeIError):
        pass
    return CanonicalClass(Family.TYPE_I, d=d, l_left=l_left, l_right=l_right)
