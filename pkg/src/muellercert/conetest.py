"""Exact certification that a transfer matrix maps the Stokes cone into itself.

The solid cone is the convex hull of its extreme rays, the unit-intensity
pure states S = (1, s) with ||s|| = 1, so a linear map preserves the cone
iff it keeps every such input inside it.  That reduces the verdict to two
global minimizations over the unit sphere:

* output intensity, affine in s, minimized in closed form;
* the output Lorentz quadratic form, quadratic in s, minimized exactly via
  an eigendecomposition plus a one-dimensional secular equation.

No sampling is involved anywhere, so the reported margins are certificates
up to floating point rounding, not estimates.
"""

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, LORENTZ_METRIC, as_mueller_matrix

# Degenerate-structure thresholds inside the secular solve (relative to the
# problem scale): components below _COUPLING_EPS count as decoupled from the
# bottom eigenspace, eigenvalue gaps below _GAP_EPS count as degenerate.
_GAP_EPS = 1e-12
_COUPLING_EPS = 1e-14


@dataclass(frozen=True)
class ConeVerdict:
    """Outcome of the cone-preservation test.

    ``intensity_margin`` is the minimum output intensity over unit-intensity
    pure inputs and ``lorentz_margin`` the minimum output Lorentz form; the
    matrix preserves the cone iff both are nonnegative (within tolerance,
    applied after normalizing the matrix to unit largest singular value so
    the verdict is invariant under positive rescaling).  ``worst_input`` is
    the Poincare-sphere point achieving the binding margin.
    """

    is_pre_mueller: bool
    intensity_margin: float
    lorentz_margin: float
    worst_input: np.ndarray


def sphere_quadratic_min(a, b) -> tuple[float, np.ndarray]:
    """Globally minimize s^T A s + 2 b^T s over the unit sphere ||s|| = 1.

    Stationary points satisfy (A - mu I) s = -b with the global minimum at
    the unique multiplier mu <= lambda_min(A).  In the eigenbasis of A the
    constraint reads sum_i c_i^2 / (lam_i - mu)^2 = 1, a secular equation in
    mu solved by Newton iterations safeguarded with bisection on the bracket
    [lambda_min - ||b||, lambda_min].  When b has no component on the bottom
    eigenspace and the remaining components leave ||s|| < 1 at
    mu = lambda_min (the hard case), the solution is completed with a bottom
    eigenvector.

    The minimum always exists (continuous function on a compact set); the
    input matrix is symmetrized before use.

    Returns ``(value, s_star)``: the global minimum and a unit vector
    attaining it.  ``value`` is evaluated at the returned point, so it is
    achievable by construction.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n = b.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"incompatible shapes {a.shape} and {b.shape}")
    a = 0.5 * (a + a.T)

    lam, q = np.linalg.eigh(a)
    c = q.T @ b
    lam0 = lam[0]
    scale = max(abs(lam[0]), abs(lam[-1]), float(np.linalg.norm(b)), 1.0)

    gap = lam - lam0
    bottom = gap <= _GAP_EPS * scale
    coupled = float(np.sum(c[bottom] ** 2))
    with np.errstate(divide="ignore"):
        tail = np.where(bottom, 0.0, (c / np.where(bottom, 1.0, gap)) ** 2)
    tail_sum = float(tail.sum())

    if coupled <= (_COUPLING_EPS * scale) ** 2 and tail_sum <= 1.0:
        # Hard case: multiplier pinned at lambda_min, completed on the
        # bottom eigenspace to reach the sphere.
        s_eig = np.where(bottom, 0.0, -c / np.where(bottom, 1.0, gap))
        deficit = max(0.0, 1.0 - float(s_eig @ s_eig))
        s_eig[int(np.argmax(bottom))] += np.sqrt(deficit)
    else:
        mu = _secular_root(lam, c, lam0)
        s_eig = -c / (lam - mu)

    s = q @ s_eig
    norm = float(np.linalg.norm(s))
    if norm > 0.0:
        s = s / norm
    value = float(s @ a @ s + 2.0 * (b @ s))
    return value, s


def _secular_root(lam: np.ndarray, c: np.ndarray, lam0: float) -> float:
    """Solve ||s(mu)|| = 1 for mu in [lam0 - ||c||, lam0).

    Works on f(mu) = 1/||s(mu)|| - 1, which is monotone decreasing on the
    bracket; Newton steps are accepted only while they stay inside the
    current bisection bracket.
    """
    lo = lam0 - max(float(np.linalg.norm(c)), 1e-300)
    hi = lam0
    mu = lo
    for _ in range(200):
        d = lam - mu
        with np.errstate(divide="ignore", over="ignore"):
            w = float(np.sum((c / d) ** 2))
        if not np.isfinite(w):
            # On (or past) the pole: the norm is huge, so the root is left.
            hi = mu
            mu = 0.5 * (lo + hi)
            continue
        if w <= 0.0:  # unreachable in the easy case; defensive
            break
        norm = np.sqrt(w)
        f = 1.0 / norm - 1.0
        if abs(f) <= 1e-15:
            break
        if f > 0.0:
            lo = mu
        else:
            hi = mu
        if hi - lo <= 1e-16 * max(1.0, abs(lam0)):
            break
        dw = 2.0 * float(np.sum(c**2 / d**3))
        fprime = -0.5 * dw / (w * norm)
        step_ok = fprime < 0.0 and np.isfinite(fprime)
        nxt = mu - f / fprime if step_ok else lo
        if not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        mu = nxt
    # never return the pole itself: keep the solution components finite
    return min(mu, float(np.nextafter(lam0, -np.inf)))


def certify_cone(m, tol: float = DEFAULT_TOL) -> ConeVerdict:
    """Decide whether ``m`` maps the solid Stokes cone into itself.

    Margins are reported in the raw units of ``m`` (the intensity margin
    scales linearly and the Lorentz margin quadratically under rescaling);
    the verdict threshold is applied to margins normalized by the largest
    singular value.  A pure state mapped to the zero vector counts as the
    cone apex and is allowed.
    """
    mat = as_mueller_matrix(m)
    sigma = float(np.linalg.norm(mat, 2))
    if sigma == 0.0:
        return ConeVerdict(True, 0.0, 0.0, np.array([0.0, 0.0, 1.0]))

    row = mat[0, 1:]
    row_norm = float(np.linalg.norm(row))
    intensity_margin = float(mat[0, 0]) - row_norm
    worst_intensity = -row / row_norm if row_norm > 0.0 else np.array([0.0, 0.0, 1.0])

    quad = mat.T @ LORENTZ_METRIC @ mat
    quad = 0.5 * (quad + quad.T)
    value, s_star = sphere_quadratic_min(quad[1:, 1:], quad[0, 1:])
    lorentz_margin = float(quad[0, 0]) + value

    ok = (
        intensity_margin >= -tol * sigma
        and lorentz_margin >= -tol * sigma**2
    )
    binding_lorentz = lorentz_margin / sigma**2 <= intensity_margin / sigma
    worst = s_star if binding_lorentz else worst_intensity
    return ConeVerdict(bool(ok), intensity_margin, lorentz_margin, worst)
