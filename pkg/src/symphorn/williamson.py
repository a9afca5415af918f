"""
Symplectic eigenvalues and Williamson normal forms.

Conventions
-----------
* ``J_n = [[0, -I], [I, 0]]`` and ``Sp(2n, R) = {S : S^T J S = J}``.
* A quadratic form is stored as its full symmetric matrix ``Q`` with
  ``q(v) = v^T Q v``; the cross term ``c x1 x2`` therefore contributes
  ``c/2`` to each off-diagonal entry.
* ``D(mu) = diag(mu) (+) diag(mu)`` is the Williamson normal form with
  symplectic spectrum ``mu``.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .linalg import (
    ConvergenceError,
    Spectrum,
    as_real_symmetric,
    random_symplectic,
)

__all__ = [
    "PairingError",
    "QuadForm",
    "WilliamsonDecomp",
    "CausalClass",
    "j_matrix",
    "canonical_form",
    "symplectic_defect",
    "symplectic_eigenvalues",
    "symplectic_spectra",
    "williamson_decompose",
    "causal_cone_member",
    "x_of_mu",
    "sample_form_with_spectrum",
]


class PairingError(RuntimeError):
    """The eigenvalues of ``-K^2`` did not group into near-equal pairs."""


def j_matrix(n):
    """The standard complex structure ``[[0, -I_n], [I_n, 0]]``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = -np.eye(n)
    j[n:, :n] = np.eye(n)
    return j


def canonical_form(mu):
    """Return ``diag(mu) (+) diag(mu)``."""
    mu = np.asarray(mu, dtype=float)
    return np.diag(np.concatenate([mu, mu]))


def symplectic_defect(s):
    """``max |S^T J S - J|`` for a ``2n x 2n`` matrix ``S``."""
    s = np.asarray(s, dtype=float)
    j = j_matrix(s.shape[0] // 2)
    return float(np.max(np.abs(s.T @ j @ s - j)))


@dataclass(frozen=True, eq=False)
class QuadForm:
    """Positive definite quadratic form on ``R^{2n}``."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_real_symmetric(self.matrix)
        if m.shape[0] % 2:
            raise ValueError(f"quadratic form must have even dimension, got {m.shape[0]}")
        try:
            np.linalg.cholesky(m)
        except np.linalg.LinAlgError:
            raise ValueError("quadratic form is not positive definite") from None
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n(self):
        return self.matrix.shape[0] // 2

    def __call__(self, v):
        v = np.asarray(v, dtype=float)
        return float(v @ self.matrix @ v)


def _form_matrix(q):
    return q.matrix if isinstance(q, QuadForm) else QuadForm(q).matrix


def symplectic_spectra(qs, tol=1e-6):
    """Symplectic spectra of a stack of positive definite matrices.

    Vectorized core of :func:`symplectic_eigenvalues`: with ``R = Q^{1/2}``
    and ``K = R J R`` the symmetric PSD matrix ``-K^2 = K^T K`` has every
    symplectic eigenvalue squared as a double eigenvalue.

    Parameters
    ----------
    qs : ndarray, shape (..., 2n, 2n)
        Symmetric positive definite matrices (not re-validated here).
    tol : float
        Relative gap allowed inside each pair of doubled eigenvalues.

    Returns
    -------
    ndarray, shape (..., n)
        Symplectic eigenvalues, non-increasing along the last axis.
    """
    qs = np.asarray(qs, dtype=float)
    n = qs.shape[-1] // 2
    w, v = np.linalg.eigh(qs)
    if np.any(w[..., 0] <= 0):
        raise ValueError("quadratic form is not positive definite")
    root = (v * np.sqrt(w)[..., None, :]) @ np.swapaxes(v, -1, -2)
    k = root @ j_matrix(n) @ root
    m = np.swapaxes(k, -1, -2) @ k
    m = (m + np.swapaxes(m, -1, -2)) / 2
    e = np.linalg.eigvalsh(m)[..., ::-1]
    pairs = e.reshape(e.shape[:-1] + (n, 2))
    hi, lo = pairs[..., 0], pairs[..., 1]
    gap = hi - lo
    if np.any(gap > tol * np.abs(hi)):
        worst = float(np.max(gap / np.abs(hi)))
        raise PairingError(f"eigenvalues of -K^2 do not pair up (relative gap {worst:.3e})")
    return np.sqrt((hi + lo) / 2)


def symplectic_eigenvalues(q, tol=1e-6):
    """Symplectic eigenvalues of a positive definite quadratic form.

    Parameters
    ----------
    q : QuadForm or array_like
        Symmetric positive definite ``2n x 2n`` matrix.
    tol : float
        Relative gap tolerated between the two copies of each doubled
        eigenvalue of ``-K^2``. Clustered but distinct symplectic eigenvalues
        are paired greedily in sorted order, which is harmless for the
        values themselves.

    Returns
    -------
    Spectrum
        ``lambda_1 >= ... >= lambda_n > 0``.

    Examples
    --------
    >>> symplectic_eigenvalues([[2.0, 0.5], [0.5, 1.0]])   # 1/2 sqrt(4*2*1 - 1)
    Spectrum(1.3228756555322954)
    """
    return Spectrum(symplectic_spectra(_form_matrix(q), tol))


@dataclass(frozen=True, eq=False)
class WilliamsonDecomp:
    """Symplectic spectrum together with a symplectic diagonalizing basis.

    ``basis.T @ Q @ basis == diag(spectrum) (+) diag(spectrum)`` and
    ``basis.T @ J @ basis == J``.
    """

    spectrum: Spectrum
    basis: np.ndarray

    @property
    def n(self):
        return len(self.spectrum)

    def normal_form(self):
        return canonical_form(self.spectrum)

    def residuals(self, q):
        """Return ``(max|S^T Q S - D|, max|S^T J S - J|)``."""
        q = _form_matrix(q)
        s = self.basis
        return (
            float(np.max(np.abs(s.T @ q @ s - self.normal_form()))),
            symplectic_defect(s),
        )


def williamson_decompose(q, tol=1e-8):
    """Williamson normal form of a positive definite quadratic form.

    The eigenvectors of the Hermitian matrix ``iK`` (``K = Q^{1/2} J Q^{1/2}``)
    for its positive eigenvalues ``lambda_k`` split as ``(e_k + i f_k)/sqrt 2``
    with ``K e_k = lambda_k f_k`` and ``K f_k = -lambda_k e_k``. Any orthonormal
    choice inside a degenerate eigenspace keeps the real and imaginary parts
    orthonormal, so repeated symplectic eigenvalues need no special care.
    With ``U = [e | f]`` the basis is ``Q^{-1/2} U (L^{1/2} (+) L^{1/2})``.

    Raises
    ------
    ConvergenceError
        If either reconstruction residual exceeds ``tol`` (relative to
        ``max|Q|`` for the form, absolute for the symplectic relation).
    """
    qm = _form_matrix(q)
    n = qm.shape[0] // 2
    w, v = np.linalg.eigh(qm)
    root = (v * np.sqrt(w)) @ v.T
    inv_root = (v / np.sqrt(w)) @ v.T
    k = root @ j_matrix(n) @ root
    h = 1j * k
    ev, vecs = np.linalg.eigh((h + h.conj().T) / 2)
    lam = ev[::-1][:n]
    top = vecs[:, ::-1][:, :n]
    if lam[-1] <= 0:
        raise ConvergenceError("iK has too few positive eigenvalues", float(-lam[-1]))
    u = np.sqrt(2.0) * np.concatenate([top.real, top.imag], axis=1)
    scale = np.sqrt(np.concatenate([lam, lam]))
    basis = inv_root @ u * scale
    spectrum = Spectrum(lam)
    decomp = WilliamsonDecomp(spectrum, basis)
    form_res, symp_res = decomp.residuals(qm)
    qmax = float(np.max(np.abs(qm)))
    if form_res > tol * qmax or symp_res > tol:
        raise ConvergenceError(
            "Williamson basis reconstruction failed", max(form_res / qmax, symp_res)
        )
    return decomp


class CausalClass(str, Enum):
    INSIDE_INTERIOR = "inside_interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"
    NOT_IN_SP = "not_in_sp"


def causal_cone_member(x, tol=1e-9):
    """Classify ``x`` against the causal cone ``{X in sp(2n) : J X >= 0}``.

    The tolerance is absolute after scaling by ``max|x|``: ``x`` is outside
    the Lie algebra when ``J x`` is asymmetric beyond it, and otherwise the
    smallest eigenvalue of ``J x`` decides interior, boundary or outside.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape[0] % 2:
        raise ValueError("x must be a square matrix of even dimension")
    eff = tol * float(np.max(np.abs(x)))
    jx = j_matrix(x.shape[0] // 2) @ x
    if np.max(np.abs(jx - jx.T)) > eff:
        return CausalClass.NOT_IN_SP
    sigma = float(np.linalg.eigvalsh((jx + jx.T) / 2)[0])
    if sigma > eff:
        return CausalClass.INSIDE_INTERIOR
    if sigma >= -eff:
        return CausalClass.BOUNDARY
    return CausalClass.OUTSIDE


def x_of_mu(mu):
    """The Cartan element ``[[0, diag(mu)], [-diag(mu), 0]]``."""
    mu = np.asarray(mu, dtype=float)
    n = mu.shape[0]
    x = np.zeros((2 * n, 2 * n))
    x[:n, n:] = np.diag(mu)
    x[n:, :n] = -np.diag(mu)
    return x


def _positive_spectrum(mu):
    mu = Spectrum(mu)
    if not mu or mu[-1] <= 0:
        raise ValueError(f"spectrum must be non-empty and positive, got {tuple(mu)}")
    return mu


def sample_form_with_spectrum(mu, seed, radius=1.0):
    """Random positive definite form with symplectic spectrum ``mu``.

    Returns the form with matrix ``S^T D(mu) S`` where ``S = random_symplectic(n, seed,
    radius)``; congruence by a symplectic matrix preserves the spectrum.
    """
    mu = _positive_spectrum(mu)
    s = random_symplectic(len(mu), seed, radius)
    q = s.T @ canonical_form(mu) @ s
    return QuadForm((q + q.T) / 2)
