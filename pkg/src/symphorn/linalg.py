"""
Dense matrix kernel: spectral decompositions, square roots, matrix
exponential, seeded samplers and the plain-text matrix format.

Matrices are plain numpy arrays. The helpers ``as_real_symmetric`` and
``as_hermitian`` validate and symmetrize inputs so that downstream code can
rely on exact symmetry of the stored entries.
"""

import math

import numpy as np
import scipy.linalg

__all__ = [
    "Spectrum",
    "ConvergenceError",
    "NotPSDError",
    "as_real_symmetric",
    "as_hermitian",
    "jacobi_eigh",
    "sym_eigen",
    "herm_eigen",
    "psd_sqrt",
    "expm",
    "random_pd",
    "random_symmetric",
    "random_hermitian",
    "random_symplectic",
    "symplectic_from_generator",
    "parse_matrix",
    "format_matrix",
]


class ConvergenceError(RuntimeError):
    """Raised when an iterative decomposition misses its tolerance."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class NotPSDError(ValueError):
    """Raised when a matrix expected to be PSD has a negative eigenvalue."""

    def __init__(self, eigenvalue):
        super().__init__(f"matrix is not positive semidefinite: eigenvalue {eigenvalue!r}")
        self.eigenvalue = eigenvalue


class Spectrum(tuple):
    """Non-increasing tuple of real numbers.

    The ordering is checked exactly at construction; use
    :meth:`Spectrum.sorted` to build one from unordered data.

    >>> Spectrum([3, 2, 2])
    Spectrum(3.0, 2.0, 2.0)
    """

    def __new__(cls, values):
        vals = tuple(float(v) for v in values)
        for k in range(len(vals) - 1):
            if not vals[k] >= vals[k + 1]:
                raise ValueError(f"spectrum must be non-increasing, got {vals}")
        return super().__new__(cls, vals)

    @classmethod
    def sorted(cls, values):
        return cls(sorted((float(v) for v in values), reverse=True))

    def __repr__(self):
        return "Spectrum(" + ", ".join(repr(v) for v in self) + ")"

    def as_array(self):
        return np.array(self, dtype=float)


def _max_abs(m):
    return float(np.max(np.abs(m))) if np.size(m) else 0.0


def as_real_symmetric(m, atol=None):
    """Return ``m`` as an exactly symmetric float array.

    Raises ``ValueError`` if ``m`` is not square or if its asymmetry exceeds
    ``atol`` (default ``1e-12 * (1 + max|m|)``).
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if atol is None:
        atol = 1e-12 * (1.0 + _max_abs(a))
    if _max_abs(a - a.T) > atol:
        raise ValueError("matrix is not symmetric")
    return (a + a.T) / 2


def as_hermitian(m, atol=None):
    """Complex analogue of :func:`as_real_symmetric`."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if atol is None:
        atol = 1e-12 * (1.0 + _max_abs(a))
    if _max_abs(a - a.conj().T) > atol:
        raise ValueError("matrix is not Hermitian")
    return (a + a.conj().T) / 2


def jacobi_eigh(m, tol=1e-12, max_sweeps=100):
    """Cyclic Jacobi eigensolver for real symmetric or complex Hermitian input.

    Each sweep annihilates every off-diagonal pair once with a (complex)
    Givens rotation. Iteration stops when the off-diagonal Frobenius mass
    drops below ``tol * ||m||_F``.

    Returns
    -------
    w : ndarray
        Eigenvalues, non-increasing.
    v : ndarray
        Orthogonal (unitary) matrix whose columns are the eigenvectors.
    """
    a = np.array(m, dtype=complex if np.iscomplexobj(m) else float)
    n = a.shape[0]
    v = np.eye(n, dtype=a.dtype)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v

    def off(a):
        return float(np.linalg.norm(a - np.diag(np.diag(a))))

    for _ in range(max_sweeps):
        if off(a) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                # phase turns the pivot real, then a classical real rotation
                phase = apq / mag
                theta = (aqq - app) / (2.0 * mag)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=a.dtype)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = 0.0
                a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    else:
        residual = off(a) / scale
        if residual > tol:
            raise ConvergenceError("Jacobi iteration did not converge", residual)

    w = np.real(np.diag(a))
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def _check_decomposition(m, w, v, tol):
    n = m.shape[0]
    orth = _max_abs(v.conj().T @ v - np.eye(n))
    recon = _max_abs((v * w) @ v.conj().T - m)
    if orth > tol or recon > tol * (1.0 + _max_abs(m)):
        raise ConvergenceError("eigendecomposition residual above tolerance", max(orth, recon))


def sym_eigen(m, tol=1e-12, method="lapack"):
    """Eigen-decomposition of a real symmetric matrix.

    Parameters
    ----------
    m : array_like
        Real symmetric matrix.
    tol : float
        Convergence tolerance for the Jacobi path, and the scale of the
        post-hoc residual check.
    method : {"lapack", "jacobi"}
        ``"lapack"`` calls ``numpy.linalg.eigh``; ``"jacobi"`` runs the cyclic
        Jacobi solver of this module.

    Returns
    -------
    (Spectrum, ndarray)
        Non-increasing eigenvalues and an orthogonal matrix of eigenvectors.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = as_real_symmetric(m)
    if method == "jacobi":
        w, v = jacobi_eigh(a, tol=tol / (10 * a.shape[0]))
    elif method == "lapack":
        w, v = np.linalg.eigh(a)
        w, v = w[::-1], v[:, ::-1]
    else:
        raise ValueError(f"unknown method {method!r}")
    _check_decomposition(a, w, v, tol)
    return Spectrum(w), v


def herm_eigen(m, tol=1e-12, method="lapack"):
    """Hermitian counterpart of :func:`sym_eigen`; returns a unitary matrix."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = as_hermitian(m)
    if method == "jacobi":
        w, v = jacobi_eigh(a, tol=tol / (10 * a.shape[0]))
    elif method == "lapack":
        w, v = np.linalg.eigh(a)
        w, v = w[::-1], v[:, ::-1]
    else:
        raise ValueError(f"unknown method {method!r}")
    _check_decomposition(a, w, v, tol)
    return Spectrum(w), v


def psd_sqrt(m, tol=1e-12):
    """Symmetric PSD square root of a real symmetric PSD matrix.

    Eigenvalues in ``[-tol * (1 + max|m|), 0)`` are clamped to zero; anything
    more negative raises :class:`NotPSDError`.
    """
    a = as_real_symmetric(m)
    w, v = np.linalg.eigh(a)
    floor = -tol * (1.0 + _max_abs(a))
    if w[0] < floor:
        raise NotPSDError(float(w[0]))
    r = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.T
    return (r + r.T) / 2


def expm(y):
    """Matrix exponential of a square matrix or a stack ``(..., d, d)``.

    Thin wrapper over ``scipy.linalg.expm`` (scaling and squaring with Pade
    approximants).
    """
    return scipy.linalg.expm(np.asarray(y))


def _rng(seed):
    return np.random.default_rng(seed)


def random_pd(dim, seed, condition_cap=1e3):
    """Seeded random symmetric positive definite matrix.

    Draws ``G G^T / dim + I/dim`` with ``G`` standard normal and resamples
    until the condition number is at most ``condition_cap``.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if condition_cap < 1:
        raise ValueError("condition_cap must be >= 1")
    rng = _rng(seed)
    while True:
        g = rng.standard_normal((dim, dim))
        m = (g @ g.T + np.eye(dim)) / dim
        m = (m + m.T) / 2
        w = np.linalg.eigvalsh(m)
        if w[0] > 0 and w[-1] / w[0] <= condition_cap:
            return m


def random_symmetric(dim, seed, radius=1.0):
    """Symmetric matrix with entries uniform in ``[-radius, radius]``."""
    a = _rng(seed).uniform(-radius, radius, size=(dim, dim))
    return (a + a.T) / 2


def random_hermitian(dim, seed, scale=1.0):
    """Seeded GUE-style Hermitian matrix with entry scale ``scale``."""
    rng = _rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (g + g.conj().T) / 2


def _j(n):
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = -np.eye(n)
    j[n:, :n] = np.eye(n)
    return j


def symplectic_from_generator(r):
    """Return ``exp(-J_n R)`` for a symmetric ``2n x 2n`` generator ``R``."""
    r = np.asarray(r, dtype=float)
    n = r.shape[-1] // 2
    return expm(-_j(n) @ r)


def random_symplectic(n, seed, radius=1.0):
    """Seeded random element of Sp(2n, R).

    ``S = exp(-J_n R)`` where ``R`` is symmetric with entries uniform in
    ``[-radius, radius]``; ``-J_n R`` lies in the symplectic Lie algebra.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if radius <= 0:
        raise ValueError("radius must be positive")
    return symplectic_from_generator(random_symmetric(2 * n, seed, radius))


def _format_entry(x):
    if isinstance(x, complex) or np.iscomplexobj(x):
        x = complex(x)
        return f"{x.real:.17g}{x.imag:+.17g}i"
    return f"{float(x):.17g}"


def format_matrix(m):
    """Render a matrix in the text format read by :func:`parse_matrix`.

    The first line holds the dimension, then one whitespace-separated row per
    line. Entries use 17 significant digits; complex entries are written as
    ``a+bi``.
    """
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    cplx = np.iscomplexobj(a)
    lines = [str(a.shape[0])]
    for row in a:
        lines.append(" ".join(_format_entry(complex(x) if cplx else float(x)) for x in row))
    return "\n".join(lines) + "\n"


def _parse_entry(token):
    if token.endswith(("i", "j")) and token not in ("inf", "-inf", "+inf"):
        return complex(token[:-1] + "j")
    return float(token)


def parse_matrix(text):
    """Parse the text matrix format; returns a float or complex array."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        dim = int(lines[0].strip())
    except ValueError:
        raise ValueError(f"first line must be the dimension, got {lines[0]!r}") from None
    if dim < 1:
        raise ValueError("dimension must be positive")
    rows = lines[1:]
    if len(rows) != dim:
        raise ValueError(f"expected {dim} rows, got {len(rows)}")
    entries = []
    for k, row in enumerate(rows):
        tokens = row.split()
        if len(tokens) != dim:
            raise ValueError(f"row {k + 1} has {len(tokens)} entries, expected {dim}")
        try:
            entries.append([_parse_entry(t) for t in tokens])
        except ValueError:
            raise ValueError(f"row {k + 1}: cannot parse {row!r}") from None
    if any(isinstance(x, complex) for row in entries for x in row):
        return np.array(entries, dtype=complex)
    return np.array(entries, dtype=float)
