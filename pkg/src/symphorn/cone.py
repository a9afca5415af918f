"""
Membership tests for the cones cut out by Horn inequalities.

All checkers share one report format. ``min_slack`` is the smallest
``rhs - lhs`` over the checked constraints, in the units of the spectra;
``tol`` is absolute, so callers rescale it together with the data.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import Spectrum

__all__ = [
    "INSIDE",
    "BOUNDARY",
    "OUTSIDE",
    "INVALID",
    "TRACE",
    "MembershipReport",
    "partial_sum",
    "dual_involution",
    "check_horn_sp",
    "check_horn_classical",
    "check_friedland",
    "check_delta_sp",
]

INSIDE = "inside"
BOUNDARY = "boundary"
OUTSIDE = "outside"
INVALID = "invalid_input"
TRACE = "trace"


@dataclass
class MembershipReport:
    verdict: str
    min_slack: float
    violated: list = field(default_factory=list)
    checked_count: int = 0
    reason: str = ""

    def to_dict(self):
        slack = self.min_slack if math.isfinite(self.min_slack) else None
        doc = {
            "verdict": self.verdict,
            "min_slack": slack,
            "violated": list(self.violated),
            "checked": self.checked_count,
        }
        if self.reason:
            doc["reason"] = self.reason
        return doc


def partial_sum(x, subset):
    """``sum(x_i for i in subset)`` with 1-based indices."""
    return float(sum(x[i - 1] for i in subset))


def dual_involution(mu):
    """``(mu_1, ..., mu_n) -> (-mu_n, ..., -mu_1)``."""
    return Spectrum(-v for v in reversed(tuple(mu)))


def _validate(x, y, z, tol, positive, nonnegative):
    x, y, z = (np.asarray(v, dtype=float) for v in (x, y, z))
    if not (x.ndim == y.ndim == z.ndim == 1) or not (len(x) == len(y) == len(z)):
        raise ValueError(f"dimension mismatch: {x.shape}, {y.shape}, {z.shape}")
    if len(x) == 0:
        raise ValueError("spectra must be non-empty")
    reason = ""
    for name, v in (("x", x), ("y", y), ("z", z)):
        if not np.all(np.isfinite(v)):
            reason = f"{name} has non-finite entries"
        elif np.any(np.diff(v) > tol):
            reason = f"{name} is not non-increasing"
        elif positive and v[-1] <= tol:
            reason = f"{name} is not strictly positive"
        elif nonnegative and v[-1] < -tol:
            reason = f"{name} has negative entries"
        if reason:
            break
    return x, y, z, reason


def _report(slacks, tol, extra_violations=()):
    """Fold ``(key, slack)`` pairs into a report."""
    violated = list(extra_violations) + [key for key, s in slacks if s < -tol]
    min_slack = min((s for _, s in slacks), default=math.inf)
    if violated:
        verdict = OUTSIDE
    elif min_slack <= tol:
        verdict = BOUNDARY
    else:
        verdict = INSIDE
    return MembershipReport(verdict, min_slack, violated, len(slacks) + len(extra_violations))


def _horn_slacks(x, y, z, ineqs):
    out = []
    for h in ineqs:
        lhs = x[[i - 1 for i in h.I]].sum() + y[[j - 1 for j in h.J]].sum()
        rhs = z[[k - 1 for k in h.K]].sum()
        out.append((h.key, float(rhs - lhs)))
    return out


def _check_dims(ineqs, n):
    for h in ineqs:
        if max(h.I[-1], h.J[-1], h.K[-1]) > n:
            raise ValueError(f"inequality {h.key} does not fit spectra of length {n}")


def _inequality_cone(x, y, z, ineqs, tol, positive, nonnegative):
    x, y, z, reason = _validate(x, y, z, tol, positive, nonnegative)
    _check_dims(ineqs, len(x))
    if reason:
        return MembershipReport(INVALID, math.nan, [], 0, reason)
    slacks = [(TRACE, float(z.sum() - x.sum() - y.sum()))]
    slacks += _horn_slacks(x, y, z, ineqs)
    return _report(slacks, tol)


def check_horn_sp(x, y, z, ineqs, tol=1e-9):
    """Membership of ``(x, y, z)`` in the symplectic Horn cone.

    ``ineqs`` is the minimal inequality list for ``n = len(x)``. Entries must
    be strictly positive (``> tol``) and non-increasing, otherwise the
    verdict is ``invalid_input``. Constraints: ``|x| + |y| <= |z|`` and every
    ``|x|_I + |y|_J <= |z|_K``.
    """
    return _inequality_cone(x, y, z, ineqs, tol, positive=True, nonnegative=False)


def check_friedland(x, y, z, ineqs, tol=1e-9, require_nonnegative=False):
    """Spectra realizable as ``(A, B, C)`` Hermitian with ``C - A - B >= 0``.

    Same constraint system as :func:`check_horn_sp` on arbitrary real
    non-increasing tuples. ``require_nonnegative=True`` additionally rejects
    negative entries as ``invalid_input``.
    """
    return _inequality_cone(x, y, z, ineqs, tol, positive=False, nonnegative=require_nonnegative)


def check_horn_classical(x, y, z, ineqs, tol=1e-9):
    """Membership in the Hermitian Horn cone (``C = A + B``).

    The trace condition is the equality ``|x| + |y| = |z|``. It fixes the
    affine hull of the cone, so it marks the triple ``outside`` when broken
    by more than ``tol`` but does not enter ``min_slack``; boundary and
    interior are then relative to that hull. With no inequalities (``n = 1``)
    ``min_slack`` is infinite and a trace-consistent triple is ``inside``.
    """
    x, y, z, reason = _validate(x, y, z, tol, positive=False, nonnegative=False)
    _check_dims(ineqs, len(x))
    if reason:
        return MembershipReport(INVALID, math.nan, [], 0, reason)
    defect = float(z.sum() - x.sum() - y.sum())
    slacks = _horn_slacks(x, y, z, ineqs)
    report = _report(slacks, tol, [TRACE] if abs(defect) > tol else [])
    report.checked_count = len(slacks) + 1
    if abs(defect) > tol:
        report.min_slack = min(report.min_slack, -abs(defect))
    return report


def check_delta_sp(a, b, z, ineqs, tol=1e-9):
    """Is ``z`` a symplectic spectrum of ``q1 + q2`` with ``lambda(q1) = a``, ``lambda(q2) = b``?"""
    return check_horn_sp(a, b, z, ineqs, tol)
