"""
Index subsets, their partitions, Littlewood-Richardson coefficients and the
Horn inequality systems built from them.

An inequality ``(r, I, J, K)`` reads ``|x|_I + |y|_J <= |z|_K`` for
non-increasing ``x, y, z``; subsets are 1-based, as in ``[n] = {1..n}``.
"""

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache

__all__ = [
    "SCHEMA_VERSION",
    "DEFAULT_MAX_N",
    "HornInequality",
    "subsets",
    "partition_of_subset",
    "normalize_partition",
    "lr_count",
    "horn_inequalities",
    "inequalities_to_json",
    "inequalities_from_json",
]

SCHEMA_VERSION = 1
DEFAULT_MAX_N = 7


def subsets(n, r):
    """All ``r``-element subsets of ``[n]`` in lexicographic order."""
    if not 0 < r <= n:
        raise ValueError(f"need 0 < r <= n, got n={n}, r={r}")
    return list(itertools.combinations(range(1, n + 1), r))


def _check_subset(subset, n):
    subset = tuple(subset)
    if not subset:
        raise ValueError("subset must be non-empty")
    if subset[0] < 1 or subset[-1] > n or any(a >= b for a, b in zip(subset, subset[1:])):
        raise ValueError(f"{subset} is not a strictly increasing subset of [1..{n}]")
    return subset


def partition_of_subset(subset, n):
    """Partition ``lambda_a = n - r + a - i_a`` attached to ``subset`` of ``[n]``."""
    subset = _check_subset(subset, n)
    r = len(subset)
    parts = tuple(n - r + a - i for a, i in enumerate(subset, start=1))
    assert all(p >= q for p, q in zip(parts, parts[1:])) and parts[-1] >= 0
    return parts


def normalize_partition(parts):
    """Drop trailing zeros; validates weakly decreasing non-negative parts."""
    parts = tuple(int(p) for p in parts)
    if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"{parts} is not a partition")
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def _contained(inner, outer):
    return len(inner) <= len(outer) and all(a <= b for a, b in zip(inner, outer))


def lr_count(lam, mu, nu, cap=None):
    """Littlewood-Richardson coefficient ``c^nu_{lam, mu}``, saturated at ``cap``.

    Counts semistandard fillings of the skew shape ``nu / lam`` with content
    ``mu`` whose reverse reading word is a lattice word. ``cap=None`` means
    no saturation.

    >>> lr_count((2, 1), (2, 1), (3, 2, 1))
    2
    >>> lr_count((2, 1), (2, 1), (3, 2, 1), cap=1)
    1
    """
    if cap is not None and cap < 1:
        raise ValueError("cap must be >= 1")
    return _lr(normalize_partition(lam), normalize_partition(mu), normalize_partition(nu), cap)


@lru_cache(maxsize=None)
def _lr(lam, mu, nu, cap):
    if sum(lam) + sum(mu) != sum(nu) or not _contained(lam, nu) or not _contained(mu, nu):
        return 0
    if not mu:
        return 1
    rows = len(nu)
    inner = lam + (0,) * (rows - len(lam))
    # cells in reading order: rows top to bottom, each row right to left
    cells = [(i, j) for i in range(rows) for j in range(nu[i] - 1, inner[i] - 1, -1)]
    filling = {}
    counts = [0] * len(mu)
    limit = cap if cap is not None else float("inf")
    found = 0

    def place(k):
        nonlocal found
        if k == len(cells):
            found += 1
            return found >= limit
        i, j = cells[k]
        hi = filling.get((i, j + 1), len(mu))
        lo = filling[(i - 1, j)] + 1 if (i - 1, j) in filling else 1
        for val in range(lo, hi + 1):
            c = counts[val - 1]
            if c == mu[val - 1]:
                continue
            if val > 1 and c + 1 > counts[val - 2]:
                continue
            counts[val - 1] = c + 1
            filling[(i, j)] = val
            stop = place(k + 1)
            del filling[(i, j)]
            counts[val - 1] = c
            if stop:
                return True
        return False

    place(0)
    return found


@dataclass(frozen=True, order=True)
class HornInequality:
    """``|x|_I + |y|_J <= |z|_K`` for index subsets of equal size ``r``.

    Identity and ordering use ``(r, I, J, K)`` only; ``lr`` is the saturated
    Littlewood-Richardson coefficient carried as metadata.
    """

    r: int
    I: tuple
    J: tuple
    K: tuple
    lr: int = field(default=1, compare=False)

    @property
    def key(self):
        fmt = lambda s: ",".join(map(str, s))  # noqa: E731
        return f"I={fmt(self.I)};J={fmt(self.J)};K={fmt(self.K)}"

    def to_dict(self):
        return {"r": self.r, "I": list(self.I), "J": list(self.J), "K": list(self.K), "lr": self.lr}


def horn_inequalities(n, minimal=True, allow_large=False):
    """Horn inequality system for ``n x n`` spectra.

    For each ``1 <= r < n`` every triple of ``r``-subsets whose
    Littlewood-Richardson coefficient is non-zero (``minimal=False``) or
    exactly one (``minimal=True``) is emitted, ordered by ``(r, I, J, K)``.

    Triples are first filtered by the size condition
    ``|lambda(I)| + |lambda(J)| = |lambda(K)|``, which in terms of indices is
    ``sum(I) + sum(J) - sum(K) == r(n - r) + r(r + 1)/2``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > DEFAULT_MAX_N and not allow_large:
        raise ValueError(f"n={n} exceeds {DEFAULT_MAX_N}; pass allow_large=True to override")
    out = []
    for r in range(1, n):
        target = r * (n - r) + r * (r + 1) // 2
        subs = subsets(n, r)
        parts = {s: partition_of_subset(s, n) for s in subs}
        sums = {s: sum(s) for s in subs}
        for i_set in subs:
            for j_set in subs:
                need = sums[i_set] + sums[j_set] - target
                for k_set in subs:
                    if sums[k_set] != need:
                        continue
                    c = _lr(
                        normalize_partition(parts[i_set]),
                        normalize_partition(parts[j_set]),
                        normalize_partition(parts[k_set]),
                        2,
                    )
                    if c == 0 or (minimal and c != 1):
                        continue
                    out.append(HornInequality(r, i_set, j_set, k_set, c))
    return out


def inequalities_to_json(n, minimal, inequalities):
    """Serialize to the versioned inequality schema (a JSON string)."""
    head = json.dumps({"version": SCHEMA_VERSION, "n": n, "minimal": bool(minimal)})[:-1]
    rows = ",\n  ".join(json.dumps(h.to_dict()) for h in inequalities)
    body = f"[\n  {rows}\n]" if inequalities else "[]"
    return f'{head}, "inequalities": {body}}}\n'


def inequalities_from_json(text):
    """Parse the inequality schema; returns ``(n, minimal, inequalities)``."""
    doc = json.loads(text)
    if doc.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported inequality schema version {doc.get('version')!r}")
    n = int(doc["n"])
    ineqs = []
    for item in doc["inequalities"]:
        h = HornInequality(int(item["r"]), tuple(item["I"]), tuple(item["J"]), tuple(item["K"]),
                           int(item["lr"]))
        for s in (h.I, h.J, h.K):
            if len(s) != h.r:
                raise ValueError(f"subset {s} does not have cardinality {h.r}")
            _check_subset(s, n)
        ineqs.append(h)
    return n, bool(doc["minimal"]), ineqs
