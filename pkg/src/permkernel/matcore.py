"""Dense real matrix core: determinants, inverses, resolvents, diagonal and
signature scalings, and equality of all principal minors (effective
equivalence). Everything is small and dense; enumeration-based operations
are capped at n = 16."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    IndexOutOfRange,
    SingularMatrix,
)

MAX_ENUMERATION_DIM = 16


@dataclass(frozen=True)
class Tolerance:
    """Numeric thresholds.

    zero_tol decides when a value counts as zero (always scaled by the
    max-norm of the matrix at hand); rel_tol governs relative equality of
    two quantities.
    """

    zero_tol: float = 1e-9
    rel_tol: float = 1e-9

    def __post_init__(self):
        if self.zero_tol <= 0.0 or self.rel_tol <= 0.0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


def as_matrix(entries) -> np.ndarray:
    """Coerce to a finite square float matrix (n >= 1)."""
    a = np.array(entries, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def as_signature(signs, n: int | None = None) -> np.ndarray:
    """Coerce to a vector with entries exactly -1 or +1."""
    s = np.array(signs, dtype=float).ravel()
    if s.size == 0 or not np.all(np.isin(s, (-1.0, 1.0))):
        raise ValueError("signature entries must be -1 or +1")
    if n is not None and s.size != n:
        raise DimensionMismatch(f"signature has length {s.size}, expected {n}")
    return s


def as_scaling(diag, n: int | None = None) -> np.ndarray:
    """Coerce to a strictly positive diagonal-scaling vector."""
    d = np.array(diag, dtype=float).ravel()
    if d.size == 0 or not np.all(np.isfinite(d)) or np.any(d <= 0.0):
        raise ValueError("diagonal scaling entries must be strictly positive")
    if n is not None and d.size != n:
        raise DimensionMismatch(f"scaling has length {d.size}, expected {n}")
    return d


def scale_of(a: np.ndarray) -> float:
    """Max-norm of the matrix with a floor of 1, used to scale thresholds."""
    return max(1.0, float(np.abs(a).max()))


def det(a: np.ndarray) -> float:
    """np.linalg.det without the divide-by-zero warning on singular input."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return float(np.linalg.det(a))


def close(a: float, b: float, rel_tol: float, floor: float = 0.0) -> bool:
    """Relative equality with an optional absolute floor."""
    return abs(a - b) <= max(rel_tol * max(abs(a), abs(b)), floor)


def determinant(a) -> float:
    """det(A) via pivoted LU elimination."""
    return det(as_matrix(a))


def inverse(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """A^{-1}; raises SingularMatrix when |det A| falls below tolerance."""
    a = as_matrix(a)
    if abs(det(a)) <= tol.zero_tol * scale_of(a):
        raise SingularMatrix("matrix is numerically singular")
    return np.linalg.inv(a)


def resolvent(g, sigma: float, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """G_sigma = (I + sigma*G)^{-1} G, the exponentially tilted kernel.

    Raises SingularMatrix when I + sigma*G is numerically singular, which
    signals that -1/sigma is an eigenvalue of G.
    """
    g = as_matrix(g)
    if sigma < 0.0:
        raise ValueError("sigma must be nonnegative")
    m = np.eye(g.shape[0]) + sigma * g
    if abs(det(m)) <= tol.zero_tol * scale_of(m):
        raise SingularMatrix(f"I + {sigma}*G is numerically singular")
    return np.linalg.solve(m, g)


def principal_submatrix(a, idx) -> np.ndarray:
    """Rows and columns `idx` (1-based, strictly increasing) of `a`."""
    a = as_matrix(a)
    n = a.shape[0]
    ids = [int(i) for i in idx]
    if not ids:
        raise IndexOutOfRange("index set must be nonempty")
    if any(i < 1 or i > n for i in ids):
        raise IndexOutOfRange(f"indices must lie in 1..{n}, got {ids}")
    if any(j <= i for i, j in zip(ids, ids[1:])):
        raise IndexOutOfRange(f"indices must be strictly increasing, got {ids}")
    z = [i - 1 for i in ids]
    return a[np.ix_(z, z)]


def diagonal_conjugate(a, diag) -> np.ndarray:
    """D A D^{-1} for a strictly positive diagonal D: entries d_i A_ij / d_j."""
    a = as_matrix(a)
    d = as_scaling(diag, a.shape[0])
    return a * np.outer(d, 1.0 / d)


def signature_conjugate(a, signs) -> np.ndarray:
    """S A S for a +-1 diagonal S: entries s_i A_ij s_j. An involution."""
    a = as_matrix(a)
    s = as_signature(signs, a.shape[0])
    return a * np.outer(s, s)


def iter_index_subsets(n: int, max_size: int | None = None):
    """Yield every nonempty 1-based index subset of {1..n}, smallest first."""
    top = n if max_size is None else min(max_size, n)
    for m in range(1, top + 1):
        yield from itertools.combinations(range(1, n + 1), m)


def principal_minors(a, tol: Tolerance = DEFAULT_TOL) -> dict:
    """All 2^n - 1 principal minors keyed by 1-based index subset."""
    a = as_matrix(a)
    n = a.shape[0]
    if n > MAX_ENUMERATION_DIM:
        raise DimensionTooLarge(
            f"principal-minor enumeration is capped at n = {MAX_ENUMERATION_DIM}"
        )
    out = {}
    for idx in iter_index_subsets(n):
        z = [i - 1 for i in idx]
        out[idx] = float(det(a[np.ix_(z, z)]))
    return out


def effectively_equivalent(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff every principal minor of A equals the matching minor of B.

    Equality of all principal minors is the multilinear restatement of
    |I + xA| = |I + xB| for every diagonal x, so this decides whether A and
    B can serve as kernels of the same vector. Exponential in n; intended
    for n <= 12 and refused above n = 16.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    n = a.shape[0]
    if n > MAX_ENUMERATION_DIM:
        raise DimensionTooLarge(
            f"principal-minor enumeration is capped at n = {MAX_ENUMERATION_DIM}"
        )
    s = max(scale_of(a), scale_of(b))
    for idx in iter_index_subsets(n):
        z = [i - 1 for i in idx]
        ma = float(det(a[np.ix_(z, z)]))
        mb = float(det(b[np.ix_(z, z)]))
        # floor absorbs round-off on minors that are tiny relative to the
        # natural determinant scale of the subset size
        if not close(ma, mb, tol.rel_tol, floor=tol.zero_tol * s ** len(idx)):
            return False
    return True


def find_positivity_signature(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray | None:
    """Signature S with S_i A_ij S_j > 0 for all i, j, or None.

    Signs are propagated from index 1 (S_1 = +1, S_j = sign of A_1j) and
    then verified against every entry, so a signature is returned exactly
    when one exists. Requires a strictly positive diagonal and no zero
    off-diagonal entry; otherwise no full positive pattern is reachable.
    """
    a = as_matrix(a)
    n = a.shape[0]
    thr = tol.zero_tol * scale_of(a)
    if np.any(np.diag(a) <= thr):
        return None
    off = ~np.eye(n, dtype=bool)
    if np.any(np.abs(a[off]) <= thr):
        return None
    s = np.ones(n)
    s[1:] = np.sign(a[0, 1:])
    if np.all(signature_conjugate(a, s) > thr):
        return s
    return None
