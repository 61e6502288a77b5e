"""Structural classification of kernel candidates: M-matrix tests,
symmetrizability, sign-pattern normalisation, and the unique-symmetrizable-
triple test that decides infinite divisibility for dimensions above three."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import HasZeroEntry
from .matcore import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    close,
    det,
    find_positivity_signature,
    principal_submatrix,
    scale_of,
    signature_conjugate,
)
from .permanent import VJReport, vere_jones_check

__all__ = [
    "KernelReport",
    "classify_kernel",
    "count_symmetrizable_3subsets",
    "find_positivity_signature",
    "is_diag_equiv_inverse_m",
    "is_diag_equiv_symmetric",
    "is_inverse_m_matrix",
    "is_m_matrix",
    "is_symmetrizable_3x3",
    "willoughby_inequality",
]

THEOREM_ID = "hypotheses-met-ID"
THEOREM_NOT_KERNEL = "hypotheses-met-not-kernel"
THEOREM_NA = "not-applicable"


def is_m_matrix(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Nonpositive off-diagonal entries and an entrywise-nonnegative inverse.

    Singular input returns False.
    """
    a = as_matrix(a)
    n = a.shape[0]
    s = scale_of(a)
    off = a - np.diag(np.diag(a))
    if off.max() > tol.zero_tol * s:
        return False
    if abs(det(a)) <= tol.zero_tol * s:
        return False
    inv = np.linalg.inv(a)
    return bool(inv.min() >= -tol.zero_tol * scale_of(inv))


def is_inverse_m_matrix(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff A is invertible and A^{-1} is an M-matrix."""
    a = as_matrix(a)
    if abs(det(a)) <= tol.zero_tol * scale_of(a):
        return False
    return is_m_matrix(np.linalg.inv(a), tol)


def _zero_threshold(a: np.ndarray, tol: Tolerance) -> float:
    return tol.zero_tol * scale_of(a)


def is_diag_equiv_symmetric(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether D A D^{-1} is symmetric for some positive diagonal D.

    For matrices without zero entries this holds iff opposite entries have
    matching signs (A_ij A_ji > 0) and every 3-cycle satisfies
    A_ij A_jk A_ki = A_ji A_kj A_ik; triples generate all longer cycles.
    Zero entries are out of scope here and raise HasZeroEntry.
    """
    a = as_matrix(a)
    n = a.shape[0]
    thr = _zero_threshold(a, tol)
    if np.any(np.abs(a) <= thr):
        raise HasZeroEntry("matrix has a zero entry at tolerance")
    for i in range(n):
        for j in range(i + 1, n):
            if a[i, j] * a[j, i] < 0.0:
                return False
    for i, j, k in itertools.combinations(range(n), 3):
        lhs = a[i, j] * a[j, k] * a[k, i]
        rhs = a[j, i] * a[k, j] * a[i, k]
        if not close(lhs, rhs, tol.rel_tol):
            return False
    return True


def is_symmetrizable_3x3(k, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Symmetrizability test for a 3x3 kernel candidate.

    A zero off-diagonal entry makes the matrix symmetrizable outright (it is
    then effectively equivalent to a symmetric matrix with the matching zero
    pattern). Otherwise a signature conjugation must reach the entrywise
    absolute-value matrix and the two 3-cycle magnitudes must agree:
    |K12 K23 K31| = |K21 K13 K32|.
    """
    k = as_matrix(k)
    if k.shape[0] != 3:
        raise ValueError("is_symmetrizable_3x3 expects a 3x3 matrix")
    thr = _zero_threshold(k, tol)
    off = [(i, j) for i in range(3) for j in range(3) if i != j]
    if any(abs(k[i, j]) <= thr for i, j in off):
        return True
    # sigma K sigma = |K| needs a nonnegative diagonal and positive cycles
    if np.any(np.diag(k) < -thr):
        return False
    if any(k[i, j] * k[j, i] < 0.0 for i, j in off):
        return False
    if k[0, 1] * k[1, 2] * k[2, 0] < 0.0:
        return False
    lhs = abs(k[0, 1] * k[1, 2] * k[2, 0])
    rhs = abs(k[1, 0] * k[0, 2] * k[2, 1])
    return close(lhs, rhs, tol.rel_tol)


def count_symmetrizable_3subsets(g, tol: Tolerance = DEFAULT_TOL) -> list[tuple]:
    """All 1-based 3-subsets whose principal submatrix is symmetrizable."""
    g = as_matrix(g)
    n = g.shape[0]
    if n < 3:
        raise ValueError("needs a matrix of dimension at least 3")
    found = []
    for triple in itertools.combinations(range(1, n + 1), 3):
        if is_symmetrizable_3x3(principal_submatrix(g, triple), tol):
            found.append(triple)
    return found


def is_diag_equiv_inverse_m(g, tol: Tolerance = DEFAULT_TOL) -> np.ndarray | None:
    """Signature S such that S G S is an inverse M-matrix, or None.

    Searching signatures suffices: positive diagonal rescaling never changes
    the inverse-M property, so diagonal equivalence to an inverse M-matrix
    holds iff it holds after sign normalisation.
    """
    g = as_matrix(g)
    s = find_positivity_signature(g, tol)
    if s is None:
        return None
    if is_inverse_m_matrix(signature_conjugate(g, s), tol):
        return s
    return None


def willoughby_inequality(g, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Entrywise pivot bound G(i,j) G(k,k) >= G(i,k) G(k,j) for all i, j, k.

    Holds for every entrywise-positive 3x3 inverse M-matrix; used to rule
    out zero entries appearing in conditioned kernels.
    """
    g = as_matrix(g)
    if g.shape[0] != 3:
        raise ValueError("willoughby_inequality expects a 3x3 matrix")
    if np.any(g <= 0.0):
        raise ValueError("willoughby_inequality expects positive entries")
    slack = tol.zero_tol * scale_of(g) ** 2
    for k in range(3):
        for i in range(3):
            for j in range(3):
                if g[i, j] * g[k, k] < g[i, k] * g[k, j] - slack:
                    return False
    return True


@dataclass(frozen=True)
class KernelReport:
    """Full structural verdict for one kernel candidate."""

    n: int
    zero_pattern: tuple
    signature: tuple | None
    sym3_subsets: tuple
    m_class: str
    vere_jones: VJReport
    theorem1: str
    witnesses: dict

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "zero_pattern": [list(ij) for ij in self.zero_pattern],
            "signature": list(self.signature) if self.signature else None,
            "sym3_subsets": [list(t) for t in self.sym3_subsets],
            "m_class": self.m_class,
            "vere_jones": self.vere_jones.to_dict(),
            "theorem1": self.theorem1,
            "witnesses": self.witnesses,
        }


def _m_class(g: np.ndarray, signature, tol: Tolerance) -> str:
    if is_m_matrix(g, tol):
        return "M-matrix"
    if is_inverse_m_matrix(g, tol):
        return "inverse-M"
    if signature is not None:
        return "diag-equiv-inverse-M"
    return "none"


def classify_kernel(
    g,
    b: float = 0.5,
    gamma_grid=None,
    max_order: int = 5,
    tol: Tolerance = DEFAULT_TOL,
) -> KernelReport:
    """Build the combined report for a kernel candidate.

    For n > 3 with at most one symmetrizable 3x3 principal submatrix, the
    matrix either normalises to an inverse M-matrix (then any permanental
    vector with this kernel is infinitely divisible: "hypotheses-met-ID") or
    it cannot be the kernel of a permanental vector at all
    ("hypotheses-met-not-kernel"). The numeric positivity scan is reported
    separately in vere_jones and never folded into that logical verdict.
    """
    g = as_matrix(g)
    n = g.shape[0]
    thr = _zero_threshold(g, tol)
    zero_pattern = tuple(
        (i + 1, j + 1)
        for i in range(n)
        for j in range(n)
        if abs(g[i, j]) <= thr
    )
    id_signature = is_diag_equiv_inverse_m(g, tol)
    signature = find_positivity_signature(g, tol)
    sym3 = tuple(count_symmetrizable_3subsets(g, tol)) if n >= 3 else ()
    vj = vere_jones_check(g, b, gamma_grid=gamma_grid, max_order=max_order, tol=tol)

    witnesses: dict = {"sym3_count": len(sym3)}
    if n > 3 and len(sym3) <= 1:
        theorem1 = THEOREM_ID if id_signature is not None else THEOREM_NOT_KERNEL
        if id_signature is not None:
            witnesses["inverse_m_signature"] = [int(x) for x in id_signature]
        else:
            witnesses["no_inverse_m_normalisation"] = (
                "no positivity signature exists"
                if signature is None
                else "sign-normalised matrix is not an inverse M-matrix"
            )
    else:
        theorem1 = THEOREM_NA

    return KernelReport(
        n=n,
        zero_pattern=zero_pattern,
        signature=tuple(int(x) for x in signature) if signature is not None else None,
        sym3_subsets=sym3,
        m_class=_m_class(g, id_signature, tol),
        vere_jones=vj,
        theorem1=theorem1,
        witnesses=witnesses,
    )
