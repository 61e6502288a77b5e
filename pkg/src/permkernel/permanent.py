"""Cycle-weighted permanents and the positivity scan of the Vere-Jones
existence criterion.

per_b(A) = sum over permutations tau of b^(number of cycles of tau) times
prod_i A[i, tau(i)]. Specialisations: per_b(A, 1) is the permanent and
per_b(A, -1) = (-1)^m det(A). A kernel candidate K satisfies the criterion
for exponent b when all real eigenvalues of K are nonnegative and, for every
gamma > 0, every repeated principal submatrix of (I + gamma*K)^{-1} K has a
nonnegative b-permanent. Only a finite portion of that quantifier space can
be searched, so scan verdicts are evidence, not proofs, unless a positivity
certificate is found.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionTooLarge, IndexOutOfRange, SingularMatrix
from .matcore import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    find_positivity_signature,
    resolvent,
    scale_of,
)

MAX_PERMANENT_DIM = 12
MAX_POSITIVITY_ORDER = 8


def cycle_polynomial(a) -> np.ndarray:
    """Coefficients of per_b(A) as a polynomial in b.

    Entry c of the returned length-(m+1) array is the sum, over all
    permutations with exactly c cycles, of the corresponding entry products.
    Permutations are enumerated depth-first by building one cycle at a time
    from the smallest free index, carrying the running product; branches
    whose product is exactly zero are pruned.
    """
    a = as_matrix(a)
    m = a.shape[0]
    if m > MAX_PERMANENT_DIM:
        raise DimensionTooLarge(
            f"permutation enumeration is capped at m = {MAX_PERMANENT_DIM}"
        )
    rows = a.tolist()
    coeffs = [0.0] * (m + 1)
    free = [True] * m

    def open_cycle(done: int, ncycles: int, prod: float) -> None:
        if done == m:
            coeffs[ncycles] += prod
            return
        start = free.index(True)
        free[start] = False
        extend(start, start, prod, done + 1, ncycles)
        free[start] = True

    def extend(start: int, cur: int, prod: float, done: int, ncycles: int) -> None:
        row = rows[cur]
        closing = prod * row[start]
        if closing != 0.0:
            open_cycle(done, ncycles + 1, closing)
        for nxt in range(start + 1, m):
            if free[nxt]:
                w = prod * row[nxt]
                if w != 0.0:
                    free[nxt] = False
                    extend(start, nxt, w, done + 1, ncycles)
                    free[nxt] = True

    open_cycle(0, 0, 1.0)
    return np.array(coeffs)


def per_b(a, b: float) -> float:
    """Permutation sum sum_tau b^(cycles of tau) * prod_i A[i, tau(i)]."""
    coeffs = cycle_polynomial(a)
    total = 0.0
    for c in coeffs[::-1]:
        total = total * b + c
    return float(total)


def repeated_matrix(a, selection) -> np.ndarray:
    """m x m matrix A[k_i, k_j] for a 1-based index selection with repeats."""
    a = as_matrix(a)
    n = a.shape[0]
    sel = [int(k) for k in selection]
    if not sel:
        raise IndexOutOfRange("selection must be nonempty")
    if any(k < 1 or k > n for k in sel):
        raise IndexOutOfRange(f"selection indices must lie in 1..{n}, got {sel}")
    z = [k - 1 for k in sel]
    return a[np.ix_(z, z)]


@dataclass(frozen=True)
class PositivityScan:
    """Outcome of a bounded b-positive-definiteness search.

    passed means no violation was found up to max_order, which is necessary
    evidence only; a fail carries the offending selection and value.
    """

    passed: bool
    max_order: int
    witness: tuple | None = None
    value: float | None = None


def is_b_positive_definite(
    a, b: float, max_order: int = 5, tol: Tolerance = DEFAULT_TOL
) -> PositivityScan:
    """Search all index multisets of size <= max_order for per_b < 0.

    One nondecreasing representative is scanned per multiset, which is
    enough because per_b is invariant under simultaneous row/column
    relabeling. A value below -zero_tol * scale^m counts as a violation.
    """
    a = as_matrix(a)
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    if max_order > MAX_POSITIVITY_ORDER:
        raise DimensionTooLarge(
            f"multiset scan is capped at order {MAX_POSITIVITY_ORDER}"
        )
    n = a.shape[0]
    amax = scale_of(a)
    for m in range(1, max_order + 1):
        threshold = tol.zero_tol * amax**m
        for sel in itertools.combinations_with_replacement(range(1, n + 1), m):
            value = per_b(repeated_matrix(a, sel), b)
            if value < -threshold:
                return PositivityScan(False, max_order, witness=sel, value=value)
    return PositivityScan(True, max_order)


def default_gamma_grid(count: int = 16) -> list[float]:
    """Log-spaced gamma grid over [1e-3, 1e3]."""
    return [float(g) for g in np.logspace(-3.0, 3.0, count)]


@dataclass(frozen=True)
class GammaScan:
    """Positivity scan of the tilted kernel at one gamma value."""

    gamma: float
    status: str  # "pass" | "fail" | "skipped"
    signature_certificate: bool = False
    witness: tuple | None = None
    value: float | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "status": self.status,
            "signature_certificate": self.signature_certificate,
            "witness": list(self.witness) if self.witness else None,
            "value": self.value,
            "note": self.note,
        }


@dataclass(frozen=True)
class VJReport:
    """Verdicts for both existence conditions.

    overall is "fail" on any violation, "pass" when every tilted kernel
    admitted a positivity signature (which certifies nonnegative
    b-permanents at every order, but only at the searched gammas), and
    "inconclusive" when the bounded scan simply found nothing. Neither
    non-fail verdict is a proof: the criterion quantifies over all orders
    and all gamma > 0.
    """

    b: float
    max_order: int
    condition_i: bool
    real_eigenvalues: tuple
    gamma_scans: tuple = field(default_factory=tuple)
    overall: str = "inconclusive"

    def to_dict(self) -> dict:
        return {
            "b": self.b,
            "max_order": self.max_order,
            "condition_i": self.condition_i,
            "real_eigenvalues": list(self.real_eigenvalues),
            "condition_ii": [scan.to_dict() for scan in self.gamma_scans],
            "overall": self.overall,
        }


def vere_jones_check(
    g,
    b: float,
    gamma_grid=None,
    max_order: int = 5,
    tol: Tolerance = DEFAULT_TOL,
) -> VJReport:
    """Run both existence conditions on a kernel candidate.

    Condition (I): all real eigenvalues nonnegative (complex pairs are
    ignored). Condition (II): bounded multiset scan of the tilted kernel at
    every grid gamma; gammas at resolvent poles are skipped with a note.
    """
    g = as_matrix(g)
    if b <= 0.0:
        raise ValueError("exponent b must be strictly positive")
    grid = default_gamma_grid() if gamma_grid is None else [float(x) for x in gamma_grid]
    if not grid:
        raise ValueError("gamma grid must be nonempty")
    if any(x <= 0.0 for x in grid):
        raise ValueError("gamma values must be strictly positive")

    s = scale_of(g)
    eigenvalues = np.linalg.eigvals(g)
    real = sorted(
        float(ev.real) for ev in eigenvalues if abs(ev.imag) <= tol.zero_tol * s
    )
    condition_i = all(ev >= -tol.zero_tol * s for ev in real)

    scans = []
    for gamma in grid:
        try:
            tilted = resolvent(g, gamma, tol)
        except SingularMatrix:
            scans.append(GammaScan(gamma, "skipped", note="resolvent pole"))
            continue
        result = is_b_positive_definite(tilted, b, max_order, tol)
        certificate = find_positivity_signature(tilted, tol) is not None
        if result.passed:
            scans.append(GammaScan(gamma, "pass", signature_certificate=certificate))
        else:
            scans.append(
                GammaScan(
                    gamma,
                    "fail",
                    signature_certificate=False,
                    witness=result.witness,
                    value=result.value,
                )
            )

    if not condition_i or any(scan.status == "fail" for scan in scans):
        overall = "fail"
    elif scans and all(
        scan.status == "pass" and scan.signature_certificate for scan in scans
    ):
        overall = "pass"
    else:
        overall = "inconclusive"
    return VJReport(
        b=b,
        max_order=max_order,
        condition_i=condition_i,
        real_eigenvalues=tuple(real),
        gamma_scans=tuple(scans),
        overall=overall,
    )
