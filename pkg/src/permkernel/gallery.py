"""Reference matrices with known classification behaviour.

These back the CLI reproduction suite and the regression tests. The two
parametric families assert their admissibility constraints on construction,
so an out-of-range instance fails loudly instead of silently changing the
expected verdicts.
"""

from __future__ import annotations

import numpy as np


def blockwise_inverse_m() -> np.ndarray:
    """Entrywise-positive 4x4 that is not an inverse M-matrix even though
    every 3x3 principal submatrix is one (and none of them is
    symmetrizable). Its inverse has a positive entry at (2, 3)."""
    return np.array(
        [
            [1.00, 0.10, 0.40, 0.30],
            [0.40, 1.00, 0.40, 0.65],
            [0.10, 0.20, 1.00, 0.60],
            [0.15, 0.30, 0.60, 1.00],
        ]
    )


def tripletwise_divisible_covariance() -> np.ndarray:
    """Symmetric positive-definite 4x4 covariance whose squared-Gaussian
    vector has every 3-variable marginal infinitely divisible while the full
    vector is not: the inverse has a positive entry at (2, 4)."""
    return np.array(
        [
            [1.00, 0.50, 0.35, 0.40],
            [0.50, 1.00, 0.50, 0.26],
            [0.35, 0.50, 1.00, 0.50],
            [0.40, 0.26, 0.50, 1.00],
        ]
    )


def two_symmetrizable_triples(
    a: float = 2.2,
    b: float = 2.0,
    e: float = 2.5,
    diag: tuple = (3.0, 3.0, 3.0),
    corner: float = 1.0,
) -> np.ndarray:
    """Family member with exactly two symmetrizable 3x3 principal blocks,
    {1,2,3} and {2,3,4}; an inverse M-matrix, yet not symmetrizable.

    Admissibility: each diag entry > e; a, b, e > corner; e > a and e > b;
    a != b. The defaults satisfy all of these.
    """
    d1, d2, d3 = (float(x) for x in diag)
    if a == b:
        raise ValueError("needs a != b, otherwise all four triples symmetrize")
    if not (e > a and e > b):
        raise ValueError("needs e > a and e > b")
    if min(a, b, e) <= corner:
        raise ValueError("needs a, b, e > corner")
    if min(d1, d2, d3) <= e:
        raise ValueError("needs every diagonal entry > e")
    return np.array(
        [
            [d1, a, a, corner],
            [b, d2, e, corner],
            [b, e, d3, corner],
            [corner, corner, corner, corner],
        ]
    )


def one_symmetrizable_triple(
    a: float = 2.0,
    b: float = 3.0,
    e: float = 4.0,
    diag: tuple = (7.0, 7.0, 7.0),
    corner: float = 1.0,
) -> np.ndarray:
    """Family member whose unique symmetrizable 3x3 principal block is
    {1,2,3}; with the shipped defaults it is also an inverse M-matrix, so it
    is the kernel of an infinitely divisible vector.

    Admissibility: a, b, e positive and pairwise distinct; each diag entry
    > corner and > max(a, b, e); min(a, b, e) > corner. Not every admissible
    choice is inverse-M (diag=(5,5,5) with the default a, b, e is not), so
    the defaults were picked to be.
    """
    d1, d2, d3 = (float(x) for x in diag)
    if len({a, b, e}) != 3 or min(a, b, e) <= 0.0:
        raise ValueError("needs a, b, e positive and pairwise distinct")
    if min(a, b, e) <= corner:
        raise ValueError("needs min(a, b, e) > corner")
    if min(d1, d2, d3) <= max(a, b, e) or min(d1, d2, d3) <= corner:
        raise ValueError("needs every diagonal entry > max(a, b, e) and > corner")
    return np.array(
        [
            [d1, e, a, corner],
            [b, d2, a, corner],
            [b, e, d3, corner],
            [corner, corner, corner, corner],
        ]
    )


def laplace_demo_covariance() -> np.ndarray:
    """Well-conditioned symmetric positive-definite 3x3 used by the Monte
    Carlo demonstration lines."""
    return np.array(
        [
            [1.00, 0.50, 0.20],
            [0.50, 1.00, 0.30],
            [0.20, 0.30, 1.00],
        ]
    )
