"""Gaussian elimination over a Field."""
from __future__ import annotations

import numpy as np

from .field import Field


def rref(F: Field, A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = np.array(A, dtype=np.int64, copy=True)
    if M.ndim != 2:
        M = np.atleast_2d(M)
    rows, cols = M.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        nz = np.nonzero(M[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            M[[row, piv]] = M[[piv, row]]
        M[row] = F.mul_arr(M[row], F.inv(int(M[row, col])))
        for other in range(rows):
            if other != row and M[other, col]:
                factor = F.neg(int(M[other, col]))
                M[other] = F.add_arr(M[other], F.mul_arr(M[row], factor))
        pivots.append(col)
        row += 1
    return M, pivots


def rank(F: Field, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: Field, A, n: int | None = None) -> np.ndarray:
    """Basis (as rows) of {x : A x^T = 0}."""
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        if n is None:
            raise ValueError("need n for an empty matrix")
        return np.eye(n, dtype=np.int64)
    n = A.shape[1]
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r_idx, pc in enumerate(pivots):
            basis[i, pc] = F.neg(int(R[r_idx, f]))
    return basis


def row_basis(F: Field, A) -> np.ndarray:
    """Nonzero rows of the RREF: a basis of the row space."""
    R, pivots = rref(F, A)
    return R[: len(pivots)]
