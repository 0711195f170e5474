"""Linear algebra over the prime field F_p on numpy integer arrays.

Matrices are plain ``np.ndarray`` objects of dtype int64 with entries in
``[0, p)``.  Vectors are 1-D arrays.  Enumerations are deterministic.  ``enumerate_span``
refuses to start when the whole span exceeds the cap; ``scan_span`` charges
the cap as it goes, so an early exit only pays for what it scanned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from hallforge.errors import ensure_within_cap

FqMatrix = np.ndarray


def is_prime(value: int) -> bool:
    if value < 2:
        return False
    i = 2
    while i * i <= value:
        if value % i == 0:
            return False
        i += 1
    return True


def as_matrix(entries, p: int, shape: Optional[Tuple[int, int]] = None) -> FqMatrix:
    m = np.array(entries, dtype=np.int64)
    if shape is not None:
        m = m.reshape(shape)
    if m.ndim != 2:
        raise ValueError(f"Expected a 2-D matrix, got shape {m.shape}")
    return m % p


def zeros(rows: int, cols: int) -> FqMatrix:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> FqMatrix:
    return np.eye(n, dtype=np.int64)


def matmul(a: FqMatrix, b: FqMatrix, p: int) -> FqMatrix:
    return (a @ b) % p


def kron(a: FqMatrix, b: FqMatrix) -> FqMatrix:
    """Kronecker product that also behaves on zero-sized factors."""
    out = np.einsum("ij,kl->ikjl", a, b)
    return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def row_reduce(m: FqMatrix, p: int) -> Tuple[FqMatrix, List[int]]:
    """Return the reduced row echelon form of ``m`` and its pivot columns."""
    r = np.array(m, dtype=np.int64) % p
    rows, cols = r.shape
    pivots: List[int] = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        found = row + int(nz[0])
        if found != row:
            r[[row, found], :] = r[[found, row], :]
        inv = pow(int(r[row, col]), -1, p)
        r[row, :] = (r[row, :] * inv) % p
        for other in np.nonzero(r[:, col])[0]:
            if other != row:
                r[other, :] = (r[other, :] - r[other, col] * r[row, :]) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: FqMatrix, p: int) -> int:
    if m.size == 0:
        return 0
    return len(row_reduce(m, p)[1])


def kernel_basis(m: FqMatrix, p: int) -> List[np.ndarray]:
    rows, cols = m.shape
    r, pivots = row_reduce(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = np.zeros(cols, dtype=np.int64)
        vec[f] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-r[i, f]) % p
        basis.append(vec)
    return basis


def kernel_matrix(m: FqMatrix, p: int) -> FqMatrix:
    """Kernel basis stacked as columns (shape ``cols x nullity``)."""
    basis = kernel_basis(m, p)
    if not basis:
        return zeros(m.shape[1], 0)
    return np.stack(basis, axis=1)


def image_basis(m: FqMatrix, p: int) -> List[np.ndarray]:
    """Pivot columns of ``m``: a basis of its column space."""
    _, pivots = row_reduce(m, p)
    return [np.array(m[:, c], dtype=np.int64) % p for c in pivots]


def image_matrix(m: FqMatrix, p: int) -> FqMatrix:
    basis = image_basis(m, p)
    if not basis:
        return zeros(m.shape[0], 0)
    return np.stack(basis, axis=1)


@dataclass
class LinearSolution:
    solution: Optional[np.ndarray]
    kernel: List[np.ndarray] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.solution is not None


def solve_linear(a: FqMatrix, b: np.ndarray, p: int) -> LinearSolution:
    """Solve ``a x = b``; an inconsistent system yields ``solution=None``."""
    rows, cols = a.shape
    rhs = np.array(b, dtype=np.int64).reshape(rows, 1) % p
    aug = np.concatenate([np.array(a, dtype=np.int64) % p, rhs], axis=1)
    r, pivots = row_reduce(aug, p)
    kernel = kernel_basis(a, p)
    if cols in pivots:
        return LinearSolution(solution=None, kernel=kernel)
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols]
    return LinearSolution(solution=x % p, kernel=kernel)


def solve_columns(a: FqMatrix, b: FqMatrix, p: int) -> FqMatrix:
    """Solve ``a X = b`` column by column; every column must be consistent."""
    out = zeros(a.shape[1], b.shape[1])
    for j in range(b.shape[1]):
        sol = solve_linear(a, b[:, j], p)
        if sol.solution is None:
            raise ValueError("Column is not in the span of the given basis")
        out[:, j] = sol.solution
    return out


def is_invertible(m: FqMatrix, p: int) -> bool:
    n, k = m.shape
    return n == k and rank(m, p) == n


def inverse(m: FqMatrix, p: int) -> FqMatrix:
    n = m.shape[0]
    if not is_invertible(m, p):
        raise ValueError("Matrix is singular over F_p")
    r, _ = row_reduce(np.concatenate([m % p, identity(n)], axis=1), p)
    return r[:, n:] % p


def complete_basis(sub: FqMatrix, p: int) -> FqMatrix:
    """Extend the independent columns of ``sub`` by standard vectors to a basis.

    Returns the added columns only; the first columns that raise the rank win.
    """
    n = sub.shape[0]
    current = sub
    added = []
    for i in range(n):
        if current.shape[1] == n:
            break
        e = np.zeros((n, 1), dtype=np.int64)
        e[i, 0] = 1
        trial = np.concatenate([current, e], axis=1)
        if rank(trial, p) > current.shape[1]:
            current = trial
            added.append(e[:, 0])
    if not added:
        return zeros(n, 0)
    return np.stack(added, axis=1)


def enumerate_matrices(rows: int, cols: int, p: int, cap: int, cap_name: str = "hom_scan") -> Iterator[FqMatrix]:
    """All ``p**(rows*cols)`` matrices in row-major lexicographic order."""
    ensure_within_cap(cap_name, p ** (rows * cols), cap)
    for entries in itertools.product(range(p), repeat=rows * cols):
        yield np.array(entries, dtype=np.int64).reshape(rows, cols)


def enumerate_span(
    basis: Sequence[np.ndarray], length: int, p: int, cap: int, cap_name: str = "hom_scan"
) -> Iterator[np.ndarray]:
    """Every linear combination of ``basis`` exactly once, zero first."""
    ensure_within_cap(cap_name, p ** len(basis), cap)
    if not basis:
        yield np.zeros(length, dtype=np.int64)
        return
    stacked = np.stack([np.asarray(v, dtype=np.int64) for v in basis], axis=0)
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        yield (np.asarray(coeffs, dtype=np.int64) @ stacked) % p


def scan_span(
    basis: Sequence[np.ndarray], length: int, p: int, cap: int, cap_name: str = "hom_scan"
) -> Iterator[np.ndarray]:
    """Same order as ``enumerate_span``, but the cap is charged per element yielded."""
    if not basis:
        yield np.zeros(length, dtype=np.int64)
        return
    stacked = np.stack([np.asarray(v, dtype=np.int64) for v in basis], axis=0)
    for scanned, coeffs in enumerate(itertools.product(range(p), repeat=len(basis)), start=1):
        ensure_within_cap(cap_name, scanned, cap)
        yield (np.asarray(coeffs, dtype=np.int64) @ stacked) % p


def sample_span(
    basis: Sequence[np.ndarray], length: int, p: int, count: int, rng: np.random.Generator
) -> Iterator[np.ndarray]:
    """``count`` uniform random elements of the span, drawn from ``rng``."""
    if not basis:
        yield from (np.zeros(length, dtype=np.int64) for _ in range(min(count, 1)))
        return
    stacked = np.stack([np.asarray(v, dtype=np.int64) for v in basis], axis=0)
    for coeffs in rng.integers(p, size=(count, len(basis))):
        yield (coeffs.astype(np.int64) @ stacked) % p


def gaussian_binomial(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def enumerate_subspaces(n: int, k: int, p: int) -> Iterator[FqMatrix]:
    """All ``k``-dimensional subspaces of F_p^n as ``n x k`` column bases.

    Each subspace is produced once, from its reduced row echelon form.
    """
    if k == 0:
        yield zeros(n, 0)
        return
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free_slots = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivot_set]
        for values in itertools.product(range(p), repeat=len(free_slots)):
            rows = np.zeros((k, n), dtype=np.int64)
            for i, pc in enumerate(pivots):
                rows[i, pc] = 1
            for (i, c), val in zip(free_slots, values):
                rows[i, c] = val
            yield rows.T.copy()
