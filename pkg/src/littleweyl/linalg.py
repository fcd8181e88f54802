"""Exact linear algebra on small matrices.

Everything here works over Python ints and Fractions stored in numpy
object arrays, so all results are exact.  Three toolkits live side by
side: integer row reduction with a unimodular transform (for lattice
kernels), rational Gaussian elimination (solve / nullspace / inverse /
rank), and mod-2 row echelon for F2 subspaces.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np


def imat(rows, cols: int | None = None) -> np.ndarray:
    """Integer matrix as a numpy object array; `cols` sizes an empty one."""
    rows = list(rows)
    if not rows:
        return np.zeros((0, 0 if cols is None else cols), dtype=object)
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = int(x)
    return out


def fmat(rows, cols: int | None = None) -> np.ndarray:
    rows = list(rows)
    if not rows:
        return np.zeros((0, 0 if cols is None else cols), dtype=object)
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = Fraction(x)
    return out


def ivec(xs) -> np.ndarray:
    xs = list(xs)
    out = np.empty(len(xs), dtype=object)
    for i, x in enumerate(xs):
        out[i] = int(x)
    return out


def fvec(xs) -> np.ndarray:
    xs = list(xs)
    out = np.empty(len(xs), dtype=object)
    for i, x in enumerate(xs):
        out[i] = Fraction(x)
    return out


def eye(n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=object)
    for i in range(n):
        m[i, i] = 1
    return m


def mat_key(m: np.ndarray) -> tuple:
    """Hashable form of a matrix."""
    return tuple(tuple(row) for row in m.tolist())


def vec_key(v: np.ndarray) -> tuple:
    return tuple(v.tolist())


def is_integral(m: np.ndarray) -> bool:
    return all(Fraction(x).denominator == 1 for x in m.flat)


def to_int(m: np.ndarray) -> np.ndarray:
    out = np.empty(m.shape, dtype=object)
    for idx, x in np.ndenumerate(m):
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError(f"entry {x} at {idx} is not an integer")
        out[idx] = f.numerator
    return out


# ---------------------------------------------------------------------------
# integer row reduction with transform


def int_row_echelon(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Integer row echelon form via Euclidean row operations.

    Returns (E, U, rank) with U unimodular and E = U @ mat.
    """
    a = mat.copy()
    m = a.shape[0]
    u = eye(m)
    row = 0
    for col in range(a.shape[1]):
        # Euclid on the entries of this column at/below `row`.
        while True:
            nz = [i for i in range(row, m) if a[i, col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i, col]))
            if piv != row:
                a[[row, piv]] = a[[piv, row]]
                u[[row, piv]] = u[[piv, row]]
            if a[row, col] < 0:
                a[row, :] = -a[row, :]
                u[row, :] = -u[row, :]
            done = True
            for i in range(row + 1, m):
                if a[i, col] != 0:
                    q = a[i, col] // a[row, col]
                    a[i, :] = a[i, :] - q * a[row, :]
                    u[i, :] = u[i, :] - q * u[row, :]
                    if a[i, col] != 0:
                        done = False
            if done:
                break
        if any(a[i, col] != 0 for i in range(row, m)):
            row += 1
            if row == m:
                break
    return a, u, row


def int_row_kernel(mat: np.ndarray) -> np.ndarray:
    """Saturated integer basis of {x : x @ mat = 0}, as rows."""
    ech, u, rank = int_row_echelon(mat)
    m = mat.shape[0]
    rows = [u[i, :] for i in range(rank, m)]
    if not rows:
        return np.zeros((0, m), dtype=object)
    return np.array([r.tolist() for r in rows], dtype=object)


def int_col_kernel(mat: np.ndarray) -> np.ndarray:
    """Saturated integer basis of {x : mat @ x = 0}, as rows."""
    return int_row_kernel(mat.T)


# ---------------------------------------------------------------------------
# rational elimination


def rat_rref(mat: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = np.empty(mat.shape, dtype=object)
    for idx, x in np.ndenumerate(mat):
        a[idx] = Fraction(x)
    m, n = a.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if a[i, col] != 0), None)
        if piv is None:
            continue
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        a[row, :] = a[row, :] / a[row, col]
        for i in range(m):
            if i != row and a[i, col] != 0:
                a[i, :] = a[i, :] - a[i, col] * a[row, :]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return a, pivots


def rat_rank(mat: np.ndarray) -> int:
    return len(rat_rref(mat)[1])


def rat_solve(mat: np.ndarray, rhs: np.ndarray) -> np.ndarray | None:
    """One rational solution x of mat @ x = rhs, or None."""
    m, n = mat.shape
    aug = np.zeros((m, n + 1), dtype=object)
    aug[:, :n] = mat
    aug[:, n] = rhs
    r, pivots = rat_rref(aug)
    if n in pivots:
        return None
    x = np.array([Fraction(0)] * n, dtype=object)
    for i, col in enumerate(pivots):
        x[col] = r[i, n]
    return x


def rat_nullspace(mat: np.ndarray) -> list[np.ndarray]:
    """Basis of {x : mat @ x = 0} over the rationals."""
    m, n = mat.shape
    r, pivots = rat_rref(mat)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = np.array([Fraction(0)] * n, dtype=object)
        v[f] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -r[i, f]
        basis.append(v)
    return basis


def rat_inv(mat: np.ndarray) -> np.ndarray:
    n = mat.shape[0]
    aug = np.zeros((n, 2 * n), dtype=object)
    aug[:, :n] = mat
    aug[:, n:] = eye(n)
    r, pivots = rat_rref(aug)
    if pivots[: n] != list(range(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


def int_inv(mat: np.ndarray) -> np.ndarray:
    """Inverse of an integer matrix with det +-1."""
    return to_int(rat_inv(mat))


def clear_denominators(v: np.ndarray) -> np.ndarray:
    """Scale a rational vector to a primitive integer vector."""
    fs = [Fraction(x) for x in v.tolist()]
    lcm = 1
    for f in fs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return ivec(ints)


# ---------------------------------------------------------------------------
# F2 vectors as tuples of 0/1


def f2_add(u: tuple, v: tuple) -> tuple:
    return tuple((a ^ b) for a, b in zip(u, v))


def f2_rref(vectors: list[tuple]) -> tuple[list[tuple], list[int]]:
    """Reduced row echelon basis over F2 with its pivot columns."""
    basis: list[tuple] = []
    pivots: list[int] = []
    for v in vectors:
        v = tuple(int(x) % 2 for x in v)
        for b, p in zip(basis, pivots):
            if v[p]:
                v = f2_add(v, b)
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            continue
        # back-substitute into earlier rows, keep sorted by pivot
        basis.append(v)
        pivots.append(lead)
        order = sorted(range(len(pivots)), key=lambda k: pivots[k])
        basis = [basis[k] for k in order]
        pivots = [pivots[k] for k in order]
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i != j and basis[i][pivots[j]]:
                    basis[i] = f2_add(basis[i], basis[j])
    return basis, pivots


def f2_reduce(v: tuple, basis: list[tuple], pivots: list[int]) -> tuple:
    v = tuple(int(x) % 2 for x in v)
    for b, p in zip(basis, pivots):
        if v[p]:
            v = f2_add(v, b)
    return v


def f2_contains(v: tuple, basis: list[tuple], pivots: list[int]) -> bool:
    return not any(f2_reduce(v, basis, pivots))


def f2_solve(columns: list[tuple], rhs: tuple) -> tuple | None:
    """Coefficients c with sum c_j * columns[j] = rhs over F2, or None."""
    k = len(columns)
    m = len(rhs)
    rows = [
        tuple(int(columns[j][i]) % 2 for j in range(k)) + (int(rhs[i]) % 2,)
        for i in range(m)
    ]
    basis, pivots = f2_rref(rows)
    if k in pivots:
        return None
    sol = [0] * k
    for b, p in zip(basis, pivots):
        sol[p] = b[k]
    return tuple(sol)


def f2_span_equal(a: list[tuple], b: list[tuple]) -> bool:
    ba, pa = f2_rref(a)
    bb, pb = f2_rref(b)
    return ba == bb


# ---------------------------------------------------------------------------
# Poincare polynomial factorization into [d]_t factors


def degree_factorization(coeffs: list[int]) -> list[int] | None:
    """Factor sum(t^len) as a product of 1 + t + ... + t^(d-1).

    Returns the sorted list of degrees d, or None if no such
    factorization exists.  Used to certify |W| = product of degrees.
    """

    def divide(poly: list[int], d: int) -> list[int] | None:
        div = [1] * d
        rem = list(poly)
        out = [0] * (len(poly) - d + 1)
        for i in range(len(out) - 1, -1, -1):
            c = rem[i + d - 1]
            out[i] = c
            if c:
                for j in range(d):
                    rem[i + j] -= c
        if any(rem):
            return None
        return out

    degrees: list[int] = []
    poly = list(coeffs)
    while len(poly) > 1 or poly[0] != 1:
        if len(poly) == 1:
            return None
        found = False
        for d in range(2, len(poly) + 1):
            q = divide(poly, d)
            if q is not None:
                degrees.append(d)
                poly = q
                found = True
                break
        if not found:
            return None
    return sorted(degrees)
