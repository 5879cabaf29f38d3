"""Dense linear algebra over a prime field F_p with int64 numpy arrays.

All routines reduce their inputs modulo ``p`` and never overflow as long as
``p < 2**31``.
"""

import numpy as np


def as_mod(a, p):
    return np.asarray(a, dtype=np.int64) % p


def inverse(x, p):
    x = int(x) % p
    if x == 0:
        raise ZeroDivisionError("zero has no inverse mod p")
    return pow(x, p - 2, p)


def rref(a, p):
    """Reduced row echelon form.

    Returns ``(r, pivots)`` where ``r`` holds only the nonzero rows and
    ``pivots[k]`` is the pivot column of row ``k``.
    """
    m = as_mod(a, p).copy()
    if m.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * inverse(m[r, c], p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            # columns left of c are already zero in row r
            m[hit, c:] = (m[hit, c:] - np.outer(col[hit], m[r, c:])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a, p):
    """Rank by forward elimination only, on the shorter side.

    The trailing block is reduced lazily: each step adds at most p² to an
    entry, and only the pivot row and column are brought back into range.
    """
    a = np.asarray(a)
    if a.size == 0:
        return 0
    m = as_mod(a, p)
    if m.shape[0] > m.shape[1]:
        m = m.T
    m = m.copy()
    rows, cols = m.shape
    if p >= 2**31 or rows * p * p >= 2**62:
        m %= p
        lazy = False
    else:
        lazy = True
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = m[r:, c] % p
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
            col[[0, nz[0]]] = col[[nz[0], 0]]
        row = m[r, c:] % p
        hit = np.flatnonzero(col[1:])
        if hit.size:
            f = (col[1:][hit] * inverse(row[0], p)) % p
            idx = hit + r + 1
            upd = m[idx, c:] - np.outer(f, row)
            m[idx, c:] = upd if lazy else upd % p
        r += 1
    return r


def kernel(a, p):
    """Basis of the right kernel ``{x : a @ x = 0}`` as rows of a matrix."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for k, c in enumerate(pivots):
            basis[i, c] = (-r[k, f]) % p
    return basis


def left_kernel(a, p):
    """Basis of ``{x : x @ a = 0}`` as rows."""
    return kernel(np.asarray(a, dtype=np.int64).T, p)


class Reducer:
    """Reduce vectors modulo a fixed row space.

    ``coords(v)`` gives coordinates of the class of ``v`` in the quotient,
    using the non-pivot columns as the quotient basis.
    """

    def __init__(self, rows, width, p):
        self.p = p
        self.width = width
        rows = np.asarray(rows, dtype=np.int64)
        rows = rows.reshape(-1, width) if rows.size else np.zeros((0, width), dtype=np.int64)
        if rows.shape[0]:
            self.r, self.pivots = rref(rows, p)
        else:
            self.r, self.pivots = np.zeros((0, width), dtype=np.int64), []
        pivset = set(self.pivots)
        self.free = [c for c in range(width) if c not in pivset]

    @property
    def quotient_dim(self):
        return len(self.free)

    def reduce(self, v):
        v = as_mod(v, self.p).copy()
        single = v.ndim == 1
        if self.width == 0:
            return v
        v = v.reshape(-1, self.width)
        if self.pivots:
            coef = v[:, self.pivots]
            v = (v - coef @ self.r) % self.p
        return v[0] if single else v

    def coords(self, v):
        red = self.reduce(v)
        return red[..., self.free]


def random_matrix(rng, shape, p):
    return rng.integers(0, p, size=shape, dtype=np.int64)
