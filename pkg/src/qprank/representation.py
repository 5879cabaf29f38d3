"""Finite-dimensional representations over F_p in the row-vector convention.

An arrow ``a: t → h`` acts by ``x ↦ x @ mats[a]`` with ``mats[a]`` of shape
``(dims[t], dims[h])``; a path ``a1 a2 ... ad`` acts by the product of its
arrow matrices in that order.
"""

from dataclasses import dataclass

import numpy as np

from . import modp


@dataclass
class Representation:
    quiver: object
    dims: tuple
    mats: list
    p: int

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        for a, m in zip(self.quiver.arrows, self.mats):
            want = (self.dims[a.tail - 1], self.dims[a.head - 1])
            if m.shape != want:
                raise ValueError(f"arrow {a.id} has matrix of shape {m.shape}, expected {want}")

    @property
    def total_dim(self):
        return sum(self.dims)

    def path_matrix(self, start, arrows):
        """Matrix of the path starting at vertex ``start`` (1-based) through arrow indices."""
        m = np.eye(self.dims[start - 1], dtype=np.int64)
        for i in arrows:
            m = (m @ self.mats[i]) % self.p
        return m

    def dual(self, opposite_quiver):
        """The dual representation of the opposite quiver (transpose every map)."""
        return Representation(opposite_quiver, self.dims, [m.T.copy() for m in self.mats], self.p)

    def element_matrix(self, algebra, u, v, coeffs):
        """Action of an element of e_u J e_v (local coordinates) as a matrix N(u) → N(v)."""
        out = np.zeros((self.dims[u - 1], self.dims[v - 1]), dtype=np.int64)
        for c, gi in zip(coeffs, algebra.pair_basis(u, v)):
            if c:
                out = (out + int(c) * self.path_matrix(u, algebra.basis[gi][2])) % self.p
        return out

    def relations_vanish(self, algebra):
        """True when every cyclic derivative of the potential acts as zero."""
        for rel in algebra.relations:
            u, v, terms = rel
            acc = np.zeros((self.dims[u - 1], self.dims[v - 1]), dtype=np.int64)
            for c, arrows in terms:
                acc = (acc + c * self.path_matrix(u, arrows)) % self.p
            if acc.any():
                return False
        return True


def hom_space(m, n):
    """Basis of Hom(M, N) as a list of per-vertex matrix tuples, via the intertwiner system."""
    p = m.p
    q = m.quiver
    offsets = []
    total = 0
    for u in range(q.n):
        offsets.append(total)
        total += m.dims[u] * n.dims[u]
    rows = []
    for i, a in enumerate(q.arrows):
        t, h = a.tail - 1, a.head - 1
        # M_a φ_h − φ_t N_a = 0, entries indexed (row of M(t), col of N(h))
        ma, na = m.mats[i], n.mats[i]
        dt, dh = m.dims[t], n.dims[h]
        if dt == 0 or dh == 0:
            continue
        block = np.zeros((dt * dh, total), dtype=np.int64)
        # row-major vec: vec(M_a φ_h) = (M_a ⊗ I) vec φ_h, vec(φ_t N_a) = (I ⊗ N_aᵀ) vec φ_t
        block[:, offsets[h]:offsets[h] + m.dims[h] * dh] += np.kron(ma, np.eye(dh, dtype=np.int64))
        block[:, offsets[t]:offsets[t] + dt * n.dims[t]] -= np.kron(np.eye(dt, dtype=np.int64), na.T)
        rows.append(block % p)
    if total == 0:
        return []
    system = np.vstack(rows) if rows else np.zeros((0, total), dtype=np.int64)
    kern = modp.kernel(system, p)
    out = []
    for vec in kern:
        maps = []
        for u in range(q.n):
            chunk = vec[offsets[u]:offsets[u] + m.dims[u] * n.dims[u]]
            maps.append(chunk.reshape(m.dims[u], n.dims[u]))
        out.append(tuple(maps))
    return out


def direct_sum(reps):
    """Block-diagonal direct sum of representations of one quiver."""
    first = reps[0]
    q = first.quiver
    dims = tuple(sum(r.dims[u] for r in reps) for u in range(q.n))
    mats = []
    for i, a in enumerate(q.arrows):
        t, h = a.tail - 1, a.head - 1
        m = np.zeros((dims[t], dims[h]), dtype=np.int64)
        rt = rh = 0
        for r in reps:
            m[rt:rt + r.dims[t], rh:rh + r.dims[h]] = r.mats[i]
            rt += r.dims[t]
            rh += r.dims[h]
        mats.append(m)
    return Representation(q, dims, mats, first.p)
