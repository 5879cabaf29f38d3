"""Jacobian algebras of quivers with potentials over F_p, and QP mutation.

Paths compose left to right: ``a b`` means ``a`` followed by ``b`` and needs
``head(a) == tail(b)``. Right modules are representations where an arrow
``a`` maps ``M(tail a)`` to ``M(head a)``; the indecomposable projective
``P_u = e_u J`` is spanned by paths starting at ``u``.

The completed path algebra is replaced by the quotient of paths of length at
most ``N``; the result is accepted only when no surviving basis path is long
enough for the truncation to matter.
"""

from collections import defaultdict
from fractions import Fraction

import numpy as np

from . import modp
from .errors import (
    BadPrime,
    FinitenessUndetermined,
    FrozenVertex,
    NonSplitQuadratic,
    ReductionDiverged,
    TwoCycleAtVertex,
    ValidationError,
)
from .quiver import QP, Arrow, Potential, Quiver, _canonical_cycle, _fresh_id
from .representation import Representation

__all__ = [
    "cyclic_derivative",
    "JacobianAlgebra",
    "build_algebra",
    "projective_module",
    "premutate",
    "reduce",
    "mutate_qp",
]

PATH_CAP = 200_000


def cyclic_derivative(potential, arrow_id):
    """Cyclic derivative as a dict ``path tuple → coefficient``."""
    out = defaultdict(Fraction)
    for coef, cyc in potential.terms:
        for k, x in enumerate(cyc):
            if x == arrow_id:
                out[tuple(cyc[k + 1:]) + tuple(cyc[:k])] += coef
    return {path: c for path, c in out.items() if c != 0}


def _to_mod(c, p):
    c = Fraction(c)
    if c.denominator % p == 0:
        raise BadPrime(f"coefficient {c} has denominator divisible by {p}")
    return (c.numerator % p) * pow(c.denominator % p, p - 2, p) % p


def _enumerate_paths(q, bound):
    """All paths of length ≤ bound as ``(start, end, arrow-index tuple)``."""
    out_arrows = defaultdict(list)
    for i, a in enumerate(q.arrows):
        out_arrows[a.tail].append(i)
    paths = []
    frontier = [(u, u, ()) for u in range(1, q.n + 1)]
    paths.extend(frontier)
    for _ in range(bound):
        nxt = []
        for s, e, arr in frontier:
            for i in out_arrows[e]:
                nxt.append((s, q.arrows[i].head, arr + (i,)))
        if not nxt:
            break
        paths.extend(nxt)
        if len(paths) > PATH_CAP:
            raise FinitenessUndetermined(
                f"more than {PATH_CAP} paths of length ≤ {bound}; lower the degree bound")
        frontier = nxt
    return paths


class JacobianAlgebra:
    """Quotient basis, normal forms and multiplication of J(Q, S) over F_p.

    Attributes
    ----------
    basis : list of (start, end, arrow-index tuple)
        Standard paths forming a basis of J.
    relations : list of (start, end, [(coef, arrows)])
        Cyclic derivatives of the potential, reduced mod p.
    nilpotency : int
        Smallest L such that every path of length L vanishes in J.
    """

    def __init__(self, qp, N, p):
        self.qp = qp
        self.quiver = qp.quiver
        self.n = qp.n
        self.N = N
        self.p = p
        q = self.quiver
        ids = {a.id: i for i, a in enumerate(q.arrows)}
        self.relations = []
        dmax = 0
        for a in q.arrows:
            der = cyclic_derivative(qp.potential, a.id)
            if not der:
                continue
            terms = []
            for path, c in sorted(der.items()):
                cm = _to_mod(c, p)
                if cm:
                    terms.append((cm, tuple(ids[x] for x in path)))
                    dmax = max(dmax, len(path))
            if terms:
                self.relations.append((a.head, a.tail, terms))
        self.derivative_degree = dmax

        paths = _enumerate_paths(q, N)
        blocks = defaultdict(list)
        for s, e, arr in paths:
            blocks[(s, e)].append(arr)
        for key in blocks:
            blocks[key].sort(key=lambda arr: (len(arr), arr))
        col_of = {}
        for (s, e), arrs in blocks.items():
            for c, arr in enumerate(arrs):
                col_of[(s, arr)] = c

        by_end = defaultdict(list)
        by_start = defaultdict(list)
        for s, e, arr in paths:
            by_end[e].append((s, arr))
            by_start[s].append((e, arr))

        rows = defaultdict(list)
        for u, v, terms in self.relations:
            low = min(len(t[1]) for t in terms)
            for s, left in by_end[u]:
                budget = N - low - len(left)
                if budget < 0:
                    continue
                for e, right in by_start[v]:
                    if len(right) > budget:
                        continue
                    row = {}
                    for c, mid in terms:
                        full = left + mid + right
                        if len(full) > N:
                            continue
                        col = col_of[(s, full)]
                        row[col] = (row.get(col, 0) + c) % p
                    row = {k: x for k, x in row.items() if x}
                    if row:
                        rows[(s, e)].append(row)

        self.basis = []
        self._pair = {}
        self._nf = {}
        longest = -1
        for key in sorted(blocks):
            arrs = blocks[key]
            width = len(arrs)
            rel = rows.get(key, [])
            if rel:
                mat = np.zeros((len(rel), width), dtype=np.int64)
                for i, row in enumerate(rel):
                    for c, x in row.items():
                        mat[i, c] = x
                red, pivots = modp.rref(mat, p)
            else:
                red, pivots = np.zeros((0, width), dtype=np.int64), []
            pivset = set(pivots)
            free = [c for c in range(width) if c not in pivset]
            local = {c: k for k, c in enumerate(free)}
            start = len(self.basis)
            for c in free:
                self.basis.append((key[0], key[1], arrs[c]))
                longest = max(longest, len(arrs[c]))
            self._pair[key] = list(range(start, start + len(free)))
            nfree = len(free)
            for c in free:
                vec = np.zeros(nfree, dtype=np.int64)
                vec[local[c]] = 1
                self._nf[(key[0], arrs[c])] = vec
            for k, c in enumerate(pivots):
                vec = np.array([(-red[k, f]) % p for f in free], dtype=np.int64)
                self._nf[(key[0], arrs[c])] = vec
        self.nilpotency = longest + 1
        if longest >= N - dmax:
            raise FinitenessUndetermined(
                f"basis path of length {longest} survives at degree bound {N}; raise N")
        self._tensor_cache = {}
        self._arrow_ids = ids

    @property
    def dim(self):
        return len(self.basis)

    def pair_basis(self, u, v):
        return self._pair.get((u, v), [])

    def pair_dim(self, u, v):
        return len(self._pair.get((u, v), []))

    def dim_matrix(self):
        return [[self.pair_dim(u, v) for v in range(1, self.n + 1)] for u in range(1, self.n + 1)]

    def normal_form(self, start, arrows):
        """Local coordinates of a path in e_start J e_end (zero if beyond the bound)."""
        end = self.quiver.arrows[arrows[-1]].head if arrows else start
        if len(arrows) > self.N:
            return np.zeros(self.pair_dim(start, end), dtype=np.int64)
        vec = self._nf.get((start, tuple(arrows)))
        if vec is None:
            return np.zeros(self.pair_dim(start, end), dtype=np.int64)
        return vec

    def mult_tensor(self, u, v, w):
        """``T[i, j, :]`` = product of basis i of e_uJe_v and basis j of e_vJe_w."""
        key = (u, v, w)
        if key not in self._tensor_cache:
            left = self.pair_basis(u, v)
            right = self.pair_basis(v, w)
            t = np.zeros((len(left), len(right), self.pair_dim(u, w)), dtype=np.int64)
            for i, gi in enumerate(left):
                for j, gj in enumerate(right):
                    t[i, j] = self.normal_form(u, self.basis[gi][2] + self.basis[gj][2])
            self._tensor_cache[key] = t
        return self._tensor_cache[key]

    def left_mult(self, u, v, w, coeffs):
        """Matrix (row convention) of y ↦ x·y from e_vJe_w to e_uJe_w for x ∈ e_uJe_v."""
        t = self.mult_tensor(u, v, w)
        if t.size == 0:
            return np.zeros((t.shape[1], t.shape[2]), dtype=np.int64)
        return np.tensordot(np.asarray(coeffs, dtype=np.int64), t, axes=(0, 0)) % self.p

    def arrow_element(self, arrow_index):
        a = self.quiver.arrows[arrow_index]
        return self.normal_form(a.tail, (arrow_index,))

    def right_arrow_matrix(self, u, arrow_index):
        """Matrix of x ↦ x·a from e_uJe_{tail a} to e_uJe_{head a}."""
        a = self.quiver.arrows[arrow_index]
        t = self.mult_tensor(u, a.tail, a.head)
        coeff = self.arrow_element(arrow_index)
        if t.size == 0:
            return np.zeros((t.shape[0], t.shape[2]), dtype=np.int64)
        return np.tensordot(t, coeff, axes=(1, 0)) % self.p


def build_algebra(qp, N=12, p=32003):
    """J(Q, S) at the smallest degree bound ≤ N where finiteness is certified.

    Once every path of length L vanishes modulo the ideal plus paths longer
    than the bound, it vanishes in the completed algebra too, so any bound
    that certifies finiteness gives the same quotient. Trying small bounds
    first keeps the truncated path space small.
    """
    if N < 1:
        raise ValidationError("degree bound must be at least 1")
    for bound in range(min(3, N), N):
        try:
            return JacobianAlgebra(qp, bound, p)
        except FinitenessUndetermined:
            continue
    return JacobianAlgebra(qp, N, p)


def projective_module(J, u):
    q = J.quiver
    dims = tuple(J.pair_dim(u, v) for v in range(1, q.n + 1))
    mats = [J.right_arrow_matrix(u, i) for i in range(len(q.arrows))]
    return Representation(q, dims, mats, J.p)


# ---------------------------------------------------------------------------
# mutation of quivers with potentials


def _rotate_off(cycle, amap, u):
    for i in range(len(cycle)):
        if amap[cycle[i]].tail != u:
            return cycle[i:] + cycle[:i]
    raise ValidationError("cycle stays at one vertex")


def premutate(qp, u):
    """Premutation at ``u``: composite arrows, reversed arrows and the new potential."""
    q = qp.quiver
    if u in q.frozen:
        raise FrozenVertex(f"vertex {u} is frozen")
    if not 1 <= u <= q.n:
        raise ValidationError(f"vertex {u} outside 1..{q.n}")
    incoming = [a for a in q.arrows if a.head == u]
    outgoing = [a for a in q.arrows if a.tail == u]
    for a in incoming:
        for b in outgoing:
            if a.tail == b.head:
                raise TwoCycleAtVertex(f"vertex {u} lies on the 2-cycle {a.id} {b.id}")
    taken = {a.id for a in q.arrows if u not in (a.tail, a.head)}
    arrows = [a for a in q.arrows if u not in (a.tail, a.head)]
    comp = {}
    for a in incoming:
        for b in outgoing:
            comp[(a.id, b.id)] = _fresh_id(f"[{a.id}{b.id}]", taken)
            arrows.append(Arrow(comp[(a.id, b.id)], a.tail, b.head))
    star = {}
    for a in incoming + outgoing:
        star[a.id] = _fresh_id(f"{a.id}*", taken)
        arrows.append(Arrow(star[a.id], a.head, a.tail))
    amap = q.arrow_map
    terms = []
    for coef, cyc in qp.potential.terms:
        if not any(amap[x].head == u for x in cyc):
            terms.append((coef, cyc))
            continue
        cyc = _rotate_off(list(cyc), amap, u)
        out = []
        i = 0
        while i < len(cyc):
            x = cyc[i]
            if amap[x].head == u:
                out.append(comp[(x, cyc[i + 1])])
                i += 2
            else:
                out.append(x)
                i += 1
        terms.append((coef, tuple(out)))
    for a in incoming:
        for b in outgoing:
            terms.append((Fraction(1), (star[b.id], star[a.id], comp[(a.id, b.id)])))
    return QP(Quiver(q.n, tuple(arrows), q.frozen), Potential(tuple(terms)))


def _substitute(pot, target, replacement, N):
    """Apply the algebra map ``target ↦ target + replacement`` to every cycle.

    ``replacement`` is a list of ``(coef, path)``; terms longer than N drop.
    """
    out = defaultdict(Fraction)
    for cyc, c in pot.items():
        partial = [(c, ())]
        for x in cyc:
            nxt = []
            for pc, pw in partial:
                nxt.append((pc, pw + (x,)))
                if x == target:
                    for rc, rw in replacement:
                        w = pw + rw
                        if len(w) <= N:
                            nxt.append((pc * rc, w))
            partial = nxt
        for pc, pw in partial:
            if len(pw) <= N:
                out[pw] += pc
    merged = defaultdict(Fraction)
    for cyc, c in out.items():
        if c:
            merged[_canonical_cycle(cyc)] += c
    return {k: v for k, v in merged.items() if v != 0}


def _split_quadratic(pot, N):
    """Change arrows linearly until the 2-cycles of the potential use disjoint arrows.

    For a term c·x·y, the other 2-cycles through x are absorbed by
    y ↦ y − Σ (c_k/c)·y_k, then those through y by the same move on x.
    Both moves are automorphisms, so the result is right-equivalent.
    """
    done = set()
    while True:
        quad = {cyc: c for cyc, c in pot.items() if len(cyc) == 2 and not (set(cyc) & done)}
        if not quad:
            return pot
        (x, y), c = min(quad.items())
        for target, keep in ((y, x), (x, y)):
            others = []
            for cyc, ck in pot.items():
                if len(cyc) == 2 and keep in cyc and target not in cyc:
                    others.append((-ck / c, (cyc[1] if cyc[0] == keep else cyc[0],)))
            if others:
                pot = _substitute(pot, target, others, N)
        done.update((x, y))


def reduce(qp, N=12, max_steps=10_000):
    """Split off the trivial part of a QP, leaving a reduced QP without 2-cycle terms."""
    q = qp.quiver
    pot = qp.potential.as_dict()
    if any(len(cyc) == 1 for cyc in pot):
        raise ValidationError("potential has a degree-one term")
    pot = _split_quadratic(pot, N)
    pairs = {}
    used = set()
    for cyc, c in pot.items():
        if len(cyc) != 2:
            continue
        x, y = cyc
        if x in used or y in used or x == y:
            raise NonSplitQuadratic(f"quadratic part is not a sum of disjoint 2-cycles ({x} {y})")
        used.update((x, y))
        pairs[x] = (y, c)
        pairs[y] = (x, c)
    if not pairs:
        return qp
    quad_keys = {cyc for cyc in pot if len(cyc) == 2}

    for _ in range(max_steps):
        offending = [cyc for cyc in pot if cyc not in quad_keys and any(x in pairs for x in cyc)]
        if not offending:
            break
        cyc = min(offending, key=lambda c: (len(c), c))
        k = pot[cyc]
        # rotate so that the cycle starts with an eliminated arrow
        i = next(i for i, x in enumerate(cyc) if x in pairs)
        rot = cyc[i:] + cyc[:i]
        x, rest = rot[0], rot[1:]
        partner, c = pairs[x]
        # c·x·partner + k·x·rest: replace partner by partner − (k/c)·rest
        pot = _substitute(pot, partner, [(-k / c, rest)], N)
    else:
        raise ReductionDiverged(f"reduction did not settle within {max_steps} substitutions")
    for key in quad_keys:
        pot.pop(key, None)
    arrows = tuple(a for a in q.arrows if a.id not in pairs)
    quiver = Quiver(q.n, arrows, q.frozen)
    return QP(quiver, Potential(tuple((c, cyc) for cyc, c in pot.items())))


def mutate_qp(qp, u, N=12):
    return reduce(premutate(qp, u), N)
