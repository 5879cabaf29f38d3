"""Tropical F-polynomials by brute force, and the pairing/fluency/saturation testers.

Submodules are enumerated over a small field (F_2 by default) as tuples
of subspaces, one per vertex, stable under every arrow. Only their
dimension vectors matter for the tropical polynomials.
"""

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from . import modp
from .errors import SearchExhausted, TooLarge, ValidationError
from .jacobian import build_algebra
from .oracle import FieldConfig, _rng, cokernel, sample_presentation
from .rank import SearchConfig, initial_states, search_extremal
from .weights import dot

__all__ = [
    "SubmoduleLattice",
    "subspaces",
    "submodule_lattice",
    "tropical_f",
    "tropical_f_dual",
    "sample_general",
    "generic_pairing_test",
    "hom_fluent_test",
    "saturation_test",
    "duality_condition_check",
]

DEFAULT_CAP = 8


def subspaces(d, q):
    """All subspaces of F_q^d, each as an RREF basis array of shape (k, d)."""
    out = []
    for k in range(d + 1):
        for pivots in combinations(range(d), k):
            # free entries: row i, columns after its pivot that are not pivots
            slots = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots]
            for vals in product(range(q), repeat=len(slots)):
                m = np.zeros((k, d), dtype=np.int64)
                for i, pc in enumerate(pivots):
                    m[i, pc] = 1
                for (i, c), v in zip(slots, vals):
                    m[i, c] = v
                out.append(m)
    return out


@dataclass
class SubmoduleLattice:
    dims: frozenset
    total: tuple

    def f(self, delta):
        return max(dot(delta, d) for d in self.dims)


def _contained(rows, space, p):
    if rows.shape[0] == 0:
        return True
    if space.shape[0] == 0:
        return not (rows % p).any()
    r0 = space.shape[0]
    return modp.rank(np.vstack([space, rows]), p) == r0


def submodule_lattice(M, cap=DEFAULT_CAP):
    """Dimension vectors of all subrepresentations of ``M``."""
    if M.total_dim > cap:
        raise TooLarge(f"total dimension {M.total_dim} exceeds the enumeration cap {cap}")
    p = M.p
    _check_field(p)
    q = M.quiver
    n = q.n
    choices = [subspaces(M.dims[u], p) for u in range(n)]
    # arrows checked as soon as both ends are chosen
    by_last = {u: [] for u in range(n)}
    for i, a in enumerate(q.arrows):
        by_last[max(a.tail, a.head) - 1].append(i)
    found = set()
    chosen = [None] * n

    def rec(u):
        if u == n:
            found.add(tuple(c.shape[0] for c in chosen))
            return
        for sub in choices[u]:
            chosen[u] = sub
            ok = True
            for i in by_last[u]:
                a = q.arrows[i]
                img = (chosen[a.tail - 1] @ M.mats[i]) % p
                if not _contained(img, chosen[a.head - 1], p):
                    ok = False
                    break
            if ok:
                rec(u + 1)
        chosen[u] = None

    rec(0)
    return SubmoduleLattice(frozenset(found), M.dims)


def tropical_f(M, delta, cap=DEFAULT_CAP):
    """max of δ·dim L over subrepresentations L of M."""
    return submodule_lattice(M, cap).f(delta)


def tropical_f_dual(M, delta, cap=DEFAULT_CAP):
    """max of δ·dim N over quotients N of M, via submodules of the dual."""
    dual = M.dual(M.quiver.opposite())
    return submodule_lattice(dual, cap).f(delta)


def sample_general(qp, delta, cfg, trials, generic_dim, tag="pairing"):
    """Cokernels of random presentations over a small field with the generic dimension."""
    J = build_algebra(qp, cfg.degree_bound, cfg.p)
    out = []
    for t in range(trials):
        d = sample_presentation(J, delta, _rng(cfg, tag, tuple(delta), t))
        M = cokernel(J, d)
        if M.dims == tuple(generic_dim):
            out.append(M)
    return out


def generic_pairing_test(oracle, delta, eps_check, small=None, trials=12, cap=DEFAULT_CAP):
    """Compare f at a general ε̌-representation, hom(δ, ε̌) and the dual f of δ.

    The tropical values are minima over general representations sampled
    over a small field; samples with a non-generic dimension vector are
    discarded. Returns a dict with the three values and the verdict.
    """
    small = small or FieldConfig(p=2, seed=oracle.cfg.seed, trials=trials,
                                 degree_bound=oracle.cfg.degree_bound)
    D = ("delta", tuple(delta))
    C = ("check", tuple(eps_check))
    hom = oracle.hom(D, C)
    eps = oracle.delta_of(C)
    dim_d, dim_e = oracle.dim(D[1]), oracle.dim_check(C[1])
    if sum(dim_d) > cap or sum(dim_e) > cap:
        raise TooLarge("general representations exceed the enumeration cap")
    Ns = sample_general(oracle.qp, eps, small, trials, dim_e, "pair-eps")
    Ms = sample_general(oracle.qp, D[1], small, trials, dim_d, "pair-delta")
    f_eps = min((tropical_f(N, D[1], cap) for N in Ns), default=None)
    fdual_delta = min((tropical_f_dual(M, C[1], cap) for M in Ms), default=None)
    ok = f_eps is not None and fdual_delta is not None and f_eps == hom == fdual_delta
    return {"f_eps_check": f_eps, "hom": hom, "f_dual_delta": fdual_delta,
            "samples": (len(Ns), len(Ms)), "equal": ok}


def hom_fluent_test(oracle, delta, eps_check, m_max=3):
    """hom(mδ, ε̌) = hom(δ, mε̌) = m·hom(δ, ε̌) for m = 1..m_max."""
    base = oracle.hom(("delta", tuple(delta)), ("check", tuple(eps_check)))
    rows = []
    ok = True
    for m in range(1, m_max + 1):
        a = oracle.hom(("delta", tuple(m * x for x in delta)), ("check", tuple(eps_check)))
        b = oracle.hom(("delta", tuple(delta)), ("check", tuple(m * x for x in eps_check)))
        rows.append((m, a, b, m * base))
        ok = ok and a == b == m * base
    return {"hom": base, "rows": rows, "fluent": ok}


def saturation_test(oracle, delta, eps_check, m_max=3, n_max=3):
    """hom(δ, ε̌) vanishes whenever some hom(mδ, nε̌) does."""
    base = oracle.hom(("delta", tuple(delta)), ("check", tuple(eps_check)))
    zeros = []
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            h = oracle.hom(("delta", tuple(m * x for x in delta)), ("check", tuple(n * x for x in eps_check)))
            if h == 0:
                zeros.append((m, n))
    return {"hom": base, "vanishing_dilations": zeros, "saturated": base == 0 or not zeros}


def duality_condition_check(qp, delta, eps_check, depth=8, oracle=None, augmentation=None):
    """Look for a hom-vanishing sequence, or an e-vanishing and an ě-vanishing one.

    Returns a dict naming the certified hypothesis (``None`` if neither was
    found within ``depth``) and the sequences.
    """
    qp2, _added, oracle, d0, e0 = initial_states(qp, delta, None, eps_check, oracle, augmentation)
    frozen = tuple(sorted(qp2.quiver.frozen))
    cfg = SearchConfig(depth=depth, mode="hev")

    def find(cases):
        try:
            return search_extremal(d0, e0, frozen, cfg, oracle, cases).sequence
        except SearchExhausted:
            return None

    hv = find(("hom-vanishing",))
    if hv is not None:
        return {"hypothesis": "hom-vanishing", "sequences": {"hom-vanishing": hv}}
    ev = find(("e-vanishing",))
    cv = find(("echeck-vanishing",)) if ev is not None else None
    if ev is not None and cv is not None:
        return {"hypothesis": "e-and-echeck-vanishing",
                "sequences": {"e-vanishing": ev, "echeck-vanishing": cv}}
    return {"hypothesis": None, "sequences": {"e-vanishing": ev, "echeck-vanishing": cv}}


def _check_field(p):
    if p not in (2, 3, 5, 7):
        raise ValidationError("submodule enumeration expects a small prime field")
