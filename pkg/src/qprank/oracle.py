"""Monte Carlo finite-field oracle for generic invariants of principal components.

General presentations are sampled with uniformly random coefficients over
F_p; generic values are the minimum (dimensions of hom and E spaces,
cokernel dimensions) or coordinatewise maximum (ranks) over independent
trials. Injective-side quantities are computed on the opposite algebra,
using that duality turns injective copresentations of J-modules into
projective presentations of J^op-modules.

Components are written ``("delta", v)`` for the principal component of
presentations of weight ``v`` and ``("check", v)`` for the component of
injective copresentations of weight ``v``.
"""

import zlib
from dataclasses import dataclass, field

import numpy as np

from . import modp
from .errors import InconclusiveGenerics, NotAcyclic, ValidationError
from .jacobian import build_algebra
from .quiver import QP, b_matrix_of
from .representation import Representation, hom_space
from .weights import neg, pos, times_b, vec_add, vec_sub

__all__ = [
    "FieldConfig",
    "Presentation",
    "Representation",
    "GenericReport",
    "sample_presentation",
    "cokernel",
    "hom_presentation",
    "dim_generic",
    "hom_generic",
    "hom_to_fixed",
    "e_generic",
    "rank_generic",
    "rank_to_fixed",
    "is_direct_sum",
    "ext_acyclic",
    "Oracle",
]


@dataclass(frozen=True)
class FieldConfig:
    p: int = 32003
    seed: int = 0
    trials: int = 7
    extra_primes: tuple = (32009,)
    degree_bound: int = 12

    def __post_init__(self):
        if self.trials < 1:
            raise ValidationError("at least one trial is required")
        if self.p < 2 or any(self.p % k == 0 for k in range(2, int(self.p ** 0.5) + 1)):
            raise ValidationError(f"{self.p} is not prime")

    def with_prime(self, p):
        return FieldConfig(p, self.seed, self.trials, self.extra_primes, self.degree_bound)


@dataclass
class GenericReport:
    value: object
    per_trial: list
    trials: int
    prime: int
    seed: int

    def as_dict(self):
        val = list(self.value) if isinstance(self.value, tuple) else self.value
        return {"value": val, "per_trial": [list(v) if isinstance(v, tuple) else v for v in self.per_trial],
                "trials": self.trials, "prime": self.prime, "seed": self.seed}


@dataclass
class Presentation:
    """A map P(sources) → P(targets); block (i, j) lives in e_{targets[i]} J e_{sources[j]}."""

    weight: tuple
    targets: list
    sources: list
    blocks: list = field(default_factory=list)


def _rng(cfg, *tag):
    key = zlib.crc32(repr(tag).encode())
    return np.random.default_rng(np.random.SeedSequence([cfg.seed & 0xFFFFFFFF, cfg.seed >> 32, cfg.p, key]))


def _copies(v):
    out = []
    for u, k in enumerate(v, start=1):
        out.extend([u] * k)
    return out


def sample_presentation(J, delta, rng):
    targets = _copies(pos(delta))
    sources = _copies(neg(delta))
    blocks = [[rng.integers(0, J.p, size=J.pair_dim(u, v), dtype=np.int64) for v in sources]
              for u in targets]
    return Presentation(tuple(delta), targets, sources, blocks)


def _free_module_layout(J, targets, w):
    widths = [J.pair_dim(u, w) for u in targets]
    offsets = np.cumsum([0] + widths)
    return widths, offsets


def cokernel(J, d):
    """Cokernel of a presentation as a representation, vertex by vertex."""
    q = J.quiver
    p = J.p
    reducers = []
    for w in range(1, q.n + 1):
        widths, offsets = _free_module_layout(J, d.targets, w)
        width = int(offsets[-1])
        rows = []
        for j, v in enumerate(d.sources):
            nrows = J.pair_dim(v, w)
            if nrows == 0 or width == 0:
                continue
            block = np.zeros((nrows, width), dtype=np.int64)
            for i, u in enumerate(d.targets):
                if widths[i]:
                    block[:, offsets[i]:offsets[i + 1]] = J.left_mult(u, v, w, d.blocks[i][j])
            rows.append(block)
        stacked = np.vstack(rows) if rows else np.zeros((0, width), dtype=np.int64)
        reducers.append(modp.Reducer(stacked, width, p))
    dims = tuple(r.quotient_dim for r in reducers)
    mats = []
    for ai, a in enumerate(q.arrows):
        rt, rh = reducers[a.tail - 1], reducers[a.head - 1]
        wt, ot = _free_module_layout(J, d.targets, a.tail)
        wh, oh = _free_module_layout(J, d.targets, a.head)
        act = np.zeros((int(ot[-1]), int(oh[-1])), dtype=np.int64)
        for i, u in enumerate(d.targets):
            if wt[i] and wh[i]:
                act[ot[i]:ot[i + 1], oh[i]:oh[i + 1]] = J.right_arrow_matrix(u, ai)
        sel = act[rt.free] if rt.free else np.zeros((0, int(oh[-1])), dtype=np.int64)
        mats.append(rh.coords(sel).reshape(len(rt.free), len(rh.free)) % p)
    return Representation(q, dims, mats, p)


def _basis_action(J, N):
    """Matrices of every basis path of J acting on N, keyed by global index."""
    out = {}
    for gi, (s, _e, arrows) in enumerate(J.basis):
        out[gi] = N.path_matrix(s, arrows)
    return out


class _Target:
    """A fixed representation together with the action of J's basis on it."""

    def __init__(self, J, N):
        self.J = J
        self.N = N
        self.action = _basis_action(J, N)

    def element(self, u, v, coeffs):
        N = self.N
        out = np.zeros((N.dims[u - 1], N.dims[v - 1]), dtype=np.int64)
        for c, gi in zip(coeffs, self.J.pair_basis(u, v)):
            if c:
                out = (out + int(c) * self.action[gi]) % N.p
        return out


def _composition_matrix(J, d, target):
    """Matrix of Hom(P_+, N) → Hom(P_-, N), f ↦ f∘d, in the row convention."""
    N = target.N
    rdims = [N.dims[u - 1] for u in d.targets]
    cdims = [N.dims[v - 1] for v in d.sources]
    ro = np.cumsum([0] + rdims)
    co = np.cumsum([0] + cdims)
    m = np.zeros((int(ro[-1]), int(co[-1])), dtype=np.int64)
    for i, u in enumerate(d.targets):
        if not rdims[i]:
            continue
        for j, v in enumerate(d.sources):
            if cdims[j]:
                m[ro[i]:ro[i + 1], co[j]:co[j + 1]] = target.element(u, v, d.blocks[i][j])
    return m, ro


def hom_presentation(J, d, N, rng=None):
    """``(hom, e, ranks)`` for a presentation d and a representation N.

    ``ranks`` is the rank vector of a random map coker(d) → N when ``rng`` is
    given, else None.
    """
    target = N if isinstance(N, _Target) else _Target(J, N)
    N = target.N
    m, ro = _composition_matrix(J, d, target)
    rows, cols = m.shape
    r = modp.rank(m, J.p) if m.size else 0
    hom, e = rows - r, cols - r
    euler = sum(dv * nv for dv, nv in zip(d.weight, N.dims))
    assert hom - e == euler, "four-term sequence bookkeeping failed"
    ranks = None
    if rng is not None:
        ranks = _random_map_ranks(J, d, target, m, ro, rng)
    return hom, e, ranks


def _random_map_ranks(J, d, target, m, ro, rng):
    p = J.p
    N = target.N
    n = J.n
    if m.shape[0] == 0:
        return (0,) * n
    kern = modp.left_kernel(m, p) if m.shape[1] else np.eye(m.shape[0], dtype=np.int64)
    if kern.shape[0] == 0:
        return (0,) * n
    coeff = rng.integers(0, p, size=kern.shape[0], dtype=np.int64)
    f = (coeff @ kern) % p
    ranks = []
    for w in range(1, n + 1):
        rows = []
        for i, u in enumerate(d.targets):
            fi = f[ro[i]:ro[i + 1]]
            for gi in J.pair_basis(u, w):
                rows.append((fi @ target.action[gi]) % p)
        if rows and N.dims[w - 1]:
            ranks.append(modp.rank(np.array(rows, dtype=np.int64), p))
        else:
            ranks.append(0)
    return tuple(ranks)


def _generic_min(values, cfg):
    return GenericReport(min(values), values, len(values), cfg.p, cfg.seed)


def dim_generic(J, delta, cfg):
    vals = []
    for t in range(cfg.trials):
        d = sample_presentation(J, delta, _rng(cfg, "dim", tuple(delta), t))
        vals.append(cokernel(J, d).dims)
    value = tuple(min(v[u] for v in vals) for u in range(J.n))
    return GenericReport(value, vals, len(vals), cfg.p, cfg.seed)


def hom_to_fixed(J, delta, N, cfg):
    target = _Target(J, N)
    vals = []
    for t in range(cfg.trials):
        d = sample_presentation(J, delta, _rng(cfg, "homfix", tuple(delta), t))
        vals.append(hom_presentation(J, d, target)[0])
    return _generic_min(vals, cfg)


def _pair_trials(J, delta, eps, cfg, tag, want_rank=False):
    out = []
    for t in range(cfg.trials):
        rng = _rng(cfg, tag, tuple(delta), tuple(eps), t)
        d = sample_presentation(J, delta, rng)
        N = cokernel(J, sample_presentation(J, eps, rng))
        out.append(hom_presentation(J, d, N, rng if want_rank else None))
    return out


def hom_generic(J, delta, eps, cfg):
    return _generic_min([h for h, _, _ in _pair_trials(J, delta, eps, cfg, "pair")], cfg)


def e_generic(J, delta, eps, cfg):
    return _generic_min([e for _, e, _ in _pair_trials(J, delta, eps, cfg, "pair")], cfg)


def _aggregate_ranks(results, cfg, n):
    hmin = min(h for h, _, _ in results)
    at_min = [r for h, _, r in results if h == hmin]
    best = tuple(max(r[u] for r in at_min) for u in range(n))
    if best not in at_min:
        return None
    return GenericReport(best, [r for _, _, r in results], len(results), cfg.p, cfg.seed)


def rank_generic(J, delta, eps, cfg, retries=2):
    """Generic rank vector of a map from PC(delta) to PC(eps)."""
    results = []
    for attempt in range(retries + 1):
        tag = "rank" if attempt == 0 else f"rank-retry{attempt}"
        results += _pair_trials(J, delta, eps, cfg, tag, want_rank=True)
        rep = _aggregate_ranks(results, cfg, J.n)
        if rep is not None:
            return rep
    raise InconclusiveGenerics(f"no single trial attains the maximal rank for {delta} → {eps}")


def rank_to_fixed(J, delta, N, cfg):
    target = _Target(J, N)
    results = []
    for t in range(cfg.trials):
        rng = _rng(cfg, "rankfix", tuple(delta), t)
        d = sample_presentation(J, delta, rng)
        results.append(hom_presentation(J, d, target, rng))
    rep = _aggregate_ranks(results, cfg, J.n)
    if rep is None:
        raise InconclusiveGenerics(f"no single trial attains the maximal rank for {delta}")
    return rep


def is_direct_sum(J, eps1, eps2, cfg):
    """Whether general elements of the two components have no E in either direction."""
    return e_generic(J, eps1, eps2, cfg).value == 0 and e_generic(J, eps2, eps1, cfg).value == 0


# ---------------------------------------------------------------------------
# acyclic quivers: generic ext and Schofield's identity


def euler_form(q, alpha, beta):
    val = sum(a * b for a, b in zip(alpha, beta))
    for arr in q.arrows:
        val -= alpha[arr.tail - 1] * beta[arr.head - 1]
    return val


def _random_rep(q, dims, rng, p):
    mats = [rng.integers(0, p, size=(dims[a.tail - 1], dims[a.head - 1]), dtype=np.int64)
            for a in q.arrows]
    return Representation(q, dims, mats, p)


def _hom_rank_trials(q, alpha, beta, cfg):
    results = []
    for t in range(cfg.trials):
        rng = _rng(cfg, "ext", tuple(alpha), tuple(beta), t)
        M = _random_rep(q, alpha, rng, cfg.p)
        N = _random_rep(q, beta, rng, cfg.p)
        basis = hom_space(M, N)
        if basis:
            coeff = rng.integers(0, cfg.p, size=len(basis), dtype=np.int64)
            ranks = []
            for u in range(q.n):
                phi = sum(int(c) * b[u] for c, b in zip(coeff, basis)) % cfg.p
                ranks.append(modp.rank(phi, cfg.p) if phi.size else 0)
            ranks = tuple(ranks)
        else:
            ranks = (0,) * q.n
        results.append((len(basis), None, ranks))
    return results


@dataclass
class ExtReport:
    ext: int
    gamma: tuple
    hom: int
    ext_reduced: int
    euler_reduced: int

    @property
    def identity_holds(self):
        return self.ext == self.ext_reduced == -self.euler_reduced


def _generic_ext(q, alpha, beta, cfg):
    res = _hom_rank_trials(q, alpha, beta, cfg)
    rep = _aggregate_ranks(res, cfg, q.n)
    if rep is None:
        raise InconclusiveGenerics(f"no single trial attains the maximal rank for {alpha} → {beta}")
    hom = min(h for h, _, _ in res)
    return hom, hom - euler_form(q, alpha, beta), rep.value


def ext_acyclic(q, alpha, beta, cfg):
    """Generic ext and general rank for representations of an acyclic quiver."""
    if isinstance(q, QP):
        if q.potential:
            raise NotAcyclic("a nonzero potential is not allowed here")
        q = q.quiver
    if not q.is_acyclic():
        raise NotAcyclic("quiver has an oriented cycle")
    hom, ext, gamma = _generic_ext(q, alpha, beta, cfg)
    a2 = vec_sub(alpha, gamma)
    b2 = vec_sub(beta, gamma)
    _, ext2, _ = _generic_ext(q, a2, b2, cfg)
    return ExtReport(ext, gamma, hom, ext2, euler_form(q, a2, b2))


# ---------------------------------------------------------------------------
# the oracle object used by the rank engine


class Oracle:
    """Cached generic invariants of components of one QP."""

    def __init__(self, qp, cfg=None):
        self.qp = qp
        self.cfg = cfg or FieldConfig()
        self.b = b_matrix_of(qp)
        self.n = qp.n
        self._J = None
        self._Jop = None
        self._cache = {}

    @property
    def J(self):
        if self._J is None:
            self._J = build_algebra(self.qp, self.cfg.degree_bound, self.cfg.p)
        return self._J

    @property
    def Jop(self):
        if self._Jop is None:
            self._Jop = build_algebra(self.qp.opposite(), self.cfg.degree_bound, self.cfg.p)
        return self._Jop

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    # dimensions and weight conversions

    def dim(self, delta):
        delta = tuple(delta)
        return self._memo(("dim", delta), lambda: dim_generic(self.J, delta, self.cfg).value)

    def dim_check(self, delta_check):
        v = tuple(delta_check)
        return self._memo(("dimc", v), lambda: dim_generic(self.Jop, v, self.cfg).value)

    def delta_of(self, comp):
        kind, v = comp
        v = tuple(v)
        if kind == "delta":
            return v
        return vec_sub(v, times_b(self.dim_check(v), self.b))

    def check_of(self, comp):
        kind, v = comp
        v = tuple(v)
        if kind == "check":
            return v
        return vec_add(v, times_b(self.dim(v), self.b))

    def dim_of(self, comp):
        kind, v = comp
        return self.dim(v) if kind == "delta" else self.dim_check(v)

    def tau(self, comp):
        return ("check", tuple(-x for x in self.delta_of(comp)))

    def tau_inv(self, comp):
        return ("delta", tuple(-x for x in self.check_of(comp)))

    # generic pair invariants

    def _pair(self, x, y):
        return self.delta_of(x), self.delta_of(y)

    def hom(self, x, y):
        a, b = self._pair(x, y)
        return self._memo(("hom", a, b), lambda: hom_generic(self.J, a, b, self.cfg).value)

    def e(self, x, y):
        a, b = self._pair(x, y)
        return self._memo(("e", a, b), lambda: e_generic(self.J, a, b, self.cfg).value)

    def rank(self, x, y):
        a, b = self._pair(x, y)
        return self._memo(("rank", a, b), lambda: rank_generic(self.J, a, b, self.cfg).value)

    def e_check(self, x, y):
        """ě from a general representation of x to the injective copresentation of y.

        Computed as E over the opposite algebra from the dual copresentation
        to the dual of the representation.
        """
        a = self.delta_of(x)
        c = self.check_of(y)

        def run():
            vals = []
            Jop = self.Jop
            qop = Jop.quiver
            for t in range(self.cfg.trials):
                rng = _rng(self.cfg, "echeck", a, c, t)
                M = cokernel(self.J, sample_presentation(self.J, a, rng))
                d = sample_presentation(Jop, c, rng)
                vals.append(hom_presentation(Jop, d, M.dual(qop))[1])
            return min(vals)

        return self._memo(("echeck", a, c), run)

    def e_self(self, delta):
        """E of a general presentation against its own cokernel."""
        delta = tuple(delta)
        return self._memo(("eself", delta), lambda: _e_self(self.J, delta, self.cfg))

    def e_check_self(self, delta_check):
        v = tuple(delta_check)
        return self._memo(("ecself", v), lambda: _e_self(self.Jop, v, self.cfg))


def _e_self(J, delta, cfg):
    vals = []
    for t in range(cfg.trials):
        d = sample_presentation(J, delta, _rng(cfg, "eself", delta, t))
        vals.append(hom_presentation(J, d, cokernel(J, d))[1])
    return min(vals)
