"""End-to-end acceptance checks, one marker per criterion.

The terminal summary prints one PASS/FAIL line per criterion.
"""

import itertools
import time

import numpy as np
import pytest

from qprank.errors import SearchExhausted
from qprank.jacobian import build_algebra, mutate_qp, projective_module
from qprank.oracle import FieldConfig, Oracle, e_generic, ext_acyclic, rank_generic
from qprank.pairing import duality_condition_check, hom_fluent_test, submodule_lattice, tropical_f_dual
from qprank.quiver import QP, Arrow, Quiver, extend_full_rank, mutate_b
from qprank.rank import (
    HOM_VANISHING,
    Ops,
    _case_rank,
    apply_dual_ops,
    apply_r,
    compute_rank,
    invariants_along,
    rigid_les_checks,
    tau_identities,
    walk_back,
)
from qprank.representation import Representation, direct_sum
from qprank.weights import WeightState, hom_e_mutation_delta, mutate_delta, mutate_delta_check, mutate_state, times_b

# certificates produced along the way, replayed by the rank-formula walk
CERTS = []


def _keep(cert, oracle):
    CERTS.append((cert, tuple(sorted(oracle.qp.quiver.frozen))))
    return cert


# ---------------------------------------------------------------------------
# 1-3: worked examples


@pytest.mark.criterion(1)
def test_acyclic_example_end_to_end(qps):
    t0 = time.perf_counter()
    gamma, cert, o = compute_rank(qps["example-acyclic"], (6, -3, -1, 0), eps_check=(-7, 3, 2, -2),
                                  cases=(HOM_VANISHING,))
    _keep(cert, o)
    assert gamma == (2, 3, 2, 0)
    assert cert.depth <= 6
    assert cert.delta_states[-1].delta == (0, 0, -1, 0)
    assert cert.eps_states[-1].delta_check == (1, 2, -1, 0)
    assert cert.l_value == (7, -4, 0, 0)
    # the unrestricted search finds a shorter certificate with the same answer
    gamma2, cert2, o = compute_rank(qps["example-acyclic"], (6, -3, -1, 0), eps_check=(-7, 3, 2, -2))
    _keep(cert2, o)
    assert gamma2 == gamma and cert2.l_value == cert.l_value
    assert time.perf_counter() - t0 < 10


@pytest.mark.criterion(2)
def test_acyclic_example_against_ext(qps):
    t0 = time.perf_counter()
    rep = ext_acyclic(qps["two-one"].quiver, (6, 9, 8), (3, 5, 2), FieldConfig(p=32003, trials=7))
    assert rep.gamma == (2, 3, 2)
    assert rep.identity_holds
    assert time.perf_counter() - t0 < 30


@pytest.mark.criterion(3)
def test_kronecker_regression(qps, oracles):
    t0 = time.perf_counter()
    J = build_algebra(qps["k3"])
    assert e_generic(J, (0, 1), (1, -2), FieldConfig()).value == 0
    assert apply_r((0, 1), (1, -2), oracles["k3"]) == (1, -1)
    assert time.perf_counter() - t0 < 5


# ---------------------------------------------------------------------------
# 4: pipeline against the oracle on random acyclic quivers


def random_acyclic(rng, n):
    arrows = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(int(rng.integers(0, 3))):
                arrows.append(Arrow(f"x{i}{j}_{k}", i, j))
    return QP(Quiver(n, tuple(arrows), frozenset()))


def _connected(qp):
    n = qp.n
    adj = {u: set() for u in range(1, n + 1)}
    for a in qp.quiver.arrows:
        adj[a.tail].add(a.head)
        adj[a.head].add(a.tail)
    seen, stack = {1}, [1]
    while stack:
        for v in adj[stack.pop()] - seen:
            seen.add(v)
            stack.append(v)
    return len(seen) == n


@pytest.mark.criterion(4)
def test_pipeline_matches_oracle_on_random_acyclic_quivers():
    rng = np.random.default_rng(20240501)
    primes = (32003, 32009)
    quivers = compared = exhausted = 0
    mismatches = []
    while quivers < 24:
        qp = random_acyclic(rng, int(rng.integers(2, 5)))
        if not qp.quiver.arrows or not _connected(qp):
            continue
        quivers += 1
        oracles = [Oracle(qp, FieldConfig(p=p)) for p in primes]
        for _ in range(3):
            delta = tuple(int(x) for x in rng.integers(-4, 5, qp.n))
            eps_check = tuple(int(x) for x in rng.integers(-4, 5, qp.n))
            try:
                gamma, cert, o2 = compute_rank(qp, delta, eps_check=eps_check, oracle=oracles[0])
            except SearchExhausted:
                exhausted += 1
                continue
            _keep(cert, o2)
            assert all(x == 0 for x in gamma[qp.n:])
            compared += 1
            for o in oracles:
                eps = o.delta_of(("check", eps_check))
                got = rank_generic(o.J, delta, eps, o.cfg).value
                if got != gamma[:qp.n]:
                    mismatches.append((qp.quiver.arrows, delta, eps_check, o.cfg.p, got, gamma))
    print(f"\nrandom acyclic: {quivers} quivers, {compared} pairs compared, {exhausted} searches exhausted")
    assert compared >= 20
    assert not mismatches, mismatches[:3]


# ---------------------------------------------------------------------------
# 5: property suite


def _full_rank_corpus(qps):
    out = {}
    for name in ("k3", "example-acyclic", "cyclic-four", "two-one", "triangle", "a3"):
        qp = qps[name]
        out[name] = QP(extend_full_rank(qp.quiver), qp.potential)
    return out


@pytest.mark.criterion(5)
def test_a_state_mutation_on_random_states(qps, cfg):
    rng = np.random.default_rng(7)
    corpus = list(_full_rank_corpus(qps).items())
    oracles = {name: Oracle(qp, cfg) for name, qp in corpus}
    states = 0
    while states < 1000:
        name, qp = corpus[int(rng.integers(len(corpus)))]
        o = oracles[name]
        frozen = tuple(sorted(qp.quiver.frozen))
        mutable = [u for u in range(1, qp.n + 1) if u not in frozen]
        delta = tuple(int(x) if u not in frozen else 0
                      for u, x in zip(range(1, qp.n + 1), rng.integers(-3, 4, qp.n)))
        s = WeightState.from_delta(delta, o.dim(delta), o.b)
        u = mutable[int(rng.integers(len(mutable)))]
        m = mutate_state(s, u, frozen)
        assert m.delta_check == tuple(x + y for x, y in zip(m.delta, times_b(m.dim, m.b)))
        assert mutate_state(m, u, frozen) == s
        states += 1


def _hom_e_with_check(o, d, e):
    D, E = ("delta", d), ("delta", e)
    return o.hom(D, E), o.e(D, E), o.check_of(E)


@pytest.mark.criterion(5)
def test_b_hom_e_corrections_across_one_mutation(qps, cfg):
    base = qps["triangle"]
    corpus = [base] + [mutate_qp(base, u) for u in (1, 2, 3)]
    weights = [w for w in itertools.product(range(-1, 2), repeat=3) if any(w)]
    rng = np.random.default_rng(11)
    checked = 0
    for qp in corpus:
        o = Oracle(qp, cfg)
        for u in (1, 2, 3):
            o2 = Oracle(mutate_qp(qp, u), cfg)
            assert o2.b == mutate_b(o.b, u)
            for _ in range(8):
                d = weights[int(rng.integers(len(weights)))]
                e = weights[int(rng.integers(len(weights)))]
                h0, e0, ec = _hom_e_with_check(o, d, e)
                d2, x2 = mutate_delta(d, o.b, u), mutate_delta(e, o.b, u)
                h1, e1, ec2 = _hom_e_with_check(o2, d2, x2)
                assert ec2 == mutate_delta_check(ec, o.b, u)
                assert (h1 - h0, e1 - e0) == hom_e_mutation_delta(d, e, ec, u), (qp, u, d, e)
                checked += 1
    assert checked >= 90


@pytest.mark.criterion(5)
def test_c_e_equals_echeck(qps, cfg):
    rng = np.random.default_rng(3)
    names = ("triangle", "k3", "two-one", "cyclic-four", "a3")
    count = 0
    while count < 50:
        qp = qps[names[count % len(names)]]
        o = Oracle(qp, cfg)
        d = tuple(int(x) for x in rng.integers(-2, 3, qp.n))
        assert o.e_self(d) == o.e_check_self(o.check_of(("delta", d))), (qp, d)
        count += 1


@pytest.mark.criterion(5)
def test_d_dual_operators_and_r_to_l(oracles):
    rng = np.random.default_rng(5)
    names = ("a3", "triangle", "two-one", "k3")
    for k in range(50):
        o = oracles[names[k % len(names)]]
        n = o.n
        d = tuple(int(x) for x in rng.integers(-2, 3, n))
        e = tuple(int(x) for x in rng.integers(-2, 3, n))
        ops = Ops(o)
        for kind in ("lchat", "rchat"):
            apply_dual_ops(kind, d, e, o)
        dc = o.check_of(("delta", d))
        for kind in ("lc", "rc"):
            apply_dual_ops(kind, dc, e, o)
        # r_ε(δ) = l_{τδ}(ε), and its version on δ̌-vectors
        tau_d = o.delta_of(o.tau(("delta", d)))
        assert ops.r(d, e) == ops.l(e, tau_d)
        assert ops.rhat(dc, e) == ops.lhat(o.check_of(("delta", e)), tau_d)


# (3,-1) is left out: its inverse translate has dimension (21,55)
KRONECKER_EXCEPTIONAL = [(1, 0), (0, 1), (1, -3), (3, -8), (0, -1), (-1, 0)]


@pytest.mark.criterion(5)
def test_e_rigid_identities(oracles):
    cases = [("k3", eps) for eps in KRONECKER_EXCEPTIONAL]
    for name in ("a3", "triangle", "cyclic-four"):
        n = oracles[name].n
        cases += [(name, tuple(int(i == u) for i in range(n))) for u in range(n)]
    for name, eps in cases:
        o = oracles[name]
        deltas = [d for d in itertools.product(range(-1, 2), repeat=o.n)][:27]
        for d in deltas:
            for key, (lhs, rhs) in rigid_les_checks(d, eps, o).items():
                assert lhs == rhs, (name, d, eps, key, lhs, rhs)


def _unit(n, u):
    return tuple(int(i == u - 1) for i in range(n))


@pytest.mark.criterion(5)
def test_f_invariants_along_certified_sequences(qps, cfg):
    used = 0
    for name in ("k3", "a3", "triangle", "cyclic-four"):
        qp = qps[name]
        o = Oracle(qp, cfg)
        found = []
        for d in itertools.product(range(-1, 2), repeat=qp.n):
            for e in [_unit(qp.n, u) for u in range(1, qp.n + 1)] + [tuple(-x for x in _unit(qp.n, 1))]:
                try:
                    _, cert, o2 = compute_rank(qp, d, eps=e, oracle=o)
                except SearchExhausted:
                    continue
                if cert.sequence:
                    found.append((-cert.depth, d, e, cert, o2))
        found.sort(key=lambda t: t[:3])
        for _, d, e, cert, o2 in found[:3]:
            _keep(cert, o2)
            used += 1
            d0, e0 = cert.delta_states[0].delta, cert.eps_states[0].delta
            vals = invariants_along(o2.qp, d0, e0, cert.sequence, cfg)
            assert len(set(vals)) == 1, (name, d, e, cert.sequence, vals)
    assert used >= 8


@pytest.mark.criterion(5)
def test_g_translation_identities_on_a2(oracles):
    o = oracles["a2"]
    for d in itertools.product(range(-3, 4), repeat=2):
        for v in (1, 2):
            for lhs, rhs in tau_identities(o, d, v):
                assert lhs == rhs, (d, v, lhs, rhs)


# ---------------------------------------------------------------------------
# 6: tropical F-polynomials, fluency and coverage


def _simple(q, u, p):
    dims = tuple(int(v == u) for v in range(1, q.n + 1))
    mats = [np.zeros((dims[a.tail - 1], dims[a.head - 1]), dtype=np.int64) for a in q.arrows]
    return Representation(q, dims, mats, p)


def _indecomposables(qp, p=2):
    J = build_algebra(qp, p=p)
    q = qp.quiver
    out = [_simple(q, u, p) for u in range(1, q.n + 1)]
    out += [projective_module(J, u) for u in range(1, q.n + 1)]
    Jop = build_algebra(qp.opposite(), p=p)
    out += [projective_module(Jop, u).dual(q) for u in range(1, q.n + 1)]
    uniq = {}
    for M in out:
        key = (M.dims, tuple(m.tobytes() for m in M.mats))
        uniq.setdefault(key, M)
    return list(uniq.values())


def _modules_up_to(qp, total):
    ind = _indecomposables(qp)
    out = []
    for k in range(1, total + 1):
        for combo in itertools.combinations_with_replacement(range(len(ind)), k):
            if sum(ind[i].total_dim for i in combo) <= total:
                out.append(direct_sum([ind[i] for i in combo]))
    return out


@pytest.mark.criterion(6)
@pytest.mark.parametrize("name,span", [("a2", 3), ("triangle", 2)])
def test_tropical_duality_and_homogeneity(qps, name, span):
    qp = qps[name]
    qop = qp.quiver.opposite()
    modules = _modules_up_to(qp, 6)
    grid = list(itertools.product(range(-span, span + 1), repeat=qp.n))
    for k, M in enumerate(modules):
        sub = submodule_lattice(M)
        quo = submodule_lattice(M.dual(qop))
        for d in grid:
            f = sub.f(d)
            fq = quo.f(tuple(-x for x in d))
            assert f - fq == sum(x * y for x, y in zip(d, M.dims)), (M.dims, d)
            for m in (2, 3):
                assert sub.f(tuple(m * x for x in d)) == m * f
        if k % 25 == 0:
            # the packaged quotient route agrees with the direct one
            d = grid[k % len(grid)]
            assert tropical_f_dual(M, tuple(-x for x in d)) == quo.f(tuple(-x for x in d))
    assert len(modules) > 20


ACYCLIC = ("a2", "a3", "k3", "two-one", "example-acyclic")


@pytest.mark.criterion(6)
def test_hom_fluent_on_acyclic_pairs(oracles):
    rng = np.random.default_rng(17)
    for k in range(20):
        o = oracles[ACYCLIC[k % len(ACYCLIC)]]
        frozen = o.qp.quiver.frozen
        d = tuple(0 if u + 1 in frozen else int(x) for u, x in enumerate(rng.integers(-2, 3, o.n)))
        c = tuple(0 if u + 1 in frozen else int(x) for u, x in enumerate(rng.integers(-2, 3, o.n)))
        res = hom_fluent_test(o, d, c, 3)
        assert res["fluent"], (o.qp.quiver.arrows, d, c, res["rows"])


@pytest.mark.criterion(6)
def test_duality_condition_coverage(qps, cfg):
    rng = np.random.default_rng(23)
    total = certified = 0
    for k in range(60):
        qp = qps[ACYCLIC[k % len(ACYCLIC)]]
        frozen = qp.quiver.frozen
        d = tuple(0 if u + 1 in frozen else int(x) for u, x in enumerate(rng.integers(-3, 4, qp.n)))
        c = tuple(0 if u + 1 in frozen else int(x) for u, x in enumerate(rng.integers(-3, 4, qp.n)))
        res = duality_condition_check(qp, d, c, depth=8, oracle=Oracle(qp, cfg))
        total += 1
        certified += res["hypothesis"] is not None
    coverage = certified / total
    print(f"\nduality condition coverage: {certified}/{total} = {coverage:.2%}")
    assert coverage >= 0.9


# ---------------------------------------------------------------------------
# 7: the four-vertex example with a potential


@pytest.mark.criterion(7)
def test_cyclic_four_example(qps, oracles):
    qp, o = qps["cyclic-four"], oracles["cyclic-four"]
    delta, eps_check = (-1, 0, -2, 3), (1, 4, 1, -9)
    assert o.dim(delta) == (3, 5, 4, 3)
    assert o.dim_check(eps_check) == (5, 5, 2, 3)
    gamma, cert, o = compute_rank(qp, delta, eps_check=eps_check, oracle=o,
                                  sequence=(2, 1, 4, 2, 3), cases=(HOM_VANISHING,))
    _keep(cert, o)
    assert cert.delta_states[-1].delta == (0, 3, -2, -1)
    assert cert.eps_states[-1].delta_check == (-1, -1, -1, 1)
    assert cert.eps_states[-1].dim == (1, 0, 1, 1)
    assert cert.l_path[-1] == (1, 4, -1, -2)
    assert cert.l_value == (-3, -1, 1, 5)
    assert gamma == (2, 4, 1, 2)
    assert o.rank(("delta", delta), ("check", eps_check)) == gamma


# ---------------------------------------------------------------------------
# 5h runs last so that every stored certificate is available


@pytest.mark.criterion(5)
def test_h_rank_walk_reproduces_linear_solve():
    assert len(CERTS) >= 20
    for cert, frozen in CERTS:
        end = _case_rank(cert.case, cert.delta_states[-1], cert.eps_states[-1])
        assert walk_back(cert, end, frozen) == cert.gamma
