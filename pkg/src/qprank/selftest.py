"""Small regression corpus checked by ``qprank selftest``."""

from .oracle import Oracle
from .qpfile import load_qp
from .rank import Ops, compute_rank
from .weights import mutate_delta


def _case(name, fn):
    try:
        passed, detail = fn()
    except Exception as exc:  # noqa: BLE001 - reported, not raised
        return name, False, f"{type(exc).__name__}: {exc}"
    return name, passed, detail


def run_selftest(cfg):
    acyc = load_qp("example-acyclic.qp")
    k3 = load_qp("k3.qp")

    def dims():
        o = Oracle(acyc, cfg)
        got = o.dim((6, -3, -1, 0))
        return got == (6, 9, 8, 0), f"dim {got}"

    def rank_acyclic():
        gamma, _cert, _ = compute_rank(acyc, (6, -3, -1, 0), eps_check=(-7, 3, 2, -2))
        return gamma == (2, 3, 2, 0), f"gamma {gamma}"

    def rank_against_oracle():
        o = Oracle(acyc, cfg)
        gamma, _cert, _ = compute_rank(acyc, (6, -3, -1, 0), eps_check=(-7, 3, 2, -2), oracle=o)
        eps = o.delta_of(("check", (-7, 3, 2, -2)))
        got = o.rank(("delta", (6, -3, -1, 0)), ("delta", eps))
        return got == gamma, f"oracle {got} combinatorial {gamma}"

    def k3_operator():
        got = Ops(Oracle(k3, cfg)).r((0, 1), (1, -2))
        return got == (1, -1), f"r {got}"

    def k3_involution():
        b = ((0, 3), (-3, 0))
        v = (2, -5)
        w = mutate_delta(mutate_delta(v, b, 1), ((0, -3), (3, 0)), 1)
        return w == v, f"{v} -> {w}"

    return [
        _case("dim-acyclic", dims),
        _case("rank-acyclic", rank_acyclic),
        _case("rank-vs-oracle", rank_against_oracle),
        _case("k3-r-operator", k3_operator),
        _case("mutation-involution", k3_involution),
    ]
