"""Search small exchange matrices for the four-vertex potential example.

The worked example only fixes its quiver through a diagram macro. This
script enumerates skew-symmetric 4x4 matrices with entries in [-k, k]
and keeps those under which the stated weights, dimension vectors and
mutation sequence are all consistent. Surviving quivers carrying a
3-cycle get the potential on that cycle and are checked with the oracle.

    python scripts/reconstruct_second_example.py [--bound 2] [--oracle]
"""

import argparse
from itertools import combinations, product

from qprank.errors import QPRankError
from qprank.quiver import QP, Arrow, Potential, Quiver
from qprank.weights import WeightState, mutate_state, times_b

DELTA = (-1, 0, -2, 3)
EPS_CHECK = (1, 4, 1, -9)
DIM_DELTA = (3, 5, 4, 3)
DIM_EPS = (5, 5, 2, 3)
SEQ = (2, 1, 4, 2, 3)
DELTA_END = (0, 3, -2, -1)
EPS_CHECK_END = (-1, -1, -1, 1)
DIM_EPS_END = (1, 0, 1, 1)
GAMMA = (2, 4, 1, 2)
L_VALUE = (-3, -1, 1, 5)


def candidates(bound):
    pairs = list(combinations(range(4), 2))
    for vals in product(range(-bound, bound + 1), repeat=len(pairs)):
        b = [[0] * 4 for _ in range(4)]
        for (i, j), x in zip(pairs, vals):
            b[i][j], b[j][i] = x, -x
        b = tuple(tuple(r) for r in b)
        try:
            d = WeightState.from_delta(DELTA, DIM_DELTA, b)
            e = WeightState.from_check(EPS_CHECK, DIM_EPS, b)
            for u in SEQ:
                d = mutate_state(d, u)
                e = mutate_state(e, u)
        except QPRankError:
            continue
        if d.delta != DELTA_END or e.delta_check != EPS_CHECK_END or e.dim != DIM_EPS_END:
            continue
        if times_b(GAMMA, b) != tuple(l - x + y for l, x, y in zip(L_VALUE, DELTA, EPS_CHECK)):
            continue
        yield b


def to_qp(b):
    arrows = []
    for i in range(4):
        for j in range(4):
            for k in range(max(b[i][j], 0)):
                arrows.append(Arrow(f"x{i + 1}{j + 1}" + ("" if k == 0 else f"_{k}"), i + 1, j + 1))
    q = Quiver(4, tuple(arrows), frozenset())
    cycles = []
    for x in arrows:
        for y in arrows:
            for z in arrows:
                if x.head == y.tail and y.head == z.tail and z.head == x.tail and x.tail < y.tail and x.tail < z.tail:
                    cycles.append((x.id, y.id, z.id))
    return q, cycles


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=2)
    ap.add_argument("--oracle", action="store_true", help="recompute dims and rank with the oracle")
    args = ap.parse_args()
    found = list(candidates(args.bound))
    print(f"{len(found)} exchange matrices consistent with the stated data")
    for b in found:
        q, cycles = to_qp(b)
        print("B =", b, " 3-cycles:", cycles)
        if not args.oracle or not cycles:
            continue
        from qprank.oracle import Oracle
        from qprank.rank import compute_rank

        for cyc in cycles:
            qp = QP(q, Potential(((1, cyc),)))
            o = Oracle(qp)
            dd = o.dim(DELTA)
            de = o.dim_check(EPS_CHECK)
            print(f"  potential {' '.join(cyc)}: dim(delta) {dd} dim(eps_check) {de}")
            try:
                gamma, cert, _ = compute_rank(qp, DELTA, eps_check=EPS_CHECK, oracle=o, sequence=SEQ,
                                              cases=("hom-vanishing",))
                print(f"  rank {gamma} via {cert.case}")
            except QPRankError as exc:
                print(f"  rank failed: {type(exc).__name__}: {exc}")


if __name__ == "__main__":
    main()
