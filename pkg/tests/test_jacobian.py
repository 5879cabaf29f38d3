import numpy as np
import pytest

from qprank.errors import FinitenessUndetermined, TwoCycleAtVertex, ValidationError
from qprank.jacobian import build_algebra, cyclic_derivative, mutate_qp, premutate, projective_module, reduce
from qprank.qpfile import parse_qp
from qprank.quiver import b_matrix_of, mutate_b


def test_path_algebra_dimensions(qps):
    assert build_algebra(qps["a3"]).dim == 6
    assert build_algebra(qps["k3"]).dim == 5
    J = build_algebra(qps["two-one"])
    assert J.dim_matrix() == [[1, 2, 2], [0, 1, 1], [0, 0, 1]]


def test_triangle_jacobian_algebra(qps):
    J = build_algebra(qps["triangle"])
    # every path of length two is a cyclic derivative of abc
    assert J.dim == 6
    assert J.nilpotency == 2
    assert [projective_module(J, u).dims for u in (1, 2, 3)] == [(1, 1, 0), (0, 1, 1), (1, 0, 1)]


def test_cyclic_derivative_rotates(qps):
    pot = qps["triangle"].potential
    assert cyclic_derivative(pot, "a") == {("b", "c"): 1}
    assert cyclic_derivative(pot, "c") == {("a", "b"): 1}


def test_projectives_satisfy_relations(qps):
    for name in ("triangle", "cyclic-four", "two-one"):
        J = build_algebra(qps[name])
        for u in range(1, qps[name].n + 1):
            P = projective_module(J, u)
            assert P.relations_vanish(J)
            assert sum(P.dims) == sum(J.pair_dim(u, v) for v in range(1, qps[name].n + 1))


def test_cycle_without_potential_is_not_finite():
    qp = parse_qp("qp v1\nvertices 3\narrow a 1 2\narrow b 2 3\narrow c 3 1\n")
    with pytest.raises(FinitenessUndetermined):
        build_algebra(qp, N=6)


def test_bad_degree_bound(qps):
    with pytest.raises(ValidationError):
        build_algebra(qps["a2"], N=0)


def test_triangle_mutation_cancels_two_cycle(qps):
    qp = qps["triangle"]
    pre = premutate(qp, 1)
    assert len(pre.quiver.arrows) == 4
    red = reduce(pre)
    assert len(red.quiver.arrows) == 2
    assert not red.potential
    assert b_matrix_of(red) == mutate_b(b_matrix_of(qp), 1)


def test_mutation_matches_matrix_mutation_on_cyclic_four(qps):
    qp = qps["cyclic-four"]
    for u in (1, 2, 3, 4):
        m = mutate_qp(qp, u)
        assert b_matrix_of(m) == mutate_b(b_matrix_of(qp), u)
        back = mutate_qp(m, u)
        assert b_matrix_of(back) == b_matrix_of(qp)
        # the mutated algebra stays finite dimensional
        assert build_algebra(m).dim > 0


def test_mutation_keeps_frozen_vertices(qps):
    qp = qps["example-acyclic"]
    m = mutate_qp(qp, 3)
    assert m.quiver.frozen == frozenset({4})
    with pytest.raises(Exception):
        mutate_qp(qp, 4)


def test_mutation_at_two_cycle_vertex_rejected():
    qp = parse_qp("qp v1\nvertices 2\narrow a 1 2\narrow b 2 1\n")
    with pytest.raises((TwoCycleAtVertex, ValidationError)):
        premutate(qp, 1)


def test_right_arrow_matrices_compose_like_paths(qps):
    J = build_algebra(qps["two-one"])
    P = projective_module(J, 1)
    # the two paths 1 -> 3 are independent in P_1
    m = np.vstack([P.path_matrix(1, (0, 2)), P.path_matrix(1, (1, 2))])
    assert P.dims == (1, 2, 2)
    from qprank.modp import rank
    assert rank(m, J.p) == 2
