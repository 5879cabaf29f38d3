import pytest
from hypothesis import given
from hypothesis import strategies as st

from qprank.errors import AugmentationInsufficient, FrozenVertex, ParseError, ValidationError
from qprank.qpfile import corpus_names, emit_qp, load_qp, parse_qp
from qprank.quiver import b_matrix_of, extend_full_rank, mutate_b, pfaffian, rational_rank


@st.composite
def skew_matrices(draw, max_n=5, bound=3):
    n = draw(st.integers(1, max_n))
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = draw(st.integers(-bound, bound))
            b[i][j], b[j][i] = x, -x
    return tuple(tuple(r) for r in b)


def test_bmatrix_counts_arrows(qps):
    assert b_matrix_of(qps["k3"]) == ((0, 3), (-3, 0))
    assert b_matrix_of(qps["triangle"]) == ((0, 1, -1), (-1, 0, 1), (1, -1, 0))


@given(skew_matrices(), st.data())
def test_matrix_mutation_is_an_involution(b, data):
    u = data.draw(st.integers(1, len(b)))
    assert mutate_b(mutate_b(b, u), u) == b


@given(skew_matrices())
def test_mutation_keeps_skew_symmetry_and_rank(b):
    for u in range(1, len(b) + 1):
        m = mutate_b(b, u)
        n = len(b)
        assert all(m[i][j] == -m[j][i] for i in range(n) for j in range(n))
        assert rational_rank(m) == rational_rank(b)


def test_mutating_frozen_vertex_raises(qps):
    b = b_matrix_of(qps["example-acyclic"])
    with pytest.raises(FrozenVertex):
        mutate_b(b, 4, frozen=(4,))


def test_pfaffian_squares_to_determinant():
    assert pfaffian(((0, 3), (-3, 0))) == 3
    b = ((0, 1, -1, -1), (-1, 0, 1, -1), (1, -1, 0, -1), (1, 1, 1, 0))
    assert pfaffian(b) ** 2 == 1 or rational_rank(b) == 4


def test_augmentation_reaches_full_rank(qps):
    q = qps["two-one"].quiver
    assert rational_rank(b_matrix_of(q)) == 2
    q2 = extend_full_rank(q)
    assert q2.n == 6 and q2.frozen == frozenset({4, 5, 6})
    assert rational_rank(b_matrix_of(q2)) == 6
    q3 = extend_full_rank(q, [(4, 3)])
    assert q3.n == 4 and rational_rank(b_matrix_of(q3)) == 4


def test_insufficient_augmentation_raises(qps):
    # the kernel vector (1,0,2) of 1 => 2 -> 3 vanishes at vertex 2
    q = qps["two-one"].quiver
    with pytest.raises((AugmentationInsufficient, ValidationError)):
        extend_full_rank(q, [(4, 2)])


def test_opposite_reverses_arrows(qps):
    q = qps["triangle"].quiver
    b = b_matrix_of(q)
    bop = b_matrix_of(q.opposite())
    assert bop == tuple(tuple(-x for x in r) for r in b)


def test_corpus_roundtrips():
    for name in corpus_names():
        qp = load_qp(name)
        again = parse_qp(emit_qp(qp))
        assert emit_qp(again) == emit_qp(qp)


@pytest.mark.parametrize("text,line", [
    ("", None),
    ("qp v2\nvertices 1\n", 1),
    ("qp v1\nvertices 2\narrow a 1 1\n", 3),
    ("qp v1\nvertices 2\narrow a 1\n", 3),
    ("qp v1\nvertices 2\nterm 0 a\n", 3),
    ("qp v1\nvertices x\n", 2),
    ("qp v1\nbogus\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_qp(text)
    if line is not None:
        assert str(line) in str(info.value)


def test_unknown_arrow_in_term_is_rejected():
    with pytest.raises(ValidationError):
        parse_qp("qp v1\nvertices 2\narrow a 1 2\nterm 1 a z\n")
