"""Weight vectors, the (δ, δ̌, dim) state and their mutation rules.

A weight is a tuple of ints indexed by vertex ``u - 1``. ``delta`` is the
weight of a general projective presentation, ``delta_check`` the weight of
the matching injective copresentation, related by
``delta_check = delta + dim · B``.
"""

from dataclasses import dataclass

from .errors import FrozenVertex, NegativeDimension, NonIntegralSolution, ValidationError
from .quiver import mutate_b, solve_left

__all__ = [
    "pos",
    "neg",
    "dot",
    "vec_add",
    "vec_sub",
    "vec_neg",
    "times_b",
    "mutate_delta",
    "mutate_delta_check",
    "dim_solve",
    "WeightState",
    "mutate_state",
    "tau_state",
    "tau_inverse_state",
    "hom_bound",
    "e_bound",
    "e_check_bound",
    "hom_e_bounds",
    "hom_e_mutation_delta",
]


def pos(v):
    return tuple(x if x > 0 else 0 for x in v)


def neg(v):
    return tuple(-x if x < 0 else 0 for x in v)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vec_add(*vs):
    return tuple(sum(xs) for xs in zip(*vs))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a):
    return tuple(-x for x in a)


def times_b(x, b):
    """Row vector times matrix."""
    n = len(b)
    return tuple(sum(x[i] * b[i][j] for i in range(n) if x[i]) for j in range(n))


def _check_vertex(b, u, frozen):
    if u in frozen:
        raise FrozenVertex(f"vertex {u} is frozen")
    if not 1 <= u <= len(b):
        raise ValidationError(f"vertex {u} outside 1..{len(b)}")


def mutate_delta(delta, b, u, frozen=()):
    """Mutation rule for weights of general presentations at vertex ``u``."""
    _check_vertex(b, u, frozen)
    k = u - 1
    du = delta[k]
    dp = du if du > 0 else 0
    out = []
    for v, dv in enumerate(delta):
        if v == k:
            out.append(-du)
            continue
        buv = b[k][v]
        out.append(dv + (-buv if buv < 0 else 0) * du + buv * dp)
    return tuple(out)


def mutate_delta_check(delta_check, b, u, frozen=()):
    """Mutation rule for weights of general injective copresentations."""
    _check_vertex(b, u, frozen)
    k = u - 1
    du = delta_check[k]
    dp, dn = (du if du > 0 else 0), (-du if du < 0 else 0)
    out = []
    for v, dv in enumerate(delta_check):
        if v == k:
            out.append(-du)
            continue
        buv = b[k][v]
        out.append(dv - (buv if buv > 0 else 0) * dn + (-buv if buv < 0 else 0) * dp)
    return tuple(out)


def dim_solve(delta, delta_check, b):
    """Recover the dimension vector from ``delta_check - delta = dim · B``."""
    x = solve_left(b, vec_sub(delta_check, delta))
    if any(c.denominator != 1 for c in x):
        raise NonIntegralSolution(f"dimension vector {tuple(map(str, x))} is not integral")
    dim = tuple(int(c) for c in x)
    if any(c < 0 for c in dim):
        raise NegativeDimension(f"dimension vector {dim} has a negative entry")
    return dim


@dataclass(frozen=True)
class WeightState:
    delta: tuple
    delta_check: tuple
    dim: tuple
    b: tuple

    def __post_init__(self):
        if any(d < 0 for d in self.dim):
            raise NegativeDimension(f"dimension vector {self.dim} has a negative entry")
        if vec_add(self.delta, times_b(self.dim, self.b)) != tuple(self.delta_check):
            raise ValidationError("state violates delta_check = delta + dim·B")

    @classmethod
    def from_delta(cls, delta, dim, b):
        delta = tuple(delta)
        return cls(delta, vec_add(delta, times_b(dim, b)), tuple(dim), b)

    @classmethod
    def from_check(cls, delta_check, dim, b):
        delta_check = tuple(delta_check)
        return cls(vec_sub(delta_check, times_b(dim, b)), delta_check, tuple(dim), b)


def _dim_after(state, b_new, delta_new, check_new, u):
    # only the space at u changes under mutation; recover it from any
    # column where row u of the new matrix is nonzero
    k = u - 1
    n = len(b_new)
    diff = vec_sub(check_new, delta_new)
    for w in range(n):
        c = b_new[k][w]
        if c == 0:
            continue
        rest = diff[w] - sum(state.dim[v] * b_new[v][w] for v in range(n) if v != k)
        if rest % c:
            raise NonIntegralSolution(f"dimension at vertex {u} is not integral")
        dim = list(state.dim)
        dim[k] = rest // c
        return tuple(dim)
    return dim_solve(delta_new, check_new, b_new)


def mutate_state(state, u, frozen=()):
    """Mutate a state at ``u``; both weight rules applied, dimension re-solved."""
    b_new = mutate_b(state.b, u, frozen)
    d = mutate_delta(state.delta, state.b, u, frozen)
    c = mutate_delta_check(state.delta_check, state.b, u, frozen)
    dim = _dim_after(state, b_new, d, c, u)
    if dim[u - 1] < 0:
        raise NegativeDimension(f"mutation at {u} produced dimension vector {dim}")
    # the constructor asserts delta_check = delta + dim·B for the new matrix
    return WeightState(d, c, dim, b_new)


def tau_state(state, dim_check_oracle):
    """Auslander–Reiten translate at the weight level.

    The translate of a general representation of weight ``delta`` is the
    kernel of a general injective copresentation of weight ``-delta``; its
    dimension is not determined combinatorially, so it is asked from
    ``dim_check_oracle``.
    """
    check = vec_neg(state.delta)
    dim = tuple(dim_check_oracle(check))
    return WeightState.from_check(check, dim, state.b)


def tau_inverse_state(state, dim_oracle):
    """Inverse translate: the general representation of weight ``-delta_check``."""
    delta = vec_neg(state.delta_check)
    dim = tuple(dim_oracle(delta))
    return WeightState.from_delta(delta, dim, state.b)


def hom_bound(delta, dim_target):
    """Upper bound for hom from a general presentation of weight ``delta``."""
    return dot(pos(delta), dim_target)


def e_bound(delta, dim_target):
    return dot(neg(delta), dim_target)


def e_check_bound(dim_source, delta_check):
    return dot(dim_source, neg(delta_check))


def hom_e_bounds(delta, dim_delta, eps_check, dim_eps):
    """The three combinatorial upper bounds ``(hom, e, ě)`` for a pair."""
    return (hom_bound(delta, dim_eps), e_bound(delta, dim_eps), e_check_bound(dim_delta, eps_check))


def hom_e_mutation_delta(delta, eps, eps_check, u):
    """Predicted change ``(Δhom, Δe)`` of generic hom and e under mutation at ``u``."""
    k = u - 1
    d, x, xc = delta[k], eps[k], eps_check[k]

    def p(t):
        return t if t > 0 else 0

    dhom = p(-d) * p(-xc) - p(d) * p(xc)
    de = p(d) * p(-x) - p(-d) * p(x)
    return dhom, de
