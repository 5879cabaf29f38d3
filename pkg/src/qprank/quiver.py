"""Quivers, potentials, skew-symmetric exchange matrices and their mutation.

Vertices are labelled ``1..n``. Weight vectors and matrices are indexed from
0, so vertex ``u`` sits at position ``u - 1``. Exchange matrices are tuples
of tuples of ints (hashable, cheap to copy at desk scale).
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    AugmentationInsufficient,
    FrozenVertex,
    RankDeficient,
    ValidationError,
)

__all__ = [
    "Arrow",
    "Quiver",
    "Potential",
    "QP",
    "b_matrix_of",
    "mutate_b",
    "extend_full_rank",
    "rational_rank",
    "solve_left",
    "pfaffian",
]


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: int
    head: int


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple = ()
    frozen: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(Arrow(*a) if not isinstance(a, Arrow) else a
                                                  for a in self.arrows))
        object.__setattr__(self, "frozen", frozenset(self.frozen))
        if self.n < 0:
            raise ValidationError("vertex count must be nonnegative")
        seen = set()
        for a in self.arrows:
            if a.id in seen:
                raise ValidationError(f"duplicate arrow id {a.id!r}")
            seen.add(a.id)
            for x in (a.tail, a.head):
                if not 1 <= x <= self.n:
                    raise ValidationError(f"arrow {a.id!r} uses vertex {x} outside 1..{self.n}")
            if a.tail == a.head:
                raise ValidationError(f"arrow {a.id!r} is a loop")
        for v in self.frozen:
            if not 1 <= v <= self.n:
                raise ValidationError(f"frozen vertex {v} outside 1..{self.n}")

    def arrow(self, arrow_id):
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise KeyError(arrow_id)

    @property
    def arrow_map(self):
        return {a.id: a for a in self.arrows}

    @property
    def mutable(self):
        return [u for u in range(1, self.n + 1) if u not in self.frozen]

    def is_acyclic(self):
        indeg = [0] * (self.n + 1)
        out = {u: [] for u in range(1, self.n + 1)}
        for a in self.arrows:
            indeg[a.head] += 1
            out[a.tail].append(a.head)
        stack = [u for u in range(1, self.n + 1) if indeg[u] == 0]
        seen = 0
        while stack:
            u = stack.pop()
            seen += 1
            for v in out[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    stack.append(v)
        return seen == self.n

    def opposite(self):
        return Quiver(self.n, tuple(Arrow(a.id, a.head, a.tail) for a in self.arrows), self.frozen)


def _canonical_cycle(cycle):
    k = len(cycle)
    return min(tuple(cycle[i:] + cycle[:i]) for i in range(k))


@dataclass(frozen=True)
class Potential:
    """Finite linear combination of cycles, each stored in its minimal rotation."""

    terms: tuple = ()

    def __post_init__(self):
        merged = {}
        for coef, cycle in self.terms:
            coef = Fraction(coef)
            cycle = _canonical_cycle(tuple(cycle))
            merged[cycle] = merged.get(cycle, Fraction(0)) + coef
        terms = tuple(sorted(((c, cyc) for cyc, c in merged.items() if c != 0),
                             key=lambda t: (len(t[1]), t[1])))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def zero(cls):
        return cls(())

    def __bool__(self):
        return bool(self.terms)

    def as_dict(self):
        return {cyc: c for c, cyc in self.terms}

    def validate(self, q):
        amap = q.arrow_map
        for _, cyc in self.terms:
            if not cyc:
                raise ValidationError("empty cycle in potential")
            for x in cyc:
                if x not in amap:
                    raise ValidationError(f"potential uses unknown arrow {x!r}")
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                if amap[x].head != amap[y].tail:
                    raise ValidationError(f"term {' '.join(cyc)} is not a composable cycle")

    def max_degree(self):
        return max((len(c) for _, c in self.terms), default=0)

    def opposite(self):
        return Potential(tuple((c, tuple(reversed(cyc))) for c, cyc in self.terms))


@dataclass(frozen=True)
class QP:
    quiver: Quiver
    potential: Potential = field(default_factory=Potential.zero)

    def __post_init__(self):
        self.potential.validate(self.quiver)

    @property
    def n(self):
        return self.quiver.n

    def opposite(self):
        return QP(self.quiver.opposite(), self.potential.opposite())


def b_matrix_of(q):
    """Signed arrow counts: entry ``(u, v)`` is #(u→v) − #(v→u)."""
    if isinstance(q, QP):
        q = q.quiver
    b = [[0] * q.n for _ in range(q.n)]
    for a in q.arrows:
        b[a.tail - 1][a.head - 1] += 1
        b[a.head - 1][a.tail - 1] -= 1
    return tuple(tuple(row) for row in b)


def as_bmatrix(b):
    return tuple(tuple(int(x) for x in row) for row in b)


def mutate_b(b, u, frozen=()):
    """Matrix mutation at vertex ``u`` (1-based)."""
    if u in frozen:
        raise FrozenVertex(f"vertex {u} is frozen")
    n = len(b)
    if not 1 <= u <= n:
        raise ValidationError(f"vertex {u} outside 1..{n}")
    k = u - 1
    out = []
    for i in range(n):
        bi = b[i]
        bik = bi[k]
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-bi[j])
            else:
                prod = bik * b[k][j]
                if prod > 0:
                    row.append(bi[j] + (prod if bik > 0 else -prod))
                else:
                    row.append(bi[j])
        out.append(tuple(row))
    return tuple(out)


def _fraction_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def _echelon(m):
    m = [row[:] for row in m]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m[:r], pivots


def rational_rank(b):
    if not b:
        return 0
    return len(_echelon(_fraction_rows(b))[1])


def solve_left(b, y):
    """Unique rational ``x`` with ``x · b = y`` for a full-rank square ``b``."""
    n = len(b)
    if rational_rank(b) < n:
        raise RankDeficient("exchange matrix is not of full rank")
    # x·b = y  <=>  bᵀ xᵀ = yᵀ
    aug = [[Fraction(b[j][i]) for j in range(n)] + [Fraction(y[i])] for i in range(n)]
    red, _ = _echelon(aug)
    return tuple(red[i][n] for i in range(n))


def pfaffian(b):
    """Integer Pfaffian of a skew-symmetric matrix by expansion along row 0."""
    n = len(b)
    if n == 0:
        return 1
    if n % 2:
        return 0
    total = 0
    for j in range(1, n):
        if b[0][j] == 0:
            continue
        keep = [k for k in range(1, n) if k != j]
        minor = [[b[r][c] for c in keep] for r in keep]
        sign = -1 if (j - 1) % 2 else 1
        total += sign * b[0][j] * pfaffian(minor)
    return total


def _fresh_id(base, taken):
    name = base
    k = 1
    while name in taken:
        k += 1
        name = f"{base}_{k}"
    taken.add(name)
    return name


def extend_full_rank(q, augmentation=None):
    """Add frozen vertices until the exchange matrix has full rank.

    ``augmentation`` is a list of ``(frozen_vertex, target)`` pairs, each
    adding an arrow ``frozen_vertex → target``; new frozen vertices must be
    labelled ``n+1, n+2, ...``. Without it, one frozen copy ``u'`` with an
    arrow ``u' → u`` is added for every vertex ``u``. A quiver whose matrix
    already has full rank is returned unchanged.

    The added arrows are the trailing entries of the returned quiver's
    arrow list.
    """
    if rational_rank(b_matrix_of(q)) == q.n:
        return q
    taken = {a.id for a in q.arrows}
    if augmentation is None:
        pairs = [(q.n + u, u) for u in range(1, q.n + 1)]
    else:
        pairs = [(int(f), int(t)) for f, t in augmentation]
    new_vertices = sorted({f for f, _ in pairs})
    if new_vertices != list(range(q.n + 1, q.n + 1 + len(new_vertices))):
        raise ValidationError("frozen vertices must be numbered consecutively after the existing ones")
    n = q.n + len(new_vertices)
    arrows = list(q.arrows)
    for f, t in pairs:
        if not 1 <= t <= q.n:
            raise ValidationError(f"augmentation target {t} is not an original vertex")
        arrows.append(Arrow(_fresh_id(f"f{t}", taken), f, t))
    out = Quiver(n, tuple(arrows), q.frozen | set(new_vertices))
    if rational_rank(b_matrix_of(out)) < n:
        raise AugmentationInsufficient("augmented exchange matrix is still rank deficient")
    return out
