"""Bundles on CP^1 given by one Laurent transition matrix.

Convention: a section is a pair of coefficient vectors, ``v0`` polynomial in
``t`` on the chart at zero and ``v_inf`` polynomial in ``1/t`` on the chart at
infinity, glued by ``v_inf = T v0``.  The line bundle with transition ``t^(-a)``
is then ``O(a)``: its sections are the polynomials of degree at most ``a``.
"""

from dataclasses import dataclass
from functools import cached_property

from .errors import NotInvertibleError
from .exact_algebra import (
    JetLaurentMatrix,
    kernel_vector,
    sparse_rank,
    unit_determinant,
)
from .hn_profile import HNProfile

__all__ = [
    "P1Transition",
    "SplittingType",
    "BirkhoffFactorization",
    "birkhoff",
    "h0_oracle",
    "splitting_from_h0",
    "hn_blocks",
]


@dataclass(frozen=True)
class SplittingType:
    """Exponents ``a_1 >= ... >= a_r`` of ``O(a_1) + ... + O(a_r)``."""

    exponents: tuple

    def __post_init__(self):
        exps = tuple(int(a) for a in self.exponents)
        if not exps:
            raise ValueError("splitting type needs at least one exponent")
        if any(a < b for a, b in zip(exps, exps[1:])):
            raise ValueError(f"exponents must be descending, got {exps}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def from_multiset(cls, exps):
        return cls(tuple(sorted(exps, reverse=True)))

    @property
    def rank(self):
        return len(self.exponents)

    @property
    def degree(self):
        return sum(self.exponents)

    @property
    def phi(self):
        return self.exponents[0] - self.exponents[-1]

    def shifted(self, k):
        return SplittingType(tuple(a + k for a in self.exponents))

    def h0(self, d=0):
        """``dim H^0(E(d))`` straight from the exponents."""
        return sum(max(a + d + 1, 0) for a in self.exponents)

    def group_sizes(self):
        """Multiplicities of the distinct exponents, top first."""
        sizes = []
        prev = None
        for a in self.exponents:
            if a == prev:
                sizes[-1] += 1
            else:
                sizes.append(1)
                prev = a
        return sizes

    def top_rank(self, k):
        """Rank of the sum of the ``k`` highest exponent groups."""
        sizes = self.group_sizes()
        if not 1 <= k <= len(sizes):
            raise ValueError(f"top_blocks must lie in [1, {len(sizes)}], got {k}")
        return sum(sizes[:k])

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self):
        return len(self.exponents)


class P1Transition:
    """Invertible Laurent transition on the overlap of the two charts of CP^1."""

    def __init__(self, matrix):
        if not isinstance(matrix, JetLaurentMatrix):
            matrix = JetLaurentMatrix(matrix, 0)
        if matrix.jet_order != 0:
            if matrix.x_degree() > 0:
                raise ValueError("a CP^1 transition cannot depend on x")
            matrix = matrix.truncate(0)
        try:
            self.det_coefficient, self.det_exponent = unit_determinant(matrix)
        except NotInvertibleError:
            raise NotInvertibleError("not a bundle transition") from None
        self.matrix = matrix

    @property
    def rank(self):
        return self.matrix.rank

    def __eq__(self, other):
        if not isinstance(other, P1Transition):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"P1Transition({self.matrix!r})"

    @cached_property
    def factorization(self):
        return birkhoff(self)

    @property
    def splitting(self):
        return self.factorization.diagonal


@dataclass(frozen=True)
class BirkhoffFactorization:
    """``T = gauge_infinity @ diag(t^(-a_i)) @ gauge_zero``."""

    gauge_zero: JetLaurentMatrix
    gauge_infinity: JetLaurentMatrix
    diagonal: SplittingType

    def middle(self):
        return JetLaurentMatrix.t_powers([-a for a in self.diagonal], 0)

    def reconstruct(self):
        return self.gauge_infinity @ self.middle() @ self.gauge_zero


def _column_degree(col):
    return max(e.t_range()[1] for e in col if e)


def birkhoff(transition):
    """Grothendieck splitting of ``transition`` by column reduction.

    Clear denominators with ``t^k``, then column-reduce the polynomial matrix
    with unimodular ``C[t]`` column moves until the matrix of leading column
    coefficients is invertible.  The reduced matrix times ``t^(-colDeg)`` is
    then a unit over ``C[1/t]``.  Equal exponents keep their column order.
    """
    if not isinstance(transition, P1Transition):
        transition = P1Transition(transition)
    m = transition.matrix
    r = m.rank
    lo, _ = m.t_range()
    k = -lo
    cols = [list(c) for c in zip(*m.shift_t(k).rows)]
    # rows of U^{-1}; gauge_zero ends up a row permutation of it
    u_inv = [list(row) for row in JetLaurentMatrix.identity(r).rows]

    while True:
        degs = [_column_degree(c) for c in cols]
        lead = [[cols[j][i].coefficient(degs[j]) for j in range(r)] for i in range(r)]
        alpha = kernel_vector(lead)
        if alpha is None:
            break
        p = max((j for j in range(r) if alpha[j]), key=lambda j: (degs[j], -j))
        inv_p = alpha[p].inverse()
        for j in range(r):
            if j == p or not alpha[j]:
                continue
            c = alpha[j] * inv_p
            e = degs[p] - degs[j]
            cols[p] = [a + b.shift_t(e).scale(c) for a, b in zip(cols[p], cols[j])]
            u_inv[j] = [a - b.shift_t(e).scale(c) for a, b in zip(u_inv[j], u_inv[p])]

    degs = [_column_degree(c) for c in cols]
    exps = [k - d for d in degs]
    order = sorted(range(r), key=lambda j: -exps[j])
    g_inf = JetLaurentMatrix(
        [[cols[j][i].shift_t(-degs[j]) for j in order] for i in range(r)], 0
    )
    g_zero = JetLaurentMatrix([u_inv[j] for j in order], 0)
    return BirkhoffFactorization(g_zero, g_inf, SplittingType(tuple(exps[j] for j in order)))


def _section_degree_bound(transition, d):
    # v0 = t^(d-m) adj(T) v_inf with v_inf in C[1/t]^r, so deg v0 <= d - m + (r-1)*max_exp(T)
    r = transition.rank
    _, hi = transition.matrix.t_range()
    return d - transition.det_exponent + (r - 1) * hi


def h0_oracle(transition, d=0):
    """``dim H^0(E(d))`` by brute-force linear algebra on candidate sections.

    Unknowns are the coefficients of ``v0`` up to a degree bound that is
    guaranteed to contain every section; the constraints kill all positive
    powers of ``t`` in ``t^(-d) T v0``.
    """
    if not isinstance(transition, P1Transition):
        transition = P1Transition(transition)
    bound = _section_degree_bound(transition, d)
    if bound < 0:
        return 0
    r = transition.rank
    width = bound + 1
    constraints = {}
    for i, row in enumerate(transition.matrix.rows):
        for j, entry in enumerate(row):
            for (te, _), c in entry.terms.items():
                for e in range(width):
                    power = te - d + e
                    if power > 0:
                        constraints.setdefault((i, power), {})[j * width + e] = c
    return r * width - sparse_rank(constraints.values())


def h0_staircase(transition, start, stop):
    """``{d: h0(E(d))}`` for ``start <= d < stop``."""
    return {d: h0_oracle(transition, d) for d in range(start, stop)}


def splitting_from_h0(transition):
    """Recover the exponents from jumps of ``d -> h0(E(d))``.

    ``h0(E(d)) - h0(E(d-1))`` counts the exponents with ``a_i >= -d``, so the
    second difference counts those equal to ``-d``.
    """
    if not isinstance(transition, P1Transition):
        transition = P1Transition(transition)
    r = transition.rank
    _, hi = transition.matrix.t_range()
    # every exponent is at most this (otherwise the degree bound would be negative)
    top = (r - 1) * hi - transition.det_exponent
    d = -top - 1
    prev_h = h0_oracle(transition, d)
    assert prev_h == 0, "h0 must vanish below the exponent bound"
    prev_count = 0
    exps = []
    while prev_count < r:
        d += 1
        h = h0_oracle(transition, d)
        count = h - prev_h
        exps.extend([-d] * (count - prev_count))
        prev_h, prev_count = h, count
    return SplittingType.from_multiset(exps)


def hn_blocks(splitting):
    """Group equal exponents: ``(multiplicity, exponent)`` with slopes descending."""
    blocks = []
    for a, size in zip(sorted(set(splitting.exponents), reverse=True), splitting.group_sizes()):
        blocks.append((size, a))
    return HNProfile(blocks, base_dimension=2)
