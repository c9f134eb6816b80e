"""Bundles on a formal neighbourhood of the exceptional divisor D of the
blow-up of C^2 at the origin, and Hecke transforms along HN subbundles of their
restriction to D.

Charts: A has coordinates ``(x, t)`` and B has ``(y, s)`` with ``s = 1/t`` and
``y = x t``; D is ``{x = 0}`` resp. ``{y = 0}``.  The transition ``T(x, t)`` glues
coefficient vectors by ``v_B = T v_A``, matching the CP^1 convention in
:mod:`heckelab.p1_bundle`.  The defining sections of D are ``x`` and ``y``, so
the line bundle ``[D]`` has transition ``y/x = t`` and restricts to ``O(-1)``.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property

from .errors import FrameNotAdaptedError, NotDivisibleError, PrecisionError
from .exact_algebra import JetLaurentMatrix, JetLaurentPoly, unit_determinant
from .hn_profile import hecke_bound
from .p1_bundle import P1Transition, SplittingType, hn_blocks

__all__ = [
    "BlowupBundle",
    "HeckeStep",
    "HeckeTrace",
    "divisor_bundle",
    "restrict_to_D",
    "phi",
    "adapt_frame",
    "hecke_transform",
    "twist_by_divisor",
    "optimize",
    "double_hecke",
    "involution_check",
]


class BlowupBundle:
    """A rank ``r`` bundle near D, known modulo ``x^(N+1)``."""

    def __init__(self, transition, jet_order=None):
        if not isinstance(transition, JetLaurentMatrix):
            transition = JetLaurentMatrix(transition)
        if jet_order is not None and jet_order != transition.jet_order:
            transition = transition.truncate(jet_order)
        unit_determinant(transition)
        self.transition = transition

    @classmethod
    def from_polynomials(cls, matrix, jet_order=None):
        """Treat ``matrix`` as exact polynomial data and pick a working jet order.

        The default is ``ceil(phi) + 2`` (one order per optimizer step plus two
        for an involution check), raised to the x-degree of the data if larger.
        """
        if not isinstance(matrix, JetLaurentMatrix):
            matrix = JetLaurentMatrix(matrix)
        if jet_order is None:
            spread = P1Transition(matrix.at_x_zero()).splitting.phi
            jet_order = max(math.ceil(spread) + 2, matrix.x_degree())
        return cls(matrix.embed(jet_order))

    @property
    def rank(self):
        return self.transition.rank

    @property
    def jet_order(self):
        return self.transition.jet_order

    @cached_property
    def restriction(self):
        return P1Transition(self.transition.at_x_zero())

    @property
    def splitting(self):
        return self.restriction.splitting

    @property
    def phi(self):
        return self.splitting.phi

    def __eq__(self, other):
        if not isinstance(other, BlowupBundle):
            return NotImplemented
        return self.transition == other.transition

    def __hash__(self):
        return hash(self.transition)

    def __repr__(self):
        return f"BlowupBundle({self.transition!r})"


def divisor_bundle(jet_order=0):
    """The line bundle ``[D]``: transition ``t``, restricting to ``O(-1)``."""
    return BlowupBundle(JetLaurentMatrix([[JetLaurentPoly.t_var(jet_order)]], jet_order))


@dataclass(frozen=True)
class HeckeStep:
    top_blocks: int
    sub_rank: int
    phi_before: int
    phi_after: int
    jet_remaining: int
    splitting_before: SplittingType
    splitting_after: SplittingType


@dataclass
class HeckeTrace:
    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def phi_values(self):
        """``[phi_0, phi_1, ...]``; empty if no step was taken."""
        if not self.steps:
            return []
        return [self.steps[0].phi_before] + [s.phi_after for s in self.steps]


def restrict_to_D(bundle):
    return bundle.restriction


def phi(bundle):
    return bundle.phi


def adapt_frame(bundle, top_blocks=1):
    """Gauge so the restriction to D is ``diag(t^(-a_1), ..., t^(-a_r))``, descending.

    The gauges come from the Birkhoff factorisation of the restriction and are
    extended constantly in x.  Afterwards the first ``top_rank(top_blocks)``
    frame vectors span the chosen HN subbundle on D and the lower-left block
    vanishes at ``x = 0``.
    """
    fac = bundle.restriction.factorization
    fac.diagonal.top_rank(top_blocks)  # range check
    n = bundle.jet_order
    left = fac.gauge_infinity.inverse().embed(n)
    right = fac.gauge_zero.inverse().embed(n)
    return BlowupBundle(left @ bundle.transition @ right)


def hecke_transform(bundle, sub_rank):
    """Hecke transform along the span of the first ``sub_rank`` frame vectors on D.

    Quotient frame vectors are multiplied by the defining section, giving the
    block rule ``f -> f``, ``g -> g x``, ``h -> h / (x t)``, ``q -> q / t``.
    One order of jet precision is consumed.  ``sub_rank = rank`` is the identity
    transform and ``sub_rank = 0`` twists by ``[D]^(-1)``.
    """
    r = bundle.rank
    if not 0 <= sub_rank <= r:
        raise ValueError(f"sub_rank must lie in [0, {r}], got {sub_rank}")
    n = bundle.jet_order
    if n < 1:
        raise PrecisionError()
    rows = []
    for i, row in enumerate(bundle.transition.rows):
        new = []
        for j, e in enumerate(row):
            if i < sub_rank and j < sub_rank:
                new.append(e.truncate(n - 1))
            elif i < sub_rank:
                new.append(e.multiply_by_x().truncate(n - 1))
            elif j < sub_rank:
                try:
                    new.append(e.divide_by_x().shift_t(-1))
                except NotDivisibleError:
                    raise FrameNotAdaptedError() from None
            else:
                new.append(e.truncate(n - 1).shift_t(-1))
        rows.append(new)
    return BlowupBundle(JetLaurentMatrix(rows, n - 1))


def twist_by_divisor(bundle, k):
    """Tensor with ``[D]^k``; every splitting exponent moves by ``-k``."""
    return BlowupBundle(bundle.transition.shift_t(k))


def _choose_blocks(splitting, schedule):
    if schedule == "top":
        return 1
    if schedule == "bound":
        prof = hn_blocks(splitting)
        candidates = range(1, prof.length)
        return min(candidates, key=lambda k: (hecke_bound(prof, k), k))
    raise ValueError(f"unknown schedule {schedule!r}")


def optimize(bundle, schedule="top"):
    """Hecke-transform along HN subbundles until the restriction is balanced.

    ``schedule="top"`` always transforms along the top HN block; ``"bound"``
    picks the block count with the smallest a priori spread bound.  Returns the
    final bundle and the trace.  Running out of jet precision raises
    :class:`PrecisionError` carrying the partial trace and the last bundle.
    """
    trace = HeckeTrace()
    current = bundle
    while current.phi >= 1:
        before = current.splitting
        k = _choose_blocks(before, schedule)
        s = before.top_rank(k)
        if current.jet_order < 1:
            raise PrecisionError(trace=trace, bundle=current)
        nxt = hecke_transform(adapt_frame(current, k), s)
        trace.steps.append(
            HeckeStep(k, s, before.phi, nxt.phi, nxt.jet_order, before, nxt.splitting)
        )
        current = nxt
    return current, trace


def double_hecke(bundle, sub_rank):
    """Transform along a rank ``sub_rank`` coordinate subbundle, then along the image block.

    Returns ``(adapted, result)``: the diagonally adapted input and the double
    transform written back in the adapted frame order.  The first transform
    leaves the last ``r - sub_rank`` frame vectors spanning a subbundle on D,
    so the second one runs along them after a permutation.
    """
    if bundle.jet_order < 2:
        raise PrecisionError("insufficient jet order for two Hecke transforms")
    r = bundle.rank
    adapted = adapt_frame(bundle, 1)
    first = hecke_transform(adapted, sub_rank)
    n = first.jet_order
    perm = list(range(sub_rank, r)) + list(range(sub_rank))
    p = JetLaurentMatrix.permutation(perm, n)
    swapped = BlowupBundle(p @ first.transition @ p.transpose())
    second = hecke_transform(swapped, r - sub_rank)
    q = JetLaurentMatrix.permutation(perm, second.jet_order)
    back = BlowupBundle(q.transpose() @ second.transition @ q)
    return adapted, back


def involution_check(bundle, sub_rank):
    """Double Hecke transform shifts every splitting exponent by exactly +1."""
    _, result = double_hecke(bundle, sub_rank)
    return result.splitting == bundle.splitting.shifted(1)
