"""Numerical Harder-Narasimhan data: slope ledgers, the instability spread,
Hecke steps on homogeneous split data and the partial HN grouping.

Profiles carry ranks and exact slopes only.  Labels ride along for reporting
and are never interpreted.

:func:`hecke_profile` is exact only for homogeneous data whose restriction
splits along the HN filtration; for anything else the only statement available
is the upper bound :func:`hecke_bound`.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, floor

from .errors import ProfileError

__all__ = [
    "Block",
    "HNProfile",
    "PartialHN",
    "phi",
    "hecke_profile",
    "hecke_bound",
    "partial_hn",
    "gr_tilde",
    "normalize_twist",
    "equivalent",
    "cone_equivalent",
]


@dataclass(frozen=True)
class Block:
    rank: int
    slope: Fraction
    labels: tuple = ()

    @property
    def degree(self):
        return self.rank * self.slope

    @property
    def label(self):
        return " + ".join(self.labels) if self.labels else None

    def shifted(self, k):
        return Block(self.rank, self.slope + k, self.labels)


def _as_block(item):
    if isinstance(item, Block):
        return item
    if len(item) == 2:
        rank, slope = item
        labels = ()
    elif len(item) == 3:
        rank, slope, label = item
        labels = () if label is None else (label,) if isinstance(label, str) else tuple(label)
    else:
        raise ProfileError(f"cannot read block {item!r}")
    if isinstance(rank, bool) or not isinstance(rank, int):
        raise ProfileError(f"block rank must be an int, got {rank!r}")
    try:
        slope = Fraction(slope)
    except (TypeError, ValueError) as exc:
        raise ProfileError(f"bad slope {slope!r}") from exc
    return Block(rank, slope, labels)


class HNProfile:
    """Ranks and strictly decreasing slopes of an HN filtration.

    ``base_dimension`` is the ``n`` of the ambient ``C^n`` (the divisor is
    ``CP^(n-1)``); it is carried for reporting only.  By default a slope must be
    representable as an integer degree over its block rank; pass
    ``check_denominators=False`` to accept arbitrary rationals.
    """

    def __init__(self, blocks, base_dimension=2, check_denominators=True):
        blocks = tuple(_as_block(b) for b in blocks)
        if not blocks:
            raise ProfileError("profile must have at least one block")
        if base_dimension < 2:
            raise ProfileError("base_dimension must be at least 2")
        for i, b in enumerate(blocks):
            if b.rank < 1:
                raise ProfileError(f"blocks[{i}].rank must be positive, got {b.rank}")
            if check_denominators and b.rank % b.slope.denominator:
                raise ProfileError(
                    f"blocks[{i}].slope {b.slope} is not an integer degree over rank {b.rank}"
                )
        for i in range(1, len(blocks)):
            if blocks[i].slope >= blocks[i - 1].slope:
                raise ProfileError(
                    f"blocks[{i}].slope {blocks[i].slope} does not decrease "
                    f"(previous {blocks[i - 1].slope})"
                )
        self.blocks = blocks
        self.base_dimension = base_dimension
        self.check_denominators = check_denominators

    @classmethod
    def from_unsorted(cls, blocks, base_dimension=2, check_denominators=True):
        """Sort by slope (stable), merge equal slopes, then build."""
        return cls(_canonical(_as_block(b) for b in blocks), base_dimension, check_denominators)

    def _derive(self, blocks):
        return HNProfile.from_unsorted(blocks, self.base_dimension, self.check_denominators)

    @property
    def length(self):
        """Number of HN blocks (``m``)."""
        return len(self.blocks)

    @property
    def ranks(self):
        return tuple(b.rank for b in self.blocks)

    @property
    def slopes(self):
        return tuple(b.slope for b in self.blocks)

    @property
    def total_rank(self):
        return sum(self.ranks)

    @property
    def total_degree(self):
        return sum(b.degree for b in self.blocks)

    def pairs(self):
        return tuple((b.rank, b.slope) for b in self.blocks)

    def shifted(self, k):
        """Uniform twist by ``O(k)``."""
        return HNProfile(
            [b.shifted(k) for b in self.blocks], self.base_dimension, self.check_denominators
        )

    def __eq__(self, other):
        if not isinstance(other, HNProfile):
            return NotImplemented
        return self.pairs() == other.pairs()

    def __hash__(self):
        return hash(self.pairs())

    def __repr__(self):
        body = ", ".join(f"({r}, {s})" for r, s in self.pairs())
        return f"HNProfile([{body}])"


def _canonical(blocks):
    ordered = sorted(blocks, key=lambda b: -b.slope)
    merged = []
    for b in ordered:
        if merged and merged[-1].slope == b.slope:
            prev = merged[-1]
            merged[-1] = Block(prev.rank + b.rank, b.slope, prev.labels + b.labels)
        else:
            merged.append(b)
    return merged


@dataclass(frozen=True)
class PartialHN:
    """``indices`` are ``j_0 = 0 < j_1 < ... < j_l = m``; ``twists[k]`` is ``n_k``."""

    indices: tuple
    twists: tuple

    def groups(self):
        """Zero-based block index ranges, one per group."""
        return [range(a, b) for a, b in zip(self.indices, self.indices[1:])]


def phi(profile):
    """Top slope minus bottom slope."""
    return profile.slopes[0] - profile.slopes[-1]


def _check_k(profile, k):
    m = profile.length
    if not 1 <= k < m:
        raise ProfileError(f"k must lie in [1, {m - 1}] for a profile with {m} blocks, got {k}")


def hecke_profile(profile, k):
    """Transform along the first ``k`` HN blocks in the homogeneous split case.

    Blocks past ``k`` gain one unit of slope; the result is re-sorted and
    equal slopes merged.
    """
    _check_k(profile, k)
    return profile._derive(
        [b if i < k else b.shifted(1) for i, b in enumerate(profile.blocks)]
    )


def hecke_bound(profile, k):
    """Upper bound on the spread after a Hecke transform along the first ``k`` blocks."""
    _check_k(profile, k)
    mu = profile.slopes
    m = len(mu)
    # 1-based mu_j is mu[j - 1]
    return max(
        mu[k] - mu[m - 1],
        phi(profile) - 1,
        mu[k] - mu[k - 1] + 1,
        mu[0] - mu[k - 1],
    )


def partial_hn(profile):
    """Group consecutive blocks into windows of slope width below one.

    Each window starts at the first block not yet absorbed; its twist is the
    floor of the top slope minus that block's slope, and it extends to the last
    block still within distance one after the twist.
    """
    mu = profile.slopes
    m = len(mu)
    indices = [0]
    twists = []
    while indices[-1] < m:
        j = indices[-1]
        n_k = floor(mu[0] - mu[j])
        nxt = None
        for s in range(j + 1, m + 1):
            if mu[0] - mu[s - 1] - n_k < 1:
                nxt = s
        # the window always contains block j + 1, so nxt is set
        assert nxt is not None and nxt > j, "partial HN window is empty"
        indices.append(nxt)
        twists.append(n_k)
    assert indices[-1] == m
    return PartialHN(tuple(indices), tuple(twists))


def gr_tilde(profile):
    """Profile of the graded object of the partial HN filtration, each group twisted up."""
    p = partial_hn(profile)
    blocks = []
    for group, n_k in zip(p.groups(), p.twists):
        blocks.extend(profile.blocks[i].shifted(n_k) for i in group)
    return profile._derive(blocks)


def normalize_twist(profile):
    """Shift all slopes by the integer placing the top slope in ``[0, 1)``."""
    return profile.shifted(-floor(profile.slopes[0]))


def equivalent(p, q):
    """True iff the two profiles differ by a uniform integer twist."""
    return normalize_twist(p) == normalize_twist(q)


def cone_equivalent(p, q):
    """True iff the graded pieces agree after twisting each one independently.

    This is the profile-level shadow of comparing the cones over the graded
    sheaves: every ``O(k)`` twist of a single piece disappears there, so only
    the rank carried by each fractional slope class survives.
    """
    return _fractional_ranks(p) == _fractional_ranks(q)


def _fractional_ranks(profile):
    out = {}
    for b in profile.blocks:
        key = b.slope - floor(b.slope)
        out[key] = out.get(key, 0) + b.rank
    return out


def discreteness_ok(profile):
    """``phi * (total rank)!`` is a nonnegative integer."""
    v = phi(profile) * factorial(profile.total_rank)
    return v >= 0 and v.denominator == 1
