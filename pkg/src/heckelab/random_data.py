"""Seeded generators for the randomized property suites."""

import random
from fractions import Fraction

from .blowup_bundle import BlowupBundle
from .exact_algebra import JetLaurentMatrix, JetLaurentPoly, Scalar
from .hn_profile import HNProfile
from .p1_bundle import P1Transition


def case_rng(seed, index):
    """Independent stream per case, so one failing case can be replayed alone."""
    return random.Random(f"{seed}:{index}")


def _coeff(rng, complex_rate=0.1):
    num = rng.choice([1, 1, 1, -1, -1, 2, -2, 3])
    den = rng.choice([1, 1, 1, 1, 2, 3])
    re = Fraction(num, den)
    im = Fraction(rng.choice([-1, 1, 2]), rng.choice([1, 2])) if rng.random() < complex_rate else 0
    return Scalar(re, im)


def _laurent(rng, t_lo, t_hi, x=0, jet_order=0, max_terms=2):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[(rng.randint(t_lo, t_hi), x)] = _coeff(rng)
    return JetLaurentPoly(terms, jet_order)


def _in_range(m, t_lo, t_hi):
    lo, hi = m.t_range()
    return t_lo <= lo and hi <= t_hi


def random_p1_matrix(rng, max_rank=3, t_lo=-3, t_hi=3, moves=5):
    """Invertible Laurent matrix: diagonal t-powers scrambled by elementary moves.

    Every move multiplies on the left or right by ``1 + c t^j E_ab``; moves that
    push an exponent outside ``[t_lo, t_hi]`` are discarded.
    """
    r = rng.randint(1, max_rank)
    exps = [rng.randint(t_lo, t_hi) for _ in range(r)]
    m = JetLaurentMatrix.diagonal(
        [JetLaurentPoly.monomial(_coeff(rng, 0.05), e, 0, 0) for e in exps], 0
    )
    if r == 1:
        return m
    for _ in range(rng.randint(0, moves)):
        a, b = rng.sample(range(r), 2)
        elem = [[JetLaurentPoly.one(0) if i == j else JetLaurentPoly.zero(0) for j in range(r)]
                for i in range(r)]
        elem[a][b] = _laurent(rng, t_lo, t_hi, max_terms=1)
        e = JetLaurentMatrix(elem, 0)
        cand = e @ m if rng.random() < 0.5 else m @ e
        if _in_range(cand, t_lo, t_hi):
            m = cand
    perm = list(range(r))
    rng.shuffle(perm)
    return JetLaurentMatrix.permutation(perm, 0) @ m


def random_p1_transition(rng, max_rank=3, t_lo=-3, t_hi=3):
    return P1Transition(random_p1_matrix(rng, max_rank, t_lo, t_hi))


def random_blowup_bundle(rng, max_rank=3, t_lo=-3, t_hi=3, max_x=3, density=0.35):
    """Random invertible restriction plus random x-jets up to ``x^max_x``.

    The jet order is the default working order of :meth:`BlowupBundle.from_polynomials`.
    """
    base = random_p1_matrix(rng, max_rank, t_lo, t_hi)
    r = base.rank
    rows = []
    for i in range(r):
        row = []
        for j in range(r):
            terms = dict(base[i, j].terms)
            for xe in range(1, max_x + 1):
                if rng.random() < density:
                    terms.update(_laurent(rng, t_lo, t_hi, xe, max_x).terms)
            row.append(JetLaurentPoly(terms, max_x))
        rows.append(row)
    return BlowupBundle.from_polynomials(JetLaurentMatrix(rows, max_x))


def random_profile(rng, max_total_rank=6, slope_span=4, base_dimension=None):
    """Profile with integer block degrees and distinct slopes in ``[-span, span]``."""
    while True:
        total = rng.randint(1, max_total_rank)
        ranks = []
        left = total
        while left:
            r = rng.randint(1, left)
            ranks.append(r)
            left -= r
        blocks = [(r, Fraction(rng.randint(-slope_span * r, slope_span * r), r)) for r in ranks]
        if len({s for _, s in blocks}) == len(blocks):
            break
    blocks.sort(key=lambda b: -b[1])
    n = base_dimension or rng.randint(2, 5)
    return HNProfile(blocks, base_dimension=n)
