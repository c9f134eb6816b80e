"""Seeded randomized property suites behind ``heckelab verify``.

Every suite returns a report dict whose ``counterexamples`` list is sorted by
case index; identical seeds give identical reports.
"""

from fractions import Fraction

from .blowup_bundle import involution_check, optimize, twist_by_divisor
from .documents import bundle_document, profile_document, transition_document
from .errors import PrecisionError
from .hn_profile import (
    discreteness_ok,
    gr_tilde,
    hecke_bound,
    hecke_profile,
    normalize_twist,
    phi,
)
from .p1_bundle import splitting_from_h0
from .random_data import case_rng, random_blowup_bundle, random_profile

SUITES = ("involution", "descent", "oracle", "discreteness", "optimize", "twist")


def _oracle_case(rng):
    bundle = random_blowup_bundle(rng)
    restriction = bundle.restriction
    problems = []
    fac = restriction.factorization
    if fac.reconstruct() != restriction.matrix:
        problems.append("reconstruction identity fails")
    by_h0 = splitting_from_h0(restriction)
    if by_h0 != fac.diagonal:
        problems.append(f"birkhoff {list(fac.diagonal)} != h0 staircase {list(by_h0)}")
    if fac.diagonal.degree != -restriction.det_exponent:
        problems.append("degree not conserved")
    return problems, transition_document(restriction)


def _involution_case(rng):
    bundle = random_blowup_bundle(rng)
    s = rng.randint(0, bundle.rank)
    problems = [] if involution_check(bundle, s) else [f"double Hecke along rank {s} is not a +1 shift"]
    doc = bundle_document(bundle)
    doc["sub_rank"] = s
    return problems, doc


def _optimize_case(rng):
    bundle = random_blowup_bundle(rng)
    problems = []
    start = bundle.phi
    try:
        final, trace = optimize(bundle)
    except PrecisionError:
        return ["precision exhausted"], bundle_document(bundle)
    if final.phi != 0:
        problems.append(f"final phi {final.phi} != 0")
    if len(trace) > start:
        problems.append(f"{len(trace)} steps exceed initial phi {start}")
    for i, step in enumerate(trace):
        if step.phi_before >= 1 and step.phi_after > step.phi_before - 1:
            problems.append(f"step {i}: phi {step.phi_before} -> {step.phi_after}")
    return problems, bundle_document(bundle)


def _twist_case(rng):
    bundle = random_blowup_bundle(rng)
    _, base = optimize(bundle)
    problems = []
    for k in range(-2, 3):
        twisted = twist_by_divisor(bundle, k)
        if twisted.splitting != bundle.splitting.shifted(-k):
            problems.append(f"k={k}: twist does not shift the splitting by {-k}")
        _, trace = optimize(twisted)
        if trace.phi_values() != base.phi_values():
            problems.append(f"k={k}: phi trace {trace.phi_values()} != {base.phi_values()}")
    return problems, bundle_document(bundle)


def _descent_case(rng):
    p = random_profile(rng)
    problems = []
    spread = phi(p)
    for k in range(1, p.length):
        after = phi(hecke_profile(p, k))
        bound = hecke_bound(p, k)
        if after > bound:
            problems.append(f"k={k}: phi {after} exceeds bound {bound}")
        if spread < 1 and bound >= 1:
            problems.append(f"k={k}: optimal profile but bound {bound} >= 1")
    if spread >= 1:
        # a full unit of descent needs a unit gap below the top slope, which
        # integer slopes guarantee; in general only strict decrease holds
        after = phi(hecke_profile(p, 1))
        unit = all(s.denominator == 1 for s in p.slopes)
        if after >= spread or (unit and after > spread - 1):
            problems.append(f"no descent: {spread} -> {after}")
    g = gr_tilde(p)
    if phi(g) >= 1:
        problems.append(f"gr_tilde not optimal: phi {phi(g)}")
    if normalize_twist(gr_tilde(g)) != normalize_twist(g):
        problems.append("gr_tilde not idempotent up to twist")
    return problems, profile_document(p)


def _discreteness_case(rng):
    p = random_profile(rng)
    problems = [] if discreteness_ok(p) else [f"phi * rank! not a nonnegative integer: {phi(p)}"]
    if not discreteness_ok(gr_tilde(p)):
        problems.append("gr_tilde breaks discreteness")
    bundle = random_blowup_bundle(rng, max_x=1)
    if Fraction(bundle.phi).denominator != 1 or bundle.phi < 0:
        problems.append(f"CP^1 phi {bundle.phi} not a nonnegative integer")
    return problems, profile_document(p)


_CASES = {
    "involution": _involution_case,
    "descent": _descent_case,
    "oracle": _oracle_case,
    "discreteness": _discreteness_case,
    "optimize": _optimize_case,
    "twist": _twist_case,
}


def run_suite(name, count, seed=0):
    if name not in _CASES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    case = _CASES[name]
    counterexamples = []
    for i in range(count):
        problems, doc = case(case_rng(seed, i))
        if problems:
            counterexamples.append({"case": i, "problems": problems, "input": doc})
    return {
        "suite": name,
        "count": count,
        "seed": seed,
        "passed": not counterexamples,
        "counterexamples": counterexamples,
    }
