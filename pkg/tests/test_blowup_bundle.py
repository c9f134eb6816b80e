import pytest

from conftest import mat, tx
from heckelab.blowup_bundle import (
    BlowupBundle,
    adapt_frame,
    divisor_bundle,
    double_hecke,
    hecke_transform,
    involution_check,
    optimize,
    twist_by_divisor,
)
from heckelab.errors import FrameNotAdaptedError, NotInvertibleError, PrecisionError
from heckelab.exact_algebra import JetLaurentMatrix, unit_determinant
from heckelab.hn_profile import hecke_bound
from heckelab.p1_bundle import hn_blocks
from heckelab.random_data import case_rng, random_blowup_bundle


def nonsplit(n=3):
    t, x = tx(n)
    return BlowupBundle(mat([[t, x], [0, t ** -1]], n))


class TestRestriction:
    def test_nonsplit_example(self):
        e = nonsplit()
        assert e.splitting.exponents == (1, -1)
        assert e.phi == 2

    def test_divisor_restricts_to_minus_one(self):
        assert divisor_bundle(2).splitting.exponents == (-1,)

    def test_rejects_non_unit_determinant(self):
        t, x = tx(1)
        with pytest.raises(NotInvertibleError):
            BlowupBundle(mat([[1 + x, 0], [0, 1 + t]], 1))

    def test_default_jet_order(self):
        t, x = tx(0)
        b = BlowupBundle.from_polynomials(mat([[t, 0], [0, t ** -1]], 0))
        assert b.jet_order == 4


class TestAdaptFrame:
    def test_worked_chain(self):
        e = nonsplit()
        a = adapt_frame(e)
        t, x = tx(3)
        assert a.transition == mat([[t ** -1, 0], [x, t]], 3)
        # the gauges are constant in x, so the x-linear corner survives
        assert a.transition.at_x_zero() == mat([[t ** -1, 0], [0, t]], 3).at_x_zero()

    def test_top_blocks_range(self):
        with pytest.raises(ValueError):
            adapt_frame(nonsplit(), 3)

    @pytest.mark.parametrize("i", range(20))
    def test_restriction_becomes_diagonal(self, i):
        b = random_blowup_bundle(case_rng("adapt", i))
        a = adapt_frame(b)
        d = a.restriction.matrix
        assert d.is_diagonal()
        assert d == JetLaurentMatrix.t_powers([-e for e in b.splitting.exponents])
        assert a.splitting == b.splitting


class TestHecke:
    def test_worked_chain(self):
        h = hecke_transform(adapt_frame(nonsplit()), 1)
        t, _ = tx(2)
        assert h.transition == mat([[t ** -1, 0], [t ** -1, 1]], 2)
        assert h.splitting.exponents == (1, 0)
        assert h.jet_order == 2

    def test_identity_along_first_line(self):
        h = hecke_transform(BlowupBundle(JetLaurentMatrix.identity(2, 1)), 1)
        t, _ = tx(0)
        assert h.transition == mat([[1, 0], [0, t ** -1]], 0)
        assert h.splitting.exponents == (1, 0)

    def test_balances_split_pair(self):
        t, _ = tx(1)
        h = hecke_transform(BlowupBundle(mat([[t ** -1, 0], [0, 1]], 1)), 1)
        t0, _ = tx(0)
        assert h.transition == mat([[t0 ** -1, 0], [0, t0 ** -1]], 0)
        assert h.splitting.exponents == (1, 1)

    def test_full_and_empty_subbundle(self):
        e = adapt_frame(nonsplit())
        assert hecke_transform(e, 2).transition == e.transition.truncate(2)
        assert hecke_transform(e, 0).splitting == e.splitting.shifted(1)
        with pytest.raises(ValueError):
            hecke_transform(e, 3)

    def test_requires_adapted_frame(self):
        with pytest.raises(FrameNotAdaptedError, match="frame not adapted"):
            t, _ = tx(2)
            hecke_transform(BlowupBundle(mat([[t, 0], [1, t ** -1]], 2)), 1)

    def test_requires_jet_order(self):
        with pytest.raises(PrecisionError, match="insufficient jet order"):
            hecke_transform(BlowupBundle(JetLaurentMatrix.identity(2, 0)), 1)

    @pytest.mark.parametrize("i", range(30))
    def test_degree_and_bound(self, i):
        b = random_blowup_bundle(case_rng("hecke", i))
        prof = hn_blocks(b.splitting)
        for k in range(1, prof.length):
            s = b.splitting.top_rank(k)
            h = hecke_transform(adapt_frame(b, k), s)
            # determinant picks up t^-(r-s), so the degree rises by r - s
            assert h.splitting.degree == b.splitting.degree + b.rank - s
            assert unit_determinant(h.transition)[1] == unit_determinant(b.transition)[1] - (b.rank - s)
            assert h.phi <= hecke_bound(prof, k)
        if b.phi >= 1:
            h = hecke_transform(adapt_frame(b), b.splitting.top_rank(1))
            assert h.phi <= b.phi - 1


class TestTwist:
    def test_examples(self):
        t, _ = tx(1)
        assert twist_by_divisor(BlowupBundle(mat([[t ** -1, 0], [0, 1]], 1)), 1).transition == mat(
            [[1, 0], [0, t]], 1
        )
        assert twist_by_divisor(BlowupBundle(mat([[t ** -1, 0], [0, 1]], 1)), 1).splitting.exponents == (0, -1)
        assert twist_by_divisor(BlowupBundle(JetLaurentMatrix.identity(2, 1)), -1).splitting.exponents == (1, 1)

    @pytest.mark.parametrize("i", range(15))
    def test_optimizer_trace_is_twist_invariant(self, i):
        b = random_blowup_bundle(case_rng("twist", i))
        _, base = optimize(b)
        for k in range(-2, 3):
            tw = twist_by_divisor(b, k)
            assert tw.splitting == b.splitting.shifted(-k)
            final, trace = optimize(tw)
            assert trace.phi_values() == base.phi_values()


class TestOptimize:
    def test_worked_chain(self):
        final, trace = optimize(nonsplit())
        assert trace.phi_values() == [2, 1, 0]
        assert final.splitting.exponents == (1, 1)
        assert [s.sub_rank for s in trace] == [1, 1]
        assert trace.steps[-1].jet_remaining == 1

    def test_balanced_input_takes_no_steps(self):
        final, trace = optimize(BlowupBundle(JetLaurentMatrix.identity(3, 0)))
        assert len(trace) == 0 and final.phi == 0

    def test_precision_exhausted(self):
        with pytest.raises(PrecisionError) as info:
            optimize(nonsplit(1))
        assert len(info.value.trace) == 1
        assert info.value.bundle.phi == 1

    def test_unknown_schedule(self):
        with pytest.raises(ValueError):
            optimize(nonsplit(), schedule="sideways")

    @pytest.mark.parametrize("schedule", ["top", "bound"])
    @pytest.mark.parametrize("i", range(25))
    def test_reaches_balance(self, schedule, i):
        b = random_blowup_bundle(case_rng("opt", i))
        final, trace = optimize(b, schedule=schedule)
        assert final.phi == 0
        assert len(trace) <= b.phi
        assert all(s.phi_after < s.phi_before for s in trace)
        assert final.splitting.degree == b.splitting.degree + sum(
            b.rank - s.sub_rank for s in trace
        )


class TestInvolution:
    def test_double_hecke_is_twist(self):
        adapted, back = double_hecke(nonsplit(), 1)
        n = back.jet_order
        assert n == adapted.jet_order - 2
        assert back.transition == adapted.transition.truncate(n).shift_t(-1)

    def test_needs_two_orders(self):
        with pytest.raises(PrecisionError):
            double_hecke(nonsplit(1), 1)

    @pytest.mark.parametrize("i", range(30))
    def test_random(self, i):
        rng = case_rng("inv", i)
        b = random_blowup_bundle(rng)
        s = rng.randint(0, b.rank)
        adapted, back = double_hecke(b, s)
        assert back.transition == adapted.transition.truncate(back.jet_order).shift_t(-1)
        assert involution_check(b, s)
